#pragma once

#include "ell/mzv.hpp"
#include "ell/presentations.hpp"

namespace ell {

// Displayed group products of exponentials are evaluated left-to-right as
// written. (Kept as a switch because the relation set pins the orientation
// only through the KZ verification suite; see the hexagon tests.)
inline constexpr bool kDisplayedProductsReversed = false;

template <class K>
LieSeries<K> gprod_vec(const FreeLie& ctx, std::vector<LieSeries<K>> factors) {
  if (kDisplayedProductsReversed) std::reverse(factors.begin(), factors.end());
  return ctx.bch_list(factors);
}

template <class K>
QuotElem<K> gprod_vec(const QuotAlg<K>& alg, std::vector<QuotElem<K>> factors) {
  if (kDisplayedProductsReversed) std::reverse(factors.begin(), factors.end());
  return alg.bch_list(factors);
}

template <class Ctx, class T, class... Ts>
T gprod(const Ctx& ctx, T first, Ts... rest) {
  std::vector<T> v;
  v.push_back(std::move(first));
  (v.push_back(std::move(rest)), ...);
  return gprod_vec(ctx, std::move(v));
}

// ---- scalar helpers over the generic ring --------------------------------

template <class K>
K scalar_of_rat(const Rat& q, mpfr_prec_t prec) {
  if constexpr (Ring<K>::exact)
    return q;
  else
    return Cx::from_rat(q, prec);
}

template <class K>
K kpow(const K& a, long e) {
  if constexpr (Ring<K>::exact) {
    if (e < 0) return Rat(1) / kpow(a, -e);
    Rat r(1), b = a;
    long n = e;
    while (n) {
      if (n & 1) r *= b;
      b *= b;
      n >>= 1;
    }
    return r;
  } else {
    return cx_pow_si(a, e);
  }
}

// coefficient-wise scaling by c^{deg(w)}; mdeg_index < 0 uses the total degree
template <class K>
LieSeries<K> lie_scale_degrees(const LieSeries<K>& s, const K& c, int mdeg_index = -1) {
  LieSeries<K> r(s.alph, s.trunc);
  for (auto& [w, v] : s.c) {
    int d = mdeg_index < 0 ? s.alph->degree(w) : s.alph->multidegree(w)[mdeg_index];
    r.add_term(w, v * kpow(c, d));
  }
  return r;
}

// ---- verification entries --------------------------------------------------

struct CheckEntry {
  std::string name;
  double residual = 0.0;  // upper bound on the true residual norm
  double bound = 0.0;     // propagated arithmetic error part
  bool exact = false;     // exactly zero (rational mode)
};

template <class K>
CheckEntry entry_of(const std::string& name, const QuotElem<K>& e) {
  return CheckEntry{name, quot_norm_upper(e), quot_err_bound(e), Ring<K>::exact && e.is_zero()};
}

template <class K>
CheckEntry entry_of(const std::string& name, const LieSeries<K>& e) {
  return CheckEntry{name, lie_norm_upper(e), lie_err_bound(e), Ring<K>::exact && e.is_zero()};
}

inline bool all_below(const std::vector<CheckEntry>& es, double tol) {
  for (auto& e : es)
    if (!(e.residual <= tol)) return false;
  return true;
}

// ---- psi involution and Phi_KZ ---------------------------------------------

// the derivation with letter -> 1 (deleting one occurrence), all others -> 0
template <class K>
NCSeries<K> nc_partial(const NCSeries<K>& s, unsigned char letter) {
  NCSeries<K> r(s.alph, s.trunc);
  for (auto& [w, v] : s.c)
    for (size_t i = 0; i < w.size(); ++i)
      if (w[i] == letter) r.add_term(w.substr(0, i) + w.substr(i + 1), v);
  return r;
}

// psi(w) = sum_{k,l >= 0} (-1)^{k+l} B^l (dB^l/l!)(dA^k/k!)(w) A^k on {A,B}.
// The divided powers make psi the corner projection compatible with the
// shuffle coproduct: the assembled KZ series comes out group-like on the
// nose, which the relation suite verifies.
template <class K>
NCSeries<K> psi_involution(const NCSeries<K>& s) {
  const Alphabet* alph = s.alph;
  int N = s.trunc;
  auto shift = [&](const NCSeries<K>& t, int lpow, int kpow_) {
    NCSeries<K> r(alph, N);
    Word pre(static_cast<size_t>(lpow), 1), post(static_cast<size_t>(kpow_), 0);
    for (auto& [w, v] : t.c) r.add_term(pre + w + post, v);
    return r;
  };
  NCSeries<K> acc(alph, N);
  NCSeries<K> dB = s;
  for (int l = 0; l <= N; ++l) {
    if (l > 0) {
      dB = nc_scale_rat(nc_partial(dB, 1), Rat(1, l));
      if (dB.is_zero()) break;
    }
    NCSeries<K> dAB = dB;
    for (int k = 0; k <= N; ++k) {
      if (k > 0) {
        dAB = nc_scale_rat(nc_partial(dAB, 0), Rat(1, k));
        if (dAB.is_zero()) break;
      }
      NCSeries<K> term = shift(dAB, l, k);
      acc = ((k + l) % 2 == 0) ? acc + term : acc - term;
    }
  }
  return acc;
}

// The KZ associator series 1 + sum zeta(k_1..k_m) psi(A^{k_1-1}B ... A^{k_m-1}B)
NCSeries<Cx> phi_kz_nc(int N, const MZVTable& table);

// log Phi_KZ as a Lie series; *dust (if given) receives the non-Lie residue
LieSeries<Cx> phi_kz_log(int N, const MZVTable& table, double* dust = nullptr);

// ---- associator data and relation checkers ---------------------------------

template <class K>
struct AssociatorData {
  K mu;
  LieSeries<K> logPhi;  // over the {A,B} alphabet
  int N = 0;
};

template <class K>
struct EllAssociatorData {
  K mu;
  LieSeries<K> logPhi;          // over {A,B}
  LieSeries<K> logAp, logAm;    // over {x,y} = t_{1,2}
  int N = 0;
};

// substitute log Phi into a quotient cover via images of A and B, and reduce
template <class K>
QuotElem<K> phi_in(const QuotientTable& T, const LieSeries<K>& logPhi, const LieSeries<K>& imgA,
                   const LieSeries<K>& imgB) {
  return T.reduce(substitute_lie(f2AB_context(logPhi.trunc), logPhi, T.cover(), {imgA, imgB}));
}

// duality, hexagon, pentagon, group-likeness
template <class K>
std::vector<CheckEntry> check_associator(const AssociatorData<K>& a, const QuotientTable& T3,
                                         const QuotientTable& T4) {
  int N = a.N;
  std::vector<CheckEntry> out;
  mpfr_prec_t prec = series_prec(a.logPhi);
  const FreeLie& fAB = f2AB_context(N);

  {
    NCSeries<K> Phi = fAB.exp(a.logPhi);
    out.push_back(CheckEntry{"grouplike", grouplike_residual(Phi), 0.0,
                             Ring<K>::exact && grouplike_residual(Phi) == 0.0});
  }
  {
    auto A = lie_to_ring<K>(fAB.gen<Rat>(0, Rat(1), N), prec);
    auto B = lie_to_ring<K>(fAB.gen<Rat>(1, Rat(1), N), prec);
    auto swapped = substitute_lie(fAB, a.logPhi, fAB, {B, A});
    out.push_back(entry_of("duality", fAB.bch(swapped, a.logPhi)));
  }
  {
    // hexagon in t_3
    QuotAlg<K> alg(T3, N);
    auto tq = [&](int i, int j) {
      return T3.template reduce<K>(lie_to_ring<K>(T3.generator(
          "t" + std::to_string(std::min(i, j)) + std::to_string(std::max(i, j)), N), prec));
    };
    auto tcov = [&](int i, int j) {
      return lie_to_ring<K>(T3.generator(
          "t" + std::to_string(std::min(i, j)) + std::to_string(std::max(i, j)), N), prec);
    };
    K half = scalar_of_rat<K>(rat(1, 2), prec);
    K mh = a.mu * half;
    auto ephase = [&](int i, int j) { return quot_scale(tq(i, j), mh); };
    auto phi_abc = [&](int i, int j, int k) {
      return phi_in(T3, a.logPhi, tcov(i, j), tcov(j, k));
    };
    QuotElem<K> rhs = quot_scale(tq(1, 2) + tq(1, 3) + tq(2, 3), mh);
    auto lhs = gprod(alg, ephase(2, 3), phi_abc(1, 2, 3), ephase(1, 2), phi_abc(3, 1, 2),
                           ephase(3, 1), phi_abc(2, 3, 1), -rhs);
    out.push_back(entry_of("hexagon", lhs));
  }
  {
    // pentagon in t_4
    QuotAlg<K> alg(T4, N);
    auto tsum = [&](std::vector<std::pair<int, int>> ps) {
      LieSeries<Rat> acc(&T4.cover().alphabet(), N);
      for (auto& [i, j] : ps)
        acc = acc + T4.generator("t" + std::to_string(std::min(i, j)) + std::to_string(std::max(i, j)), N);
      return lie_to_ring<K>(acc, prec);
    };
    auto F = [&](std::vector<std::pair<int, int>> pa, std::vector<std::pair<int, int>> pb) {
      return phi_in(T4, a.logPhi, tsum(pa), tsum(pb));
    };
    auto p234 = F({{2, 3}}, {{3, 4}});
    auto p1_23_4 = F({{1, 2}, {1, 3}}, {{2, 4}, {3, 4}});
    auto p123 = F({{1, 2}}, {{2, 3}});
    auto p12_34 = F({{1, 2}}, {{2, 3}, {2, 4}});
    auto p12_3_4 = F({{1, 3}, {2, 3}}, {{3, 4}});
    auto res = gprod(alg, p234, p1_23_4, p123, -p12_3_4, -p12_34);
    out.push_back(entry_of("pentagon", res));
  }
  return out;
}

// ---- sigma lift -------------------------------------------------------------

// the section M -> Ell; computed in the free t_{1,2} on (x, y) = (x_1^+, x_1^-)
// with x_2 = -x, y_2 = -y, t_12 = t_21 = -[x, y]
template <class K>
EllAssociatorData<K> sigma_lift(const AssociatorData<K>& a) {
  int N = a.N;
  mpfr_prec_t prec = series_prec(a.logPhi);
  const FreeLie& f2 = t12_context(N);
  auto x = lie_to_ring<K>(f2.gen<Rat>(0, Rat(1), N), prec);
  auto y = lie_to_ring<K>(f2.gen<Rat>(1, Rat(1), N), prec);
  auto t12 = lie_scale_rat(f2.bracket(x, y), Rat(-1));

  std::vector<Rat> bern, bern_neg;
  Rat fact(1);
  for (int k = 0; k <= N; ++k) {
    if (k) fact *= k;
    Rat c = bernoulli(k) / fact;
    bern.push_back(c);
    bern_neg.push_back(k % 2 ? -c : c);
  }
  // u = (ad x_1/(e^{ad x_1}-1))(y_2),  w = (ad x_2/(e^{ad x_2}-1))(y_1)
  auto u = f2.ad_series(bern, x, -y);
  auto w = f2.ad_series(bern_neg, x, y);

  auto phiU = substitute_lie(f2AB_context(N), a.logPhi, f2, {u, t12});
  auto phiW = substitute_lie(f2AB_context(N), a.logPhi, f2, {w, t12});

  EllAssociatorData<K> e;
  e.mu = a.mu;
  e.logPhi = a.logPhi;
  e.N = N;
  e.logAp = f2.Ad(phiU, lie_scale(u, a.mu));
  K mh = a.mu * scalar_of_rat<K>(rat(1, 2), prec);
  e.logAm = gprod(f2, lie_scale(t12, mh), phiW, x, -phiU);
  return e;
}

// abelianization matrix ((u_+, v_+), (u_-, v_-)) of (log A_+, log A_-)
template <class K>
std::array<K, 4> ell_abelianization(const EllAssociatorData<K>& e) {
  Word wx(1, 0), wy(1, 1);
  return {e.logAp.coeff(wx), e.logAp.coeff(wy), e.logAm.coeff(wx), e.logAm.coeff(wy)};
}

// cyclic, commutator, group-likeness and determinant residuals
template <class K>
std::vector<CheckEntry> check_elliptic(const EllAssociatorData<K>& e, const QuotientTable& T13) {
  int N = e.N;
  mpfr_prec_t prec = std::max(series_prec(e.logPhi), series_prec(e.logAp));
  const FreeLie& f2 = t12_context(N);
  const FreeLie& cov = T13.cover();
  QuotAlg<K> alg(T13, N);
  K half = scalar_of_rat<K>(rat(1, 2), prec);

  auto tcov = [&](int i, int j) {
    // {t_ij} = [x_i^+, x_j^-] in the t_{1,3} cover
    return lie_to_ring<K>(cov.bracket(strand_gen(T13, i, '+', N), strand_gen(T13, j, '-', N)),
                          prec);
  };
  auto phi_br = [&](int i, int j, int k) {
    // {Phi^{i,j,k}} = Phi({t_ij}, {t_jk})
    return T13.reduce(
        substitute_lie(f2AB_context(N), e.logPhi, cov, {tcov(i, j), tcov(j, k)}));
  };
  auto Ains = [&](const LieSeries<K>& logA, int strand) {
    return T13.reduce(strand_insert(f2, logA, T13, strand, N));
  };
  auto permuted = [&](const QuotElem<K>& q, int i1, int i2, int i3) {
    // x_1 -> x_{i1}, x_2 -> x_{i2}, x_3 -> x_{i3}
    auto lifted = T13.template lift<K>(q);
    std::vector<LieSeries<K>> images;
    for (size_t l = 0; l < cov.alphabet().size(); ++l) {
      const std::string& nm = cov.alphabet().symbol(l).name;  // "xi<sign>"
      int strand = nm[1] - '0';
      char sign = nm[2];
      int tgt = strand == 1 ? i1 : (strand == 2 ? i2 : i3);
      images.push_back(lie_to_ring<K>(strand_gen(T13, tgt, sign, N), prec));
    }
    return T13.reduce(substitute_lie(cov, lifted, cov, images));
  };

  std::vector<CheckEntry> out;
  // cyclic relations: alpha_pm^{3,1,2} alpha_pm^{2,3,1} alpha_pm^{1,2,3} = 1,
  // alpha_pm = {e^{pm mu (t12+t13)/2}} A_pm^{1,23} {Phi^{1,2,3}}
  for (int sgn = +1; sgn >= -1; sgn -= 2) {
    K mh = e.mu * half;
    if (sgn < 0) mh = -mh;
    auto ephase = quot_scale(alg.reduce(tcov(1, 2)) + alg.reduce(tcov(1, 3)), mh);
    auto alpha = gprod(alg, ephase, Ains(sgn > 0 ? e.logAp : e.logAm, 1), phi_br(1, 2, 3));
    auto res = gprod(alg, permuted(alpha, 3, 1, 2), permuted(alpha, 2, 3, 1), alpha);
    out.push_back(entry_of(sgn > 0 ? "cyclic_plus" : "cyclic_minus", res));
  }
  {
    // {e^{mu t12}} = (X, Y) with
    //   X = {Phi}^{-1} A_-^{1,23} {Phi},
    //   Y = {e^{-mu t12/2} (Phi^{2,1,3})^{-1}} (A_+^{2,13})^{-1} {Phi^{2,1,3} e^{-mu t12/2}}
    auto p123 = phi_br(1, 2, 3);
    auto p213 = phi_br(2, 1, 3);
    auto t12q = alg.reduce(tcov(1, 2));
    K mh = e.mu * half;
    auto X = gprod(alg, -p123, Ains(e.logAm, 1), p123);
    auto Y = gprod(alg, quot_scale(t12q, -mh), -p213, -Ains(e.logAp, 2), p213,
                         quot_scale(t12q, -mh));
    auto comm = gprod(alg, X, Y, -X, -Y);
    out.push_back(entry_of("commutator", comm - quot_scale(t12q, e.mu)));
  }
  out.push_back(CheckEntry{"grouplike_plus", grouplike_residual(f2.exp(e.logAp)), 0.0,
                           Ring<K>::exact && grouplike_residual(f2.exp(e.logAp)) == 0.0});
  out.push_back(CheckEntry{"grouplike_minus", grouplike_residual(f2.exp(e.logAm)), 0.0,
                           Ring<K>::exact && grouplike_residual(f2.exp(e.logAm)) == 0.0});
  {
    auto m = ell_abelianization(e);
    K det = m[0] * m[3] - m[1] * m[2];
    K diff = det - e.mu;
    out.push_back(CheckEntry{"det", Ring<K>::norm_upper(diff), Ring<K>::err_of(diff),
                             Ring<K>::exact && Ring<K>::is_zero(diff)});
  }
  return out;
}

// ---- KZ pair and the twist identity ----------------------------------------

// (A_KZ, B_KZ) of the theta-action statement, in the free t_{1,2} on (x,y)
std::pair<LieSeries<Cx>, LieSeries<Cx>> kz_pair(int N, const MZVTable& table);

// residual of (A_KZ, B_KZ) = (-2 pi i)^xi (A_KZ^+, A_KZ^-) against the sigma
// lift of (2 pi i, Phi_KZ); xi scales x-degrees
std::vector<CheckEntry> check_kz_twist(int N, const MZVTable& table);

// ---- Lie R_ell relations (P_{1,2} level) ------------------------------------

template <class K>
std::vector<CheckEntry> check_lie_rell(const LieSeries<K>& ap, const LieSeries<K>& am) {
  int N = std::max(ap.trunc, am.trunc);
  const FreeLie& f2 = t12_context(N);
  mpfr_prec_t prec = std::max(series_prec(ap), series_prec(am));
  auto x = lie_to_ring<K>(f2.gen<Rat>(0, Rat(1), N), prec);
  auto y = lie_to_ring<K>(f2.gen<Rat>(1, Rat(1), N), prec);

  std::vector<Rat> expm1;  // (e^z - 1)/z
  Rat fact(1);
  for (int k = 0; k <= N; ++k) {
    fact /= (k + 1);
    expm1.push_back(fact);
  }
  fact = Rat(1);
  std::vector<Rat> fa{Rat(1)};  // 1/k! for Ad
  for (int k = 1; k <= N; ++k) {
    fact /= k;
    fa.push_back(fact);
  }
  auto Adexp = [&](const LieSeries<K>& g, const LieSeries<K>& v) { return f2.ad_series(fa, g, v); };

  LieSeries<K> atp = f2.ad_series(expm1, x, ap);  // alpha~_+
  LieSeries<K> atm = f2.ad_series(expm1, y, am);  // alpha~_-

  // sigma_1^2 = (Y, X) = Y X Y^-1 X^-1 as a word
  auto s = gprod(f2, y, x, -y, -x);
  std::vector<CheckEntry> out;
  {
    // alpha~_+(x, y) + Ad(X_1^+) alpha~_+(log X_2^+ s^-1, log s X_2^-) = 0
    auto m1 = gprod(f2, -x, -s);
    auto m2 = gprod(f2, s, -y);
    auto sub = substitute_lie(f2, atp, f2, {m1, m2});
    out.push_back(entry_of("plus", atp + Adexp(x, sub)));
  }
  {
    auto m1 = gprod(f2, -s, -x);
    auto m2 = gprod(f2, -y, s);
    auto sub = substitute_lie(f2, atm, f2, {m1, m2});
    out.push_back(entry_of("minus", atm + Adexp(y, sub)));
  }
  {
    // (Ad(Y,X) - Ad Y) alpha~_+ + (Ad(Y X Y^-1) - 1) alpha~_- = 0
    auto c1 = Adexp(s, atp) - Adexp(y, atp);
    auto yxyi = gprod(f2, y, x, -y);
    auto c2 = Adexp(yxyi, atm) - atm;
    out.push_back(entry_of("mixed", c1 + c2));
  }
  return out;
}

}  // namespace ell
