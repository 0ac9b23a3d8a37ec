#pragma once

#include "ell/assoc.hpp"

namespace ell {

// GT/GRT elements. f and g live on the {A,B} alphabet (read as (X,Y) where
// the group F_2 is meant); the elliptic parts g_pm / u_pm live on {x,y}.
template <class K>
struct GTElem {
  K lambda;
  LieSeries<K> logf;
};

template <class K>
struct GTEllElem {
  GTElem<K> gt;
  LieSeries<K> logGp, logGm;  // log-coordinates of g_pm(X,Y) over {x,y}
};

template <class K>
struct GRTElem {
  K c;  // the Gm part; 1 for GRT_1 elements
  LieSeries<K> logg;
};

template <class K>
struct GRTEllElem {
  GRTElem<K> grt;
  LieSeries<K> up, um;  // u_pm in the free t_{1,2}
};

template <class K>
GTElem<K> gt_identity(int N, mpfr_prec_t prec) {
  return GTElem<K>{scalar_of_rat<K>(Rat(1), prec),
                   LieSeries<K>(&f2AB_context(N).alphabet(), N)};
}

template <class K>
GTEllElem<K> gtell_identity(int N, mpfr_prec_t prec) {
  const FreeLie& f2 = t12_context(N);
  return GTEllElem<K>{gt_identity<K>(N, prec),
                      lie_to_ring<K>(f2.gen<Rat>(0, Rat(1), N), prec),
                      lie_to_ring<K>(f2.gen<Rat>(1, Rat(1), N), prec)};
}

// ---- semigroup laws ---------------------------------------------------------

// (lambda,f)(lambda',f') = (lambda lambda', f(f' X^{lambda'} f'^-1, Y^{lambda'}) f')
template <class K>
GTElem<K> gt_mul(const GTElem<K>& a, const GTElem<K>& b) {
  int N = a.logf.trunc;
  const FreeLie& fAB = f2AB_context(N);
  mpfr_prec_t prec = std::max(series_prec(a.logf), series_prec(b.logf));
  auto X = lie_to_ring<K>(fAB.gen<Rat>(0, Rat(1), N), prec);
  auto Y = lie_to_ring<K>(fAB.gen<Rat>(1, Rat(1), N), prec);
  auto arg1 = fAB.Ad(b.logf, lie_scale(X, b.lambda));
  auto arg2 = lie_scale(Y, b.lambda);
  auto f2log = substitute_lie(fAB, a.logf, fAB, {arg1, arg2});
  return GTElem<K>{a.lambda * b.lambda, gprod(fAB, f2log, b.logf)};
}

// g''_pm = g_pm(g'_+, g'_-)
template <class K>
GTEllElem<K> gtell_mul(const GTEllElem<K>& a, const GTEllElem<K>& b) {
  const FreeLie& f2 = t12_context(a.logGp.trunc);
  return GTEllElem<K>{gt_mul(a.gt, b.gt),
                      substitute_lie(f2, a.logGp, f2, {b.logGp, b.logGm}),
                      substitute_lie(f2, a.logGm, f2, {b.logGp, b.logGm})};
}

// (g1 * g2)(A,B) = g1(Ad(g2)(A), B) g2(A,B); the Gm parts multiply
template <class K>
GRTElem<K> grt_mul(const GRTElem<K>& a, const GRTElem<K>& b) {
  int N = a.logg.trunc;
  const FreeLie& fAB = f2AB_context(N);
  mpfr_prec_t prec = std::max(series_prec(a.logg), series_prec(b.logg));
  auto A = lie_to_ring<K>(fAB.gen<Rat>(0, Rat(1), N), prec);
  auto B = lie_to_ring<K>(fAB.gen<Rat>(1, Rat(1), N), prec);
  auto sub = substitute_lie(fAB, a.logg, fAB, {fAB.Ad(b.logg, A), B});
  return GRTElem<K>{a.c * b.c, gprod(fAB, sub, b.logg)};
}

// u_pm = u^1_pm(u^2_+, u^2_-)
template <class K>
GRTEllElem<K> grtell_mul(const GRTEllElem<K>& a, const GRTEllElem<K>& b) {
  const FreeLie& f2 = t12_context(a.up.trunc);
  return GRTEllElem<K>{grt_mul(a.grt, b.grt),
                       substitute_lie(f2, a.up, f2, {b.up, b.um}),
                       substitute_lie(f2, a.um, f2, {b.up, b.um})};
}

// <psi_1, psi_2> = [psi_1,psi_2] + D_{psi_2}(psi_1) - D_{psi_1}(psi_2),
// D_psi : A -> [psi, A], B -> 0
template <class K>
LieSeries<K> grt_lie_bracket(const LieSeries<K>& p1, const LieSeries<K>& p2) {
  int N = p1.trunc;
  const FreeLie& fAB = f2AB_context(N);
  LieSeries<K> zero(&fAB.alphabet(), N);
  Word wA(1, 0);
  auto Dof = [&](const LieSeries<K>& psi) {
    LieSeries<K> imgA = fAB.bracket_word(psi, wA, false);  // [psi, A]
    return Derivation<K>{&fAB, {imgA, zero}};
  };
  return fAB.bracket(p1, p2) + Dof(p2).apply(p1) - Dof(p1).apply(p2);
}

// grt_ell Lie bracket on pairs: D_{a2}(a1) - D_{a1}(a2) componentwise
template <class K>
std::pair<LieSeries<K>, LieSeries<K>> grtell_lie_bracket(const LieSeries<K>& a1p,
                                                         const LieSeries<K>& a1m,
                                                         const LieSeries<K>& a2p,
                                                         const LieSeries<K>& a2m) {
  const FreeLie& f2 = t12_context(a1p.trunc);
  Derivation<K> D1{&f2, {a1p, a1m}};
  Derivation<K> D2{&f2, {a2p, a2m}};
  return {D2.apply(a1p) - D1.apply(a2p), D2.apply(a1m) - D1.apply(a2m)};
}

// ---- torsor actions ---------------------------------------------------------

// left: (lambda,f)*(mu,Phi) = (lambda mu, Phi(A,B) f(e^{mu A}, Phi^-1 e^{mu B} Phi))
template <class K>
AssociatorData<K> act_gt_on_M(const GTElem<K>& g, const AssociatorData<K>& a) {
  int N = a.N;
  const FreeLie& fAB = f2AB_context(N);
  mpfr_prec_t prec = std::max(series_prec(g.logf), series_prec(a.logPhi));
  auto A = lie_to_ring<K>(fAB.gen<Rat>(0, Rat(1), N), prec);
  auto B = lie_to_ring<K>(fAB.gen<Rat>(1, Rat(1), N), prec);
  auto arg1 = lie_scale(A, a.mu);
  auto arg2 = gprod(fAB, -a.logPhi, lie_scale(B, a.mu), a.logPhi);
  auto fsub = substitute_lie(fAB, g.logf, fAB, {arg1, arg2});
  return AssociatorData<K>{g.lambda * a.mu, gprod(fAB, a.logPhi, fsub), N};
}

template <class K>
EllAssociatorData<K> act_gtell_on_Ell(const GTEllElem<K>& g, const EllAssociatorData<K>& e) {
  AssociatorData<K> m = act_gt_on_M(g.gt, AssociatorData<K>{e.mu, e.logPhi, e.N});
  const FreeLie& f2 = t12_context(e.N);
  return EllAssociatorData<K>{m.mu, m.logPhi,
                              substitute_lie(f2, g.logGp, f2, {e.logAp, e.logAm}),
                              substitute_lie(f2, g.logGm, f2, {e.logAp, e.logAm}), e.N};
}

// (mu,Phi)*c = (c mu, Phi(cA, cB))
template <class K>
AssociatorData<K> act_scalar_on_M(const K& c, const AssociatorData<K>& a) {
  return AssociatorData<K>{c * a.mu, lie_scale_degrees(a.logPhi, c), a.N};
}

// right: (mu,Phi)*g = (mu, Phi(Ad(g)(A), B) g)
template <class K>
AssociatorData<K> act_grt_on_M(const GRTElem<K>& g, const AssociatorData<K>& a) {
  int N = a.N;
  const FreeLie& fAB = f2AB_context(N);
  mpfr_prec_t prec = std::max(series_prec(g.logg), series_prec(a.logPhi));
  auto A = lie_to_ring<K>(fAB.gen<Rat>(0, Rat(1), N), prec);
  auto B = lie_to_ring<K>(fAB.gen<Rat>(1, Rat(1), N), prec);
  auto sub = substitute_lie(fAB, a.logPhi, fAB, {fAB.Ad(g.logg, A), B});
  AssociatorData<K> out{a.mu, gprod(fAB, sub, g.logg), N};
  if constexpr (Ring<K>::exact) {
    if (!(g.c == Rat(1))) out = act_scalar_on_M(g.c, out);
  } else {
    Cx diff = g.c - Cx::one(g.c.prec());
    if (!diff.is_exact_zero()) out = act_scalar_on_M(g.c, out);
  }
  return out;
}

// elliptic right action: A~_pm = A_pm(u_+, u_-), Phi-part as act_grt_on_M
template <class K>
EllAssociatorData<K> act_grtell_on_Ell(const GRTEllElem<K>& g, const EllAssociatorData<K>& e) {
  AssociatorData<K> m = act_grt_on_M(g.grt, AssociatorData<K>{e.mu, e.logPhi, e.N});
  const FreeLie& f2 = t12_context(e.N);
  EllAssociatorData<K> out{m.mu, m.logPhi, substitute_lie(f2, e.logAp, f2, {g.up, g.um}),
                           substitute_lie(f2, e.logAm, f2, {g.up, g.um}), e.N};
  return out;
}

// (mu,Phi,A_pm)*c = (c mu, Phi(cA,cB), A_pm(x, c y))
template <class K>
EllAssociatorData<K> act_scalar_sharp_on_Ell(const K& c, const EllAssociatorData<K>& e) {
  AssociatorData<K> m = act_scalar_on_M(c, AssociatorData<K>{e.mu, e.logPhi, e.N});
  return EllAssociatorData<K>{m.mu, m.logPhi, lie_scale_degrees(e.logAp, c, 1),
                              lie_scale_degrees(e.logAm, c, 1), e.N};
}

// ---- sections ---------------------------------------------------------------

// GT -> GT_ell:  g_+ = f(X,(Y,X)) X^lambda f(X,(Y,X))^-1,
//                g_- = (Y,X)^{(lambda-1)/2} f(YX^-1Y^-1,(Y,X)) Y f(X,(Y,X))^-1
template <class K>
GTEllElem<K> lift_gt_to_gtell(const GTElem<K>& g) {
  int N = g.logf.trunc;
  const FreeLie& f2 = t12_context(N);
  const FreeLie& fAB = f2AB_context(N);
  mpfr_prec_t prec = series_prec(g.logf);
  auto x = lie_to_ring<K>(f2.gen<Rat>(0, Rat(1), N), prec);
  auto y = lie_to_ring<K>(f2.gen<Rat>(1, Rat(1), N), prec);
  auto cmt = gprod(f2, y, x, -y, -x);  // log (Y,X)
  auto fsub = substitute_lie(fAB, g.logf, f2, {x, cmt});
  auto gp = gprod(f2, fsub, lie_scale(x, g.lambda), -fsub);
  K half_lm1 = (g.lambda - scalar_of_rat<K>(Rat(1), prec)) * scalar_of_rat<K>(rat(1, 2), prec);
  auto yxy = gprod(f2, y, -x, -y);  // log (Y X^-1 Y^-1)
  auto fsub2 = substitute_lie(fAB, g.logf, f2, {yxy, cmt});
  auto gm = gprod(f2, lie_scale(cmt, half_lm1), fsub2, y, -fsub);
  return GTEllElem<K>{g, std::move(gp), std::move(gm)};
}

// t_{01} = -(ad x/(e^{ad x}-1))(y) and t_{02} in the free t_{1,2}
template <class K>
std::pair<LieSeries<K>, LieSeries<K>> t0_elements(int N, mpfr_prec_t prec) {
  const FreeLie& f2 = t12_context(N);
  auto x = lie_to_ring<K>(f2.gen<Rat>(0, Rat(1), N), prec);
  auto y = lie_to_ring<K>(f2.gen<Rat>(1, Rat(1), N), prec);
  std::vector<Rat> bern, bern_neg;
  Rat fact(1);
  for (int k = 0; k <= N; ++k) {
    if (k) fact *= k;
    Rat c = bernoulli(k) / fact;
    bern.push_back(c);
    bern_neg.push_back(k % 2 ? -c : c);
  }
  auto t01 = -f2.ad_series(bern, x, y);
  // t_02 = -(ad x_2/(e^{ad x_2}-1))(y_2) with x_2 = -x, y_2 = -y
  auto t02 = f2.ad_series(bern_neg, x, y);
  return {std::move(t01), std::move(t02)};
}

// GRT_1 -> GRT_1^ell: alpha_g(x) = log(g^{0,2,1} e^x (g^{0,1,2})^-1),
// alpha_g(t_01) = Ad(g^{0,1,2})(t_01); u_pm^g = (alpha_g(x), alpha_g(y))
template <class K>
GRTEllElem<K> lift_grt_to_grtell(const GRTElem<K>& g) {
  int N = g.logg.trunc;
  const FreeLie& f2 = t12_context(N);
  const FreeLie& fAB = f2AB_context(N);
  mpfr_prec_t prec = series_prec(g.logg);
  auto x = lie_to_ring<K>(f2.gen<Rat>(0, Rat(1), N), prec);
  auto y = lie_to_ring<K>(f2.gen<Rat>(1, Rat(1), N), prec);
  auto t12 = lie_scale_rat(f2.bracket(x, y), Rat(-1));
  auto [t01, t02] = t0_elements<K>(N, prec);
  auto g012 = substitute_lie(fAB, g.logg, f2, {t01, t12});
  auto g021 = substitute_lie(fAB, g.logg, f2, {t02, t12});
  auto ax = gprod(f2, g021, x, -g012);
  auto at01 = f2.Ad(g012, t01);
  // y = -((e^{ad x}-1)/ad x)(t_01), and alpha_g is an automorphism
  std::vector<Rat> expm1;
  Rat fact(1);
  for (int k = 0; k <= N; ++k) {
    fact /= (k + 1);
    expm1.push_back(fact);
  }
  auto ay = lie_scale_rat(f2.ad_series(expm1, ax, at01), Rat(-1));
  return GRTEllElem<K>{g, std::move(ax), std::move(ay)};
}

// derivative of sum_k f_k (ad u)^k(v) along (Du, Dv)
template <class K>
LieSeries<K> ad_series_derivative(const FreeLie& ctx, const std::vector<Rat>& f,
                                  const LieSeries<K>& u, const LieSeries<K>& v,
                                  const LieSeries<K>& Du, const LieSeries<K>& Dv) {
  // sum_k f_k sum_{j<k} (ad u)^j ad(Du) (ad u)^{k-1-j}(v) + f(ad u)(Dv)
  LieSeries<K> acc = ctx.ad_series(f, u, Dv);
  std::vector<LieSeries<K>> adv{v};  // (ad u)^i (v)
  for (size_t i = 1; i < f.size(); ++i) adv.push_back(ctx.bracket(u, adv.back()));
  for (size_t k = 1; k < f.size(); ++k) {
    if (sgn(f[k]) == 0) continue;
    for (size_t j = 0; j < k; ++j) {
      LieSeries<K> t = ctx.bracket(Du, adv[k - 1 - j]);
      for (size_t i = 0; i < j; ++i) t = ctx.bracket(u, t);
      acc = acc + lie_scale_rat(t, f[k]);
    }
  }
  return acc;
}

// grt_1 -> grt_1^ell at the Lie level: psi -> (psi, D_psi(x), D_psi(y)) with
// D_psi(e^{x}) = psi^{0,2,1} e^{x} - e^{x} psi^{0,1,2}, D_psi(t_01) = [psi^{0,1,2}, t_01]
template <class K>
std::pair<LieSeries<K>, LieSeries<K>> lift_grt_lie(const LieSeries<K>& psi) {
  int N = psi.trunc;
  const FreeLie& f2 = t12_context(N);
  const FreeLie& fAB = f2AB_context(N);
  mpfr_prec_t prec = series_prec(psi);
  auto x = lie_to_ring<K>(f2.gen<Rat>(0, Rat(1), N), prec);
  auto y = lie_to_ring<K>(f2.gen<Rat>(1, Rat(1), N), prec);
  auto t12 = lie_scale_rat(f2.bracket(x, y), Rat(-1));
  auto [t01, t02] = t0_elements<K>(N, prec);
  auto p012 = substitute_lie(fAB, psi, f2, {t01, t12});
  auto p021 = substitute_lie(fAB, psi, f2, {t02, t12});

  // D(x) = (ad x/(1-e^{-ad x})) (e^{-ad x}(psi^{0,2,1}) - psi^{0,1,2})
  std::vector<Rat> inv1me, expneg;
  Rat fact(1);
  for (int k = 0; k <= N; ++k) {
    if (k) fact *= k;
    Rat b = bernoulli(k) / fact;
    inv1me.push_back(k == 1 ? rat(1, 2) : b);  // z/(1-e^{-z}) = B_k/k!, B_1 -> +1/2
    expneg.push_back(k % 2 ? Rat(-Rat(1) / fact) : Rat(Rat(1) / fact));
  }
  auto Dx = f2.ad_series(inv1me, x, f2.ad_series(expneg, x, p021) - p012);
  auto Dt01 = f2.bracket(p012, t01);
  // y = -((e^{ad x}-1)/ad x)(t_01): differentiate through the series
  std::vector<Rat> expm1;
  fact = Rat(1);
  for (int k = 0; k <= N; ++k) {
    fact /= (k + 1);
    expm1.push_back(fact);
  }
  auto Dy = lie_scale_rat(ad_series_derivative(f2, expm1, x, t01, Dx, Dt01), Rat(-1));
  return {std::move(Dx), std::move(Dy)};
}

// ---- torsor transfer --------------------------------------------------------

// solve e' = e * (u_+, u_-) for the substitution (u_+, u_-), degree by degree;
// requires matching (mu, Phi) and invertible mu
template <class K>
std::optional<std::pair<LieSeries<K>, LieSeries<K>>> solve_torsor(const EllAssociatorData<K>& e,
                                                                  const EllAssociatorData<K>& e2) {
  int N = e.N;
  const FreeLie& f2 = t12_context(N);
  mpfr_prec_t prec = std::max(series_prec(e.logAp), series_prec(e2.logAp));
  {
    K dmu = e.mu - e2.mu;
    auto dphi = e.logPhi - e2.logPhi;
    bool mu_ok, phi_ok;
    if constexpr (Ring<K>::exact) {
      mu_ok = Ring<K>::is_zero(dmu);
      phi_ok = dphi.is_zero();
    } else {
      mu_ok = Ring<K>::norm_upper(dmu) < 1e3 * (Ring<K>::err_of(dmu) + 1e-300) + 1e-25;
      phi_ok = lie_norm_upper(dphi) < 1e3 * (lie_err_bound(dphi) + 1e-300) + 1e-25;
    }
    if (!mu_ok || !phi_ok) return std::nullopt;
  }
  Word wx(1, 0), wy(1, 1);
  K a = e.logAp.coeff(wx), b = e.logAp.coeff(wy);
  K c = e.logAm.coeff(wx), d = e.logAm.coeff(wy);
  K det = a * d - b * c;  // = mu, invertible
  LieSeries<K> up(&f2.alphabet(), N), um(&f2.alphabet(), N);
  for (int deg = 1; deg <= N; ++deg) {
    auto rp = e2.logAp - substitute_lie(f2, e.logAp, f2, {up, um});
    auto rm = e2.logAm - substitute_lie(f2, e.logAm, f2, {up, um});
    auto rpd = lie_component(rp, deg);
    auto rmd = lie_component(rm, deg);
    if (rpd.is_zero() && rmd.is_zero()) continue;
    // (a b; c d) (du_+; du_-) = (rp_d; rm_d), solved coordinatewise
    for (auto& w : f2.lyndon(deg)) {
      K r1 = rpd.coeff(w), r2 = rmd.coeff(w);
      K du = (d * r1 - b * r2) / det;
      K dv = (a * r2 - c * r1) / det;
      up.add_term(w, du);
      um.add_term(w, dv);
    }
  }
  return std::make_pair(std::move(up), std::move(um));
}

// ---- membership checks ------------------------------------------------------

// the four GRT_1 defining relations for a group-like g = exp(logg)
template <class K>
std::vector<CheckEntry> check_grt1_group(const LieSeries<K>& logg, const QuotientTable& T3,
                                         const QuotientTable& T4) {
  int N = logg.trunc;
  const FreeLie& fAB = f2AB_context(N);
  mpfr_prec_t prec = series_prec(logg);
  std::vector<CheckEntry> out;
  {
    auto A = lie_to_ring<K>(fAB.gen<Rat>(0, Rat(1), N), prec);
    auto B = lie_to_ring<K>(fAB.gen<Rat>(1, Rat(1), N), prec);
    auto swapped = substitute_lie(fAB, logg, fAB, {B, A});
    out.push_back(entry_of("duality", fAB.bch(swapped, logg)));
  }
  QuotAlg<K> alg3(T3, N);
  auto tcov3 = [&](int i, int j) {
    return lie_to_ring<K>(
        T3.generator("t" + std::to_string(std::min(i, j)) + std::to_string(std::max(i, j)), N),
        prec);
  };
  auto gq = [&](int i, int j, int k) { return phi_in(T3, logg, tcov3(i, j), tcov3(j, k)); };
  out.push_back(entry_of("three_cycle", gprod(alg3, gq(3, 1, 2), gq(2, 3, 1), gq(1, 2, 3))));
  {
    // t_12 + Ad(g^{123})^-1(t_23) + Ad(g^{213})^-1(t_13) = t_12 + t_13 + t_23
    auto t23 = alg3.reduce(tcov3(2, 3));
    auto t13 = alg3.reduce(tcov3(1, 3));
    auto lhs = alg3.Ad(-gq(1, 2, 3), t23) + alg3.Ad(-gq(2, 1, 3), t13) - t23 - t13;
    out.push_back(entry_of("ad_sum", lhs));
  }
  {
    QuotAlg<K> alg4(T4, N);
    auto tsum = [&](std::vector<std::pair<int, int>> ps) {
      LieSeries<Rat> acc(&T4.cover().alphabet(), N);
      for (auto& [i, j] : ps)
        acc = acc +
              T4.generator("t" + std::to_string(std::min(i, j)) + std::to_string(std::max(i, j)), N);
      return lie_to_ring<K>(acc, prec);
    };
    auto F = [&](std::vector<std::pair<int, int>> pa, std::vector<std::pair<int, int>> pb) {
      return phi_in(T4, logg, tsum(pa), tsum(pb));
    };
    auto res = gprod(alg4, F({{2, 3}}, {{3, 4}}), F({{1, 2}, {1, 3}}, {{2, 4}, {3, 4}}),
                     F({{1, 2}}, {{2, 3}}), -F({{1, 3}, {2, 3}}, {{3, 4}}),
                     -F({{1, 2}}, {{2, 3}, {2, 4}}));
    out.push_back(entry_of("pentagon", res));
  }
  return out;
}

// the three GRT_1^ell relations for (g, u_pm)
template <class K>
std::vector<CheckEntry> check_grt1_ell_group(const LieSeries<K>& logg, const LieSeries<K>& up,
                                             const LieSeries<K>& um, const QuotientTable& T13) {
  int N = std::max({logg.trunc, up.trunc, um.trunc});
  const FreeLie& f2 = t12_context(N);
  const FreeLie& cov = T13.cover();
  mpfr_prec_t prec = std::max(series_prec(logg), series_prec(up));
  QuotAlg<K> alg(T13, N);
  auto tcov = [&](int i, int j) {
    return lie_to_ring<K>(cov.bracket(strand_gen(T13, i, '+', N), strand_gen(T13, j, '-', N)),
                          prec);
  };
  auto gbr = [&](int i, int j, int k) {
    return T13.reduce(substitute_lie(f2AB_context(N), logg, cov, {tcov(i, j), tcov(j, k)}));
  };
  auto g123 = gbr(1, 2, 3), g213 = gbr(2, 1, 3);
  auto ins = [&](const LieSeries<K>& u, int strand) {
    return T13.reduce(strand_insert(f2, u, T13, strand, N));
  };
  auto AdI = [&](const QuotElem<K>& g, const QuotElem<K>& v) { return alg.Ad(-g, v); };

  auto up1 = AdI(g123, ins(up, 1)), up2 = AdI(g213, ins(up, 2)), up3 = ins(up, 3);
  auto um1 = AdI(g123, ins(um, 1)), um2 = AdI(g213, ins(um, 2)), um3 = ins(um, 3);
  std::vector<CheckEntry> out;
  out.push_back(entry_of("sum_plus", up1 + up2 + up3));
  out.push_back(entry_of("sum_minus", um1 + um2 + um3));
  out.push_back(entry_of("commute_plus", alg.bracket(up1, up3)));
  out.push_back(entry_of("commute_minus", alg.bracket(um1, um3)));
  out.push_back(entry_of("pairing", alg.bracket(up1, um2) - alg.reduce(tcov(1, 2))));
  return out;
}

// Lie-level grt_1 relations for psi
template <class K>
std::vector<CheckEntry> check_grt1_lie(const LieSeries<K>& psi, const QuotientTable& T3,
                                       const QuotientTable& T4) {
  int N = psi.trunc;
  const FreeLie& fAB = f2AB_context(N);
  mpfr_prec_t prec = series_prec(psi);
  std::vector<CheckEntry> out;
  {
    auto A = lie_to_ring<K>(fAB.gen<Rat>(0, Rat(1), N), prec);
    auto B = lie_to_ring<K>(fAB.gen<Rat>(1, Rat(1), N), prec);
    auto swapped = substitute_lie(fAB, psi, fAB, {B, A});
    out.push_back(entry_of("duality", psi + swapped));
  }
  auto tcov3 = [&](int i, int j) {
    return lie_to_ring<K>(
        T3.generator("t" + std::to_string(std::min(i, j)) + std::to_string(std::max(i, j)), N),
        prec);
  };
  auto pin = [&](int i, int j, int k) {
    return T3.reduce(
        substitute_lie(fAB, psi, T3.cover(), {tcov3(i, j), tcov3(j, k)}));
  };
  out.push_back(entry_of("three_cycle", pin(1, 2, 3) + pin(2, 3, 1) + pin(3, 1, 2)));
  {
    auto br = [&](int a, int b, const QuotElem<K>& v) {
      QuotAlg<K> alg(T3, N);
      return alg.bracket(T3.reduce(tcov3(a, b)), v);
    };
    out.push_back(entry_of("inner", br(2, 3, pin(1, 2, 3)) + br(1, 3, pin(2, 1, 3))));
  }
  {
    auto tsum4 = [&](std::vector<std::pair<int, int>> ps) {
      LieSeries<Rat> acc(&T4.cover().alphabet(), N);
      for (auto& [i, j] : ps)
        acc = acc +
              T4.generator("t" + std::to_string(std::min(i, j)) + std::to_string(std::max(i, j)), N);
      return lie_to_ring<K>(acc, prec);
    };
    auto P = [&](std::vector<std::pair<int, int>> pa, std::vector<std::pair<int, int>> pb) {
      return T4.reduce(substitute_lie(fAB, psi, T4.cover(), {tsum4(pa), tsum4(pb)}));
    };
    auto res = P({{2, 3}}, {{3, 4}}) - P({{1, 3}, {2, 3}}, {{3, 4}}) +
               P({{1, 2}, {1, 3}}, {{2, 4}, {3, 4}}) - P({{1, 2}}, {{2, 3}, {2, 4}}) +
               P({{1, 2}}, {{2, 3}});
    out.push_back(entry_of("pentagon", res));
  }
  return out;
}

// Lie-level grt_1^ell relations for (psi, alpha_pm)
template <class K>
std::vector<CheckEntry> check_grt1_ell_lie(const LieSeries<K>& psi, const LieSeries<K>& ap,
                                           const LieSeries<K>& am, const QuotientTable& T13) {
  int N = std::max({psi.trunc, ap.trunc, am.trunc});
  const FreeLie& f2 = t12_context(N);
  const FreeLie& cov = T13.cover();
  mpfr_prec_t prec = std::max(series_prec(psi), series_prec(ap));
  auto tcov = [&](int i, int j) {
    return lie_to_ring<K>(cov.bracket(strand_gen(T13, i, '+', N), strand_gen(T13, j, '-', N)),
                          prec);
  };
  auto psi_br = [&](int i, int j, int k) {
    return substitute_lie(f2AB_context(N), psi, cov, {tcov(i, j), tcov(j, k)});
  };
  auto ins = [&](const LieSeries<K>& a, int strand) { return strand_insert(f2, a, T13, strand, N); };
  auto gen = [&](int i, char s) { return lie_to_ring<K>(strand_gen(T13, i, s, N), prec); };

  std::vector<CheckEntry> out;
  auto p123 = psi_br(1, 2, 3), p213 = psi_br(2, 1, 3);
  for (int sgn = +1; sgn >= -1; sgn -= 2) {
    char sc = sgn > 0 ? '+' : '-';
    const LieSeries<K>& a = sgn > 0 ? ap : am;
    auto r1 = ins(a, 1) + ins(a, 2) + ins(a, 3) + cov.bracket(gen(1, sc), p123) +
              cov.bracket(gen(2, sc), p213);
    out.push_back(entry_of(std::string("sum_") + (sgn > 0 ? "plus" : "minus"), T13.reduce(r1)));
    auto r2 = cov.bracket(gen(1, sc), ins(a, 3)) + cov.bracket(ins(a, 1), gen(3, sc)) -
              cov.bracket(gen(1, sc), cov.bracket(gen(3, sc), p123));
    out.push_back(
        entry_of(std::string("commute_") + (sgn > 0 ? "plus" : "minus"), T13.reduce(r2)));
  }
  auto r3 = cov.bracket(gen(1, '+'), ins(am, 2)) - cov.bracket(gen(2, '-'), ins(ap, 1)) -
            cov.bracket(gen(2, '-'), cov.bracket(gen(1, '+'), p123));
  out.push_back(entry_of("mixed", T13.reduce(r3)));
  return out;
}

}  // namespace ell
