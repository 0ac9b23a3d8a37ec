#include "ell/mellin.hpp"

#include <algorithm>
#include <map>

namespace ell {

namespace {

// finite exp-polynomials sum c_{m,j} t^j e^{-2 pi m t}
using EP = std::map<std::pair<int, int>, Cx>;

void ep_add(EP& e, int m, int j, const Cx& v) {
  auto key = std::make_pair(m, j);
  auto it = e.find(key);
  if (it == e.end())
    e.emplace(key, v);
  else
    it->second = it->second + v;
}

// I'(t) = int_t^inf f(iu) u^{s-1} I(u) du, integrated termwise
EP step(const EP& I, const EisensteinForm& f, int s, int Mcap, mpfr_prec_t p) {
  if (s < 1) {
    if (s == 0) throw PoleError({0}, f.weight());
    throw std::invalid_argument("argument outside the positive-integer scope");
  }
  EP mul;
  for (auto& [key, c] : I) {
    auto [m, j] = key;
    for (int mm = 0; mm < static_cast<int>(f.c.size()); ++mm) {
      if (sgn(f.c[mm]) == 0) continue;
      int m2 = m + mm;
      if (m2 > Mcap) continue;
      ep_add(mul, m2, j + s - 1, cx_mul_rat(c, f.c[mm]));
    }
  }
  Real two_pi = Real::pi(p) + Real::pi(p);
  EP out;
  for (auto& [key, c] : mul) {
    auto [m, j] = key;
    if (m == 0) {
      // continuation of int_t^inf u^j du = -t^{j+1}/(j+1)
      ep_add(out, 0, j + 1, cx_mul_rat(c, Rat(-1, static_cast<long>(j) + 1)));
    } else {
      // int_t^inf u^j e^{-au} du = e^{-at} sum_{i<=j} (j!/i!) t^i / a^{j-i+1}
      Cx ainv = Cx::one(p) / Cx(two_pi * Real::from_si(m, p), Real(p), 0.0);
      Cx factor = c * ainv;
      ep_add(out, m, j, factor);
      for (int i = j - 1; i >= 0; --i) {
        factor = cx_mul_rat(factor * ainv, Rat(i + 1));
        ep_add(out, m, i, factor);
      }
    }
  }
  return out;
}

Cx ep_eval(const EP& e, const Rat& t0, mpfr_prec_t p) {
  int maxj = 0, maxm = 0;
  for (auto& [key, c] : e) {
    maxj = std::max(maxj, key.second);
    maxm = std::max(maxm, key.first);
  }
  std::vector<Cx> tp{Cx::one(p)};
  Cx t0c = Cx::from_rat(t0, p);
  for (int j = 1; j <= maxj; ++j) tp.push_back(tp.back() * t0c);
  // q0 = e^{-2 pi t0}
  Real mtwo_pi_t0 = -(Real::pi(p) + Real::pi(p)) * Real::from_rat(t0, p);
  Cx q0 = cx_exp_real(mtwo_pi_t0);
  std::vector<Cx> qp{Cx::one(p)};
  for (int m = 1; m <= maxm; ++m) qp.push_back(qp.back() * q0);
  Cx acc = Cx::zero(p);
  for (auto& [key, c] : e) acc = acc + c * tp[key.second] * qp[key.first];
  return acc;
}

Cx F_impl(const std::vector<EisensteinForm>& forms, const std::vector<int>& s, const Rat& t0,
          int digits, int Mcap) {
  if (forms.size() != s.size()) throw std::invalid_argument("forms/args mismatch");
  size_t n = forms.size();
  mpfr_prec_t p = bits_for_digits(digits + 15);
  // pre-validate pole windows: consecutive argument sums must not vanish
  for (size_t i = 0; i < n; ++i) {
    int sum = 0, wsum = 0;
    for (size_t j = i; j < n; ++j) {
      sum += s[j];
      wsum += forms[j].weight();
      if (sum == 0) {
        std::vector<int> win;
        for (size_t k = i; k <= j; ++k) win.push_back(static_cast<int>(k) + 1);
        throw PoleError(win, wsum);
      }
    }
  }
  EP I;
  ep_add(I, 0, 0, Cx::one(p));
  for (size_t i = n; i-- > 0;) I = step(I, forms[i], s[i], Mcap, p);
  return ep_eval(I, t0, p);
}

Rat rat_of_double(double x) {
  // CLI-level t0 values are short decimals; reconstruct exactly
  auto r = rational_reconstruct(x, 1000000, 1e-12);
  if (!r) throw std::invalid_argument("t0 must be a short decimal");
  return *r;
}

}  // namespace

Cx mellin_F(const std::vector<EisensteinForm>& forms, const std::vector<int>& s, double t0,
            int digits) {
  int M = 0;
  for (auto& f : forms) M = std::max(M, f.M);
  return F_impl(forms, s, rat_of_double(t0), digits, std::max(M, 1));
}

Cx mellin_G(const std::vector<EisensteinForm>& forms, const std::vector<int>& s, double t0,
            int digits) {
  size_t k = forms.size();
  std::vector<EisensteinForm> rev(forms.rbegin(), forms.rend());
  std::vector<int> sprime;
  int lsum = 0;
  for (size_t i = k; i-- > 0;) {
    sprime.push_back(forms[i].weight() - s[i]);
    lsum += forms[i].l;
  }
  int M = 0;
  for (auto& f : forms) M = std::max(M, f.M);
  Rat t0r = rat_of_double(t0);
  Cx val = F_impl(rev, sprime, Rat(1) / t0r, digits, std::max(M, 1));
  int sign = ((lsum + static_cast<int>(k)) % 2 == 0) ? 1 : -1;
  return cx_mul_rat(val, Rat(sign));
}

namespace {

Cx l_star_once(const std::vector<EisensteinForm>& forms, const std::vector<int>& s, const Rat& t0,
               int digits, int Mcap) {
  size_t n = forms.size();
  mpfr_prec_t p = bits_for_digits(digits + 15);
  Cx acc = Cx::zero(p);
  for (size_t k = 0; k <= n; ++k) {
    //   G(f_1..f_k; s_1..s_k) * F(f_{k+1}..f_n; s_{k+1}..s_n)
    Cx g = Cx::one(p);
    if (k > 0) {
      std::vector<EisensteinForm> gf(forms.begin(), forms.begin() + k);
      std::vector<EisensteinForm> rev(gf.rbegin(), gf.rend());
      std::vector<int> sprime;
      int lsum = 0;
      for (size_t i = k; i-- > 0;) {
        sprime.push_back(forms[i].weight() - s[i]);
        lsum += forms[i].l;
      }
      g = cx_mul_rat(F_impl(rev, sprime, Rat(1) / t0, digits, Mcap),
                     Rat(((lsum + static_cast<int>(k)) % 2 == 0) ? 1 : -1));
    }
    Cx f = Cx::one(p);
    if (k < n) {
      std::vector<EisensteinForm> ff(forms.begin() + k, forms.end());
      std::vector<int> fs(s.begin() + k, s.end());
      f = F_impl(ff, fs, t0, digits, Mcap);
    }
    acc = acc + g * f;
  }
  return acc;
}

}  // namespace

MellinValue l_star(const std::vector<int>& ls, const std::vector<int>& s,
                   const MellinOptions& opt) {
  if (ls.size() != s.size()) throw std::invalid_argument("forms/args mismatch");
  if (ls.size() > 3) throw std::invalid_argument("depth > 3 out of scope");
  std::vector<EisensteinForm> forms;
  for (int l : ls) forms.push_back(eisenstein_q(l, opt.M));
  Rat t0 = rat_of_double(opt.t0);
  Cx v = l_star_once(forms, s, t0, opt.digits, opt.M);

  // q-truncation estimate: compare against a lower truncation
  int Mlo = std::max(opt.M - 20, opt.M / 2);
  std::vector<EisensteinForm> lo;
  for (int l : ls) lo.push_back(eisenstein_q(l, Mlo));
  Cx vlo = l_star_once(lo, s, t0, opt.digits, Mlo);
  v.err += 10.0 * (v - vlo).mag_upper();

  if (opt.cross_check_t0) {
    Rat t0b = t0 + rat(2, 5);
    Cx vb = l_star_once(forms, s, t0b, opt.digits, opt.M);
    double dev = (v - vb).mag_upper();
    v.err = std::max(v.err, dev);
  }

  MellinValue out;
  out.value = std::move(v);
  out.ls = ls;
  out.args = s;
  out.t0 = opt.t0;
  out.M = opt.M;
  return out;
}

MellinValue l_sharp(const std::vector<int>& ls, const std::vector<int>& ks,
                    const MellinOptions& opt) {
  if (ls.size() != ks.size()) throw std::invalid_argument("forms/args mismatch");
  for (size_t i = 0; i < ls.size(); ++i)
    if (ks[i] < 0 || ks[i] > 2 * ls[i])
      throw std::invalid_argument("k out of range 0..2l");
  std::vector<int> s;
  int lsum = 0, ksum = 0;
  for (size_t i = 0; i < ks.size(); ++i) {
    s.push_back(ks[i] + 1);
    lsum += ls[i];
    ksum += ks[i];
  }
  MellinValue v = l_star(ls, s, opt);
  int n = static_cast<int>(ls.size());
  mpfr_prec_t p = bits_for_digits(opt.digits + 15);
  Cx scale = cx_pow_si(Cx::two_pi_i(p), 2 * lsum + n);
  v.value = cx_mul_i_pow(v.value * scale, ksum + n);
  v.args = ks;
  return v;
}

std::vector<Rat> a2l(int L) {
  int N = 2 * L + 3;  // series order in x
  // h(x) = (e^{x/2} - e^{-x/2})/x = sum_{j} (x/2)^{2j} / (2j+1)!
  std::vector<Rat> h(N + 1, Rat(0));
  Rat term(1);
  for (int j = 0; 2 * j <= N; ++j) {
    if (j > 0) {
      // (1/4) / ((2j)(2j+1)) carried from the previous term
      term *= Rat(1, 4);
      term /= Rat(2 * j * (2 * j + 1));
    }
    h[2 * j] = term;
  }
  // invert h and square: (1/h)^2 = 1 + sum a_{2l} x^{2l+2}
  std::vector<Rat> inv(N + 1, Rat(0));
  inv[0] = Rat(1);
  for (int k = 1; k <= N; ++k) {
    Rat acc(0);
    for (int i = 1; i <= k; ++i) acc += h[i] * inv[k - i];
    inv[k] = -acc;
  }
  std::vector<Rat> sq(N + 1, Rat(0));
  for (int i = 0; i <= N; ++i)
    for (int j = 0; i + j <= N; ++j) sq[i + j] += inv[i] * inv[j];
  std::vector<Rat> out;
  for (int l = 0; 2 * l + 2 <= N; ++l) out.push_back(sq[2 * l + 2]);
  out.resize(L + 1);
  return out;
}

}  // namespace ell
