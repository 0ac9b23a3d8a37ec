#include <doctest.h>

#include <cmath>

#include "ell/mellin.hpp"
#include "ell/mzv.hpp"

using namespace ell;

TEST_CASE("eisenstein q-expansions") {
  auto e4 = eisenstein_q(1, 4);
  CHECK(e4.c[0] == Rat(1));
  CHECK(e4.c[1] == Rat(240));
  CHECK(e4.c[2] == Rat(2160));  // 240 * sigma_3(2) = 240 * 9
  auto e6 = eisenstein_q(2, 3);
  CHECK(e6.c[1] == Rat(-504));
  for (int l = 1; l <= 4; ++l) CHECK(eisenstein_q(l, 2).c[0] == Rat(1));
}

TEST_CASE("a_{2l} generating function coefficients") {
  auto a = a2l(6);
  CHECK(a[0] == rat(-1, 12));
  CHECK(a[1] == rat(1, 240));
  // defining identity: (1 + sum a_{2l} x^{2l+2}) * ((e^{x/2}-e^{-x/2})/x)^2 = 1
  int N = 14;
  std::vector<Rat> h(N + 1, Rat(0));
  Rat term(1);
  for (int j = 0; 2 * j <= N; ++j) {
    if (j > 0) {
      term *= rat(1, 4);
      term /= Rat(2 * j * (2 * j + 1));
    }
    h[2 * j] = term;
  }
  std::vector<Rat> hh(N + 1, Rat(0));
  for (int i = 0; i <= N; ++i)
    for (int j = 0; i + j <= N; ++j) hh[i + j] += h[i] * h[j];
  std::vector<Rat> lhs(N + 1, Rat(0));
  lhs[0] = Rat(1);
  for (size_t l = 0; l < a.size(); ++l)
    if (2 * l + 2 <= static_cast<size_t>(N)) lhs[2 * l + 2] = a[l];
  std::vector<Rat> prod(N + 1, Rat(0));
  for (int i = 0; i <= N; ++i)
    for (int j = 0; i + j <= N; ++j) prod[i + j] += lhs[i] * hh[j];
  CHECK(prod[0] == Rat(1));
  for (int k = 1; k <= N; ++k) CHECK(prod[k] == Rat(0));
}

TEST_CASE("F: constant form, continued value") {
  EisensteinForm one;
  one.l = 0;
  one.M = 0;
  one.c = {Rat(1)};
  Cx v = mellin_F({one}, {1}, 1.0, 25);
  CHECK(v.to_double_re() == doctest::Approx(-1.0).epsilon(1e-20));
  // -t0^s / s at s = 2, t0 = 1.5
  Cx v2 = mellin_F({one}, {2}, 1.5, 25);
  CHECK(v2.to_double_re() == doctest::Approx(-1.125).epsilon(1e-18));
}

TEST_CASE("F against direct quadrature of the decaying part") {
  // F_{t0}^{E4}(s) = int_{t0}^inf (E4(it)-1) t^{s-1} dt - t0^s/s for s in
  // scope; the oracle integrates the exponentially decaying part by Simpson
  // rule (tail beyond T=9 is ~ 240 e^{-2 pi 9} ~ 1e-22).
  double t0 = 1.0;
  int s = 2;
  auto E4 = eisenstein_q(1, 60);
  auto decaying = [&](double t) {
    double q = std::exp(-2 * M_PI * t);
    double acc = 0;
    for (int n = E4.M; n >= 1; --n) acc = (acc + E4.c[n].get_d()) * q;
    return acc;  // E4(it) - 1
  };
  double T = 9.0;
  int N = 20000;
  double h = (T - t0) / N, acc = 0;
  for (int i = 0; i <= N; ++i) {
    double t = t0 + i * h;
    double f = decaying(t) * std::pow(t, s - 1);
    double w = (i == 0 || i == N) ? 1 : (i % 2 ? 4 : 2);
    acc += w * f;
  }
  acc *= h / 3;
  double oracle = acc - std::pow(t0, s) / s;
  Cx fval = mellin_F({E4}, {s}, t0, 30);
  CHECK(std::abs(fval.to_double_re() - oracle) < 1e-9);
  CHECK(std::abs(fval.to_double_im()) < 1e-25);

  // and the modularity identity relating G to F, at s=3, t0=1.3
  Cx g = mellin_G({E4}, {3}, 1.3, 30);
  Cx f13 = mellin_F({E4}, {1}, 1.0 / 1.3, 30);
  CHECK((g - f13).mag_upper() < 1e-10);
}

TEST_CASE("L*: t0 independence") {
  MellinOptions opt;
  opt.digits = 25;
  opt.t0 = 0.7;
  auto a = l_star({1}, {2}, opt);
  opt.t0 = 1.3;
  auto b = l_star({1}, {2}, opt);
  CHECK((a.value - b.value).mag_upper() < 1e-9);

  opt.t0 = 0.7;
  auto c = l_star({1, 2}, {3, 5}, opt);
  opt.t0 = 1.3;
  auto d = l_star({1, 2}, {3, 5}, opt);
  CHECK((c.value - d.value).mag_upper() < 1e-9);
}

TEST_CASE("L*_{E4}(2) equals the classical factorization value") {
  // 240 (2pi)^-2 Gamma(2) zeta(2) zeta(-1) = -5/6
  MellinOptions opt;
  opt.digits = 30;
  auto v = l_star({1}, {2}, opt);
  mpfr_prec_t p = bits_for_digits(40);
  Cx pi = Cx::pi(p);
  Cx ref = cx_mul_rat(Cx::one(p), Rat(240));
  ref = ref / (pi * pi * cx_mul_rat(Cx::one(p), Rat(4)));       // (2pi)^-2
  ref = ref * cx_mul_rat(pi * pi, rat(1, 6));                   // zeta(2)
  ref = cx_mul_rat(ref, rat(-1, 12));                           // zeta(-1)
  CHECK((v.value - ref).mag_upper() < 1e-10);
  CHECK(std::abs(v.value.to_double_re() + 5.0 / 6.0) < 1e-12);
  CHECK(std::abs(v.value.to_double_im()) < 1e-20);
}

TEST_CASE("L*: single-form symmetry s <-> w-s") {
  MellinOptions opt;
  opt.digits = 30;
  auto a = l_star({1}, {1}, opt);
  auto b = l_star({1}, {3}, opt);
  CHECK((a.value - b.value).mag_upper() < 1e-10);
}

TEST_CASE("Zagier identities for L#") {
  MellinOptions opt;
  opt.digits = 30;
  auto l1 = l_sharp({1}, {0}, opt);  // L#_1(1)
  auto l3 = l_sharp({1}, {2}, opt);  // L#_1(3)
  CHECK((l1.value + l3.value).mag_upper() < 1e-9);

  // L#_1(1) = -240 zeta(3)
  Cx z3 = mzv({3}, 30);
  Cx ratio = l1.value / z3;
  CHECK(std::abs(ratio.to_double_im()) < 1e-12);
  auto rec = rational_reconstruct(ratio.to_double_re(), 10000, 1e-9);
  REQUIRE(rec.has_value());
  CHECK(*rec == Rat(-240));

  // L#_1(2) / (2 pi i)^3 = 5/6 (in (2 pi i)^{2l+1} Q)
  auto l2 = l_sharp({1}, {1}, opt);
  mpfr_prec_t p = bits_for_digits(40);
  Cx ratio2 = l2.value / cx_pow_si(Cx::two_pi_i(p), 3);
  CHECK(std::abs(ratio2.to_double_im()) < 1e-12);
  auto rec2 = rational_reconstruct(ratio2.to_double_re(), 10000, 1e-9);
  REQUIRE(rec2.has_value());
  CHECK(*rec2 == rat(5, 6));
}

TEST_CASE("depth-2 shuffle: L#_1(k) L#_1(k') = L#_{1,1}(k,k') + L#_{1,1}(k',k)") {
  MellinOptions opt;
  opt.digits = 25;
  for (int k = 0; k <= 2; ++k) {
    for (int kp = 0; kp <= 2; ++kp) {
      auto a = l_sharp({1}, {k}, opt);
      auto b = l_sharp({1}, {kp}, opt);
      auto ab = l_sharp({1, 1}, {k, kp}, opt);
      auto ba = l_sharp({1, 1}, {kp, k}, opt);
      Cx lhs = a.value * b.value;
      Cx rhs = ab.value + ba.value;
      double errsum = lhs.err + ab.value.err + ba.value.err;
      INFO("k=" << k << " k'=" << kp);
      CHECK((lhs - rhs).mag_upper() < std::max(10.0 * errsum, 1e-9));
    }
  }
}

TEST_CASE("pole rejection names the window and weight") {
  auto E4 = eisenstein_q(1, 30);
  try {
    mellin_G({E4}, {4}, 1.0, 20);
    FAIL("expected PoleError");
  } catch (const PoleError& e) {
    CHECK(e.window == std::vector<int>{1});
    CHECK(e.weight_sum == 4);
  }
  MellinOptions opt;
  CHECK_THROWS_AS((void)l_sharp({1}, {3}, opt), std::invalid_argument);  // k > 2l
}

TEST_CASE("monotone q-refinement") {
  MellinOptions opt;
  opt.digits = 25;
  opt.M = 40;
  auto lo = l_star({1, 1}, {2, 3}, opt);
  opt.M = 80;
  auto hi = l_star({1, 1}, {2, 3}, opt);
  CHECK((lo.value - hi.value).mag_upper() <= lo.value.err);
  CHECK((lo.value - hi.value).mag_upper() < 1e-20);
}
