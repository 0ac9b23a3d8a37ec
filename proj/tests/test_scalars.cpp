#include <doctest.h>

#include "ell/hp.hpp"
#include "ell/rational.hpp"

using namespace ell;

TEST_CASE("rational basics") {
  Rat a = rat(1, 3), b = rat(1, 6);
  CHECK(rat_to_string(a + b) == "1/2");
  CHECK(rat_from_string("-4/6") == rat(-2, 3));
  CHECK(rat_to_string(rat(5)) == "5");
}

TEST_CASE("bernoulli numbers") {
  CHECK(bernoulli(0) == rat(1));
  CHECK(bernoulli(1) == rat(-1, 2));
  CHECK(bernoulli(2) == rat(1, 6));
  CHECK(bernoulli(4) == rat(-1, 30));
  CHECK(bernoulli(6) == rat(1, 42));
  CHECK(bernoulli(12) == rat(-691, 2730));
  CHECK(bernoulli(3) == rat(0));
}

TEST_CASE("rational reconstruction") {
  auto r = rational_reconstruct(5.0 / 6.0, 10000, 1e-12);
  REQUIRE(r.has_value());
  CHECK(*r == rat(5, 6));
  auto r2 = rational_reconstruct(0.8333333333333333, 10, 1e-12);
  CHECK(r2.has_value());
  auto none = rational_reconstruct(0.7390851332151607, 100, 1e-13);  // not a small rational
  CHECK(!none.has_value());
}

TEST_CASE("hp complex arithmetic with error bounds") {
  mpfr_prec_t p = bits_for_digits(40);
  Cx one = Cx::one(p);
  Cx third = Cx::from_rat(rat(1, 3), p);
  CHECK(third.err > 0);
  CHECK(third.err < 1e-40);
  Cx x = third + third + third;
  Cx diff = x - one;
  CHECK(diff.norm_upper() < 1e-39);

  Cx tpi = Cx::two_pi_i(p);
  Cx sq = tpi * tpi;  // -(2 pi)^2 ~ -39.478
  CHECK(sq.to_double_re() == doctest::Approx(-39.4784176044).epsilon(1e-9));
  CHECK(std::abs(sq.to_double_im()) < 1e-30);
  CHECK(sq.err < 1e-35);

  // i^k multiplication
  Cx z = cx_mul_i_pow(one, 2);
  CHECK(z.to_double_re() == doctest::Approx(-1.0));
  CHECK(cx_mul_i_pow(one, 7).to_double_im() == doctest::Approx(-1.0));

  // division
  Cx q = Cx::from_rat(rat(7, 2), p) / Cx::from_rat(rat(7, 4), p);
  CHECK(q.to_double_re() == doctest::Approx(2.0));
  CHECK(q.err < 1e-35);
}

TEST_CASE("hex persistence is bit-identical") {
  mpfr_prec_t p = bits_for_digits(30);
  Real pi = Real::pi(p);
  std::string h = pi.hex_string();
  Real back = Real::from_hex(h, p);
  CHECK(back == pi);
}
