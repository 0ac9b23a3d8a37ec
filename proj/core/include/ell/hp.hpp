#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "ell/rational.hpp"

namespace ell {

inline mpfr_prec_t bits_for_digits(int digits) {
  return static_cast<mpfr_prec_t>(digits * 3.3219281 + 16);
}

// Arbitrary-precision real, round-to-nearest-even.
class Real {
 public:
  explicit Real(mpfr_prec_t bits = 64) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, 2); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    return *this;
  }
  Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  static Real from_rat(const Rat& q, mpfr_prec_t bits);
  static Real from_si(long n, mpfr_prec_t bits);
  static Real from_double(double d, mpfr_prec_t bits);
  static Real pi(mpfr_prec_t bits);

  bool is_zero() const { return mpfr_zero_p(v_); }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // upper bound on |value| as a double
  double abs_upper() const;
  std::string dec_string(int digits) const;
  std::string hex_string() const;          // exact, for bit-identical persistence
  static Real from_hex(const std::string& s, mpfr_prec_t bits);

 private:
  mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator-(const Real& a);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
bool operator==(const Real& a, const Real& b);
Real real_exp(const Real& x);
Real real_sqrt(const Real& x);
Real real_pow_si(const Real& x, long e);
Real real_abs(const Real& x);
int real_cmp(const Real& a, const Real& b);

// High-precision complex scalar with a tracked first-order error bound:
// |stored - true| <= err is maintained through all arithmetic.
class Cx {
 public:
  Real re, im;
  double err = 0.0;

  Cx() = default;
  Cx(Real r, Real i, double e) : re(std::move(r)), im(std::move(i)), err(e) {}
  explicit Cx(mpfr_prec_t bits) : re(bits), im(bits), err(0.0) {}

  static Cx zero(mpfr_prec_t bits) { return Cx(bits); }
  static Cx one(mpfr_prec_t bits);
  static Cx from_rat(const Rat& q, mpfr_prec_t bits);
  static Cx from_parts(const Rat& re, const Rat& im, mpfr_prec_t bits);
  static Cx i_unit(mpfr_prec_t bits);
  static Cx two_pi_i(mpfr_prec_t bits);  // 2*pi*i
  static Cx pi(mpfr_prec_t bits);

  mpfr_prec_t prec() const { return re.prec(); }
  bool is_exact_zero() const { return re.is_zero() && im.is_zero() && err == 0.0; }
  // upper bound on |value| (modulus)
  double mag_upper() const;
  // upper bound on |value| + err; this is the coefficient "norm" used in residuals
  double norm_upper() const { return mag_upper() + err; }
  double to_double_re() const { return re.to_double(); }
  double to_double_im() const { return im.to_double(); }
  std::string str(int digits = 20) const;
};

Cx operator+(const Cx& a, const Cx& b);
Cx operator-(const Cx& a, const Cx& b);
Cx operator-(const Cx& a);
Cx operator*(const Cx& a, const Cx& b);
Cx operator/(const Cx& a, const Cx& b);
Cx cx_mul_rat(const Cx& a, const Rat& q);
Cx cx_div_ui(const Cx& a, unsigned long n);
Cx cx_mul_i_pow(const Cx& a, long k);  // multiply by i^k
Cx cx_exp_real(const Real& x);         // e^x for real x, with error bound
Cx cx_pow_si(const Cx& a, long e);

}  // namespace ell
