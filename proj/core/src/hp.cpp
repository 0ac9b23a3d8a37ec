#include "ell/hp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>
#include <vector>

namespace ell {

namespace {

constexpr double kErrFloor = 1e-290;

double sanitize(double e) {
  if (e < 0 || std::isnan(e)) throw std::logic_error("negative error bound");
  if (e != 0.0 && e < kErrFloor) return kErrFloor;
  if (std::isinf(e)) throw std::overflow_error("error bound overflow");
  return e;
}

// upper bound on one rounding of a value of magnitude <= m at precision p
double ulp_of(double m, mpfr_prec_t p) {
  if (m == 0.0) return 0.0;
  double u = std::ldexp(m, -static_cast<int>(std::min<mpfr_prec_t>(p, 1000)) + 3);
  return std::max(u, kErrFloor);
}

mpfr_prec_t join_prec(const Cx& a, const Cx& b) { return std::max(a.prec(), b.prec()); }

}  // namespace

Real Real::from_rat(const Rat& q, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_set_q(r.get(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real Real::from_si(long n, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_set_si(r.get(), n, MPFR_RNDN);
  return r;
}

Real Real::from_double(double d, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_set_d(r.get(), d, MPFR_RNDN);
  return r;
}

Real Real::pi(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

double Real::abs_upper() const {
  double d = mpfr_get_d(v_, MPFR_RNDA);
  return std::abs(d);
}

std::string Real::dec_string(int digits) const {
  if (mpfr_zero_p(v_)) return "0";
  char* s = nullptr;
  // %.*Rg gives shortest faithful decimal at the requested digit count
  int n = mpfr_asprintf(&s, "%.*RNg", digits, v_);
  if (n < 0) throw std::runtime_error("mpfr_asprintf failed");
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

std::string Real::hex_string() const {
  char* s = nullptr;
  int n = mpfr_asprintf(&s, "%RNa", v_);
  if (n < 0) throw std::runtime_error("mpfr_asprintf failed");
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

Real Real::from_hex(const std::string& s, mpfr_prec_t bits) {
  Real r(bits);
  if (mpfr_set_str(r.get(), s.c_str(), 0, MPFR_RNDN) != 0)
    throw std::invalid_argument("bad hex float: " + s);
  return r;
}

#define ELL_REAL_BINOP(op, fn)                                     \
  Real operator op(const Real& a, const Real& b) {                 \
    Real r(std::max(a.prec(), b.prec()));                          \
    fn(r.get(), a.get(), b.get(), MPFR_RNDN);                      \
    return r;                                                      \
  }

ELL_REAL_BINOP(+, mpfr_add)
ELL_REAL_BINOP(-, mpfr_sub)
ELL_REAL_BINOP(*, mpfr_mul)
ELL_REAL_BINOP(/, mpfr_div)
#undef ELL_REAL_BINOP

Real operator-(const Real& a) {
  Real r(a.prec());
  mpfr_neg(r.get(), a.get(), MPFR_RNDN);
  return r;
}

bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }

Real real_exp(const Real& x) {
  Real r(x.prec());
  mpfr_exp(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real real_sqrt(const Real& x) {
  Real r(x.prec());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real real_pow_si(const Real& x, long e) {
  Real r(x.prec());
  mpfr_pow_si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

Real real_abs(const Real& x) {
  Real r(x.prec());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

int real_cmp(const Real& a, const Real& b) { return mpfr_cmp(a.get(), b.get()); }

Cx Cx::one(mpfr_prec_t bits) {
  Cx c(bits);
  mpfr_set_si(c.re.get(), 1, MPFR_RNDN);
  return c;
}

Cx Cx::from_rat(const Rat& q, mpfr_prec_t bits) {
  Cx c(bits);
  c.re = Real::from_rat(q, bits);
  c.err = ulp_of(c.re.abs_upper(), bits);
  if (mpfr_cmp_q(c.re.get(), q.get_mpq_t()) == 0) c.err = 0.0;  // exactly representable
  return c;
}

Cx Cx::from_parts(const Rat& re, const Rat& im, mpfr_prec_t bits) {
  Cx c = Cx::from_rat(re, bits);
  Cx ci(bits);
  ci.im = Real::from_rat(im, bits);
  ci.err = ulp_of(ci.im.abs_upper(), bits);
  if (mpfr_cmp_q(ci.im.get(), im.get_mpq_t()) == 0) ci.err = 0.0;
  return c + ci;
}

Cx Cx::i_unit(mpfr_prec_t bits) {
  Cx c(bits);
  mpfr_set_si(c.im.get(), 1, MPFR_RNDN);
  return c;
}

Cx Cx::two_pi_i(mpfr_prec_t bits) {
  Cx c(bits);
  mpfr_const_pi(c.im.get(), MPFR_RNDN);
  mpfr_mul_ui(c.im.get(), c.im.get(), 2, MPFR_RNDN);
  c.err = ulp_of(c.im.abs_upper(), bits) * 2;
  return c;
}

Cx Cx::pi(mpfr_prec_t bits) {
  Cx c(bits);
  mpfr_const_pi(c.re.get(), MPFR_RNDN);
  c.err = ulp_of(c.re.abs_upper(), bits);
  return c;
}

double Cx::mag_upper() const {
  double r = re.abs_upper(), i = im.abs_upper();
  return std::hypot(r, i) * (1.0 + 1e-14);
}

std::string Cx::str(int digits) const {
  std::string s = re.dec_string(digits);
  if (!im.is_zero()) s += (im.sign() >= 0 ? " + " : " - ") + real_abs(im).dec_string(digits) + "i";
  char buf[40];
  std::snprintf(buf, sizeof buf, " (err<=%.3g)", err);
  return s + buf;
}

Cx operator+(const Cx& a, const Cx& b) {
  mpfr_prec_t p = join_prec(a, b);
  Cx r(p);
  r.re = a.re + b.re;
  r.im = a.im + b.im;
  r.err = sanitize(a.err + b.err + ulp_of(r.mag_upper(), p));
  return r;
}

Cx operator-(const Cx& a, const Cx& b) {
  mpfr_prec_t p = join_prec(a, b);
  Cx r(p);
  r.re = a.re - b.re;
  r.im = a.im - b.im;
  r.err = sanitize(a.err + b.err + ulp_of(r.mag_upper(), p));
  return r;
}

Cx operator-(const Cx& a) {
  Cx r = a;
  r.re = -r.re;
  r.im = -r.im;
  return r;
}

Cx operator*(const Cx& a, const Cx& b) {
  mpfr_prec_t p = join_prec(a, b);
  Cx r(p);
  r.re = a.re * b.re - a.im * b.im;
  r.im = a.re * b.im + a.im * b.re;
  double ma = a.mag_upper(), mb = b.mag_upper();
  r.err = sanitize(ma * b.err + mb * a.err + a.err * b.err + 6 * ulp_of(r.mag_upper() + ma * mb, p));
  return r;
}

Cx operator/(const Cx& a, const Cx& b) {
  mpfr_prec_t p = join_prec(a, b);
  double mb = b.mag_upper();
  // lower bound of |b|
  double lb = std::max(mb - 2 * b.err, 0.0);
  Real n = b.re * b.re + b.im * b.im;
  if (n.is_zero() || lb <= 0.0) throw std::domain_error("division by (near-)zero complex value");
  Cx r(p);
  r.re = (a.re * b.re + a.im * b.im) / n;
  r.im = (a.im * b.re - a.re * b.im) / n;
  double ma = a.mag_upper();
  double q = ma / lb;
  r.err = sanitize((a.err + q * b.err) / lb * (1.0 + 1e-12) + 6 * ulp_of(q, p));
  return r;
}

Cx cx_mul_rat(const Cx& a, const Rat& q) {
  mpfr_prec_t p = a.prec();
  Cx r(p);
  Real f = Real::from_rat(q, p);
  r.re = a.re * f;
  r.im = a.im * f;
  double mf = std::abs(mpq_get_d(q.get_mpq_t())) * (1 + 1e-14) + 1e-300;
  r.err = sanitize(a.err * mf + 3 * ulp_of(r.mag_upper(), p));
  return r;
}

Cx cx_div_ui(const Cx& a, unsigned long n) {
  if (n == 0) throw std::domain_error("division by zero");
  mpfr_prec_t p = a.prec();
  Cx r(p);
  mpfr_div_ui(r.re.get(), a.re.get(), n, MPFR_RNDN);
  mpfr_div_ui(r.im.get(), a.im.get(), n, MPFR_RNDN);
  r.err = sanitize(a.err / static_cast<double>(n) + 2 * ulp_of(r.mag_upper(), p));
  return r;
}

Cx cx_mul_i_pow(const Cx& a, long k) {
  long m = ((k % 4) + 4) % 4;
  Cx r = a;
  switch (m) {
    case 0: return r;
    case 1: r.re = -a.im; r.im = a.re; return r;   // *i
    case 2: r.re = -a.re; r.im = -a.im; return r;  // *-1
    default: r.re = a.im; r.im = -a.re; return r;  // *-i
  }
}

Cx cx_exp_real(const Real& x) {
  mpfr_prec_t p = x.prec();
  Cx r(p);
  r.re = real_exp(x);
  r.err = sanitize(2 * ulp_of(r.re.abs_upper(), p));
  return r;
}

Cx cx_pow_si(const Cx& a, long e) {
  if (e < 0) {
    return Cx::one(a.prec()) / cx_pow_si(a, -e);
  }
  Cx acc = Cx::one(a.prec());
  Cx base = a;
  unsigned long n = static_cast<unsigned long>(e);
  while (n) {
    if (n & 1) acc = acc * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return acc;
}

}  // namespace ell
