#pragma once

#include <cmath>
#include <cstdlib>

#include "ell/hp.hpp"
#include "ell/rational.hpp"

namespace ell {

// Coefficient-ring adapter. All series/Lie machinery is generic over K via
// these hooks; K is either Rat (exact) or Cx (tracked-precision complex).
template <class K>
struct Ring;

template <>
struct Ring<Rat> {
  static constexpr bool exact = true;
  static Rat zero() { return Rat(0); }
  static Rat one() { return Rat(1); }
  static Rat from_rat(const Rat& q) { return q; }
  static Rat mul_rat(const Rat& a, const Rat& q) { return a * q; }
  static bool is_zero(const Rat& a) { return sgn(a) == 0; }
  // |a| as double, rounded up a touch; used only for reporting
  static double norm_upper(const Rat& a) { return std::abs(a.get_d()) * (1 + 1e-14); }
  static double err_of(const Rat&) { return 0.0; }
};

template <>
struct Ring<Cx> {
  static constexpr bool exact = false;
  // contextual precision: Cx ops inherit operand precision, so zero()/one()
  // here are only used as additive/multiplicative seeds and get promoted.
  static Cx zero() { return Cx(64); }
  static Cx one() { return Cx::one(64); }
  static Cx from_rat(const Rat& q) { return Cx::from_rat(q, 64); }
  static Cx mul_rat(const Cx& a, const Rat& q) { return cx_mul_rat(a, q); }
  static bool is_zero(const Cx& a) { return a.is_exact_zero(); }
  static double norm_upper(const Cx& a) { return a.norm_upper(); }
  static double err_of(const Cx& a) { return a.err; }
};

}  // namespace ell
