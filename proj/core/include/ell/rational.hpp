#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <optional>
#include <string>

namespace ell {

// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
// positive denominator) after every arithmetic operation.
using Rat = mpq_class;

inline Rat rat(long num, unsigned long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// "p/q" (or "p" when q=1), the serialization format used everywhere.
std::string rat_to_string(const Rat& q);
Rat rat_from_string(const std::string& s);

// n-th Bernoulli number, B1 = -1/2 convention.
Rat bernoulli(unsigned n);

// binomial(n, k) as an exact rational
Rat binomial_rat(unsigned long n, unsigned long k);

// Continued-fraction rational reconstruction: the unique rational p/q with
// q <= max_den within distance `tol` of x, if one exists.
std::optional<Rat> rational_reconstruct(double x, unsigned long max_den, double tol);

}  // namespace ell
