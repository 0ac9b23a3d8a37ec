#pragma once

#include <vector>

#include "ell/rational.hpp"

namespace ell {

// Eisenstein series E_{2l+2}, normalized to 1 at i*infinity:
//   E_w(tau) = 1 - (2w/B_w) sum_{n>=1} sigma_{w-1}(n) q^n
struct EisensteinForm {
  int l = 1;               // weight = 2l+2
  int M = 0;               // q-truncation
  std::vector<Rat> c;      // c[0..M], c[0] = 1

  int weight() const { return 2 * l + 2; }
};

EisensteinForm eisenstein_q(int l, int M);

// sigma_{k}(n) = sum of k-th powers of divisors
mpz_class sigma_k(int k, int n);

}  // namespace ell
