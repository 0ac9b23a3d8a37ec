#include "ell/eisenstein.hpp"

#include <stdexcept>

namespace ell {

mpz_class sigma_k(int k, int n) {
  mpz_class acc = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d) continue;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
    acc += p;
  }
  return acc;
}

EisensteinForm eisenstein_q(int l, int M) {
  if (l < 1 || M < 1) throw std::invalid_argument("eisenstein_q: l >= 1, M >= 1");
  EisensteinForm f;
  f.l = l;
  f.M = M;
  int w = f.weight();
  Rat factor = Rat(-2 * w) / bernoulli(static_cast<unsigned>(w));
  f.c.resize(M + 1);
  f.c[0] = Rat(1);
  for (int n = 1; n <= M; ++n) f.c[n] = factor * Rat(sigma_k(w - 1, n));
  return f;
}

}  // namespace ell
