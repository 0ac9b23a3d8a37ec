#include "ell/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace ell {

std::string rat_to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat rat_from_string(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  q.canonicalize();
  return q;
}

Rat binomial_rat(unsigned long n, unsigned long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rat(b);
}

Rat bernoulli(unsigned n) {
  static std::vector<Rat> table{Rat(1)};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  // sum_{j=0}^{m} C(m+1, j) B_j = 0
  while (table.size() <= n) {
    unsigned m = static_cast<unsigned>(table.size());
    Rat acc(0);
    for (unsigned j = 0; j < m; ++j) acc += binomial_rat(m + 1, j) * table[j];
    table.push_back(-acc / binomial_rat(m + 1, m));
  }
  return table[n];
}

std::optional<Rat> rational_reconstruct(double x, unsigned long max_den, double tol) {
  long long hm1 = 1, km1 = 0;
  long long h = static_cast<long long>(std::floor(x)), k = 1;
  double frac = x - std::floor(x);
  for (int it = 0; it < 64; ++it) {
    if (static_cast<unsigned long>(std::llabs(k)) <= max_den &&
        std::abs(static_cast<double>(h) / static_cast<double>(k) - x) <= tol) {
      Rat q(mpz_class(static_cast<long>(h)), mpz_class(static_cast<long>(k)));
      q.canonicalize();
      return q;
    }
    if (frac < 1e-18) break;
    double v = 1.0 / frac;
    double a = std::floor(v);
    frac = v - a;
    long long hn = static_cast<long long>(a) * h + hm1;
    long long kn = static_cast<long long>(a) * k + km1;
    hm1 = h; km1 = k; h = hn; k = kn;
    if (static_cast<unsigned long>(std::llabs(k)) > max_den * 100000ull) break;
  }
  return std::nullopt;
}

}  // namespace ell
