#pragma once

#include <stdexcept>
#include <vector>

#include "ell/eisenstein.hpp"
#include "ell/hp.hpp"

namespace ell {

// Regularized iterated Mellin transforms of (Eisenstein) modular forms, for
// positive integer arguments. All integrals reduce to exact antiderivatives
// of t^j e^{-2 pi m t}; the m=0 power parts use the analytic continuation
//   int_t^inf u^{s-1} du := -t^s / s,
// which hits a pole exactly when a window sum of arguments vanishes.
struct PoleError : std::runtime_error {
  std::vector<int> window;  // offending window of argument indices (1-based)
  int weight_sum;
  PoleError(std::vector<int> win, int wsum)
      : std::runtime_error("pole hit: window argument sum vanishes"),
        window(std::move(win)),
        weight_sum(wsum) {}
};

struct MellinValue {
  Cx value;
  std::vector<int> ls;   // form parameters l_i (weights 2l_i+2)
  std::vector<int> args;
  double t0 = 1.0;
  int M = 0;             // q-truncation used
};

struct MellinOptions {
  int digits = 30;
  int M = 60;         // q-truncation
  double t0 = 1.0;
  bool cross_check_t0 = false;  // for L*: recompute at a second t_0
};

// F_{t0}^{f_1..f_n}(s_1..s_n); f_i with t_i, t_1 innermost, integrated to inf
Cx mellin_F(const std::vector<EisensteinForm>& forms, const std::vector<int>& s, double t0,
            int digits);

// G via the modularity identity
//   G_{t0}^{f_1..f_k}(s) = (-1)^{l_1+..+l_k+k} F_{1/t0}^{f_k..f_1}(2l_k+2-s_k, ..., 2l_1+2-s_1);
// never computed by quadrature near 0.
Cx mellin_G(const std::vector<EisensteinForm>& forms, const std::vector<int>& s, double t0,
            int digits);

// L* = sum_k G(first k) * F(rest); independent of t_0. The returned error
// bound combines arithmetic error with an empirical q-truncation estimate
// (10x the value change when lowering M by 20).
MellinValue l_star(const std::vector<int>& ls, const std::vector<int>& s, const MellinOptions& opt);

// L# normalization: (2 pi i)^{2 sum l_i + n} i^{sum k_i + n} L*(k+1)
// where args are passed as the k_i (so the L* arguments are k_i + 1)
MellinValue l_sharp(const std::vector<int>& ls, const std::vector<int>& ks,
                    const MellinOptions& opt);

// Taylor coefficients a_0..a_{2L} of (x/(e^{x/2}-e^{-x/2}))^2 = 1 + sum a_{2l} x^{2l+2}
std::vector<Rat> a2l(int L);

}  // namespace ell
