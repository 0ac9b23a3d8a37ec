#pragma once

#include <map>
#include <string>
#include <vector>

#include "ell/hp.hpp"

namespace ell {

// index (k_1,...,k_m) in the increasing-summation convention,
//   zeta(k_1,...,k_m) = sum_{0 < n_1 < ... < n_m} 1/(n_1^{k_1} ... n_m^{k_m}),
// admissible iff k_m > 1. (The common decreasing convention lists exponents
// from the outermost variable first; this is its reversal.)
using MZVIndex = std::vector<int>;

bool mzv_admissible(const MZVIndex& idx);
int mzv_weight(const MZVIndex& idx);

// Certified evaluation: |returned - true| <= returned.err <= 10^-digits.
// Computed by splitting the iterated-integral representation at 1/2; every
// partial integral is a power series with coefficients in [0,1], so the
// truncation tail at z=1/2 is bounded by 2^-N exactly.
Cx mzv(const MZVIndex& idx, int digits);

// all admissible indices of weight <= max_weight (2^{w-2} of them per weight)
std::vector<MZVIndex> mzv_indices_upto(int max_weight);

class MZVTable {
 public:
  MZVTable() = default;
  MZVTable(int max_weight, int digits);

  int max_weight() const { return max_weight_; }
  int digits() const { return digits_; }
  const Cx& value(const MZVIndex& idx) const;
  size_t size() const { return values_.size(); }
  const std::map<MZVIndex, Cx>& entries() const { return values_; }

  // persistence (bit-identical reload); see cache.hpp for the file naming
  std::string to_json() const;
  static MZVTable from_json(const std::string& json);

 private:
  int max_weight_ = 0;
  int digits_ = 0;
  std::map<MZVIndex, Cx> values_;
};

// iterated integral over 0 < t_1 < ... < t_n < 1/2 of the word w in the
// letters 0 ~ dt/t, 1 ~ dt/(1-t), with w.front() innermost. Exposed for the
// shuffle-identity tests.
Cx iterated_integral_half(const std::vector<int>& w, int digits);

// the 01-word of an admissible increasing-convention index
std::vector<int> mzv_word(const MZVIndex& idx);

}  // namespace ell
