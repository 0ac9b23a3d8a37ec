#include "ell/mzv.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ell {

bool mzv_admissible(const MZVIndex& idx) {
  if (idx.empty()) return false;
  for (int k : idx)
    if (k < 1) return false;
  return idx.back() > 1;
}

int mzv_weight(const MZVIndex& idx) {
  int w = 0;
  for (int k : idx) w += k;
  return w;
}

std::vector<int> mzv_word(const MZVIndex& idx) {
  // zeta_inc(k_1,...,k_m) = I(1; 1 0^{k_1-1} 1 0^{k_2-1} ... 1 0^{k_m-1}),
  // first letter innermost
  std::vector<int> w;
  for (int k : idx) {
    w.push_back(1);
    for (int j = 1; j < k; ++j) w.push_back(0);
  }
  return w;
}

Cx iterated_integral_half(const std::vector<int>& w, int digits) {
  mpfr_prec_t p = bits_for_digits(digits + 10);
  int N = static_cast<int>((digits + 8) * 3.3219281) + 8;

  // series coefficients of I(z; w); all in [0,1]
  std::vector<Real> c(N + 1, Real(p));
  mpfr_set_si(c[0].get(), 1, MPFR_RNDN);
  for (int letter : w) {
    std::vector<Real> d(N + 1, Real(p));
    if (letter == 0) {
      // multiply by dz/z and integrate: d_n = c_n / n
      for (int n = 1; n <= N; ++n) mpfr_div_si(d[n].get(), c[n].get(), n, MPFR_RNDN);
    } else {
      // multiply by dz/(1-z) and integrate: d_n = (sum_{m<n} c_m) / n
      Real acc(p);
      for (int n = 1; n <= N; ++n) {
        mpfr_add(acc.get(), acc.get(), c[n - 1].get(), MPFR_RNDN);
        mpfr_div_si(d[n].get(), acc.get(), n, MPFR_RNDN);
      }
    }
    c = std::move(d);
  }
  // evaluate at 1/2 by Horner
  Real val(p);
  for (int n = N; n >= 0; --n) {
    mpfr_div_2ui(val.get(), val.get(), 1, MPFR_RNDN);
    mpfr_add(val.get(), val.get(), c[n].get(), MPFR_RNDN);
  }
  Cx out(p);
  out.re = val;
  // tail: coefficients <= 1 termwise, so sum_{n>N} c_n 2^-n <= 2^-N;
  // rounding: O(N * |w|) nearest operations on values <= 2
  double tail = std::ldexp(1.0, -N);
  double rounding = (static_cast<double>(N) * (w.size() + 2) + 16) * std::ldexp(2.0, -static_cast<int>(p) + 1);
  out.err = tail + rounding;
  return out;
}

Cx mzv(const MZVIndex& idx, int digits) {
  if (!mzv_admissible(idx)) throw std::invalid_argument("inadmissible MZV index (k_m = 1?)");
  std::vector<int> w = mzv_word(idx);
  size_t n = w.size();
  mpfr_prec_t p = bits_for_digits(digits + 10);
  // Hoelder convolution at 1/2:
  // I(1; w) = sum_{j=0}^{n} I(1/2; w[j..]) * I(1/2; dual(reverse(w[..j])))
  Cx acc = Cx::zero(p);
  for (size_t j = 0; j <= n; ++j) {
    std::vector<int> prefix(w.begin(), w.begin() + j);  // the part near 0
    std::vector<int> rest(w.begin() + j, w.end());      // near 1: t -> 1-t
    std::reverse(rest.begin(), rest.end());
    for (int& l : rest) l = 1 - l;
    Cx a = prefix.empty() ? Cx::one(p) : iterated_integral_half(prefix, digits);
    Cx b = rest.empty() ? Cx::one(p) : iterated_integral_half(rest, digits);
    acc = acc + a * b;
  }
  if (acc.err > std::pow(10.0, -digits))
    throw std::runtime_error("mzv: error bound exceeds requested precision");
  return acc;
}

std::vector<MZVIndex> mzv_indices_upto(int max_weight) {
  std::vector<MZVIndex> out;
  // compositions of w with last part >= 2
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining) -> void {
    if (remaining == 0) {
      if (!cur.empty() && cur.back() >= 2) out.push_back(cur);
      return;
    }
    for (int k = 1; k <= remaining; ++k) {
      cur.push_back(k);
      self(self, remaining - k);
      cur.pop_back();
    }
  };
  for (int w = 2; w <= max_weight; ++w) rec(rec, w);
  std::sort(out.begin(), out.end(), [](const MZVIndex& a, const MZVIndex& b) {
    int wa = mzv_weight(a), wb = mzv_weight(b);
    if (wa != wb) return wa < wb;
    return a < b;
  });
  return out;
}

MZVTable::MZVTable(int max_weight, int digits) : max_weight_(max_weight), digits_(digits) {
  if (max_weight < 2) throw std::invalid_argument("max_weight < 2");
  for (auto& idx : mzv_indices_upto(max_weight)) values_.emplace(idx, mzv(idx, digits));
}

const Cx& MZVTable::value(const MZVIndex& idx) const {
  auto it = values_.find(idx);
  if (it == values_.end()) throw std::out_of_range("MZV not in table");
  return it->second;
}

std::string MZVTable::to_json() const {
  nlohmann::json j;
  j["max_weight"] = max_weight_;
  j["digits"] = digits_;
  nlohmann::json entries = nlohmann::json::array();
  for (auto& [idx, v] : values_) {
    nlohmann::json e;
    e["index"] = idx;
    e["hex"] = v.re.hex_string();
    e["dec"] = v.re.dec_string(digits_);
    e["err"] = v.err;
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j.dump(1);
}

MZVTable MZVTable::from_json(const std::string& json) {
  nlohmann::json j = nlohmann::json::parse(json);
  MZVTable t;
  t.max_weight_ = j.at("max_weight").get<int>();
  t.digits_ = j.at("digits").get<int>();
  mpfr_prec_t p = bits_for_digits(t.digits_ + 10);
  for (auto& e : j.at("entries")) {
    MZVIndex idx = e.at("index").get<MZVIndex>();
    Cx v(p);
    v.re = Real::from_hex(e.at("hex").get<std::string>(), p);
    v.err = e.at("err").get<double>();
    t.values_.emplace(std::move(idx), std::move(v));
  }
  return t;
}

}  // namespace ell
