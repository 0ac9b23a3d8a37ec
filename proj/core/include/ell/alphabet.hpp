#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ell {

// A word in the free monoid on the alphabet's letters, by letter index.
// basic_string gives SSO, lexicographic comparison and cheap concatenation.
using Word = std::basic_string<unsigned char>;

struct Symbol {
  std::string name;
  std::vector<int> mdeg;  // multidegree; total must be >= 1
};

// Ordered generator list; the order fixes the Lyndon order.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Symbol> syms) : syms_(std::move(syms)) {
    if (syms_.empty()) throw std::invalid_argument("empty alphabet");
    mdim_ = static_cast<int>(syms_[0].mdeg.size());
    for (size_t i = 0; i < syms_.size(); ++i) {
      const auto& s = syms_[i];
      if (static_cast<int>(s.mdeg.size()) != mdim_)
        throw std::invalid_argument("inconsistent multidegree dimensions");
      int tot = std::accumulate(s.mdeg.begin(), s.mdeg.end(), 0);
      if (tot < 1) throw std::invalid_argument("symbol of total degree < 1: " + s.name);
      totals_.push_back(tot);
      if (!index_.emplace(s.name, i).second)
        throw std::invalid_argument("duplicate symbol: " + s.name);
    }
  }

  // all letters of total degree 1, 1-dim multidegree
  static Alphabet simple(const std::vector<std::string>& names) {
    std::vector<Symbol> syms;
    for (auto& n : names) syms.push_back({n, {1}});
    return Alphabet(std::move(syms));
  }

  size_t size() const { return syms_.size(); }
  int mdim() const { return mdim_; }
  const Symbol& symbol(size_t i) const { return syms_.at(i); }
  int letter_degree(unsigned char l) const { return totals_.at(l); }
  size_t index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::invalid_argument("unknown symbol: " + name);
    return it->second;
  }
  bool has(const std::string& name) const { return index_.count(name) != 0; }

  int degree(const Word& w) const {
    int d = 0;
    for (unsigned char l : w) d += totals_.at(l);
    return d;
  }
  std::vector<int> multidegree(const Word& w) const {
    std::vector<int> m(mdim_, 0);
    for (unsigned char l : w)
      for (int j = 0; j < mdim_; ++j) m[j] += syms_.at(l).mdeg[j];
    return m;
  }

  std::string word_str(const Word& w) const {
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
      if (i) s += ".";
      s += syms_.at(w[i]).name;
    }
    return s.empty() ? "1" : s;
  }

  // structural identity; series with different alphabets never mix
  bool operator==(const Alphabet& o) const {
    if (syms_.size() != o.syms_.size() || mdim_ != o.mdim_) return false;
    for (size_t i = 0; i < syms_.size(); ++i)
      if (syms_[i].name != o.syms_[i].name || syms_[i].mdeg != o.syms_[i].mdeg) return false;
    return true;
  }

 private:
  std::vector<Symbol> syms_;
  std::vector<int> totals_;
  std::map<std::string, size_t> index_;
  int mdim_ = 1;
};

}  // namespace ell
