#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "ell/free_lie.hpp"

namespace ell {

// Coordinates of an element of a graded quotient Lie algebra w.r.t. the
// per-multidegree quotient bases of its table. Key = (multidegree, column).
template <class K>
struct QuotElem {
  int trunc = 0;
  std::map<std::pair<std::vector<int>, int>, K> c;

  bool is_zero() const { return c.empty(); }
  void add_term(const std::vector<int>& mdeg, int i, const K& v) {
    int tot = 0;
    for (int x : mdeg) tot += x;
    if (tot > trunc) return;
    auto key = std::make_pair(mdeg, i);
    auto it = c.find(key);
    if (it == c.end()) {
      if (!Ring<K>::is_zero(v)) c.emplace(std::move(key), v);
    } else {
      it->second = it->second + v;
      if (Ring<K>::is_zero(it->second)) c.erase(it);
    }
  }
};

template <class K>
QuotElem<K> operator+(const QuotElem<K>& a, const QuotElem<K>& b) {
  QuotElem<K> r = a;
  for (auto& [k, v] : b.c) r.add_term(k.first, k.second, v);
  return r;
}

template <class K>
QuotElem<K> operator-(const QuotElem<K>& a, const QuotElem<K>& b) {
  QuotElem<K> r = a;
  for (auto& [k, v] : b.c) r.add_term(k.first, k.second, -v);
  return r;
}

template <class K>
QuotElem<K> operator-(const QuotElem<K>& a) {
  QuotElem<K> r(a);
  for (auto& [k, v] : r.c) v = -v;
  return r;
}

template <class K>
QuotElem<K> quot_scale(const QuotElem<K>& a, const K& s) {
  QuotElem<K> r{a.trunc, {}};
  if (Ring<K>::is_zero(s)) return r;
  for (auto& [k, v] : a.c) {
    K t = v * s;
    if (!Ring<K>::is_zero(t)) r.c.emplace(k, std::move(t));
  }
  return r;
}

template <class K>
QuotElem<K> quot_scale_rat(const QuotElem<K>& a, const Rat& q) {
  QuotElem<K> r{a.trunc, {}};
  if (sgn(q) == 0) return r;
  for (auto& [k, v] : a.c) {
    K t = Ring<K>::mul_rat(v, q);
    if (!Ring<K>::is_zero(t)) r.c.emplace(k, std::move(t));
  }
  return r;
}

template <class K>
double quot_norm_upper(const QuotElem<K>& a) {
  double m = 0;
  for (auto& [k, v] : a.c) m = std::max(m, Ring<K>::norm_upper(v));
  return m;
}

template <class K>
double quot_err_bound(const QuotElem<K>& a) {
  double m = 0;
  for (auto& [k, v] : a.c) m = std::max(m, Ring<K>::err_of(v));
  return m;
}

struct PresentationSpec {
  std::string kind;  // "t" or "t_ell"
  int n = 2;
};

// Nilpotent-quotient table for a finitely presented graded Lie algebra.
// The relation ideal is computed per multidegree block, lazily:
//   I_kappa = sum_g [g, I_{kappa - deg g}] + relations of multidegree kappa,
// row-reduced over exact rationals. Quotient basis = non-pivot Lyndon words.
class QuotientTable {
 public:
  QuotientTable(PresentationSpec spec, int maxdeg);
  // custom homogeneous presentation (relations as Lyndon-coordinate maps)
  QuotientTable(Alphabet alph, std::vector<std::map<Word, Rat>> relations, int maxdeg);

  const PresentationSpec& spec() const { return spec_; }
  int maxdeg() const { return maxdeg_; }
  const FreeLie& cover() const { return *cover_; }
  const std::vector<LieSeries<Rat>>& relations() const { return relations_; }
  // eliminated generator names -> expression in the cover (degree 1)
  const std::map<std::string, LieSeries<Rat>>& eliminated() const { return eliminated_; }

  struct Block {
    std::vector<Word> cover_words;
    std::map<Word, int> index;
    // reduced row echelon form of the ideal component; each row normalized
    // to pivot coefficient 1 and fully back-substituted
    std::vector<std::vector<std::pair<int, Rat>>> rows;
    std::vector<int> pivot_of_row;
    std::vector<char> is_pivot;
    std::vector<int> quot_cols;
  };

  const Block& block(const std::vector<int>& mdeg) const;
  // built blocks (for serialization)
  std::vector<std::vector<int>> built_blocks() const;

  long quot_dim(const std::vector<int>& mdeg) const { return block(mdeg).quot_cols.size(); }
  long quot_dim_total(int d) const;
  std::vector<std::vector<int>> multidegrees_of_total(int d) const;

  // canonical projection; kernel is exactly the relation ideal to maxdeg
  template <class K>
  QuotElem<K> reduce(const LieSeries<K>& s) const {
    if (s.trunc > maxdeg_) throw std::invalid_argument("degree overflow beyond table degree");
    // group coordinates by multidegree block
    std::map<std::vector<int>, std::map<int, K>> per_block;
    for (auto& [w, v] : s.c) {
      auto mdeg = cover_->alphabet().multidegree(w);
      const Block& B = block(mdeg);
      auto it = B.index.find(w);
      if (it == B.index.end()) throw std::logic_error("word missing from block");
      per_block[mdeg].emplace(it->second, v);
    }
    QuotElem<K> out{s.trunc, {}};
    for (auto& [mdeg, coords] : per_block) {
      const Block& B = block(mdeg);
      std::map<int, K> v = std::move(coords);
      for (size_t r = 0; r < B.rows.size(); ++r) {
        auto pv = v.find(B.pivot_of_row[r]);
        if (pv == v.end()) continue;
        K cv = pv->second;
        if (Ring<K>::is_zero(cv)) continue;
        for (auto& [col, q] : B.rows[r]) {
          if (col == B.pivot_of_row[r]) {
            v.erase(col);
            continue;
          }
          K t = Ring<K>::mul_rat(cv, -q);
          auto it = v.find(col);
          if (it == v.end()) {
            if (!Ring<K>::is_zero(t)) v.emplace(col, std::move(t));
          } else {
            it->second = it->second + t;
            if (Ring<K>::is_zero(it->second)) v.erase(it);
          }
        }
      }
      for (int j = 0; j < static_cast<int>(B.quot_cols.size()); ++j) {
        auto it = v.find(B.quot_cols[j]);
        if (it != v.end() && !Ring<K>::is_zero(it->second)) out.add_term(mdeg, j, it->second);
      }
    }
    return out;
  }

  LieSeries<Rat> lift_basis(const std::vector<int>& mdeg, int i, int trunc) const;

  template <class K>
  LieSeries<K> lift(const QuotElem<K>& e) const {
    LieSeries<K> out(&cover_->alphabet(), e.trunc);
    for (auto& [key, v] : e.c) {
      const Block& B = block(key.first);
      out.add_term(B.cover_words[B.quot_cols[key.second]], v);
    }
    return out;
  }

  // structure constants: reduced bracket of two quotient basis elements
  const QuotElem<Rat>& struct_const(const std::vector<int>& m1, int i1,
                                    const std::vector<int>& m2, int i2, int* sign) const;

  // resolve a generator name (including eliminated ones) to a cover element
  LieSeries<Rat> generator(const std::string& name, int trunc) const;

 private:
  Block build_block(const std::vector<int>& mdeg) const;

  PresentationSpec spec_;
  int maxdeg_;
  std::unique_ptr<FreeLie> cover_;
  std::vector<LieSeries<Rat>> relations_;
  std::map<std::string, LieSeries<Rat>> eliminated_;
  std::vector<std::vector<int>> letter_mdeg_;

  mutable std::recursive_mutex mu_;
  mutable std::map<std::vector<int>, std::unique_ptr<Block>> blocks_;
  mutable std::map<std::tuple<std::vector<int>, int, std::vector<int>, int>,
                   std::unique_ptr<QuotElem<Rat>>>
      sc_memo_;
};

// Exact sparse RREF over Q. Rows come and go as sorted (col, coeff) vectors;
// returns reduced rows, their pivots and the pivot indicator per column.
void rref_rational(std::vector<std::vector<std::pair<int, Rat>>>& rows, int ncols,
                   std::vector<int>& pivot_of_row, std::vector<char>& is_pivot);

// Lie-algebra wrapper over a table: bracket / BCH / ad-series in the quotient.
template <class K>
class QuotAlg {
 public:
  QuotAlg(const QuotientTable& T, int trunc) : T_(&T), trunc_(trunc) {
    if (trunc > T.maxdeg()) throw std::invalid_argument("insufficient table degree");
  }

  const QuotientTable& table() const { return *T_; }
  int trunc() const { return trunc_; }
  QuotElem<K> zero() const { return QuotElem<K>{trunc_, {}}; }

  QuotElem<K> reduce(const LieSeries<K>& s) const { return T_->reduce(s); }

  QuotElem<K> bracket(const QuotElem<K>& a, const QuotElem<K>& b) const {
    QuotElem<K> r = zero();
    for (auto& [k1, c1] : a.c) {
      int d1 = total_of(k1.first);
      for (auto& [k2, c2] : b.c) {
        if (d1 + total_of(k2.first) > trunc_) continue;
        int sign = 1;
        const QuotElem<Rat>& sc = T_->struct_const(k1.first, k1.second, k2.first, k2.second, &sign);
        if (sc.is_zero()) continue;
        K prod = c1 * c2;
        for (auto& [k3, q] : sc.c)
          r.add_term(k3.first, k3.second, Ring<K>::mul_rat(prod, sign > 0 ? q : -q));
      }
    }
    return r;
  }

  QuotElem<K> bch(const QuotElem<K>& a, const QuotElem<K>& b) const {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const LieSeries<Rat>& formula = bch_formula(trunc_);
    const FreeLie& fctx = bch_context(trunc_);
    std::map<Word, QuotElem<K>> memo;
    auto val = [&](auto&& self, const Word& w) -> const QuotElem<K>& {
      auto it = memo.find(w);
      if (it != memo.end()) return it->second;
      QuotElem<K> r;
      if (w.size() == 1) {
        r = (w[0] == 0) ? a : b;
      } else {
        auto [u, v] = standard_factorization(w);
        r = bracket(self(self, u), self(self, v));
      }
      return memo.emplace(w, std::move(r)).first->second;
    };
    (void)fctx;
    QuotElem<K> out = zero();
    for (auto& [w, q] : formula.c) {
      const QuotElem<K>& t = val(val, w);
      for (auto& [k, v] : t.c) out.add_term(k.first, k.second, Ring<K>::mul_rat(v, q));
    }
    return out;
  }

  QuotElem<K> bch_list(const std::vector<QuotElem<K>>& xs) const {
    if (xs.empty()) throw std::invalid_argument("bch_list: empty");
    QuotElem<K> acc = xs[0];
    for (size_t i = 1; i < xs.size(); ++i) acc = bch(acc, xs[i]);
    return acc;
  }

  QuotElem<K> ad_series(const std::vector<Rat>& f, const QuotElem<K>& u,
                        const QuotElem<K>& v) const {
    QuotElem<K> acc = zero();
    QuotElem<K> t = v;
    for (size_t k = 0; k < f.size(); ++k) {
      if (t.is_zero()) break;
      if (sgn(f[k]) != 0) acc = acc + quot_scale_rat(t, f[k]);
      if (k + 1 < f.size()) t = bracket(u, t);
    }
    return acc;
  }

  QuotElem<K> Ad(const QuotElem<K>& g, const QuotElem<K>& v) const {
    std::vector<Rat> f;
    Rat fk(1);
    for (int k = 0; k <= trunc_; ++k) {
      f.push_back(fk);
      fk /= (k + 1);
    }
    return ad_series(f, g, v);
  }

 private:
  static int total_of(const std::vector<int>& m) {
    int t = 0;
    for (int x : m) t += x;
    return t;
  }
  const QuotientTable* T_;
  int trunc_;
};

// convert exact coordinates into K at a given working precision
template <class K>
LieSeries<K> lie_to_ring(const LieSeries<Rat>& s, mpfr_prec_t prec) {
  LieSeries<K> r(s.alph, s.trunc);
  for (auto& [w, q] : s.c) {
    if constexpr (Ring<K>::exact)
      r.c.emplace(w, q);
    else
      r.c.emplace(w, Cx::from_rat(q, prec));
  }
  return r;
}

template <class K>
mpfr_prec_t series_prec(const LieSeries<K>& s) {
  if constexpr (Ring<K>::exact) {
    return 64;
  } else {
    mpfr_prec_t p = 64;
    for (auto& [w, v] : s.c) p = std::max(p, v.prec());
    return p;
  }
}

}  // namespace ell
