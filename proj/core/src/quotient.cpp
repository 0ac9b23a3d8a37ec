#include "ell/quotient.hpp"

#include <algorithm>

namespace ell {

namespace {

std::string strand_name(const char* base, int i, char sign) {
  return std::string(base) + std::to_string(i) + sign;
}

}  // namespace

QuotientTable::QuotientTable(Alphabet alph, std::vector<std::map<Word, Rat>> relations, int maxdeg)
    : spec_{"custom", 0}, maxdeg_(maxdeg) {
  cover_ = std::make_unique<FreeLie>(std::move(alph), maxdeg_);
  const Alphabet& A = cover_->alphabet();
  for (size_t l = 0; l < A.size(); ++l) letter_mdeg_.push_back(A.symbol(l).mdeg);
  for (auto& r : relations) {
    LieSeries<Rat> rl(&A, maxdeg_);
    for (auto& [w, q] : r) rl.add_term(w, q);
    if (!rl.is_zero()) relations_.push_back(std::move(rl));
  }
}

QuotientTable::QuotientTable(PresentationSpec spec, int maxdeg)
    : spec_(std::move(spec)), maxdeg_(maxdeg) {
  if (spec_.n < 2) throw std::invalid_argument("n < 2");
  std::vector<Symbol> syms;
  if (spec_.kind == "t") {
    for (int i = 1; i <= spec_.n; ++i)
      for (int j = i + 1; j <= spec_.n; ++j)
        syms.push_back({"t" + std::to_string(i) + std::to_string(j), {1}});
    cover_ = std::make_unique<FreeLie>(Alphabet(syms), maxdeg_);
  } else if (spec_.kind == "t_ell") {
    for (int i = 1; i < spec_.n; ++i) {
      syms.push_back({strand_name("x", i, '+'), {1, 0}});
      syms.push_back({strand_name("x", i, '-'), {0, 1}});
    }
    cover_ = std::make_unique<FreeLie>(Alphabet(syms), maxdeg_);
  } else {
    throw std::invalid_argument("unknown presentation kind: " + spec_.kind);
  }

  const Alphabet& A = cover_->alphabet();
  for (size_t l = 0; l < A.size(); ++l) letter_mdeg_.push_back(A.symbol(l).mdeg);

  int reldeg = std::min(maxdeg_, 3);
  auto push_rel = [&](LieSeries<Rat> r) {
    if (!r.is_zero()) relations_.push_back(std::move(r));
  };

  if (spec_.kind == "t") {
    auto t = [&](int i, int j) {
      if (i > j) std::swap(i, j);
      return cover_->gen<Rat>(A.index_of("t" + std::to_string(i) + std::to_string(j)), Rat(1),
                              reldeg);
    };
    for (int i = 1; i <= spec_.n; ++i)
      for (int j = i + 1; j <= spec_.n; ++j)
        for (int k = j + 1; k <= spec_.n; ++k) {
          push_rel(cover_->bracket(t(i, j), t(i, k) + t(j, k)));
          push_rel(cover_->bracket(t(i, k), t(i, j) + t(j, k)));
          push_rel(cover_->bracket(t(j, k), t(i, j) + t(i, k)));
        }
    // [t_ij, t_kl] = 0 for disjoint pairs
    for (int i = 1; i <= spec_.n; ++i)
      for (int j = i + 1; j <= spec_.n; ++j)
        for (int k = i + 1; k <= spec_.n; ++k)
          for (int l = k + 1; l <= spec_.n; ++l) {
            if (k == j || l == j) continue;
            push_rel(cover_->bracket(t(i, j), t(k, l)));
          }
  } else {
    // x_n^{+-} eliminated: x_n = -(x_1 + ... + x_{n-1})
    {
      LieSeries<Rat> ep(&A, 1), em(&A, 1);
      for (int k = 1; k < spec_.n; ++k) {
        ep.add_term(Word(1, static_cast<unsigned char>(A.index_of(strand_name("x", k, '+')))),
                    Rat(-1));
        em.add_term(Word(1, static_cast<unsigned char>(A.index_of(strand_name("x", k, '-')))),
                    Rat(-1));
      }
      eliminated_[strand_name("x", spec_.n, '+')] = std::move(ep);
      eliminated_[strand_name("x", spec_.n, '-')] = std::move(em);
    }
    auto gen_of = [&](int i, char s) {
      LieSeries<Rat> r(&A, reldeg);
      if (i < spec_.n) {
        r.add_term(Word(1, static_cast<unsigned char>(A.index_of(strand_name("x", i, s)))), Rat(1));
      } else {
        for (int k = 1; k < spec_.n; ++k)
          r.add_term(Word(1, static_cast<unsigned char>(A.index_of(strand_name("x", k, s)))),
                     Rat(-1));
      }
      return r;
    };
    auto xs = [&](int i) { return gen_of(i, '+'); };
    auto ys = [&](int i) { return gen_of(i, '-'); };
    for (int i = 1; i <= spec_.n; ++i)
      for (int j = i + 1; j <= spec_.n; ++j) {
        push_rel(cover_->bracket(xs(i), xs(j)));
        push_rel(cover_->bracket(ys(i), ys(j)));
        push_rel(cover_->bracket(xs(i), ys(j)) - cover_->bracket(xs(j), ys(i)));
      }
    for (int i = 1; i <= spec_.n; ++i)
      for (int j = i + 1; j <= spec_.n; ++j) {
        auto tij = cover_->bracket(xs(i), ys(j));
        for (int k = 1; k <= spec_.n; ++k) {
          if (k == i || k == j) continue;
          push_rel(cover_->bracket(xs(k), tij));
          push_rel(cover_->bracket(ys(k), tij));
        }
      }
  }
}

LieSeries<Rat> QuotientTable::generator(const std::string& name, int trunc) const {
  const Alphabet& A = cover_->alphabet();
  if (A.has(name)) return cover_->gen<Rat>(A.index_of(name), Rat(1), trunc);
  auto it = eliminated_.find(name);
  if (it == eliminated_.end()) throw std::invalid_argument("unknown generator: " + name);
  LieSeries<Rat> r(&A, trunc);
  for (auto& [w, q] : it->second.c) r.add_term(w, q);
  return r;
}

void rref_rational(std::vector<std::vector<std::pair<int, Rat>>>& rows, int ncols,
                   std::vector<int>& pivot_of_row, std::vector<char>& is_pivot) {
  using Row = std::vector<std::pair<int, Rat>>;
  std::vector<Row> ech;
  std::vector<int> ech_pivot;
  std::map<int, size_t> by_pivot;

  auto axpy = [](Row& r, const Rat& c, const Row& s) {
    Row out;
    out.reserve(r.size() + s.size());
    size_t i = 0, j = 0;
    while (i < r.size() || j < s.size()) {
      if (j == s.size() || (i < r.size() && r[i].first < s[j].first)) {
        out.push_back(std::move(r[i++]));
      } else if (i == r.size() || s[j].first < r[i].first) {
        out.emplace_back(s[j].first, Rat(c * s[j].second));
        ++j;
      } else {
        Rat v = r[i].second + c * s[j].second;
        if (sgn(v) != 0) out.emplace_back(r[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    r = std::move(out);
  };

  for (auto& incoming : rows) {
    Row r = std::move(incoming);
    std::sort(r.begin(), r.end());
    while (!r.empty()) {
      int lead = r.front().first;
      auto it = by_pivot.find(lead);
      if (it == by_pivot.end()) {
        Rat inv = Rat(1) / r.front().second;
        for (auto& [c, v] : r) v *= inv;
        by_pivot[lead] = ech.size();
        ech.push_back(std::move(r));
        ech_pivot.push_back(lead);
        break;
      }
      Rat c = -r.front().second;
      axpy(r, c, ech[it->second]);
    }
  }
  rows.clear();

  // back-substitution pass: eliminate pivot columns in echelon order
  std::vector<size_t> order(ech.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return ech_pivot[a] < ech_pivot[b]; });
  for (size_t oi = order.size(); oi-- > 0;) {
    size_t i = order[oi];
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto& [col, v] : ech[i]) {
        if (col == ech_pivot[i]) continue;
        auto it = by_pivot.find(col);
        if (it == by_pivot.end()) continue;
        Rat c = -v;
        axpy(ech[i], c, ech[it->second]);
        changed = true;
        break;
      }
    }
  }

  pivot_of_row.clear();
  is_pivot.assign(ncols, 0);
  std::vector<Row> final_rows;
  for (size_t oi = 0; oi < order.size(); ++oi) {
    size_t i = order[oi];
    final_rows.push_back(std::move(ech[i]));
    pivot_of_row.push_back(ech_pivot[i]);
    is_pivot[ech_pivot[i]] = 1;
  }
  rows = std::move(final_rows);
}

QuotientTable::Block QuotientTable::build_block(const std::vector<int>& mdeg) const {
  Block B;
  B.cover_words = cover_->lyndon_block(mdeg);
  for (size_t i = 0; i < B.cover_words.size(); ++i) B.index[B.cover_words[i]] = static_cast<int>(i);

  std::vector<std::vector<std::pair<int, Rat>>> span;
  auto add_span = [&](const std::map<Word, Rat>& coords) {
    std::vector<std::pair<int, Rat>> row;
    for (auto& [w, q] : coords) {
      auto it = B.index.find(w);
      if (it == B.index.end()) throw std::logic_error("span vector leaves block");
      row.emplace_back(it->second, q);
    }
    if (!row.empty()) span.push_back(std::move(row));
  };

  for (auto& r : relations_)
    if (cover_->alphabet().multidegree(r.c.begin()->first) == mdeg) add_span(r.c);

  const Alphabet& A = cover_->alphabet();
  for (size_t l = 0; l < A.size(); ++l) {
    std::vector<int> low(mdeg.size());
    bool ok = true;
    int tot = 0;
    for (size_t j = 0; j < mdeg.size(); ++j) {
      low[j] = mdeg[j] - letter_mdeg_[l][j];
      if (low[j] < 0) ok = false;
      tot += low[j];
    }
    if (!ok || tot < 1) continue;
    const Block& lower = block(low);
    Word g(1, static_cast<unsigned char>(l));
    for (size_t r = 0; r < lower.rows.size(); ++r) {
      LieSeries<Rat> v(&A, maxdeg_);
      for (auto& [col, q] : lower.rows[r]) v.add_term(lower.cover_words[col], q);
      LieSeries<Rat> gv = cover_->bracket_word(v, g, true);  // [g, v]
      add_span(gv.c);
    }
  }

  int ncols = static_cast<int>(B.cover_words.size());
  rref_rational(span, ncols, B.pivot_of_row, B.is_pivot);
  B.rows = std::move(span);
  for (int c = 0; c < ncols; ++c)
    if (!B.is_pivot[c]) B.quot_cols.push_back(c);
  return B;
}

const QuotientTable::Block& QuotientTable::block(const std::vector<int>& mdeg) const {
  {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = blocks_.find(mdeg);
    if (it != blocks_.end()) return *it->second;
  }
  auto built = std::make_unique<Block>(build_block(mdeg));
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = blocks_.find(mdeg);
  if (it == blocks_.end()) it = blocks_.emplace(mdeg, std::move(built)).first;
  return *it->second;
}

std::vector<std::vector<int>> QuotientTable::built_blocks() const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  std::vector<std::vector<int>> out;
  for (auto& [k, v] : blocks_) out.push_back(k);
  return out;
}

std::vector<std::vector<int>> QuotientTable::multidegrees_of_total(int d) const {
  std::vector<std::vector<int>> out;
  int m = cover_->alphabet().mdim();
  if (m == 1) {
    out.push_back({d});
  } else if (m == 2) {
    for (int p = 0; p <= d; ++p) out.push_back({p, d - p});
  } else {
    throw std::logic_error("unsupported multidegree dimension");
  }
  return out;
}

long QuotientTable::quot_dim_total(int d) const {
  long acc = 0;
  for (auto& mdeg : multidegrees_of_total(d)) acc += quot_dim(mdeg);
  return acc;
}

LieSeries<Rat> QuotientTable::lift_basis(const std::vector<int>& mdeg, int i, int trunc) const {
  const Block& B = block(mdeg);
  LieSeries<Rat> r(&cover_->alphabet(), trunc);
  r.add_term(B.cover_words[B.quot_cols.at(i)], Rat(1));
  return r;
}

const QuotElem<Rat>& QuotientTable::struct_const(const std::vector<int>& m1, int i1,
                                                 const std::vector<int>& m2, int i2,
                                                 int* sign) const {
  static const QuotElem<Rat> kZero{0, {}};
  *sign = 1;
  auto k1 = std::make_pair(m1, i1), k2 = std::make_pair(m2, i2);
  if (k1 == k2) return kZero;
  if (k2 < k1) {
    std::swap(k1, k2);
    *sign = -1;
  }
  auto key = std::make_tuple(k1.first, k1.second, k2.first, k2.second);
  {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = sc_memo_.find(key);
    if (it != sc_memo_.end()) return *it->second;
  }
  const Block& B1 = block(k1.first);
  const Block& B2 = block(k2.first);
  const Word& w1 = B1.cover_words[B1.quot_cols.at(k1.second)];
  const Word& w2 = B2.cover_words[B2.quot_cols.at(k2.second)];
  auto result = std::make_unique<QuotElem<Rat>>();
  result->trunc = maxdeg_;
  if (cover_->alphabet().degree(w1) + cover_->alphabet().degree(w2) <= maxdeg_) {
    int s = 1;
    const auto& bb = cover_->bracket_basis(w1, w2, &s);
    LieSeries<Rat> v(&cover_->alphabet(), maxdeg_);
    for (auto& [w, q] : bb) v.add_term(w, s > 0 ? q : -q);
    *result = reduce(v);
  }
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = sc_memo_.find(key);
  if (it == sc_memo_.end()) it = sc_memo_.emplace(std::move(key), std::move(result)).first;
  return *it->second;
}

}  // namespace ell
