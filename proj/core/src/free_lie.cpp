#include "ell/free_lie.hpp"

namespace ell {

const NCSeries<Rat>& FreeLie::expand(const Word& w) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = expand_memo_.find(w);
    if (it != expand_memo_.end()) return it->second;
  }
  NCSeries<Rat> r(&alph_, maxdeg_);
  if (w.size() == 1) {
    r.add_term(w, Rat(1));
  } else {
    auto [u, v] = standard_factorization(w);
    const NCSeries<Rat>& eu = expand(u);
    const NCSeries<Rat>& ev = expand(v);
    r = eu * ev - ev * eu;
  }
  std::lock_guard<std::mutex> lock(mu_);
  return expand_memo_.emplace(w, std::move(r)).first->second;
}

const std::map<Word, Rat>& FreeLie::bracket_basis(const Word& u, const Word& v, int* sign) const {
  static const std::map<Word, Rat> kEmpty;
  *sign = 1;
  if (u == v) return kEmpty;
  const Word *a = &u, *b = &v;
  if (v < u) {
    a = &v;
    b = &u;
    *sign = -1;
  }
  auto key = std::make_pair(*a, *b);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = bracket_memo_.find(key);
    if (it != bracket_memo_.end()) return it->second;
  }
  std::map<Word, Rat> coords;
  if (alph_.degree(u) + alph_.degree(v) <= maxdeg_) {
    const NCSeries<Rat>& ea = expand(*a);
    const NCSeries<Rat>& eb = expand(*b);
    NCSeries<Rat> nc = ea * eb - eb * ea;
    LieSeries<Rat> lie = decompose<Rat>(nc);
    coords = std::move(lie.c);
  }
  std::lock_guard<std::mutex> lock(mu_);
  return bracket_memo_.emplace(std::move(key), std::move(coords)).first->second;
}

namespace {
struct BchCache {
  std::mutex mu;
  std::map<int, std::unique_ptr<FreeLie>> ctx;
  std::map<int, std::unique_ptr<LieSeries<Rat>>> formula;
};
BchCache& bch_cache() {
  static BchCache c;
  return c;
}
}  // namespace

const FreeLie& bch_context(int N) {
  auto& c = bch_cache();
  std::lock_guard<std::mutex> lock(c.mu);
  auto it = c.ctx.find(N);
  if (it == c.ctx.end())
    it = c.ctx.emplace(N, std::make_unique<FreeLie>(Alphabet::simple({"x", "y"}), N)).first;
  return *it->second;
}

const LieSeries<Rat>& bch_formula(int N) {
  const FreeLie& ctx = bch_context(N);
  auto& c = bch_cache();
  {
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.formula.find(N);
    if (it != c.formula.end()) return *it->second;
  }
  LieSeries<Rat> a = ctx.gen<Rat>(0, Rat(1), N);
  LieSeries<Rat> b = ctx.gen<Rat>(1, Rat(1), N);
  auto f = std::make_unique<LieSeries<Rat>>(ctx.bch(a, b));
  std::lock_guard<std::mutex> lock(c.mu);
  auto it = c.formula.find(N);
  if (it == c.formula.end()) it = c.formula.emplace(N, std::move(f)).first;
  return *it->second;
}

}  // namespace ell
