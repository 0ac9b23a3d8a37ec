#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "ell/lyndon.hpp"
#include "ell/nc.hpp"

namespace ell {

// Degree-truncated element of the free Lie algebra on `alph`, in coordinates
// w.r.t. the Lyndon basis (keys are Lyndon words; the basis element is the
// standard bracketing of the key).
template <class K>
struct LieSeries {
  const Alphabet* alph = nullptr;
  int trunc = 0;
  std::map<Word, K> c;

  LieSeries() = default;
  LieSeries(const Alphabet* a, int n) : alph(a), trunc(n) {}

  bool is_zero() const { return c.empty(); }

  K coeff(const Word& w) const {
    auto it = c.find(w);
    return it == c.end() ? Ring<K>::zero() : it->second;
  }

  void add_term(const Word& w, const K& v) {
    if (alph->degree(w) > trunc) return;
    auto it = c.find(w);
    if (it == c.end()) {
      if (!Ring<K>::is_zero(v)) c.emplace(w, v);
    } else {
      it->second = it->second + v;
      if (Ring<K>::is_zero(it->second)) c.erase(it);
    }
  }

  int min_degree() const {
    int d = trunc + 1;
    for (auto& [w, v] : c) d = std::min(d, alph->degree(w));
    return d;
  }
};

template <class K>
LieSeries<K> operator+(const LieSeries<K>& a, const LieSeries<K>& b) {
  detail::check_compat(a.alph, a.trunc, b.alph, b.trunc);
  LieSeries<K> r = a;
  for (auto& [w, v] : b.c) r.add_term(w, v);
  return r;
}

template <class K>
LieSeries<K> operator-(const LieSeries<K>& a, const LieSeries<K>& b) {
  detail::check_compat(a.alph, a.trunc, b.alph, b.trunc);
  LieSeries<K> r = a;
  for (auto& [w, v] : b.c) r.add_term(w, -v);
  return r;
}

template <class K>
LieSeries<K> operator-(const LieSeries<K>& a) {
  LieSeries<K> r(a.alph, a.trunc);
  for (auto& [w, v] : a.c) r.c.emplace(w, -v);
  return r;
}

template <class K>
LieSeries<K> lie_scale(const LieSeries<K>& a, const K& s) {
  LieSeries<K> r(a.alph, a.trunc);
  if (Ring<K>::is_zero(s)) return r;
  for (auto& [w, v] : a.c) r.add_term(w, v * s);
  return r;
}

template <class K>
LieSeries<K> lie_scale_rat(const LieSeries<K>& a, const Rat& q) {
  LieSeries<K> r(a.alph, a.trunc);
  if (sgn(q) == 0) return r;
  for (auto& [w, v] : a.c) r.add_term(w, Ring<K>::mul_rat(v, q));
  return r;
}

// component of total degree d
template <class K>
LieSeries<K> lie_component(const LieSeries<K>& a, int d) {
  LieSeries<K> r(a.alph, a.trunc);
  for (auto& [w, v] : a.c)
    if (a.alph->degree(w) == d) r.c.emplace(w, v);
  return r;
}

template <class K>
double lie_norm_upper(const LieSeries<K>& a) {
  double m = 0;
  for (auto& [w, v] : a.c) m = std::max(m, Ring<K>::norm_upper(v));
  return m;
}

template <class K>
double lie_err_bound(const LieSeries<K>& a) {
  double m = 0;
  for (auto& [w, v] : a.c) m = std::max(m, Ring<K>::err_of(v));
  return m;
}

// Workspace for one free Lie algebra: Lyndon tables and memoized basis
// expansions / brackets. Immutable from the caller's point of view; the
// internal caches are mutex-guarded so const methods are thread-safe.
class FreeLie {
 public:
  FreeLie(Alphabet alph, int maxdeg) : alph_(std::move(alph)), maxdeg_(maxdeg) {
    all_ = lyndon_words_upto(alph_, maxdeg_);
    by_degree_.assign(maxdeg_ + 1, {});
    for (auto& w : all_) by_degree_[alph_.degree(w)].push_back(w);
  }

  const Alphabet& alphabet() const { return alph_; }
  int maxdeg() const { return maxdeg_; }
  const std::vector<Word>& lyndon(int deg) const { return by_degree_.at(deg); }
  const std::vector<Word>& lyndon_all() const { return all_; }

  std::vector<Word> lyndon_block(const std::vector<int>& mdeg) const {
    std::vector<Word> out;
    for (auto& w : all_)
      if (alph_.multidegree(w) == mdeg) out.push_back(w);
    return out;
  }

  // NC expansion of the standard bracketing of a Lyndon word (integer coeffs)
  const NCSeries<Rat>& expand(const Word& w) const;

  // [b_u, b_v] in Lyndon coordinates
  const std::map<Word, Rat>& bracket_basis(const Word& u, const Word& v, int* sign) const;

  template <class K>
  LieSeries<K> gen(size_t letter, const K& coeff, int trunc) const {
    LieSeries<K> r(&alph_, trunc);
    Word w(1, static_cast<unsigned char>(letter));
    r.add_term(w, coeff);
    return r;
  }

  template <class K>
  NCSeries<K> to_nc(const LieSeries<K>& s) const {
    NCSeries<K> r(&alph_, s.trunc);
    for (auto& [w, v] : s.c)
      for (auto& [nw, q] : expand(w).c) r.add_term(nw, Ring<K>::mul_rat(v, q));
    return r;
  }

  // Inverse of to_nc on Lie elements: triangular peeling w.r.t. lex order.
  // Non-Lie content is returned via `dust` (max coefficient norm) when given,
  // and throws in exact mode when dust is null.
  template <class K>
  LieSeries<K> decompose(const NCSeries<K>& s, double* dust = nullptr) const {
    LieSeries<K> out(&alph_, s.trunc);
    NCSeries<K> rem = s;
    double worst = 0.0;
    while (!rem.c.empty()) {
      auto node = rem.c.extract(rem.c.begin());
      const Word w = node.key();
      const K cv = node.mapped();
      if (w.empty() || !is_lyndon(w)) {
        double n = Ring<K>::norm_upper(cv);
        worst = std::max(worst, n);
        if constexpr (Ring<K>::exact) {
          if (dust == nullptr) throw std::domain_error("not a Lie element (word " + alph_.word_str(w) + ")");
        }
        continue;
      }
      out.add_term(w, cv);
      for (auto& [nw, q] : expand(w).c) {
        if (nw == w) continue;
        rem.add_term(nw, Ring<K>::mul_rat(cv, -q));
      }
    }
    if (dust) *dust = worst;
    return out;
  }

  template <class K>
  LieSeries<K> bracket(const LieSeries<K>& a, const LieSeries<K>& b) const {
    detail::check_compat(a.alph, a.trunc, b.alph, b.trunc);
    LieSeries<K> r(&alph_, a.trunc);
    for (auto& [u, cu] : a.c) {
      int du = alph_.degree(u);
      for (auto& [v, cv] : b.c) {
        if (du + alph_.degree(v) > a.trunc) continue;
        int sign = 1;
        const auto& bb = bracket_basis(u, v, &sign);
        if (bb.empty()) continue;
        K prod = cu * cv;
        for (auto& [w, q] : bb) r.add_term(w, Ring<K>::mul_rat(prod, sign > 0 ? q : -q));
      }
    }
    return r;
  }

  // [series, basis word] without materializing the basis element as a K-series
  template <class K>
  LieSeries<K> bracket_word(const LieSeries<K>& a, const Word& v, bool word_on_left) const {
    LieSeries<K> r(&alph_, a.trunc);
    int dv = alph_.degree(v);
    for (auto& [u, cu] : a.c) {
      if (alph_.degree(u) + dv > a.trunc) continue;
      int sign = 1;
      const auto& bb = bracket_basis(u, v, &sign);
      if (word_on_left) sign = -sign;
      for (auto& [w, q] : bb) r.add_term(w, Ring<K>::mul_rat(cu, sign > 0 ? q : -q));
    }
    return r;
  }

  template <class K>
  NCSeries<K> exp(const LieSeries<K>& s) const {
    return nc_exp(to_nc(s));
  }

  template <class K>
  LieSeries<K> log(const NCSeries<K>& s, double* dust = nullptr) const {
    return decompose(nc_log(s), dust);
  }

  // log(exp(a) exp(b)) truncated; free-algebra route
  template <class K>
  LieSeries<K> bch(const LieSeries<K>& a, const LieSeries<K>& b) const {
    detail::check_compat(a.alph, a.trunc, b.alph, b.trunc);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    double dust = 0;
    return log(exp(a) * exp(b), &dust);
  }

  template <class K>
  LieSeries<K> bch_list(const std::vector<LieSeries<K>>& xs) const {
    if (xs.empty()) throw std::invalid_argument("bch_list: empty");
    LieSeries<K> acc = xs[0];
    for (size_t i = 1; i < xs.size(); ++i) acc = bch(acc, xs[i]);
    return acc;
  }

  // sum_k f_k (ad u)^k (v); f given by rational coefficients f[0..]
  template <class K>
  LieSeries<K> ad_series(const std::vector<Rat>& f, const LieSeries<K>& u,
                         const LieSeries<K>& v) const {
    LieSeries<K> acc(&alph_, v.trunc);
    LieSeries<K> t = v;
    for (size_t k = 0; k < f.size(); ++k) {
      if (t.is_zero()) break;
      if (sgn(f[k]) != 0) acc = acc + lie_scale_rat(t, f[k]);
      if (k + 1 < f.size()) t = bracket(u, t);
    }
    return acc;
  }

  // e^{ad g}(v)
  template <class K>
  LieSeries<K> Ad(const LieSeries<K>& g, const LieSeries<K>& v) const {
    std::vector<Rat> f;
    Rat fk(1);
    for (int k = 0; k <= v.trunc; ++k) {
      f.push_back(fk);
      fk /= (k + 1);
    }
    return ad_series(f, g, v);
  }

 private:
  Alphabet alph_;
  int maxdeg_;
  std::vector<Word> all_;
  std::vector<std::vector<Word>> by_degree_;

  mutable std::mutex mu_;
  mutable std::map<Word, NCSeries<Rat>> expand_memo_;
  mutable std::map<std::pair<Word, Word>, std::map<Word, Rat>> bracket_memo_;
};

// Lie algebra morphism determined by generator images (which live in `dst`).
// Standard-factorization recursion; images must share one truncation.
template <class K>
LieSeries<K> substitute_lie(const FreeLie& src, const LieSeries<K>& s, const FreeLie& dst,
                            const std::vector<LieSeries<K>>& images) {
  if (images.size() != src.alphabet().size()) throw std::invalid_argument("missing image");
  int trunc = images.empty() ? s.trunc : images[0].trunc;
  for (auto& im : images) detail::check_compat(im.alph, im.trunc, images[0].alph, trunc);
  std::map<Word, LieSeries<K>> memo;
  auto val = [&](auto&& self, const Word& w) -> const LieSeries<K>& {
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    LieSeries<K> r;
    if (w.size() == 1) {
      r = images[w[0]];
    } else {
      auto [u, v] = standard_factorization(w);
      r = dst.bracket(self(self, u), self(self, v));
    }
    return memo.emplace(w, std::move(r)).first->second;
  };
  LieSeries<K> out(&dst.alphabet(), trunc);
  for (auto& [w, cv] : s.c) {
    const LieSeries<K>& img = val(val, w);
    for (auto& [w2, q] : img.c) out.add_term(w2, cv * q);
  }
  return out;
}

// Graded derivation of the free Lie algebra, by generator images.
template <class K>
struct Derivation {
  const FreeLie* ctx = nullptr;
  std::vector<LieSeries<K>> images;  // one per letter, common truncation

  int trunc() const { return images.at(0).trunc; }

  // smallest amount by which the derivation raises total degree (>= -?);
  // degree-1 generators map to images of min_degree >= 1
  int min_raise() const {
    int r = 1 << 20;
    for (size_t i = 0; i < images.size(); ++i) {
      if (images[i].is_zero()) continue;
      r = std::min(r, images[i].min_degree() - ctx->alphabet().letter_degree(static_cast<unsigned char>(i)));
    }
    return r;
  }

  LieSeries<K> apply(const LieSeries<K>& s) const {
    std::map<Word, LieSeries<K>> memo;
    auto val = [&](auto&& self, const Word& w) -> const LieSeries<K>& {
      auto it = memo.find(w);
      if (it != memo.end()) return it->second;
      LieSeries<K> r;
      if (w.size() == 1) {
        r = images[w[0]];
      } else {
        auto [u, v] = standard_factorization(w);
        // D([u,v]) = [D(u), v] + [u, D(v)]
        r = ctx->bracket_word(self(self, u), v, false) + ctx->bracket_word(self(self, v), u, true);
      }
      return memo.emplace(w, std::move(r)).first->second;
    };
    LieSeries<K> out(&ctx->alphabet(), s.trunc);
    for (auto& [w, cv] : s.c) {
      const LieSeries<K>& img = val(val, w);
      for (auto& [w2, q] : img.c) out.add_term(w2, cv * q);
    }
    return out;
  }

  Derivation<K> bracket_with(const Derivation<K>& other) const {
    Derivation<K> r{ctx, {}};
    for (size_t i = 0; i < images.size(); ++i) {
      LieSeries<K> gi = apply(other.images[i]) - other.apply(images[i]);
      // [D, E](x_i) = D(E(x_i)) - E(D(x_i))
      r.images.push_back(std::move(gi));
    }
    return r;
  }

  // generator images of the automorphism exp(D); needs min_raise >= 1 or an
  // explicit nilpotency bound on the number of applications
  std::vector<LieSeries<K>> exp_automorphism(int nilpotency_bound = -1) const {
    if (min_raise() < 1 && nilpotency_bound < 0)
      throw std::domain_error("exp of non-raising derivation needs a nilpotency bound");
    std::vector<LieSeries<K>> out;
    for (size_t i = 0; i < images.size(); ++i) {
      LieSeries<K> acc = ctx->gen<K>(i, Ring<K>::one(), trunc());
      if constexpr (!Ring<K>::exact) {
        // match the precision of the derivation coefficients
        mpfr_prec_t p = 64;
        for (auto& im : images)
          for (auto& [w, v] : im.c) p = std::max(p, v.prec());
        acc = ctx->gen<K>(i, Cx::one(p), trunc());
      }
      LieSeries<K> term = acc;
      long k = 0;
      int limit = nilpotency_bound > 0 ? nilpotency_bound : trunc() + 1;
      while (!term.is_zero() && k < limit) {
        ++k;
        term = apply(term);
        term = lie_scale_rat(term, Rat(1, k));
        acc = acc + term;
      }
      out.push_back(std::move(acc));
    }
    return out;
  }
};

// Precomputed BCH formula log(e^x e^y) on two generators, to order N,
// as rational Lyndon coordinates. Shared and memoized.
const FreeLie& bch_context(int N);
const LieSeries<Rat>& bch_formula(int N);

}  // namespace ell
