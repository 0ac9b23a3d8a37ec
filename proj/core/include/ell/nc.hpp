#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ell/alphabet.hpp"
#include "ell/ring.hpp"

namespace ell {

// Degree-truncated element of the free associative algebra on `alph`.
// Sparse: no stored zero coefficients, no keys of degree > trunc.
// Truncation is a hard contract; mixing different truncations throws.
template <class K>
struct NCSeries {
  const Alphabet* alph = nullptr;
  int trunc = 0;
  std::map<Word, K> c;

  NCSeries() = default;
  NCSeries(const Alphabet* a, int n) : alph(a), trunc(n) {}

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

  K constant_term() const { return coeff(Word()); }
};

namespace detail {
inline void check_compat(const Alphabet* a1, int n1, const Alphabet* a2, int n2) {
  if (!(*a1 == *a2)) throw std::invalid_argument("alphabet mismatch");
  if (n1 != n2) throw std::invalid_argument("truncation mismatch (no silent re-truncation)");
}
}  // namespace detail

template <class K>
NCSeries<K> operator+(const NCSeries<K>& a, const NCSeries<K>& b) {
  detail::check_compat(a.alph, a.trunc, b.alph, b.trunc);
  NCSeries<K> r = a;
  for (auto& [w, v] : b.c) r.add_term(w, v);
  return r;
}

template <class K>
NCSeries<K> operator-(const NCSeries<K>& a, const NCSeries<K>& b) {
  detail::check_compat(a.alph, a.trunc, b.alph, b.trunc);
  NCSeries<K> r = a;
  for (auto& [w, v] : b.c) r.add_term(w, -v);
  return r;
}

template <class K>
NCSeries<K> operator-(const NCSeries<K>& a) {
  NCSeries<K> r(a.alph, a.trunc);
  for (auto& [w, v] : a.c) r.c.emplace(w, -v);
  return r;
}

template <class K>
NCSeries<K> nc_scale(const NCSeries<K>& a, const K& s) {
  NCSeries<K> r(a.alph, a.trunc);
  if (Ring<K>::is_zero(s)) return r;
  for (auto& [w, v] : a.c) r.add_term(w, v * s);
  return r;
}

template <class K>
NCSeries<K> nc_scale_rat(const NCSeries<K>& a, const Rat& q) {
  NCSeries<K> r(a.alph, a.trunc);
  if (sgn(q) == 0) return r;
  for (auto& [w, v] : a.c) r.add_term(w, Ring<K>::mul_rat(v, q));
  return r;
}

template <class K>
NCSeries<K> operator*(const NCSeries<K>& a, const NCSeries<K>& b) {
  detail::check_compat(a.alph, a.trunc, b.alph, b.trunc);
  NCSeries<K> r(a.alph, a.trunc);
  for (auto& [wa, va] : a.c) {
    int da = a.alph->degree(wa);
    for (auto& [wb, vb] : b.c) {
      if (da + a.alph->degree(wb) > a.trunc) continue;
      r.add_term(wa + wb, va * vb);
    }
  }
  return r;
}

template <class K>
NCSeries<K> nc_one(const Alphabet* alph, int trunc, const K& one) {
  NCSeries<K> r(alph, trunc);
  r.add_term(Word(), one);
  return r;
}

// exp of a series with zero constant term
template <class K>
NCSeries<K> nc_exp(const NCSeries<K>& a) {
  if (!Ring<K>::is_zero(a.constant_term()))
    throw std::invalid_argument("exp needs zero constant term");
  NCSeries<K> r(a.alph, a.trunc);
  NCSeries<K> pw(a.alph, a.trunc);
  // r = 1 + a + a^2/2! + ...
  for (auto& [w, v] : a.c) pw.add_term(w, v);
  r.add_term(Word(), [&] {
    if constexpr (Ring<K>::exact) {
      return Rat(1);
    } else {
      mpfr_prec_t p = 64;
      for (auto& [w, v] : a.c) p = std::max(p, v.prec());
      return Cx::one(p);
    }
  }());
  unsigned long k = 1;
  while (!pw.is_zero() && static_cast<int>(k) <= a.trunc) {
    for (auto& [w, v] : pw.c) r.add_term(w, v);
    ++k;
    pw = pw * a;
    NCSeries<K> next(a.alph, a.trunc);
    for (auto& [w, v] : pw.c) {
      if constexpr (Ring<K>::exact) next.add_term(w, v / Rat(static_cast<long>(k)));
      else next.add_term(w, cx_div_ui(v, k));
    }
    pw = std::move(next);
  }
  return r;
}

// log of a series with constant term 1
template <class K>
NCSeries<K> nc_log(const NCSeries<K>& s) {
  K c0 = s.constant_term();
  bool ok;
  if constexpr (Ring<K>::exact) ok = (c0 == Rat(1));
  else ok = std::abs(c0.to_double_re() - 1.0) < 1e-6 && std::abs(c0.to_double_im()) < 1e-6;
  if (!ok) throw std::invalid_argument("log needs constant term 1");
  NCSeries<K> u = s;
  u.c.erase(Word());  // u = s - 1 up to the constant-term error
  if constexpr (!Ring<K>::exact) {
    // fold any deviation of the constant term from 1 into u's constant slot
    Cx dev = c0 - Cx::one(c0.prec());
    if (!dev.is_exact_zero()) u.add_term(Word(), dev);
  }
  NCSeries<K> r(s.alph, s.trunc);
  NCSeries<K> pw = u;
  unsigned long k = 1;
  while (!pw.is_zero() && static_cast<int>(k) <= s.trunc) {
    Rat sign = (k % 2 == 1) ? Rat(1, k) : Rat(-1, static_cast<long>(k));
    for (auto& [w, v] : pw.c) r.add_term(w, Ring<K>::mul_rat(v, sign));
    ++k;
    pw = pw * u;
  }
  return r;
}

// substitution: algebra morphism sending letter l to images[l]
template <class K>
NCSeries<K> nc_substitute(const NCSeries<K>& s, const std::vector<NCSeries<K>>& images) {
  if (images.size() != s.alph->size()) throw std::invalid_argument("missing image");
  const Alphabet* target = images.empty() ? s.alph : images[0].alph;
  int trunc = images.empty() ? s.trunc : images[0].trunc;
  NCSeries<K> r(target, trunc);
  for (auto& [w, v] : s.c) {
    NCSeries<K> prod = nc_one<K>(target, trunc, [&] {
      if constexpr (Ring<K>::exact) return Rat(1);
      else return Cx::one(v.prec());
    }());
    for (unsigned char l : w) {
      prod = prod * images[l];
      if (prod.is_zero()) break;
    }
    for (auto& [w2, v2] : prod.c) r.add_term(w2, v * v2);
  }
  return r;
}

// shuffle product of two words, accumulated into out with multiplicity
void shuffle_words(const Word& u, const Word& v, std::map<Word, long>& out);

// all (u,v) complementary-subsequence splits of w into nonempty parts
void word_splits(const Word& w, std::set<std::pair<Word, Word>>& out);

// max-norm of Delta(S) - S (x) S over the truncated tensor square.
// Zero iff S is group-like to truncation (letters primitive); equivalently
// the coefficients satisfy the shuffle relations.
template <class K>
double grouplike_residual(const NCSeries<K>& s) {
  // <Delta(S) - S(x)S, u(x)v> = <S, u sh v> - S_u S_v for nonempty u, v.
  // Pairs with a nonzero pairing either split a support word or lie in
  // support x support; enumerate exactly those.
  std::set<std::pair<Word, Word>> pairs;
  for (auto& [w, v] : s.c) {
    if (w.empty()) continue;
    word_splits(w, pairs);
  }
  for (auto& [u, cu] : s.c) {
    if (u.empty()) continue;
    for (auto& [v, cv] : s.c) {
      if (v.empty()) continue;
      if (s.alph->degree(u) + s.alph->degree(v) <= s.trunc) pairs.emplace(u, v);
    }
  }
  double worst = 0.0;
  for (auto& [u, v] : pairs) {
    if (s.alph->degree(u) + s.alph->degree(v) > s.trunc) continue;
    std::map<Word, long> sh;
    shuffle_words(u, v, sh);
    K lhs = Ring<K>::zero();
    bool first = true;
    for (auto& [w, m] : sh) {
      auto it = s.c.find(w);
      if (it == s.c.end()) continue;
      K t = Ring<K>::mul_rat(it->second, Rat(m));
      lhs = first ? t : lhs + t;
      first = false;
    }
    K rhs = s.coeff(u) * s.coeff(v);
    K delta = first ? K(-rhs) : K(lhs - rhs);
    double r = Ring<K>::norm_upper(delta);
    if (r > worst) worst = r;
  }
  return worst;
}

}  // namespace ell
