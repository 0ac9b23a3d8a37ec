#include "ell/lyndon.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ell/nc.hpp"

namespace ell {

bool is_lyndon(const Word& w) {
  if (w.empty()) return false;
  // strictly smaller than every proper suffix
  for (size_t i = 1; i < w.size(); ++i)
    if (w.compare(i, Word::npos, w) <= 0) return false;
  return true;
}

std::pair<Word, Word> standard_factorization(const Word& w) {
  // right factor = lexicographically least proper suffix
  size_t best = 1;
  for (size_t i = 2; i < w.size(); ++i)
    if (w.compare(i, Word::npos, w, best, Word::npos) < 0) best = i;
  return {w.substr(0, best), w.substr(best)};
}

std::vector<Word> lyndon_words_upto(const Alphabet& alph, int maxdeg) {
  // Duval's generation bounded by length; letters have degree >= 1, so words
  // of degree <= maxdeg have length <= maxdeg. Filter by weighted degree.
  const int k = static_cast<int>(alph.size());
  const int n = maxdeg;  // max length
  std::vector<Word> out;
  std::vector<int> w{0};
  while (!w.empty()) {
    Word cand(w.begin(), w.end());
    if (alph.degree(cand) <= maxdeg) out.push_back(cand);
    // extend periodically to length n then increment
    int m = static_cast<int>(w.size());
    w.resize(n);
    for (int i = m; i < n; ++i) w[i] = w[i - m];
    while (!w.empty() && w.back() == k - 1) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  std::sort(out.begin(), out.end(), [&](const Word& a, const Word& b) {
    int da = alph.degree(a), db = alph.degree(b);
    if (da != db) return da < db;
    return a < b;
  });
  return out;
}

long witt_dimension(int k, int d) {
  auto mobius = [](int n) {
    int m = 1;
    for (int p = 2; p * p <= n; ++p) {
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        m = -m;
      }
    }
    if (n > 1) m = -m;
    return m;
  };
  long acc = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e) continue;
    int mu = mobius(e);
    if (!mu) continue;
    long pw = 1;
    for (int i = 0; i < d / e; ++i) pw *= k;
    acc += mu * pw;
  }
  return acc / d;
}

void shuffle_words(const Word& u, const Word& v, std::map<Word, long>& out) {
  // dynamic programming over (i,j) would be fancier; depth here is small,
  // plain recursion with an explicit accumulator is fine
  struct Rec {
    const Word &u, &v;
    std::map<Word, long>& out;
    Word cur;
    void go(size_t i, size_t j) {
      if (i == u.size() && j == v.size()) {
        ++out[cur];
        return;
      }
      if (i < u.size()) {
        cur.push_back(u[i]);
        go(i + 1, j);
        cur.pop_back();
      }
      if (j < v.size()) {
        cur.push_back(v[j]);
        go(i, j + 1);
        cur.pop_back();
      }
    }
  } rec{u, v, out, Word()};
  rec.go(0, 0);
}

void word_splits(const Word& w, std::set<std::pair<Word, Word>>& out) {
  size_t n = w.size();
  if (n < 2) return;
  for (size_t mask = 1; mask + 1 < (size_t(1) << n); ++mask) {
    Word a, b;
    for (size_t i = 0; i < n; ++i)
      ((mask >> i) & 1 ? a : b).push_back(w[i]);
    out.emplace(std::move(a), std::move(b));
  }
}

}  // namespace ell
