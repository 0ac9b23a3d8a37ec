#pragma once

#include <optional>

#include "ell/quotient.hpp"

namespace ell {

// Shared free-Lie workspaces. t_{1,2} is free on (x, y) = (x_1^+, x_1^-),
// bigraded by (deg_+, deg_-); f_2 on (A, B) carries a single grading.
const FreeLie& t12_context(int maxdeg);
const FreeLie& f2AB_context(int maxdeg);

// x_i^{+-} of a t_{1,n} table as a cover element (eliminated strand expanded)
LieSeries<Rat> strand_gen(const QuotientTable& T, int strand, char sign, int trunc);

// ---- special derivations ----------------------------------------------

// On the free t_{1,2}: images of (x, y).
Derivation<Rat> der_eplus(const FreeLie& f2xy, int trunc);   // x->0,  y->x
Derivation<Rat> der_eminus(const FreeLie& f2xy, int trunc);  // x->y,  y->0
Derivation<Rat> der_xi(const FreeLie& f2xy, int trunc);      // x->x,  y->0
Derivation<Rat> der_delta(const FreeLie& f2xy, int m, int trunc);  // delta_{2m}

struct SpecialDerivation {
  std::vector<LieSeries<Rat>> images;  // per cover letter of the table
  bool well_defined = false;
  double worst_relation_residual = 0.0;
};

// kinds: "delta" (param m), "e_plus", "e_minus", "xi". The certificate maps
// every defining relation into the relation ideal (exact, to the working
// degree); a failure signals a wrong formula or table.
SpecialDerivation build_special_derivation(const QuotientTable& T, const std::string& kind, int m,
                                           int trunc);
SpecialDerivation build_ad_derivation(const QuotientTable& T, const LieSeries<Rat>& elem,
                                      int trunc);

// delta_{2m} as an r_ell^gr pair (alpha_+, alpha_-) over the free t_{1,2}
std::pair<LieSeries<Rat>, LieSeries<Rat>> delta_pair(const FreeLie& f2xy, int m, int trunc);

// ---- membership and relation solvers -----------------------------------

struct SolveResult {
  long dimension = 0;
  std::vector<std::vector<Rat>> basis;  // one coefficient vector per solution
  std::vector<std::string> unknown_names;
};

// exact solution space of the r_ell^gr relations in derivation degree d
// (the unknown pair components have word degree d+1)
SolveResult solve_rell_gr_component(int d);

// exact basis of linear relations among [delta_{2a}, delta_{2b}],
// 1 <= a < b, (2a+1)+(2b+1) = W, inside Der(t_{1,2})
struct DeltaQuadraticResult {
  std::vector<std::pair<int, int>> pairs;  // (2a, 2b)
  long dimension = 0;
  std::vector<std::vector<Rat>> relations;  // coefficients per pair
};
DeltaQuadraticResult delta_quadratic_relations(int W);

// generic exact nullspace: columns are unknowns, rows are sparse equations
SolveResult nullspace_rational(std::vector<std::vector<std::pair<int, Rat>>>& equations,
                               int nunknowns);

// ---- insertions ----------------------------------------------------------

// Insertion morphism given preimage sets I_1..I_n (1-based target strands).
// kind "t":     t_ij -> sum_{i' in I_i, j' in I_j} t_{i'j'}; partial maps OK.
// kind "t_ell": x_i^s -> sum_{i' in I_i} x_{i'}^s; the map must be total.
template <class K>
LieSeries<K> insertion(const FreeLie& src, const LieSeries<K>& s, const QuotientTable& target,
                       const std::vector<std::vector<int>>& preimages, int trunc) {
  const std::string& kind = target.spec().kind;
  std::vector<char> seen(target.spec().n + 1, 0);
  for (auto& I : preimages)
    for (int i : I) {
      if (i < 1 || i > target.spec().n || seen[i])
        throw std::invalid_argument("malformed partition");
      seen[i] = 1;
    }
  mpfr_prec_t prec = series_prec(s);
  const Alphabet& SA = src.alphabet();
  std::vector<LieSeries<K>> images(SA.size(),
                                   LieSeries<K>(&target.cover().alphabet(), trunc));
  if (kind == "t_ell") {
    for (size_t v = 1; v < seen.size(); ++v)
      if (!seen[v]) throw std::invalid_argument("t_ell insertion must be total");
    int nsrc = static_cast<int>(preimages.size());
    for (int i = 1; i <= nsrc; ++i)
      for (char sign : {'+', '-'}) {
        std::string nm = "x" + std::to_string(i) + sign;
        if (!SA.has(nm)) continue;  // eliminated source strand
        LieSeries<Rat> im(&target.cover().alphabet(), trunc);
        for (int ip : preimages[i - 1]) im = im + strand_gen(target, ip, sign, trunc);
        images[SA.index_of(nm)] = lie_to_ring<K>(im, prec);
      }
  } else {
    int nsrc = static_cast<int>(preimages.size());
    for (int i = 1; i <= nsrc; ++i)
      for (int j = i + 1; j <= nsrc; ++j) {
        std::string nm = "t" + std::to_string(i) + std::to_string(j);
        if (!SA.has(nm)) continue;
        LieSeries<Rat> im(&target.cover().alphabet(), trunc);
        for (int ip : preimages[i - 1])
          for (int jp : preimages[j - 1])
            im = im + target.generator("t" + std::to_string(std::min(ip, jp)) +
                                           std::to_string(std::max(ip, jp)),
                                       trunc);
        images[SA.index_of(nm)] = lie_to_ring<K>(im, prec);
      }
  }
  return substitute_lie(src, s, target.cover(), images);
}

// the morphism {.}: t_S -> t_{1,S}, t_ij -> [x_i^+, x_j^-]
template <class K>
LieSeries<K> braces(const FreeLie& srcT, const LieSeries<K>& s, const QuotientTable& targetEll,
                    int trunc) {
  const Alphabet& SA = srcT.alphabet();
  mpfr_prec_t prec = series_prec(s);
  std::vector<LieSeries<K>> images(SA.size());
  for (size_t l = 0; l < SA.size(); ++l) {
    const std::string& nm = SA.symbol(l).name;  // "tij"
    int i = nm[1] - '0', j = nm[2] - '0';
    auto xi = strand_gen(targetEll, i, '+', trunc);
    auto yj = strand_gen(targetEll, j, '-', trunc);
    images[l] = lie_to_ring<K>(targetEll.cover().bracket(xi, yj), prec);
  }
  return substitute_lie(srcT, s, targetEll.cover(), images);
}

// element of t_{1,2} (free on x,y) placed on one strand: x -> x_i^+, y -> x_i^-
template <class K>
LieSeries<K> strand_insert(const FreeLie& f2xy, const LieSeries<K>& s, const QuotientTable& T,
                           int strand, int trunc) {
  mpfr_prec_t prec = series_prec(s);
  std::vector<LieSeries<K>> images{lie_to_ring<K>(strand_gen(T, strand, '+', trunc), prec),
                                   lie_to_ring<K>(strand_gen(T, strand, '-', trunc), prec)};
  return substitute_lie(f2xy, s, T.cover(), images);
}

template <class K>
LieSeries<K> apply_cover_derivation(const QuotientTable& T, const std::vector<LieSeries<K>>& images,
                                    const LieSeries<K>& s) {
  Derivation<K> d{&T.cover(), images};
  return d.apply(s);
}

// The five defining relation residuals of r_ell^gr for a pair (a_+, a_-) in
// the free t_{1,2}, evaluated in the t_{1,3} quotient of the given table.
template <class K>
std::vector<std::pair<std::string, QuotElem<K>>> rell_gr_residuals(const QuotientTable& T13,
                                                                   const LieSeries<K>& ap,
                                                                   const LieSeries<K>& am) {
  if (T13.spec().kind != "t_ell" || T13.spec().n != 3)
    throw std::invalid_argument("rell_gr check needs a t_{1,3} table");
  int adeg = 0;
  for (auto& [w, v] : ap.c) adeg = std::max(adeg, ap.alph->degree(w));
  for (auto& [w, v] : am.c) adeg = std::max(adeg, am.alph->degree(w));
  int need = adeg + 1;
  if (need > T13.maxdeg()) throw std::invalid_argument("insufficient table degree");
  const FreeLie& f2 = t12_context(std::max(adeg, 1));
  const FreeLie& cov = T13.cover();
  mpfr_prec_t prec = std::max(series_prec(ap), series_prec(am));

  auto at = [&](const LieSeries<K>& a, int i) { return strand_insert(f2, a, T13, i, need); };
  auto gen = [&](int i, char s) { return lie_to_ring<K>(strand_gen(T13, i, s, need), prec); };

  std::vector<std::pair<std::string, QuotElem<K>>> out;
  auto ap1 = at(ap, 1), ap2 = at(ap, 2), ap3 = at(ap, 3);
  auto am1 = at(am, 1), am2 = at(am, 2), am3 = at(am, 3);
  out.emplace_back("cyclic_plus", T13.reduce<K>(ap1 + ap2 + ap3));
  out.emplace_back("cyclic_minus", T13.reduce<K>(am1 + am2 + am3));
  out.emplace_back("commute_plus",
                   T13.reduce<K>(cov.bracket(gen(1, '+'), ap2) + cov.bracket(ap1, gen(2, '+'))));
  out.emplace_back("commute_minus",
                   T13.reduce<K>(cov.bracket(gen(1, '-'), am2) + cov.bracket(am1, gen(2, '-'))));
  out.emplace_back("mixed",
                   T13.reduce<K>(cov.bracket(gen(1, '+'), am2) + cov.bracket(ap1, gen(2, '-'))));
  return out;
}

}  // namespace ell
