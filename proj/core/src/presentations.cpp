#include "ell/presentations.hpp"

namespace ell {

namespace {
struct CtxCache {
  std::mutex mu;
  std::map<std::pair<std::string, int>, std::unique_ptr<FreeLie>> m;
};
CtxCache& ctx_cache() {
  static CtxCache c;
  return c;
}

const FreeLie& shared_ctx(const std::string& key, int maxdeg, const Alphabet& alph) {
  auto& c = ctx_cache();
  std::lock_guard<std::mutex> lock(c.mu);
  auto k = std::make_pair(key, maxdeg);
  auto it = c.m.find(k);
  if (it == c.m.end()) it = c.m.emplace(k, std::make_unique<FreeLie>(alph, maxdeg)).first;
  return *it->second;
}
}  // namespace

const FreeLie& t12_context(int maxdeg) {
  return shared_ctx("t12", maxdeg, Alphabet({{"x", {1, 0}}, {"y", {0, 1}}}));
}

const FreeLie& f2AB_context(int maxdeg) {
  return shared_ctx("f2AB", maxdeg, Alphabet::simple({"A", "B"}));
}

LieSeries<Rat> strand_gen(const QuotientTable& T, int strand, char sign, int trunc) {
  return T.generator("x" + std::to_string(strand) + sign, trunc);
}

Derivation<Rat> der_eplus(const FreeLie& f2xy, int trunc) {
  LieSeries<Rat> zero(&f2xy.alphabet(), trunc);
  return Derivation<Rat>{&f2xy, {zero, f2xy.gen<Rat>(0, Rat(1), trunc)}};
}

Derivation<Rat> der_eminus(const FreeLie& f2xy, int trunc) {
  LieSeries<Rat> zero(&f2xy.alphabet(), trunc);
  return Derivation<Rat>{&f2xy, {f2xy.gen<Rat>(1, Rat(1), trunc), zero}};
}

Derivation<Rat> der_xi(const FreeLie& f2xy, int trunc) {
  LieSeries<Rat> zero(&f2xy.alphabet(), trunc);
  return Derivation<Rat>{&f2xy, {f2xy.gen<Rat>(0, Rat(1), trunc), zero}};
}

std::pair<LieSeries<Rat>, LieSeries<Rat>> delta_pair(const FreeLie& f2xy, int m, int trunc) {
  auto x = f2xy.gen<Rat>(0, Rat(1), trunc);
  auto y = f2xy.gen<Rat>(1, Rat(1), trunc);
  // alpha_+ = ad(x)^{2m+2}(y)
  LieSeries<Rat> ap = y;
  for (int k = 0; k < 2 * m + 2; ++k) ap = f2xy.bracket(x, ap);
  // alpha_- = 1/2 sum_{p+q=2m+1} (-1)^p [(ad x)^p y, (ad x)^q y]
  std::vector<LieSeries<Rat>> adp{y};
  for (int k = 1; k <= 2 * m + 1; ++k) adp.push_back(f2xy.bracket(x, adp.back()));
  LieSeries<Rat> am(&f2xy.alphabet(), trunc);
  for (int p = 0; p <= 2 * m + 1; ++p) {
    int q = 2 * m + 1 - p;
    auto term = f2xy.bracket(adp[p], adp[q]);
    am = am + lie_scale_rat(term, rat(p % 2 == 0 ? 1 : -1, 2));
  }
  return {std::move(ap), std::move(am)};
}

Derivation<Rat> der_delta(const FreeLie& f2xy, int m, int trunc) {
  auto [ap, am] = delta_pair(f2xy, m, trunc);
  return Derivation<Rat>{&f2xy, {std::move(ap), std::move(am)}};
}

namespace {

SpecialDerivation finish_certificate(const QuotientTable& T, std::vector<LieSeries<Rat>> images) {
  SpecialDerivation sd;
  sd.images = std::move(images);
  sd.well_defined = true;
  Derivation<Rat> D{&T.cover(), sd.images};
  for (auto& r : T.relations()) {
    LieSeries<Rat> rr(&T.cover().alphabet(), sd.images[0].trunc);
    for (auto& [w, q] : r.c) rr.add_term(w, q);
    auto img = D.apply(rr);
    auto red = T.reduce(img);
    double nrm = quot_norm_upper(red);
    sd.worst_relation_residual = std::max(sd.worst_relation_residual, nrm);
    if (!red.is_zero()) sd.well_defined = false;
  }
  return sd;
}

}  // namespace

SpecialDerivation build_special_derivation(const QuotientTable& T, const std::string& kind, int m,
                                           int trunc) {
  if (T.spec().kind != "t_ell") throw std::invalid_argument("special derivations live on t_{1,n}");
  const Alphabet& A = T.cover().alphabet();
  const FreeLie& cov = T.cover();
  int n = T.spec().n;
  std::vector<LieSeries<Rat>> images(A.size(), LieSeries<Rat>(&A, trunc));
  for (int i = 1; i < n; ++i) {
    auto xi = strand_gen(T, i, '+', trunc);
    auto yi = strand_gen(T, i, '-', trunc);
    size_t ix = A.index_of("x" + std::to_string(i) + "+");
    size_t iy = A.index_of("x" + std::to_string(i) + "-");
    if (kind == "e_plus") {
      images[iy] = xi;
    } else if (kind == "e_minus") {
      images[ix] = yi;
    } else if (kind == "xi") {
      images[ix] = xi;
    } else if (kind == "delta") {
      // per-strand delta_{2m} formulas
      LieSeries<Rat> ap = yi;
      for (int k = 0; k < 2 * m + 2; ++k) ap = cov.bracket(xi, ap);
      std::vector<LieSeries<Rat>> adp{yi};
      for (int k = 1; k <= 2 * m + 1; ++k) adp.push_back(cov.bracket(xi, adp.back()));
      LieSeries<Rat> am(&A, trunc);
      for (int p = 0; p <= 2 * m + 1; ++p) {
        int q = 2 * m + 1 - p;
        am = am + lie_scale_rat(cov.bracket(adp[p], adp[q]), rat(p % 2 == 0 ? 1 : -1, 2));
      }
      images[ix] = std::move(ap);
      images[iy] = std::move(am);
    } else {
      throw std::invalid_argument("unknown special derivation kind: " + kind);
    }
  }
  return finish_certificate(T, std::move(images));
}

SpecialDerivation build_ad_derivation(const QuotientTable& T, const LieSeries<Rat>& elem,
                                      int trunc) {
  const Alphabet& A = T.cover().alphabet();
  std::vector<LieSeries<Rat>> images;
  LieSeries<Rat> e(&A, trunc);
  for (auto& [w, q] : elem.c) e.add_term(w, q);
  for (size_t l = 0; l < A.size(); ++l)
    images.push_back(T.cover().bracket(e, T.cover().gen<Rat>(l, Rat(1), trunc)));
  return finish_certificate(T, std::move(images));
}

SolveResult nullspace_rational(std::vector<std::vector<std::pair<int, Rat>>>& equations,
                               int nunknowns) {
  std::vector<int> pivot_of_row;
  std::vector<char> is_pivot;
  rref_rational(equations, nunknowns, pivot_of_row, is_pivot);
  SolveResult out;
  for (int j = 0; j < nunknowns; ++j) {
    if (is_pivot[j]) continue;
    std::vector<Rat> v(nunknowns, Rat(0));
    v[j] = Rat(1);
    for (size_t r = 0; r < equations.size(); ++r) {
      for (auto& [col, q] : equations[r])
        if (col == j) v[pivot_of_row[r]] = -q;
    }
    out.basis.push_back(std::move(v));
  }
  out.dimension = static_cast<long>(out.basis.size());
  return out;
}

SolveResult solve_rell_gr_component(int d) {
  int adeg = d + 1;
  QuotientTable T13(PresentationSpec{"t_ell", 3}, adeg + 1);
  const FreeLie& f2 = t12_context(adeg);
  std::vector<Word> basis;
  for (auto& w : f2.lyndon_all())
    if (f2.alphabet().degree(w) == adeg) basis.push_back(w);
  int m = static_cast<int>(basis.size());
  int nunknowns = 2 * m;  // alpha_+ coords then alpha_- coords

  // key space for equations: (relation index, block multidegree, column)
  std::map<std::tuple<int, std::vector<int>, int>, std::vector<std::pair<int, Rat>>> eqs;
  for (int j = 0; j < nunknowns; ++j) {
    LieSeries<Rat> ap(&f2.alphabet(), adeg), am(&f2.alphabet(), adeg);
    if (j < m)
      ap.add_term(basis[j], Rat(1));
    else
      am.add_term(basis[j - m], Rat(1));
    auto rels = rell_gr_residuals<Rat>(T13, ap, am);
    for (size_t r = 0; r < rels.size(); ++r)
      for (auto& [key, v] : rels[r].second.c)
        eqs[{static_cast<int>(r), key.first, key.second}].emplace_back(j, v);
  }
  std::vector<std::vector<std::pair<int, Rat>>> rows;
  for (auto& [k, row] : eqs) rows.push_back(std::move(row));
  SolveResult res = nullspace_rational(rows, nunknowns);
  for (int j = 0; j < nunknowns; ++j) {
    std::string nm = (j < m ? "plus:" : "minus:") +
                     f2.alphabet().word_str(basis[j < m ? j : j - m]);
    res.unknown_names.push_back(nm);
  }
  return res;
}

DeltaQuadraticResult delta_quadratic_relations(int W) {
  if (W % 2 != 0) throw std::invalid_argument("W must be even");
  DeltaQuadraticResult out;
  for (int a = 1; a < W; ++a) {
    int wa = 2 * a + 1;
    int wb = W - wa;
    if (wb <= wa) break;
    int b = (wb - 1) / 2;
    if (2 * b + 1 != wb || b <= a) continue;
    out.pairs.emplace_back(2 * a, 2 * b);
  }
  int trunc = W + 3;  // images of the degree-1 generators land here
  const FreeLie& f2 = t12_context(trunc);
  // columns: bracket pairs; rows: coordinates of (D(x), D(y))
  std::map<std::pair<int, Word>, std::vector<std::pair<int, Rat>>> eqs;
  for (size_t p = 0; p < out.pairs.size(); ++p) {
    auto da = der_delta(f2, out.pairs[p].first / 2, trunc);
    auto db = der_delta(f2, out.pairs[p].second / 2, trunc);
    auto comm = da.bracket_with(db);
    for (int g = 0; g < 2; ++g)
      for (auto& [w, q] : comm.images[g].c)
        eqs[{g, w}].emplace_back(static_cast<int>(p), q);
  }
  std::vector<std::vector<std::pair<int, Rat>>> rows;
  for (auto& [k, row] : eqs) rows.push_back(std::move(row));
  SolveResult res = nullspace_rational(rows, static_cast<int>(out.pairs.size()));
  out.dimension = res.dimension;
  out.relations = std::move(res.basis);
  return out;
}

}  // namespace ell
