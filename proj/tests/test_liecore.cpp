#include <doctest.h>

#include <map>
#include <string>

#include "ell/free_lie.hpp"

using namespace ell;

namespace {

// deterministic small-rational generator for property tests
struct Rng {
  unsigned long long s = 0x9e3779b97f4a7c15ull;
  unsigned long long next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  Rat rat_small() {
    long num = static_cast<long>(next() % 7) - 3;
    unsigned long den = 1 + next() % 4;
    return rat(num, den);
  }
};

LieSeries<Rat> random_lie(const FreeLie& ctx, int trunc, Rng& rng, int maxdeg_terms = 3) {
  LieSeries<Rat> s(&ctx.alphabet(), trunc);
  for (int d = 1; d <= maxdeg_terms; ++d)
    for (auto& w : ctx.lyndon(d)) s.add_term(w, rng.rat_small());
  return s;
}

// independent word-algebra oracle (strings over 'a','b')
using WordPoly = std::map<std::string, long>;
WordPoly wp_mul(const WordPoly& x, const WordPoly& y, size_t maxlen) {
  WordPoly r;
  for (auto& [u, cu] : x)
    for (auto& [v, cv] : y) {
      if (u.size() + v.size() > maxlen) continue;
      r[u + v] += cu * cv;
    }
  for (auto it = r.begin(); it != r.end();)
    it = it->second == 0 ? r.erase(it) : std::next(it);
  return r;
}
WordPoly wp_comm(const WordPoly& x, const WordPoly& y, size_t maxlen) {
  WordPoly r = wp_mul(x, y, maxlen);
  for (auto& [w, c] : wp_mul(y, x, maxlen)) {
    r[w] -= c;
    if (r[w] == 0) r.erase(w);
  }
  return r;
}

}  // namespace

TEST_CASE("lyndon basis: generators, Witt counts, one-letter algebra") {
  FreeLie f2(Alphabet::simple({"a", "b"}), 8);
  CHECK(f2.lyndon(1).size() == 2);  // [a, b]
  CHECK(f2.lyndon(3).size() == 2);  // {[a,[a,b]], [[a,b],b]}
  for (int d = 1; d <= 8; ++d) CHECK((long)f2.lyndon(d).size() == witt_dimension(2, d));

  FreeLie f3(Alphabet::simple({"a", "b", "c"}), 6);
  for (int d = 1; d <= 6; ++d) CHECK((long)f3.lyndon(d).size() == witt_dimension(3, d));

  FreeLie f1(Alphabet::simple({"a"}), 5);
  CHECK(f1.lyndon(1).size() == 1);
  for (int d = 2; d <= 5; ++d) CHECK(f1.lyndon(d).empty());

  CHECK_THROWS(Alphabet::simple({}));
}

TEST_CASE("normalize: alternation, antisymmetry, NC oracle") {
  FreeLie ctx(Alphabet::simple({"a", "b"}), 5);
  auto a = ctx.gen<Rat>(0, Rat(1), 5);
  auto b = ctx.gen<Rat>(1, Rat(1), 5);

  CHECK(ctx.bracket(a, a).is_zero());
  // [b,a] = -[a,b]
  auto ba = ctx.bracket(b, a);
  auto ab = ctx.bracket(a, b);
  CHECK((ba + ab).is_zero());

  // [[a,b],a] = -[a,[a,b]]; oracle = independent expansion in the free
  // associative algebra over string words
  auto lhs = ctx.bracket(ab, a);
  WordPoly wa{{"a", 1}}, wb{{"b", 1}};
  WordPoly oracle = wp_comm(wp_comm(wa, wb, 3), wa, 3);
  auto nc = ctx.to_nc(lhs);
  for (auto& [w, c] : nc.c) {
    std::string key;
    for (auto l : w) key += (l == 0 ? 'a' : 'b');
    CHECK(Rat(oracle[key]) == c);
    oracle.erase(key);
  }
  for (auto& [w, c] : oracle) CHECK(c == 0);

  auto aab = ctx.bracket(a, ab);
  CHECK((lhs + aab).is_zero());
}

TEST_CASE("exp/log: unit, roundtrip, truncated exponential") {
  FreeLie ctx(Alphabet::simple({"a", "b"}), 6);
  auto a = ctx.gen<Rat>(0, Rat(1), 6);

  // exp(0) = 1
  LieSeries<Rat> zero(&ctx.alphabet(), 6);
  auto one = ctx.exp(zero);
  CHECK(one.c.size() == 1);
  CHECK(one.constant_term() == Rat(1));

  // log(exp(a)) = a at any N
  auto back = ctx.log(ctx.exp(a));
  CHECK((back - a).is_zero());

  // exp(a) at N=2 equals 1 + a + a^2/2
  FreeLie ctx2(Alphabet::simple({"a", "b"}), 2);
  auto a2 = ctx2.gen<Rat>(0, Rat(1), 2);
  auto e = ctx2.exp(a2);
  CHECK(e.coeff(Word()) == Rat(1));
  CHECK(e.coeff(Word{0}) == Rat(1));
  CHECK(e.coeff(Word{0, 0}) == rat(1, 2));
  CHECK(e.c.size() == 3);

  CHECK_THROWS(nc_log(ctx.to_nc(a)));  // constant term 0, not 1
}

TEST_CASE("bch: frozen low-degree coefficients and inverses") {
  FreeLie ctx(Alphabet::simple({"a", "b"}), 4);
  auto a = ctx.gen<Rat>(0, Rat(1), 4);
  auto b = ctx.gen<Rat>(1, Rat(1), 4);
  LieSeries<Rat> zero(&ctx.alphabet(), 4);

  CHECK((ctx.bch(a, zero) - a).is_zero());
  CHECK(ctx.bch(a, -a).is_zero());

  auto z = ctx.bch(a, b);
  // log(e^a e^b) = a + b + [a,b]/2 + [a,[a,b]]/12 + [[a,b],b]/12 - ...
  CHECK(z.coeff(Word{0}) == Rat(1));
  CHECK(z.coeff(Word{1}) == Rat(1));
  CHECK(z.coeff(Word{0, 1}) == rat(1, 2));   // [a,b]
  CHECK(z.coeff(Word{0, 0, 1}) == rat(1, 12));  // [a,[a,b]]
  CHECK(z.coeff(Word{0, 1, 1}) == rat(1, 12));  // [[a,b],b]
  CHECK(z.coeff(Word{0, 0, 0, 1}) == Rat(0));
  CHECK(z.coeff(Word{0, 0, 1, 1}) == rat(1, 24));

  // matches the precomputed formula
  auto& formula = bch_formula(4);
  for (auto& [w, c] : formula.c) CHECK(z.coeff(w) == c);
}

TEST_CASE("bch associativity and Jacobi on random inputs") {
  FreeLie ctx(Alphabet::simple({"a", "b", "c"}), 5);
  Rng rng;
  for (int rep = 0; rep < 3; ++rep) {
    auto x = random_lie(ctx, 5, rng);
    auto y = random_lie(ctx, 5, rng);
    auto z = random_lie(ctx, 5, rng);
    auto l = ctx.bch(ctx.bch(x, y), z);
    auto r = ctx.bch(x, ctx.bch(y, z));
    CHECK((l - r).is_zero());

    auto jac = ctx.bracket(ctx.bracket(x, y), z) + ctx.bracket(ctx.bracket(y, z), x) +
               ctx.bracket(ctx.bracket(z, x), y);
    CHECK(jac.is_zero());
  }
}

TEST_CASE("substitution: identity, collapse, composition") {
  FreeLie ctx(Alphabet::simple({"a", "b"}), 5);
  auto a = ctx.gen<Rat>(0, Rat(1), 5);
  auto b = ctx.gen<Rat>(1, Rat(1), 5);
  Rng rng;
  auto s = random_lie(ctx, 5, rng);

  // identity images
  auto id = substitute_lie(ctx, s, ctx, {a, b});
  CHECK((id - s).is_zero());

  // a -> a+b, b -> b applied to [a,b] gives [a,b]
  auto ab = ctx.bracket(a, b);
  auto t = substitute_lie(ctx, ab, ctx, {a + b, b});
  CHECK((t - ab).is_zero());

  // composition = substitution by the composite
  std::vector<LieSeries<Rat>> sigma{a + b, ctx.bracket(a, b) + b};
  std::vector<LieSeries<Rat>> tau{b, a};
  auto two_step = substitute_lie(ctx, substitute_lie(ctx, s, ctx, sigma), ctx, tau);
  std::vector<LieSeries<Rat>> tau_sigma{substitute_lie(ctx, sigma[0], ctx, tau),
                                        substitute_lie(ctx, sigma[1], ctx, tau)};
  auto one_step = substitute_lie(ctx, s, ctx, tau_sigma);
  CHECK((two_step - one_step).is_zero());
}

TEST_CASE("derivations: Leibniz, sl2 pair, nilpotent exponential") {
  FreeLie ctx(Alphabet::simple({"x", "y"}), 6);
  auto x = ctx.gen<Rat>(0, Rat(1), 6);
  auto y = ctx.gen<Rat>(1, Rat(1), 6);
  LieSeries<Rat> zero(&ctx.alphabet(), 6);

  Derivation<Rat> eplus{&ctx, {zero, x}};  // x->0, y->x
  Derivation<Rat> eminus{&ctx, {y, zero}}; // x->y, y->0

  // e_+ [x,y] = [x,x] = 0
  CHECK(eplus.apply(ctx.bracket(x, y)).is_zero());

  // [e_+, e_-](x) = x  (h = [e_+,e_-] acts as +1 on x, -1 on y)
  auto h = eplus.bracket_with(eminus);
  CHECK((h.apply(x) - x).is_zero());
  CHECK((h.apply(y) + y).is_zero());

  // exp(e_-) sends x to x + y (two terms; e_- is nilpotent on generators)
  auto im = eminus.exp_automorphism(3);
  CHECK((im[0] - (x + y)).is_zero());
  CHECK((im[1] - y).is_zero());

  // Leibniz on a random element, checked against direct bracket expansion
  Rng rng;
  auto s = random_lie(ctx, 6, rng);
  auto t = random_lie(ctx, 6, rng);
  auto lhs = eminus.apply(ctx.bracket(s, t));
  auto rhs = ctx.bracket(eminus.apply(s), t) + ctx.bracket(s, eminus.apply(t));
  CHECK((lhs - rhs).is_zero());

  // exp of a degree-raising derivation is an automorphism to truncation
  Derivation<Rat> d{&ctx, {ctx.bracket(x, ctx.bracket(x, y)), ctx.bracket(x, y)}};
  auto a = d.exp_automorphism();
  auto u = random_lie(ctx, 6, rng);
  auto v = random_lie(ctx, 6, rng);
  auto phi = [&](const LieSeries<Rat>& e) { return substitute_lie(ctx, e, ctx, a); };
  CHECK((phi(ctx.bracket(u, v)) - ctx.bracket(phi(u), phi(v))).is_zero());

  CHECK_THROWS(eplus.exp_automorphism());  // degree 0, no bound given
}

TEST_CASE("ad_series: constants, bracket, Bernoulli expansion") {
  FreeLie ctx(Alphabet::simple({"x", "y"}), 3);
  auto x = ctx.gen<Rat>(0, Rat(1), 3);
  auto y = ctx.gen<Rat>(1, Rat(1), 3);

  CHECK((ctx.ad_series({Rat(1)}, x, y) - y).is_zero());
  CHECK((ctx.ad_series({Rat(0), Rat(1)}, x, y) - ctx.bracket(x, y)).is_zero());

  // z/(e^z-1) = sum B_k z^k / k!; to degree 3: y - [x,y]/2 + [x,[x,y]]/12
  std::vector<Rat> f;
  Rat fact(1);
  for (int k = 0; k <= 3; ++k) {
    if (k) fact *= k;
    f.push_back(bernoulli(k) / fact);
  }
  auto r = ctx.ad_series(f, x, y);
  auto expect = y - lie_scale_rat(ctx.bracket(x, y), rat(1, 2)) +
                lie_scale_rat(ctx.bracket(x, ctx.bracket(x, y)), rat(1, 12));
  CHECK((r - expect).is_zero());
}

TEST_CASE("grouplike residual") {
  FreeLie ctx(Alphabet::simple({"a", "b"}), 4);
  auto a = ctx.gen<Rat>(0, Rat(1), 4);
  auto b = ctx.gen<Rat>(1, Rat(1), 4);

  CHECK(grouplike_residual(ctx.exp(a)) == 0.0);

  // 1 + a + b misses the a(x)b cross term
  NCSeries<Rat> s(&ctx.alphabet(), 4);
  s.add_term(Word(), Rat(1));
  s.add_term(Word{0}, Rat(1));
  s.add_term(Word{1}, Rat(1));
  CHECK(grouplike_residual(s) > 0.5);

  // 1 + ab is not group-like either (cross term without primitives)
  NCSeries<Rat> t(&ctx.alphabet(), 4);
  t.add_term(Word(), Rat(1));
  t.add_term(Word{0, 1}, Rat(1));
  CHECK(grouplike_residual(t) > 0.5);

  // exp of any primitive is group-like; products of group-likes are group-like
  Rng rng;
  auto p = random_lie(ctx, 4, rng);
  auto q = random_lie(ctx, 4, rng);
  CHECK(grouplike_residual(ctx.exp(p)) == 0.0);
  CHECK(grouplike_residual(ctx.exp(p) * ctx.exp(q)) == 0.0);
}

TEST_CASE("mixing truncations is an error") {
  FreeLie ctx(Alphabet::simple({"a", "b"}), 6);
  auto a5 = ctx.gen<Rat>(0, Rat(1), 5);
  auto a6 = ctx.gen<Rat>(0, Rat(1), 6);
  CHECK_THROWS(ctx.bracket(a5, a6));
}

TEST_CASE("complex-backed series agree with rational ones") {
  FreeLie ctx(Alphabet::simple({"a", "b"}), 5);
  mpfr_prec_t p = bits_for_digits(30);
  auto a = ctx.gen<Cx>(0, Cx::one(p), 5);
  auto b = ctx.gen<Cx>(1, Cx::from_rat(rat(1, 3), p), 5);
  auto z = ctx.bch(a, b);

  auto ar = ctx.gen<Rat>(0, Rat(1), 5);
  auto br = ctx.gen<Rat>(1, rat(1, 3), 5);
  auto zr = ctx.bch(ar, br);

  for (auto& [w, c] : zr.c) {
    Cx diff = z.coeff(w) - Cx::from_rat(c, p);
    CHECK(diff.norm_upper() < 1e-25);
  }
  // coefficients that cancel exactly over Q may survive as bounded dust
  for (auto& [w, c] : z.c)
    if (!zr.c.count(w)) CHECK(c.norm_upper() < 1e-25);
  CHECK(lie_err_bound(z) < 1e-25);
}
