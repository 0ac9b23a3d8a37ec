#include "ell/theta.hpp"

namespace ell {

Alphabet theta_alphabet(int Wmax) {
  std::vector<Symbol> syms;
  for (int l = 1; 2 * l + 2 <= Wmax; ++l)
    for (int k = 0; k <= 2 * l; ++k)
      syms.push_back({"g" + std::to_string(l) + "_" + std::to_string(k), {2 * l + 2}});
  if (syms.empty()) throw std::invalid_argument("Wmax below the first string weight 4");
  return Alphabet(std::move(syms));
}

size_t theta_letter(const Alphabet& alph, int l, int k) {
  return alph.index_of("g" + std::to_string(l) + "_" + std::to_string(k));
}

namespace {

// enumerate words (letter sequences) of total weight <= Wmax
void enumerate_words(const Alphabet& alph, int Wmax, std::vector<Word>& out) {
  Word cur;
  auto rec = [&](auto&& self, int left) -> void {
    out.push_back(cur);
    for (size_t l = 0; l < alph.size(); ++l) {
      int d = alph.letter_degree(static_cast<unsigned char>(l));
      if (d > left) continue;
      cur.push_back(static_cast<unsigned char>(l));
      self(self, left - d);
      cur.pop_back();
    }
  };
  rec(rec, Wmax);
}

struct LK {
  int l, k;
};

LK letter_lk(const Alphabet& alph, unsigned char letter) {
  const std::string& nm = alph.symbol(letter).name;  // g{l}_{k}
  size_t us = nm.find('_');
  return {std::stoi(nm.substr(1, us - 1)), std::stoi(nm.substr(us + 1))};
}

}  // namespace

NCSeries<Cx> assemble_theta(int Wmax, const MellinOptions& opt) {
  Alphabet alph = theta_alphabet(Wmax);
  static std::map<int, Alphabet> alph_keep;  // keep alphabets alive for returned series
  static std::mutex mu;
  const Alphabet* ap;
  {
    std::lock_guard<std::mutex> lock(mu);
    ap = &alph_keep.emplace(Wmax, alph).first->second;
  }
  mpfr_prec_t p = bits_for_digits(opt.digits + 15);
  auto as = a2l(Wmax / 2);
  std::vector<Word> words;
  enumerate_words(*ap, Wmax, words);
  NCSeries<Cx> acc(ap, Wmax);
  Cx tpi = Cx::two_pi_i(p);
  for (auto& w : words) {
    if (w.empty()) {
      acc.add_term(w, Cx::one(p));
      continue;
    }
    std::vector<int> ls, ks;
    Rat afac(1);
    for (auto letter : w) {
      LK lk = letter_lk(*ap, letter);
      ls.push_back(lk.l);
      ks.push_back(lk.k);
      afac *= as[lk.l];
    }
    MellinValue lv = l_sharp(ls, ks, opt);
    Cx coef = cx_mul_rat(lv.value * cx_pow_si(tpi, static_cast<long>(w.size())), afac);
    acc.add_term(w, coef);
  }
  return acc;
}

NCSeries<Rat> assemble_psi_rational(int Wmax) {
  Alphabet alph = theta_alphabet(Wmax);
  static std::map<int, Alphabet> alph_keep;
  static std::mutex mu;
  const Alphabet* ap;
  {
    std::lock_guard<std::mutex> lock(mu);
    ap = &alph_keep.emplace(Wmax, alph).first->second;
  }
  auto as = a2l(Wmax / 2);
  std::vector<Word> words;
  enumerate_words(*ap, Wmax, words);
  NCSeries<Rat> acc(ap, Wmax);
  for (auto& w : words) {
    if (w.empty()) {
      acc.add_term(w, Rat(1));
      continue;
    }
    Rat coef(1);
    long run = 0;
    for (size_t i = 0; i < w.size(); ++i) {
      LK lk = letter_lk(*ap, w[i]);
      coef *= as[lk.l];
      run += lk.k + 1;  // k_1 + ... + k_i + i
      coef /= Rat(run);
    }
    acc.add_term(w, coef);
  }
  return acc;
}

NCSeries<Cx> assemble_psi(int Wmax) {
  // psi~ = rational pattern times (2 pi i)^{weight}
  NCSeries<Rat> base = assemble_psi_rational(Wmax);
  mpfr_prec_t p = bits_for_digits(45);
  Cx tpi = Cx::two_pi_i(p);
  NCSeries<Cx> out(base.alph, base.trunc);
  for (auto& [w, q] : base.c)
    out.add_term(w, cx_mul_rat(cx_pow_si(tpi, base.alph->degree(w)), q));
  return out;
}

Derivation<Rat> string_derivation(int l, int k, int trunc) {
  const FreeLie& f2 = t12_context(trunc);
  Derivation<Rat> d = der_delta(f2, l, trunc);
  Derivation<Rat> em = der_eminus(f2, trunc);
  Rat fact(1);
  for (int j = 1; j <= k; ++j) {
    d = em.bracket_with(d);  // ad(e_-)
    fact *= j;
  }
  d.images[0] = lie_scale_rat(d.images[0], Rat(1) / fact);
  d.images[1] = lie_scale_rat(d.images[1], Rat(1) / fact);
  return d;
}

NCSeries<Cx> apply_sl2_letters(const NCSeries<Cx>& s, const std::array<Rat, 4>& g) {
  const Alphabet& alph = *s.alph;
  mpfr_prec_t p = 64;
  for (auto& [w, v] : s.c) p = std::max(p, v.prec());
  // matrices per l
  std::map<int, std::vector<std::vector<Rat>>> mats;
  std::vector<NCSeries<Cx>> images;
  for (size_t letter = 0; letter < alph.size(); ++letter) {
    LK lk = letter_lk(alph, static_cast<unsigned char>(letter));
    auto it = mats.find(lk.l);
    if (it == mats.end()) it = mats.emplace(lk.l, sl2_irrep_matrix<Rat>(g, lk.l)).first;
    NCSeries<Cx> img(s.alph, s.trunc);
    for (int j = 0; j <= 2 * lk.l; ++j) {
      const Rat& q = it->second[j][lk.k];
      if (sgn(q) == 0) continue;
      Word wj(1, static_cast<unsigned char>(theta_letter(alph, lk.l, j)));
      img.add_term(wj, Cx::from_rat(q, p));
    }
    images.push_back(std::move(img));
  }
  return nc_substitute(s, images);
}

std::vector<CheckEntry> check_sl2z_relations(int Wmax, const MellinOptions& opt) {
  mpfr_prec_t p = bits_for_digits(opt.digits + 15);
  NCSeries<Cx> theta = assemble_theta(Wmax, opt);
  NCSeries<Cx> psi = assemble_psi(Wmax);
  std::array<Rat, 4> alpha{Rat(0), Rat(-1), Rat(1), Rat(0)};
  std::array<Rat, 4> beta{Rat(1), Rat(-1), Rat(1), Rat(0)};
  std::vector<CheckEntry> out;
  out.push_back(CheckEntry{"grouplike_theta", grouplike_residual(theta), 0.0, false});
  {
    NCSeries<Cx> one = nc_one(theta.alph, theta.trunc, Cx::one(p));
    auto r1 = theta * apply_sl2_letters(theta, alpha) - one;
    out.push_back(CheckEntry{"alpha_relation", [&] {
                               double m = 0;
                               for (auto& [w, v] : r1.c) m = std::max(m, v.norm_upper());
                               return m;
                             }(),
                             [&] {
                               double m = 0;
                               for (auto& [w, v] : r1.c) m = std::max(m, v.err);
                               return m;
                             }(),
                             false});
    auto tp = theta * psi;
    auto btp = apply_sl2_letters(tp, beta);
    std::array<Rat, 4> beta2{beta[0] * beta[0] + beta[1] * beta[2],
                             beta[0] * beta[1] + beta[1] * beta[3],
                             beta[2] * beta[0] + beta[3] * beta[2],
                             beta[2] * beta[1] + beta[3] * beta[3]};
    auto b2tp = apply_sl2_letters(tp, beta2);
    auto r2 = tp * btp * b2tp - one;
    double m = 0, e = 0;
    for (auto& [w, v] : r2.c) {
      m = std::max(m, v.norm_upper());
      e = std::max(e, v.err);
    }
    out.push_back(CheckEntry{"beta_relation", m, e, false});
  }
  return out;
}

std::vector<CheckEntry> check_theta_action(int N, int Wmax, const MZVTable& table,
                                           const MellinOptions& opt) {
  mpfr_prec_t p = bits_for_digits(opt.digits + 15);
  const FreeLie& f2 = t12_context(N);
  Cx tpi = Cx::two_pi_i(p);
  auto [Akz, Bkz] = kz_pair(N, table);
  auto x = lie_to_ring<Cx>(f2.gen<Rat>(0, Rat(1), N), p);
  auto y = lie_to_ring<Cx>(f2.gen<Rat>(1, Rat(1), N), p);
  auto t12 = lie_scale_rat(f2.bracket(x, y), Rat(-1));

  // series letters -> derivations of t_{1,2}
  auto derivation_of = [&](const NCSeries<Cx>& series) {
    double dust = 0;
    FreeLie ctx(*series.alph, series.trunc);
    LieSeries<Cx> logS = ctx.log(series, &dust);
    LieSeries<Cx> imx(&f2.alphabet(), N), imy(&f2.alphabet(), N);
    std::map<Word, Derivation<Rat>> memo;
    auto letters = [&](auto&& self, const Word& w) -> const Derivation<Rat>& {
      auto it = memo.find(w);
      if (it != memo.end()) return it->second;
      Derivation<Rat> d{&f2, {}};
      if (w.size() == 1) {
        LK lk = letter_lk(*series.alph, w[0]);
        d = string_derivation(lk.l, lk.k, N);
      } else {
        auto [u, v] = standard_factorization(w);
        d = self(self, u).bracket_with(self(self, v));
      }
      return memo.emplace(w, std::move(d)).first->second;
    };
    for (auto& [w, coef] : logS.c) {
      const Derivation<Rat>& d = letters(letters, w);
      imx = imx + lie_scale(lie_to_ring<Cx>(d.images[0], p), coef);
      imy = imy + lie_scale(lie_to_ring<Cx>(d.images[1], p), coef);
    }
    return std::pair<Derivation<Cx>, double>{Derivation<Cx>{&f2, {imx, imy}}, dust};
  };

  // automorphisms as generator-image pairs, composed left-to-right as maps
  using Auto = std::vector<LieSeries<Cx>>;
  auto compose = [&](const Auto& first, const Auto& then) {
    return Auto{substitute_lie(f2, first[0], f2, then), substitute_lie(f2, first[1], f2, then)};
  };
  auto apply = [&](const Auto& a, const LieSeries<Cx>& s) { return substitute_lie(f2, s, f2, a); };

  auto exp_delta0 = [&](const Rat& num) {
    // exp(num (2 pi i)^2 delta_0): conjugation images e^{ad(c t_12)}(gen)
    Cx c = cx_mul_rat(tpi * tpi, num);
    auto ct = lie_scale(t12, c);
    return Auto{f2.Ad(ct, x), f2.Ad(ct, y)};
  };
  Auto rho_alpha{-y, x};                         // (0 -1; 1 0)
  Auto rho_psi_mat{x + y, y};                    // (1 1; 0 1)

  std::vector<CheckEntry> out;
  {
    auto [Dth, dust] = derivation_of(assemble_theta(Wmax, opt));
    out.push_back(CheckEntry{"log_theta_primitivity", dust, 0.0, false});
    Auto theta_auto = Dth.exp_automorphism();
    // e^{(2pi i)^2 delta_0 / 4} alpha theta, applied right-to-left as maps
    Auto composite = compose(compose(theta_auto, rho_alpha), exp_delta0(rat(1, 4)));
    auto targetA = gprod(f2, Akz, Bkz, -Akz);
    auto rA = apply(composite, Akz) - targetA;
    auto rB = apply(composite, Bkz) + Akz;
    out.push_back(entry_of("theta_action_A", rA));
    out.push_back(entry_of("theta_action_B", rB));
  }
  {
    auto [Dps, dust] = derivation_of(assemble_psi(Wmax));
    (void)dust;
    Auto psi_auto = Dps.exp_automorphism();
    Auto composite = compose(compose(rho_psi_mat, psi_auto), exp_delta0(rat(-1, 12)));
    auto rA = apply(composite, Akz) - Akz;
    auto rB = apply(composite, Bkz) - gprod(f2, Bkz, Akz);
    out.push_back(entry_of("psi_action_A", rA));
    out.push_back(entry_of("psi_action_B", rB));
  }
  {
    // delta_0 sanity: exp(c delta_0) fixes e^{c' t_12}
    Auto E = exp_delta0(rat(1, 3));
    auto fixed = apply(E, lie_scale_rat(t12, rat(7, 5))) - lie_scale_rat(t12, rat(7, 5));
    out.push_back(entry_of("delta0_fixes_t12", fixed));
  }
  return out;
}

}  // namespace ell
