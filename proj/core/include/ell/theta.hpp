#pragma once

#include <array>

#include "ell/gt.hpp"
#include "ell/mellin.hpp"

namespace ell {

// Free algebra on the string generators w_{l,k} = (ad e_-)^k(delta_{2l})/k!,
// l >= 1, 0 <= k <= 2l; the letter g{l}_{k} carries weight 2l+2.
Alphabet theta_alphabet(int Wmax);

// letter index of g{l}_{k} in theta_alphabet(Wmax)
size_t theta_letter(const Alphabet& alph, int l, int k);

// theta~ / psi~ truncated at total weight Wmax (complex coefficients)
NCSeries<Cx> assemble_theta(int Wmax, const MellinOptions& opt);
NCSeries<Cx> assemble_psi(int Wmax);

// psi~ divided by (2 pi i)^{weight}: exact rational coefficients
// 1/((k_1+1)(k_1+k_2+2)...) prod a_{2l_i}; group-like on the nose
NCSeries<Rat> assemble_psi_rational(int Wmax);

// the derivation w_{l,k} of the free t_{1,2} (exact)
Derivation<Rat> string_derivation(int l, int k, int trunc);

// matrix of conjugation theta_g . w_{l,k} . theta_g^{-1} on span{w_{l,0..2l}},
// theta_g : (x, y) -> (a x + b y, c x + d y). Throws if the span fails to
// close (a convention bug); exact for rational g.
template <class K>
std::vector<std::vector<K>> sl2_irrep_matrix(const std::array<K, 4>& g, int l);

// apply an SL2 element letter-wise to a theta-alphabet series
NCSeries<Cx> apply_sl2_letters(const NCSeries<Cx>& s, const std::array<Rat, 4>& g);

struct Sl2zReport {
  std::vector<CheckEntry> entries;
};

// group-likeness of theta~ and the two relations
// theta~ . alpha(theta~) = (theta~ psi~) . beta(theta~ psi~) . beta^2(theta~ psi~) = 1
std::vector<CheckEntry> check_sl2z_relations(int Wmax, const MellinOptions& opt);

// Theorem-9(3)-type action checks at t_{1,2}-degree N:
//   e^{(2 pi i)^2 delta_0/4} alpha theta : (A_KZ, B_KZ) -> (A B A^-1, A^-1)
//   e^{-(2 pi i)^2 delta_0/12} psi~ (1 1; 0 1) : (A_KZ, B_KZ) -> (A, B A)
// plus the delta_0 sanity check exp(c delta_0)(e^{c' t_12}) = e^{c' t_12}.
std::vector<CheckEntry> check_theta_action(int N, int Wmax, const MZVTable& table,
                                           const MellinOptions& opt);

// ---- template implementation ------------------------------------------------

template <class K>
std::vector<std::vector<K>> sl2_irrep_matrix(const std::array<K, 4>& g, int l) {
  int trunc = 2 * l + 3;
  const FreeLie& f2 = t12_context(trunc);
  mpfr_prec_t prec = 64;
  if constexpr (!Ring<K>::exact)
    for (auto& e : g) prec = std::max(prec, e.prec());
  auto x = lie_to_ring<K>(f2.gen<Rat>(0, Rat(1), trunc), prec);
  auto y = lie_to_ring<K>(f2.gen<Rat>(1, Rat(1), trunc), prec);
  // det g = 1: inverse is (d, -b; -c, a)
  std::vector<LieSeries<K>> fwd{lie_scale(x, g[0]) + lie_scale(y, g[1]),
                                lie_scale(x, g[2]) + lie_scale(y, g[3])};
  std::vector<LieSeries<K>> inv{lie_scale(x, g[3]) + lie_scale(y, K(-g[1])),
                                lie_scale(x, K(-g[2])) + lie_scale(y, g[0])};

  int dim = 2 * l + 1;
  std::vector<Derivation<Rat>> ws;
  for (int k = 0; k < dim; ++k) ws.push_back(string_derivation(l, k, trunc));
  std::vector<LieSeries<K>> wx;  // w_j(x) as K-series (exact Rat coordinates)
  for (int k = 0; k < dim; ++k) wx.push_back(lie_to_ring<K>(ws[k].images[0], prec));
  const std::vector<Derivation<Rat>>& wsR = ws;

  std::vector<std::vector<K>> M(dim, std::vector<K>(dim, Ring<K>::zero()));
  for (int k = 0; k < dim; ++k) {
    // conj(w_k)(gen) = theta_g(w_k(theta_g^{-1}(gen)))
    Derivation<Rat> wk = ws[k];
    auto conj_on = [&](const LieSeries<K>& pre) {
      LieSeries<K> mid(&f2.alphabet(), trunc);
      // apply the exact derivation to the K-series via Leibniz images
      std::vector<LieSeries<K>> imK{lie_to_ring<K>(wk.images[0], prec),
                                    lie_to_ring<K>(wk.images[1], prec)};
      Derivation<K> dk{&f2, imK};
      return substitute_lie(f2, dk.apply(pre), f2, fwd);
    };
    LieSeries<K> cx = conj_on(inv[0]);
    LieSeries<K> cy = conj_on(inv[1]);
    // decompose over the distinct-bidegree images w_j(x)
    LieSeries<K> remx = cx;
    for (int j = 0; j < dim; ++j) {
      // bidegree of w_j(x) is (2l+2-j, j+1); leading Rat coordinate pins the scalar
      std::vector<int> bd{2 * l + 2 - j, j + 1};
      K coef = Ring<K>::zero();
      bool found = false;
      for (auto& [w, q] : wsR[j].images[0].c) {
        if (f2.alphabet().multidegree(w) != bd) continue;
        K num = remx.coeff(w);
        if (!found && sgn(q) != 0) {
          coef = Ring<K>::mul_rat(num, Rat(1) / q);
          found = true;
          break;
        }
      }
      if (!found) continue;
      M[j][k] = coef;
      remx = remx - lie_scale(wx[j], coef);
    }
    double leftx = lie_norm_upper(remx);
    // verify the same matrix reproduces the y-image
    LieSeries<K> expect_y(&f2.alphabet(), trunc);
    for (int j = 0; j < dim; ++j)
      expect_y = expect_y + lie_scale(lie_to_ring<K>(ws[j].images[1], prec), M[j][k]);
    double lefty = lie_norm_upper(cy - expect_y);
    double tol = Ring<K>::exact ? 0.0 : 1e-20;
    if (leftx > tol || lefty > tol)
      throw std::runtime_error("sl2 irrep: conjugated span fails to close");
  }
  return M;
}

}  // namespace ell
