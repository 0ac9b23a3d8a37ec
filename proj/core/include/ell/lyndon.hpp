#pragma once

#include <vector>

#include "ell/alphabet.hpp"

namespace ell {

bool is_lyndon(const Word& w);

// Proper standard (Chen-Fox-Lyndon) factorization w = u.v of a Lyndon word
// of length >= 2; v is the lexicographically smallest proper suffix.
std::pair<Word, Word> standard_factorization(const Word& w);

// All Lyndon words over `alph` of weighted total degree <= maxdeg,
// sorted by (degree, lex). Letter degrees are >= 1 so lengths stay bounded.
std::vector<Word> lyndon_words_upto(const Alphabet& alph, int maxdeg);

// Witt dimension of the degree-d part of the free Lie algebra on k
// degree-1 generators: (1/d) sum_{e|d} mu(e) k^{d/e}.
long witt_dimension(int k, int d);

}  // namespace ell
