#pragma once

// Exact truncated Hopf algebra of pointed alien operators on a ray: words of
// positive integer weights, reversed-concatenation product, the composition
// coproduct, the antipode, the Stokes element and its logarithm, and the
// tower-model shift representation.

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "thimble/models.hpp"
#include "thimble/rational.hpp"

namespace thimble {

// Weights are positive integers (multiples of the base weight, which the
// tower representation interprets as 2*pi).  Letters are listed in the
// order the operators are applied.
using Word = std::vector<int>;

int total_weight(const Word& u);

// Terms of total weight above w_max are dropped by every operation, so the
// algebra is the graded truncation and all identities hold exactly in it.
struct HopfElement {
    int w_max = 6;
    std::map<Word, GaussRat> terms;  // no zero coefficients stored
};

struct TensorElement {
    int w_max = 6;  // bound on combined weight of the two legs
    std::map<std::pair<Word, Word>, GaussRat> terms;
};

struct TripleElement {
    int w_max = 6;
    std::map<std::tuple<Word, Word, Word>, GaussRat> terms;
};

HopfElement hopf_unit(int w_max);
HopfElement hopf_generator(int w, int w_max);
HopfElement word_element(const Word& u, int w_max);

bool operator==(const HopfElement& a, const HopfElement& b);
bool operator==(const TensorElement& a, const TensorElement& b);
bool operator==(const TripleElement& a, const TripleElement& b);

HopfElement operator+(const HopfElement& a, const HopfElement& b);
HopfElement operator-(const HopfElement& a, const HopfElement& b);
HopfElement operator*(const GaussRat& c, const HopfElement& a);

// Operator composition: a word from the left factor is appended after the
// words of the right factor (the right factor acts first).
HopfElement product(const HopfElement& x, const HopfElement& y);
TensorElement tensor_product(const TensorElement& x, const TensorElement& y);

// Algebra homomorphism with generator rule
// g_w -> g_w x 1 + 1 x g_w + sum_{a+b=w} g_a x g_b.
TensorElement coproduct(const HopfElement& x);
TripleElement coproduct_left(const TensorElement& t);
TripleElement coproduct_right(const TensorElement& t);

// Coefficient of the empty word.
GaussRat counit(const HopfElement& x);

// Alternating sum over compositions on generators, extended
// anti-multiplicatively; convolution inverse of the identity.
HopfElement antipode(const HopfElement& x);

// 1 + sum of the generators up to w_max; group-like.
HopfElement stokes_plus(int w_max);

// Weight-homogeneous components of log stokes_plus: entry [w-1] is the
// weight-w alien derivation.
std::vector<HopfElement> log_stokes(int w_max);

// Exponential of an element with vanishing counit (terminates by grading).
HopfElement hopf_exp(const HopfElement& x);

// Action on the tower integrals: a word of total weight k maps index n to
// n - k.  Shifts leaving the window are dropped and flagged.
struct IndexCoefficients {
    std::map<int, GaussRat> coeff;
    bool truncated = false;
};
IndexCoefficients represent_gamma(const HopfElement& x, int n,
                                  const IndexWindow& w);

}  // namespace thimble
