#pragma once

#include "modlie/logsum.hpp"
#include "modlie/ratexpr.hpp"

namespace modlie {

// Multiplicative character of GL(q), restricted to the family
//   t -> |det t|^m * sign(det t)^eps
// that classifies one-dimensional representations arising from density and
// orientation twists of a rank-q bundle.
struct Character {
    long m = 0;
    int eps = 0; // 0 or 1

    bool operator==(const Character& o) const { return m == o.m && eps == o.eps; }
    bool operator!=(const Character& o) const { return !(*this == o); }
};

// |det|^-1: transverse densities
inline constexpr Character kDensityChar{-1, 0};
// sign(det): transverse orientations
inline constexpr Character kOrientationChar{0, 1};
// det^-1: top exterior power of the dual
inline constexpr Character kTopDualChar{-1, 1};
// |det|^-l: l-densities
inline Character lDensityChar(long l) { return Character{-l, 0}; }

Character charMul(const Character& a, const Character& b);
Character charInv(const Character& a);

// Value of a character applied to a nonzero scalar function, kept exact:
// the represented function is exp(absPart) * sign(signPart).
struct FormalScalar {
    LogSum absPart;
    RatExpr signPart;
};

FormalScalar charApply(const Character& chi, const RatExpr& t);

FormalScalar fsMul(const FormalScalar& a, const FormalScalar& b);
FormalScalar fsDiv(const FormalScalar& a, const FormalScalar& b);
FormalScalar fsSubstitute(const FormalScalar& s, const ChartPtr& target,
                          const std::vector<RatExpr>& images);

// Strips the positive rational content from numerator and denominator; the
// result has the same sign as the input everywhere both are defined.
RatExpr signCanonical(const RatExpr& e);

// Sound three-valued test of "this scalar is the constant function 1".
Trilean fsIsOne(const FormalScalar& s);
Trilean fsEqual(const FormalScalar& a, const FormalScalar& b);

} // namespace modlie
