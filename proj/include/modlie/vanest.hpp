#pragma once

#include "modlie/algebroid.hpp"
#include "modlie/groupoid.hpp"

namespace modlie {

// Action algebroid of a LieAction model, differentiated at the units:
//   anchor[k][j]    = d action_j / d u_k at (0, x)
//   bracket[a][b][c] = d2 mul_c / du_b dv_a (0,0) - d2 mul_c / du_a dv_b (0,0)
// The mixed-partial order makes the anchor a bracket homomorphism for the
// right-to-left arrow composition used here (checked by checkAlgebroid).
LieAlgebroid inducedAlgebroid(const LieActionModel& model);

// Degree-1 differentiation of an additive cocycle at the units along the
// group directions: VE(c)_k(x) = d c / d u_k at (0, x). Logarithm terms
// differentiate to (d arg/d u_k)/arg; a pole at u = 0 means the cocycle does
// not take the value 0 on units and is reported as PoleError.
Cochain1 vanEst1(const LieActionModel& model, const AdditiveValue& c);
Cochain1 vanEst1(const LieActionModel& model, const AdditiveCocycle& c);

} // namespace modlie
