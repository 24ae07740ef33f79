#pragma once

#include <string>
#include <vector>

#include "modlie/chars.hpp"
#include "modlie/ratexpr.hpp"

namespace modlie {

// Lie algebroid over one chart with polynomial-coefficient anchor and bracket
// in a fixed trivializing frame e_0 .. e_{rank-1}:
//   anchor[a][j]   = coefficient of d/dx_j in rho(e_a)          (rank x dim)
//   bracket[a][b][c] = coefficient of e_c in [e_a, e_b]         (rank^3)
struct LieAlgebroid {
    ChartPtr chart;
    int rank = 0;
    std::vector<std::vector<RatExpr>> anchor;
    std::vector<std::vector<std::vector<RatExpr>>> bracket;

    int dim() const { return chart ? chart->dim() : 0; }
};

// Throws DomainError when shapes or charts are inconsistent.
void validateShapes(const LieAlgebroid& A);

struct AlgebroidIssue {
    std::string kind;        // "antisymmetry" | "anchor" | "jacobi"
    std::vector<int> index;  // 1-based frame/coordinate indices, ready for display
    RatExpr residual;
};

struct AlgebroidReport {
    bool ok = true;
    std::vector<AlgebroidIssue> issues;
};

// Checks bracket antisymmetry, the anchor bracket-compatibility identity and
// the Jacobi identity; every violated instance is reported with its residual.
AlgebroidReport checkAlgebroid(const LieAlgebroid& A);

using Cochain1 = std::vector<RatExpr>;                 // one entry per frame section
using Cochain2 = std::vector<std::vector<RatExpr>>;    // antisymmetric rank x rank

Cochain1 dA0(const LieAlgebroid& A, const RatExpr& f);
Cochain2 dA1(const LieAlgebroid& A, const Cochain1& omega);
bool isClosed(const LieAlgebroid& A, const Cochain1& omega);

// Does f witness omega = dA0(f)?
bool isCoboundaryWitness(const LieAlgebroid& A, const Cochain1& omega, const RatExpr& f);

// Representation of A on a trivialized line bundle, nabla_a = rho(e_a) + omega_a.
// Flat iff omega is closed.
struct AlgLineRep {
    Cochain1 omega;
};

AlgLineRep tensorRep(const AlgLineRep& a, const AlgLineRep& b);

// Connection cochain of the canonical representation attached to a character
// of the general linear group, in the trivializing frame:
//   omega_a = -m * ( sum_b bracket[a][b][b] + sum_j d(anchor[a][j])/dx_j )
// The sign convention pairs with charApply: for the density character this is
// the modular cocycle. Throws DomainError when the result is not closed.
AlgLineRep canonicalRep(const LieAlgebroid& A, const Character& chi);

// Characteristic cocycle of a flat line representation (its class is the
// obstruction to a nabla-invariant trivialization).
Cochain1 thetaCocycle(const LieAlgebroid& A, const AlgLineRep& rep);

Cochain1 modularCocycle(const LieAlgebroid& A);

bool isZeroCochain(const Cochain1& omega);

// --- constructors -----------------------------------------------------------

LieAlgebroid tangentAlgebroid(const ChartPtr& chart);

// Lie algebra as an algebroid over a point; structure constants c[a][b][c].
LieAlgebroid lieAlgebraAlgebroid(int rank, const std::vector<std::vector<std::vector<mpq_class>>>& c);

// Cotangent algebroid of a polynomial bivector pi[i][j] (antisymmetric):
//   anchor[i][j] = pi[i][j],  bracket[i][j][k] = d(pi[i][j])/dx_k.
// Throws DomainError when pi is not antisymmetric or fails the Jacobi
// identity (automatic only in dimension <= 2).
LieAlgebroid poissonAlgebroid(const ChartPtr& chart, const std::vector<std::vector<RatExpr>>& pi);

// Action algebroid of a Lie algebra with structure constants c acting through
// the vector fields fields[a] = sum_j fields[a][j] d/dx_j. The action axiom
// is exactly the anchor identity of checkAlgebroid and is not verified here.
LieAlgebroid actionAlgebroid(const ChartPtr& chart,
                             const std::vector<std::vector<std::vector<mpq_class>>>& c,
                             const std::vector<std::vector<RatExpr>>& fields);

} // namespace modlie
