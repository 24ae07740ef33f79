#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "modlie/algebroid.hpp"
#include "modlie/errors.hpp"

#include "catalog.hpp"

using namespace modlie;
using catalog::expr;

namespace {

// Hamiltonian vector field of f for the bivector pi: X^j = sum_i (df)_i pi[i][j]
std::vector<RatExpr> hamiltonianField(const ChartPtr& chart,
                                      const std::vector<std::vector<RatExpr>>& pi,
                                      const RatExpr& f) {
    const int n = chart->dim();
    std::vector<RatExpr> X(static_cast<std::size_t>(n), RatExpr::zero(chart));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            X[static_cast<std::size_t>(j)] =
                X[static_cast<std::size_t>(j)] +
                f.derivative(i) * pi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return X;
}

RatExpr divergence(const ChartPtr& chart, const std::vector<RatExpr>& X) {
    RatExpr d = RatExpr::zero(chart);
    for (int j = 0; j < chart->dim(); ++j) d = d + X[static_cast<std::size_t>(j)].derivative(j);
    return d;
}

RatExpr pairWithDifferential(const Cochain1& omega, const RatExpr& f) {
    RatExpr v = RatExpr::zero(f.chart());
    for (std::size_t i = 0; i < omega.size(); ++i) v = v + omega[i] * f.derivative(static_cast<int>(i));
    return v;
}

} // namespace

TEST_CASE("catalog structures satisfy all identities") {
    CHECK(checkAlgebroid(catalog::aff1()).ok);
    CHECK(checkAlgebroid(catalog::abelian2()).ok);
    CHECK(checkAlgebroid(catalog::heisenberg()).ok);
    CHECK(checkAlgebroid(catalog::so3Bundle(catalog::spaceChart())).ok);
    CHECK(checkAlgebroid(catalog::aff1OnLine()).ok);
    CHECK(checkAlgebroid(catalog::aff1OnPlane()).ok);
    CHECK(checkAlgebroid(catalog::poissonX()).ok);
    CHECK(checkAlgebroid(tangentAlgebroid(catalog::planeChart())).ok);
}

TEST_CASE("a wrong sign in so(3) is reported as a jacobi violation") {
    LieAlgebroid A = catalog::brokenSo3();
    AlgebroidReport rep = checkAlgebroid(A);
    CHECK(!rep.ok);
    REQUIRE(rep.issues.size() == 1);
    CHECK(rep.issues[0].kind == "jacobi");
    CHECK(rep.issues[0].index == std::vector<int>{1, 2, 3, 3});
    CHECK(rep.issues[0].residual == RatExpr::constant(A.chart, -1));
    // the canonical density cochain of a non-algebroid fails the closedness gate
    CHECK_THROWS_AS(canonicalRep(A, kDensityChar), DomainError);
}

TEST_CASE("seeded violations surface with their residuals") {
    LieAlgebroid A = catalog::heisenberg();
    A.bracket[1][0][2] = RatExpr::one(A.chart); // mirror should be -1
    AlgebroidReport rep = checkAlgebroid(A);
    CHECK(!rep.ok);
    REQUIRE(rep.issues.size() == 1);
    CHECK(rep.issues[0].kind == "antisymmetry");
    CHECK(rep.issues[0].index == std::vector<int>{1, 2, 3});
    CHECK(rep.issues[0].residual == RatExpr::constant(A.chart, 2));

    LieAlgebroid B = catalog::aff1OnLine();
    B.anchor[1][0] = expr(B.chart, "1+x");
    AlgebroidReport repB = checkAlgebroid(B);
    CHECK(!repB.ok);
    CHECK(repB.issues[0].kind == "anchor");
}

TEST_CASE("shape validation rejects inconsistent data") {
    LieAlgebroid A = catalog::aff1OnLine();
    A.anchor.pop_back();
    CHECK_THROWS_AS(validateShapes(A), DomainError);
    CHECK_THROWS_AS(actionAlgebroid(catalog::lineChart(),
                                    std::vector(2, std::vector(2, std::vector<mpq_class>(2, 0))),
                                    {{}, {}}),
                    DomainError);
}

TEST_CASE("modular cocycle of aff(1) is the trace of the adjoint") {
    LieAlgebroid A = catalog::aff1();
    Cochain1 mod = modularCocycle(A);
    // tr ad(e1) = 1 from [e1, e2] = e2, tr ad(e2) = 0
    REQUIRE(mod.size() == 2);
    CHECK(mod[0] == RatExpr::one(A.chart));
    CHECK(mod[1] == RatExpr::zero(A.chart));
    CHECK(isClosed(A, mod));
    // over a point every exact cochain vanishes, so the class is nonzero
    CHECK(isZeroCochain(dA0(A, RatExpr::constant(A.chart, 7))));
    CHECK(!isZeroCochain(mod));
}

TEST_CASE("unimodular examples have vanishing modular cocycle") {
    CHECK(isZeroCochain(modularCocycle(catalog::abelian2())));
    CHECK(isZeroCochain(modularCocycle(catalog::heisenberg())));
    CHECK(isZeroCochain(modularCocycle(catalog::so3Bundle(catalog::lineChart()))));
    CHECK(isZeroCochain(modularCocycle(tangentAlgebroid(catalog::spaceChart()))));
    CHECK(isZeroCochain(modularCocycle(catalog::aff1OnLine())));
}

TEST_CASE("modular cocycle of the cotangent structure doubles Hamiltonian divergences") {
    LieAlgebroid A = catalog::poissonX();
    auto chart = A.chart;
    RatExpr x = expr(chart, "x");
    RatExpr y = expr(chart, "y");
    Cochain1 mod = modularCocycle(A);
    REQUIRE(mod.size() == 2);
    CHECK(mod[0] == RatExpr::zero(chart));
    CHECK(mod[1] == RatExpr::constant(chart, -2));

    std::vector<std::vector<RatExpr>> pi = {{RatExpr::zero(chart), x},
                                            {-x, RatExpr::zero(chart)}};
    // independent oracle: <mod, df> = 2 div(X_f) for the flat density
    for (const RatExpr& f : {x, y, x * y, x * x + y}) {
        RatExpr lhs = pairWithDifferential(mod, f);
        RatExpr rhs = divergence(chart, hamiltonianField(chart, pi, f));
        CHECK(lhs == rhs + rhs);
    }
    CHECK(divergence(chart, hamiltonianField(chart, pi, x)) == RatExpr::zero(chart));
    CHECK(divergence(chart, hamiltonianField(chart, pi, y)) == RatExpr::constant(chart, -1));
    CHECK(divergence(chart, hamiltonianField(chart, pi, x * y)) == -x);
}

TEST_CASE("the doubled-divergence identity holds for random bivectors") {
    auto chart = catalog::planeChart();
    std::mt19937 rng(23);
    for (int t = 0; t < 20; ++t) {
        auto pi = catalog::randomBivector(rng, chart, 3);
        LieAlgebroid A = poissonAlgebroid(chart, pi);
        Cochain1 mod = modularCocycle(A);
        RatExpr f = catalog::randomPoly(rng, chart, 3);
        RatExpr rhs = divergence(chart, hamiltonianField(chart, pi, f));
        CHECK(pairWithDifferential(mod, f) == rhs + rhs);
    }
}

TEST_CASE("differential squares to zero") {
    std::mt19937 rng(5);
    for (const LieAlgebroid& A : {catalog::poissonX(), catalog::aff1OnPlane(),
                                  tangentAlgebroid(catalog::planeChart())}) {
        for (int t = 0; t < 5; ++t) {
            RatExpr f = catalog::randomPoly(rng, A.chart, 3);
            Cochain2 dd = dA1(A, dA0(A, f));
            for (const auto& row : dd)
                for (const auto& e : row) CHECK(e.isZero());
        }
    }
}

TEST_CASE("coboundary witnesses") {
    LieAlgebroid A = tangentAlgebroid(catalog::planeChart());
    RatExpr f = expr(A.chart, "x^2*y+3/2*x");
    Cochain1 omega = dA0(A, f);
    CHECK(isClosed(A, omega));
    CHECK(isCoboundaryWitness(A, omega, f));
    CHECK(!isCoboundaryWitness(A, omega, f + expr(A.chart, "x")));
    CHECK(isCoboundaryWitness(A, modularCocycle(A), RatExpr::zero(A.chart)));
}

TEST_CASE("canonical cochains scale with the character and tensor additively") {
    for (const LieAlgebroid& A : {catalog::aff1(), catalog::poissonX(), catalog::aff1OnPlane()}) {
        AlgLineRep density = canonicalRep(A, kDensityChar);
        AlgLineRep topDual = canonicalRep(A, kTopDualChar);
        AlgLineRep orient = canonicalRep(A, kOrientationChar);
        CHECK(thetaCocycle(A, density) == thetaCocycle(A, topDual));
        CHECK(isZeroCochain(orient.omega));
        AlgLineRep two = canonicalRep(A, lDensityChar(2));
        AlgLineRep sum = tensorRep(density, density);
        CHECK(two.omega == sum.omega);
        // theta of a square is twice theta
        Cochain1 half = thetaCocycle(A, density);
        Cochain1 full = thetaCocycle(A, sum);
        for (std::size_t i = 0; i < half.size(); ++i) CHECK(full[i] == half[i] + half[i]);
    }
}

TEST_CASE("bivector constructors validate their input") {
    auto chart = catalog::planeChart();
    RatExpr x = expr(chart, "x");
    CHECK_THROWS_AS(poissonAlgebroid(chart, {{RatExpr::zero(chart), x},
                                             {x, RatExpr::zero(chart)}}),
                    DomainError);
    auto space = catalog::spaceChart();
    RatExpr xs = expr(space, "x");
    RatExpr ys = expr(space, "y");
    RatExpr z0 = RatExpr::zero(space);
    // {x1,x2} = x, {x2,x3} = y violates the Jacobi identity
    CHECK_THROWS_AS(poissonAlgebroid(space, {{z0, xs, z0}, {-xs, z0, ys}, {z0, -ys, z0}}),
                    DomainError);
}
