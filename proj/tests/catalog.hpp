#pragma once

// Shared fixtures: the model and algebroid catalog used across the test
// binaries, plus small deterministic random generators.

#include <random>
#include <vector>

#include "modlie/algebroid.hpp"
#include "modlie/cech.hpp"
#include "modlie/expr_io.hpp"
#include "modlie/groupoid.hpp"

namespace catalog {

using namespace modlie;

inline ChartPtr pointChart() { return makeChart({}); }
inline ChartPtr lineChart() { return makeChart({"x"}); }
inline ChartPtr planeChart() { return makeChart({"x", "y"}); }
inline ChartPtr spaceChart() { return makeChart({"x", "y", "z"}); }

inline RatExpr expr(const ChartPtr& chart, const std::string& text) {
    return parseRatExpr(chart, text);
}

// --- Lie algebras over a point ----------------------------------------------

// [e1, e2] = e2
inline LieAlgebroid aff1() {
    std::vector c(2, std::vector(2, std::vector<mpq_class>(2, 0)));
    c[0][1][1] = 1;
    c[1][0][1] = -1;
    return lieAlgebraAlgebroid(2, c);
}

inline LieAlgebroid abelian2() {
    return lieAlgebraAlgebroid(2, std::vector(2, std::vector(2, std::vector<mpq_class>(2, 0))));
}

// [e1, e2] = e3, e3 central
inline LieAlgebroid heisenberg() {
    std::vector c(3, std::vector(3, std::vector<mpq_class>(3, 0)));
    c[0][1][2] = 1;
    c[1][0][2] = -1;
    return lieAlgebraAlgebroid(3, c);
}

// so(3) structure constants as a Lie algebra bundle over the given chart
inline LieAlgebroid so3Bundle(const ChartPtr& chart) {
    std::vector c(3, std::vector(3, std::vector<mpq_class>(3, 0)));
    c[0][1][2] = 1;
    c[1][0][2] = -1;
    c[1][2][0] = 1;
    c[2][1][0] = -1;
    c[2][0][1] = 1;
    c[0][2][1] = -1;
    std::vector<std::vector<RatExpr>> fields(3, std::vector<RatExpr>(chart->dim(),
                                                                     RatExpr::zero(chart)));
    return actionAlgebroid(chart, c, fields);
}

// so(3) with one sign flipped: [e3, e1] = e1 breaks the Jacobi identity
inline LieAlgebroid brokenSo3() {
    std::vector c(3, std::vector(3, std::vector<mpq_class>(3, 0)));
    c[0][1][2] = 1;
    c[1][0][2] = -1;
    c[1][2][0] = 1;
    c[2][1][0] = -1;
    c[2][0][0] = 1;
    c[0][2][0] = -1;
    return lieAlgebraAlgebroid(3, c);
}

// aff(1) acting on the line: e1 -> x d/dx, e2 -> d/dx, [e1, e2] = -e2
inline LieAlgebroid aff1OnLine() {
    auto chart = lineChart();
    std::vector c(2, std::vector(2, std::vector<mpq_class>(2, 0)));
    c[0][1][1] = -1;
    c[1][0][1] = 1;
    return actionAlgebroid(chart, c, {{expr(chart, "x")}, {expr(chart, "1")}});
}

// aff(1) acting on the plane: e1 -> x d/dx + y d/dy, e2 -> d/dx
inline LieAlgebroid aff1OnPlane() {
    auto chart = planeChart();
    std::vector c(2, std::vector(2, std::vector<mpq_class>(2, 0)));
    c[0][1][1] = -1;
    c[1][0][1] = 1;
    return actionAlgebroid(chart, c,
                           {{expr(chart, "x"), expr(chart, "y")},
                            {expr(chart, "1"), expr(chart, "0")}});
}

// cotangent algebroid of pi12 = x on the plane
inline LieAlgebroid poissonX() {
    auto chart = planeChart();
    RatExpr x = expr(chart, "x");
    return poissonAlgebroid(chart, {{RatExpr::zero(chart), x}, {-x, RatExpr::zero(chart)}});
}

// --- groupoid models ----------------------------------------------------------

// multiplicative group centered at 1 (u = t - 1) scaling the line
inline LieActionModel scalingModel() {
    auto base = lineChart();
    auto grp = makeChart({"u"});
    auto mulCh = concatCharts(grp, suffixChart(grp, "_r"));
    auto actCh = concatCharts(grp, base);
    return makeLieActionModel(base, grp, {expr(mulCh, "u+u_r+u*u_r")},
                              {expr(grp, "-1*u/(1+u)")}, {expr(actCh, "(1+u)*x")});
}

// affine group of the line, coordinates centered at the identity
inline LieActionModel affineModel() {
    auto base = lineChart();
    auto grp = makeChart({"u1", "u2"});
    auto mulCh = concatCharts(grp, suffixChart(grp, "_r"));
    auto actCh = concatCharts(grp, base);
    return makeLieActionModel(
        base, grp, {expr(mulCh, "u1+u1_r+u1*u1_r"), expr(mulCh, "(1+u1)*u2_r+u2")},
        {expr(grp, "-1*u1/(1+u1)"), expr(grp, "-1*u2/(1+u1)")}, {expr(actCh, "(1+u1)*x+u2")});
}

inline LieActionModel translationModel() {
    auto base = lineChart();
    auto grp = makeChart({"u"});
    auto mulCh = concatCharts(grp, suffixChart(grp, "_r"));
    auto actCh = concatCharts(grp, base);
    return makeLieActionModel(base, grp, {expr(mulCh, "u+u_r")}, {expr(grp, "-1*u")},
                              {expr(actCh, "x+u")});
}

inline DiscreteActionModel doublingModel() {
    auto base = lineChart();
    return makeDiscreteActionModel(
        base, {DiscreteGenerator{"double", {expr(base, "2*x")}, {expr(base, "x/2")}}});
}

inline DiscreteActionModel reflectionModel() {
    auto base = lineChart();
    return makeDiscreteActionModel(
        base, {DiscreteGenerator{"reflect", {expr(base, "-1*x")}, {expr(base, "-1*x")}}});
}

inline DiscreteActionModel shiftModel() {
    auto base = lineChart();
    return makeDiscreteActionModel(
        base, {DiscreteGenerator{"shift", {expr(base, "x+1")}, {expr(base, "x-1")}}});
}

inline std::vector<GroupoidModel> allModels() {
    return {GroupoidModel{makePairModel(lineChart())}, GroupoidModel{makePairModel(planeChart())},
            GroupoidModel{doublingModel()},            GroupoidModel{reflectionModel()},
            GroupoidModel{shiftModel()},               GroupoidModel{scalingModel()},
            GroupoidModel{affineModel()},              GroupoidModel{translationModel()}};
}

// --- covers --------------------------------------------------------------------

inline CoverDecl wholeLineCover() {
    return CoverDecl{{CoverPiece{"R", std::nullopt, {{mpq_class(0)}}}}};
}

// two overlapping half lines (-inf, 1] and [-1, inf)
inline CoverDecl twoPieceLineCover() {
    return CoverDecl{{CoverPiece{"L", std::vector<CoverBound>{{std::nullopt, mpq_class(1)}},
                                 {{mpq_class(0)}}},
                      CoverPiece{"R", std::vector<CoverBound>{{mpq_class(-1), std::nullopt}},
                                 {{mpq_class(0)}}}}};
}

// --- deterministic randomness ----------------------------------------------------

inline mpq_class randomCoeff(std::mt19937& rng, int span) {
    return mpq_class(static_cast<long>(rng() % (2 * span + 1)) - span);
}

// random polynomial with integer coefficients and total degree <= maxDegree
inline RatExpr randomPoly(std::mt19937& rng, const ChartPtr& chart, int maxDegree) {
    RatExpr out = RatExpr::constant(chart, randomCoeff(rng, 3));
    for (int t = 0; t < 4; ++t) {
        RatExpr mono = RatExpr::constant(chart, randomCoeff(rng, 3));
        unsigned deg = rng() % static_cast<unsigned>(maxDegree + 1);
        for (unsigned d = 0; d < deg && chart->dim() > 0; ++d)
            mono = mono * RatExpr::variable(chart, static_cast<int>(rng() % chart->dim()));
        out = out + mono;
    }
    return out;
}

// random antisymmetric polynomial bivector on the plane
inline std::vector<std::vector<RatExpr>> randomBivector(std::mt19937& rng, const ChartPtr& chart,
                                                        int maxDegree) {
    RatExpr p = randomPoly(rng, chart, maxDegree);
    return {{RatExpr::zero(chart), p}, {-p, RatExpr::zero(chart)}};
}

} // namespace catalog
