#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "modlie/chars.hpp"
#include "modlie/logsum.hpp"
#include "modlie/ratexpr.hpp"

namespace modlie {

// --- concrete groupoid models ------------------------------------------------
//
// Composition is read right to left: m(g, h) requires s(g) = t(h) and gives
// the arrow g.h : s(h) -> t(g).

// Arrows (x, y) : x -> y over the doubled chart  chart + suffix(chart, "_t");
// the first block is the source, the "_t" block the target.
struct PairModel {
    ChartPtr chart;
    ChartPtr arrowChart;
};
PairModel makePairModel(const ChartPtr& chart);

// Finitely many diffeomorphisms of the chart with explicit rational inverses;
// arrows are (generator word, x). All cocycle computations are per generator.
struct DiscreteGenerator {
    std::string name;
    std::vector<RatExpr> map;        // over chart
    std::vector<RatExpr> inverseMap; // over chart
};
struct DiscreteActionModel {
    ChartPtr chart;
    std::vector<DiscreteGenerator> generators;
};
DiscreteActionModel makeDiscreteActionModel(const ChartPtr& chart,
                                            std::vector<DiscreteGenerator> generators);

// Action groupoid H x M with group coordinates centered at the identity
// (u = 0), multiplication mul(u, v) over groupChart + suffix(groupChart, "_r"),
// inverse over groupChart, and action a(u, x) over arrowChart = groupChart +
// chart. Arrows (u, x) : x -> a(u, x); m((u, a(v,x)), (v, x)) = (mul(u,v), x).
struct LieActionModel {
    ChartPtr chart;
    ChartPtr groupChart;
    ChartPtr mulChart;   // groupChart + suffix(groupChart, "_r")
    ChartPtr arrowChart; // groupChart + chart
    std::vector<RatExpr> mul;    // over mulChart
    std::vector<RatExpr> inv;    // over groupChart
    std::vector<RatExpr> action; // over arrowChart
};
LieActionModel makeLieActionModel(const ChartPtr& chart, const ChartPtr& groupChart,
                                  std::vector<RatExpr> mul, std::vector<RatExpr> inv,
                                  std::vector<RatExpr> action);

using GroupoidModel = std::variant<PairModel, DiscreteActionModel, LieActionModel>;

const ChartPtr& baseChart(const GroupoidModel& model);

struct ModelIssue {
    std::string kind;  // "unit" | "assoc" | "inverse" | "action-unit" | "action-compat" |
                       // "generator-inverse"
    std::string where; // human-readable location (generator name, component index)
    RatExpr residual;
};
struct ModelReport {
    bool ok = true;
    std::vector<ModelIssue> issues;
};

// Verifies the groupoid structure identities that are decidable as exact
// expression identities (units, inverses, associativity, action axioms,
// generator/inverse round trips).
ModelReport checkModel(const GroupoidModel& model);

// --- transverse Jacobian -----------------------------------------------------
//
// Determinant of the arrow's action on the fiber of the transverse density
// line (top wedge of the algebroid dual tensored with the top wedge of the
// base tangent space), computed with the right-translated algebroid frame and
// the coordinate source lift. Normalized so the value at every unit arrow is 1.

RatExpr tildeJacobian(const PairModel& model);                    // over arrowChart, == 1
RatExpr tildeJacobian(const DiscreteActionModel& model, int gen); // over chart
RatExpr tildeJacobian(const LieActionModel& model);               // over arrowChart

// Same quantity along the bisection x -> (beta(x), x), computed through the
// conjugation action on the algebroid frame instead of the inverse-map route;
// must agree with substituting u = beta(x) into tildeJacobian. Exercised by
// the randomized lift-perturbation test.
RatExpr tildeJacobianAlongSection(const LieActionModel& model,
                                  const std::vector<RatExpr>& beta);

// --- line representations and cocycles ----------------------------------------

// Line representation: the chi-twist of the transverse density line, tensored
// with an optional explicit scalar factor per arrow family (one entry for
// Pair/LieAction over the arrow chart, one per generator for DiscreteAction;
// empty = no twist).
struct GpdLineRep {
    Character chi;
    std::vector<RatExpr> scalar;
};

GpdLineRep canonicalGroupoidRep(const GroupoidModel& model, const Character& chi);
GpdLineRep tensorGroupoidRep(const GpdLineRep& a, const GpdLineRep& b);

// Multiplicative cocycle c(g) * sigma(t(g)) = g . sigma(s(g)); one FormalScalar
// per arrow family. chi and sigma are kept for composite-arrow checks.
struct MultCocycle {
    std::vector<FormalScalar> value;
    GpdLineRep rep;
    RatExpr sigma; // over the base chart, nonzero
};

MultCocycle tildeCocycle(const GroupoidModel& model, const GpdLineRep& rep, const RatExpr& sigma);

// Additive value: logPart + ratPart with logPart a formal log combination and
// ratPart an ordinary expression; the mixed form is zero iff both parts are
// (log terms of nonconstant arguments are transcendental over rational
// functions, and ln|q| of a rational q != +-1 is irrational).
struct AdditiveValue {
    LogSum logPart;
    RatExpr ratPart;
};
struct AdditiveCocycle {
    std::vector<AdditiveValue> value;
};

Trilean isZeroAdditive(const AdditiveValue& v);
AdditiveValue addValues(const AdditiveValue& a, const AdditiveValue& b);
AdditiveValue negateValue(const AdditiveValue& v);

// c = -ln|c~| per arrow family; the sign information is dropped here and
// carried separately by signPart.
AdditiveCocycle additivePart(const MultCocycle& c);

// Content-stripped sign carrier of c~ per arrow family, consumed by the
// orientation machinery.
std::vector<RatExpr> signPart(const MultCocycle& c);

// Coboundary of a base function: (f o t - f o s) per arrow family.
AdditiveCocycle differential0(const GroupoidModel& model, const RatExpr& f);

// Does f witness c(g) = f(s(g)) - f(t(g)) for every arrow family?
Trilean isGroupoidCoboundary(const GroupoidModel& model, const AdditiveCocycle& c,
                             const RatExpr& f);

// --- exactness obstruction at isotropy ----------------------------------------

// Candidate isotropy arrow: for DiscreteAction a generator index with a fixed
// rational point of its map; for LieAction a rational group point u0 and base
// point x0 with a(u0, x0) = x0. Coboundaries vanish on isotropy, so a nonzero
// additive cocycle value there certifies nontriviality of the class.
struct IsotropyArrow {
    int generator = -1;                // DiscreteAction only
    std::vector<mpq_class> groupPoint; // LieAction only
    std::vector<mpq_class> basePoint;
};

struct FixedPointCertificate {
    IsotropyArrow arrow;
    // exact cocycle value at the arrow: sum of coeff * ln|base| plus a rational
    std::vector<std::pair<mpq_class, mpq_class>> logValue;
    mpq_class ratValue;
};

// Scans the candidates and returns the first whose cocycle value is provably
// nonzero. Throws DomainError when a candidate is not actually fixed.
std::optional<FixedPointCertificate> fixedPointObstruction(
    const GroupoidModel& model, const AdditiveCocycle& c,
    const std::vector<IsotropyArrow>& candidates);

// Independent re-check of a certificate: fixedness of the point, agreement of
// the recorded value with the cocycle, and exact nonvanishing.
bool verifyFixedPointCertificate(const GroupoidModel& model, const AdditiveCocycle& c,
                                 const FixedPointCertificate& cert);

// Exact nonvanishing test for a value sum q_i ln|b_i| + r (no Unknown).
bool exactValueIsNonzero(const std::vector<std::pair<mpq_class, mpq_class>>& logValue,
                         const mpq_class& ratValue);

// --- invariance and structural laws --------------------------------------------

// True iff tildeCocycle(model, rep, sigma) is the constant 1 on every family,
// i.e. sigma spans an invariant section of the rep's line.
Trilean invariantDensityCheck(const GroupoidModel& model, const GpdLineRep& rep,
                              const RatExpr& sigma);

// c~(g.h) = c~(g) c~(h) as an identity in composable coordinates.
Trilean cocycleLawHolds(const GroupoidModel& model, const MultCocycle& c);

// c~(unit) = 1.
Trilean unitValueIsOne(const GroupoidModel& model, const MultCocycle& c);

} // namespace modlie
