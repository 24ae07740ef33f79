#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "modlie/errors.hpp"
#include "modlie/vanest.hpp"

#include "catalog.hpp"

using namespace modlie;
using catalog::expr;

TEST_CASE("differentiating the models at the units gives their action algebroids") {
    LieActionModel scaling = catalog::scalingModel();
    LieAlgebroid As = inducedAlgebroid(scaling);
    CHECK(checkAlgebroid(As).ok);
    CHECK(As.rank == 1);
    CHECK(As.anchor[0][0] == expr(As.chart, "x"));
    CHECK(As.bracket[0][0][0].isZero());

    LieActionModel affine = catalog::affineModel();
    LieAlgebroid Aa = inducedAlgebroid(affine);
    CHECK(checkAlgebroid(Aa).ok);
    CHECK(Aa.rank == 2);
    CHECK(Aa.anchor[0][0] == expr(Aa.chart, "x"));
    CHECK(Aa.anchor[1][0] == RatExpr::one(Aa.chart));
    // [e1, e2] = -e2 matches the aff(1) action fixture
    CHECK(Aa.bracket[0][1][1] == RatExpr::constant(Aa.chart, -1));
    CHECK(Aa.bracket[1][0][1] == RatExpr::one(Aa.chart));

    LieActionModel translation = catalog::translationModel();
    LieAlgebroid At = inducedAlgebroid(translation);
    LieAlgebroid T = tangentAlgebroid(At.chart);
    CHECK(At.anchor == T.anchor);
    CHECK(At.bracket == T.bracket);
}

TEST_CASE("the degree-one correspondence sends modular data to modular data") {
    LieActionModel scaling = catalog::scalingModel();
    GroupoidModel ms{scaling};
    AdditiveCocycle cs = additivePart(
        tildeCocycle(ms, canonicalGroupoidRep(ms, kDensityChar), RatExpr::one(baseChart(ms))));
    Cochain1 ves = vanEst1(scaling, cs);
    Cochain1 mods = modularCocycle(inducedAlgebroid(scaling));
    REQUIRE(ves.size() == 1);
    CHECK(ves[0] == RatExpr::one(scaling.chart));
    CHECK(ves == mods);

    LieActionModel affine = catalog::affineModel();
    GroupoidModel ma{affine};
    AdditiveCocycle ca = additivePart(
        tildeCocycle(ma, canonicalGroupoidRep(ma, kDensityChar), RatExpr::one(baseChart(ma))));
    Cochain1 vea = vanEst1(affine, ca);
    CHECK(isZeroCochain(vea));
    CHECK(vea == modularCocycle(inducedAlgebroid(affine)));

    LieActionModel translation = catalog::translationModel();
    GroupoidModel mt{translation};
    AdditiveCocycle ct = additivePart(
        tildeCocycle(mt, canonicalGroupoidRep(mt, kDensityChar), RatExpr::one(baseChart(mt))));
    CHECK(isZeroCochain(vanEst1(translation, ct)));
}

TEST_CASE("the correspondence is a chain map on coboundaries") {
    for (const LieActionModel& m :
         {catalog::scalingModel(), catalog::affineModel(), catalog::translationModel()}) {
        GroupoidModel gm{m};
        LieAlgebroid A = inducedAlgebroid(m);
        for (const char* text : {"x^2+3*x", "x^3-2", "x/(1+x^2)"}) {
            RatExpr f = expr(m.chart, text);
            Cochain1 lhs = vanEst1(m, differential0(gm, f));
            Cochain1 rhs = dA0(A, f);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("twisted densities shift the degree-one image by a coboundary") {
    LieActionModel scaling = catalog::scalingModel();
    GroupoidModel m{scaling};
    LieAlgebroid A = inducedAlgebroid(scaling);
    RatExpr sigma = expr(scaling.chart, "x^2+1");
    AdditiveCocycle twisted = additivePart(
        tildeCocycle(m, canonicalGroupoidRep(m, kDensityChar), sigma));
    AdditiveCocycle plain = additivePart(
        tildeCocycle(m, canonicalGroupoidRep(m, kDensityChar), RatExpr::one(scaling.chart)));
    Cochain1 diff{vanEst1(scaling, twisted)[0] - vanEst1(scaling, plain)[0]};
    // difference of the two cocycles is the coboundary of ln(sigma), whose
    // degree-one image is d ln(sigma) paired with the anchor
    Cochain1 expected = dA0(A, sigma);
    expected[0] = expected[0] / sigma;
    CHECK(diff == expected);
}

TEST_CASE("cocycles with poles on the units are rejected") {
    LieActionModel scaling = catalog::scalingModel();
    AdditiveValue bad{LogSum::term(1, RatExpr::variable(scaling.arrowChart, 0)),
                      RatExpr::zero(scaling.arrowChart)};
    CHECK_THROWS_AS(vanEst1(scaling, bad), PoleError);
}

TEST_CASE("only additive data over the arrow chart is accepted") {
    LieActionModel scaling = catalog::scalingModel();
    AdditiveValue wrong{LogSum{}, RatExpr::one(scaling.chart)};
    CHECK_THROWS_AS(vanEst1(scaling, wrong), DomainError);
}
