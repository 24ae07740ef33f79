#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "modlie/errors.hpp"
#include "modlie/expr_io.hpp"
#include "modlie/logsum.hpp"
#include "modlie/quadrature.hpp"
#include "modlie/ratexpr.hpp"

#include "catalog.hpp"

using namespace modlie;
using catalog::expr;

TEST_CASE("charts validate names and resolve indices") {
    auto chart = makeChart({"x", "y"});
    CHECK(chart->dim() == 2);
    CHECK(chart->indexOf("y") == 1);
    CHECK(!chart->indexOf("z").has_value());
    CHECK_THROWS_AS(makeChart({"x", "x"}), DomainError);
    CHECK_THROWS_AS(makeChart({"2x"}), DomainError);
    auto doubled = concatCharts(chart, suffixChart(chart, "_t"));
    CHECK(doubled->names() == std::vector<std::string>{"x", "y", "x_t", "y_t"});
}

TEST_CASE("rational expressions cancel to a canonical form") {
    auto chart = makeChart({"x", "y"});
    RatExpr a = expr(chart, "(x^2-1)/(x-1)");
    CHECK(a == expr(chart, "x+1"));
    CHECK(a.str() == "x+1");
    RatExpr b = expr(chart, "(x^2-y^2)/(x+y)") - expr(chart, "x");
    CHECK(b == expr(chart, "-1*y"));
    // denominator sign is normalized: leading coefficient positive
    RatExpr c = expr(chart, "1/(1-x)");
    CHECK(c.str() == "-1/(x-1)");
    CHECK(c + expr(chart, "1/(x-1)") == RatExpr::zero(chart));
}

TEST_CASE("field arithmetic identities on random expressions") {
    auto chart = makeChart({"x", "y"});
    std::mt19937 rng(7);
    for (int t = 0; t < 30; ++t) {
        RatExpr p = catalog::randomPoly(rng, chart, 2);
        RatExpr q = catalog::randomPoly(rng, chart, 2);
        RatExpr r = catalog::randomPoly(rng, chart, 1);
        CHECK((p + q) * r == p * r + q * r);
        CHECK(p - p == RatExpr::zero(chart));
        if (!q.isZero()) {
            RatExpr frac = p / q;
            CHECK(frac * q == p);
        }
    }
}

TEST_CASE("derivatives satisfy the quotient rule") {
    auto chart = makeChart({"x", "y"});
    RatExpr f = expr(chart, "(x^2+y)/(x-3)");
    RatExpr g = expr(chart, "y/(x+1)");
    for (int var = 0; var < 2; ++var) {
        RatExpr lhs = (f / g).derivative(var);
        RatExpr rhs = (f.derivative(var) * g - f * g.derivative(var)) / (g * g);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("evaluation and substitution respect poles") {
    auto chart = makeChart({"x"});
    RatExpr f = expr(chart, "1/(x-1)");
    CHECK(f.evalAt({mpq_class(3)}) == mpq_class(1, 2));
    CHECK_THROWS_AS(f.evalAt({mpq_class(1)}), PoleError);
    auto target = makeChart({"t"});
    RatExpr g = f.substitute(target, {expr(target, "t+1")});
    CHECK(g == expr(target, "1/t"));
    CHECK_THROWS_AS(f.substitute(target, {RatExpr::one(target)}), PoleError);
}

TEST_CASE("parser reports precise failures") {
    auto chart = makeChart({"x"});
    CHECK_THROWS_AS(expr(chart, "x+"), ParseError);
    CHECK_THROWS_AS(expr(chart, "y+1"), ParseError);
    CHECK_THROWS_AS(expr(chart, "x 1"), ParseError);
    CHECK_THROWS_AS(expr(chart, "1/0"), ParseError);
    CHECK_THROWS_AS(expr(chart, "1/(x-x)"), ParseError);
    CHECK_THROWS_AS(expr(chart, "x^600"), ParseError);
    CHECK_THROWS_AS(expr(chart, "-x"), ParseError); // no unary minus in the grammar
    bool caught = false;
    try {
        expr(chart, "x+q");
    } catch (const ParseError& e) {
        caught = true;
        CHECK(e.position() == 2);
    }
    CHECK(caught);
}

TEST_CASE("printing round-trips through the parser") {
    auto chart = makeChart({"x", "y"});
    for (const char* text :
         {"0", "-3", "x+1", "-1*x", "x/2", "x/y", "1/x^2", "(x+1)/(x-1)", "1/(2*x)",
          "(x^2+3*x*y+1)/(x*y-2)", "x^2*y^3", "2/3", "(x+y)/(x^2+y^2)"}) {
        RatExpr e = expr(chart, text);
        CHECK(e.str() == text);
        CHECK(parseRatExpr(chart, e.str()) == e);
    }
    std::mt19937 rng(11);
    for (int t = 0; t < 25; ++t) {
        RatExpr p = catalog::randomPoly(rng, chart, 3);
        RatExpr q = catalog::randomPoly(rng, chart, 2);
        RatExpr e = q.isZero() ? p : p / q;
        CHECK(parseRatExpr(chart, e.str()) == e);
    }
}

TEST_CASE("polynomial gcd underpins reduction") {
    RatExpr a = expr(makeChart({"x"}), "(x^3-1)/(x^2-1)");
    CHECK(a == expr(makeChart({"x"}), "(x^2+x+1)/(x+1)"));
    auto chart = makeChart({"x", "y"});
    // multivariate: common factor (x+y)^2
    RatExpr num = expr(chart, "(x+y)^2*(x-y)");
    RatExpr den = expr(chart, "(x+y)^2*(x+2*y)");
    CHECK(num / den == expr(chart, "(x-y)/(x+2*y)"));
}

TEST_CASE("log sums normalize and decide equality") {
    auto chart = makeChart({"x"});
    RatExpr x = expr(chart, "x");
    LogSum a = LogSum::term(2, x);                       // 2 ln|x|
    LogSum b = LogSum::term(1, x * x);                   // ln|x^2|
    CHECK(LogSum::equal(a, b) == Trilean::True);
    CHECK(a != b); // normal forms differ; equality needs the certificate
    LogSum c = LogSum::term(1, expr(chart, "1/x"));      // ln|1/x| = -ln|x|
    CHECK(LogSum::equal(c, -LogSum::term(1, x)) == Trilean::True);
    LogSum d = LogSum::term(1, expr(chart, "x+1"));
    CHECK(LogSum::equal(a, d) == Trilean::False);
    CHECK(LogSum::equal(LogSum::term(1, expr(chart, "2")),
                        LogSum::term(1, expr(chart, "3"))) == Trilean::False);
    // ln|6| = ln|2| + ln|3|
    LogSum six = LogSum::term(1, expr(chart, "6"));
    LogSum split = LogSum::term(1, expr(chart, "2")) + LogSum::term(1, expr(chart, "3"));
    CHECK(LogSum::equal(six, split) == Trilean::True);
    CHECK(LogSum::term(1, RatExpr::one(chart)).empty());
    CHECK((a - a).isZero() == Trilean::True);
}

TEST_CASE("log sum substitution composes") {
    auto chart = makeChart({"x"});
    auto target = makeChart({"t"});
    LogSum s = LogSum::term(1, expr(chart, "x+1"));
    LogSum sub = s.substitute(target, {expr(target, "t^2")});
    CHECK(LogSum::equal(sub, LogSum::term(1, expr(target, "t^2+1"))) == Trilean::True);
}

TEST_CASE("midpoint integration is exact for low degree and flags poles") {
    auto chart = makeChart({"x"});
    RatExpr x = expr(chart, "x");
    CHECK(integrateDensity(x, {Interval{0, 1}}, 8) == mpq_class(1, 2));
    // midpoint rule integrates cubics over symmetric cells with O(h^2) error
    mpq_class cube = integrateDensity(x * x, {Interval{0, 1}}, 100);
    CHECK(abs(cube - mpq_class(1, 3)) < mpq_class(1, 10000));
    CHECK_THROWS_AS(integrateDensity(expr(chart, "1/(2*x-1)"), {Interval{0, 1}}, 10), PoleError);
    auto plane = makeChart({"x", "y"});
    CHECK(integrateDensity(expr(plane, "x*y"), {Interval{0, 2}, Interval{0, 2}}, 6) ==
          mpq_class(4));
    CHECK_THROWS_AS(integrateDensity(x, {Interval{0, 1}}, 0), DomainError);
    CHECK_THROWS_AS(integrateDensity(x, {Interval{1, 0}}, 4), DomainError);
}
