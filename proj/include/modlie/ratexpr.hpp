#pragma once

#include <string>
#include <vector>

#include "modlie/chart.hpp"
#include "modlie/poly.hpp"

namespace modlie {

// Exact rational function over a chart, stored as a reduced fraction of
// integer polynomials. Canonical form: gcd(num, den) = 1 (including integer
// contents) and the denominator's leading coefficient is positive, so
// operator== decides mathematical equality.
class RatExpr {
public:
    RatExpr(); // zero over the empty chart

    static RatExpr zero(ChartPtr chart);
    static RatExpr one(ChartPtr chart);
    static RatExpr constant(ChartPtr chart, const mpq_class& value);
    static RatExpr variable(ChartPtr chart, int index);
    static RatExpr fromPolys(ChartPtr chart, Poly num, Poly den);

    const ChartPtr& chart() const { return chart_; }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool isZero() const { return num_.isZero(); }
    bool isOne() const;
    bool isConstant() const { return num_.isConstant() && den_.isConstant(); }
    mpq_class constantValue() const;

    RatExpr operator-() const;
    RatExpr operator+(const RatExpr& o) const;
    RatExpr operator-(const RatExpr& o) const;
    RatExpr operator*(const RatExpr& o) const;
    RatExpr operator/(const RatExpr& o) const;

    RatExpr inverse() const;
    RatExpr pow(long k) const;
    RatExpr derivative(int var) const;

    // Throws PoleError when the denominator vanishes at the point.
    mpq_class evalAt(const std::vector<mpq_class>& point) const;

    // Rewrites this expression over `target` by replacing chart variable i
    // with images[i]. Throws PoleError when the denominator collapses to zero.
    RatExpr substitute(const ChartPtr& target, const std::vector<RatExpr>& images) const;

    bool operator==(const RatExpr& o) const;
    bool operator!=(const RatExpr& o) const { return !(*this == o); }
    static int compare(const RatExpr& a, const RatExpr& b);

    std::string str() const; // defined in expr_io.cpp

private:
    RatExpr(ChartPtr chart, Poly num, Poly den);
    void canonicalize();

    ChartPtr chart_;
    Poly num_;
    Poly den_;
};

void requireSameChart(const RatExpr& a, const RatExpr& b);
void requireChart(const RatExpr& a, const ChartPtr& chart);

} // namespace modlie
