#pragma once

#include <string>
#include <vector>

#include "modlie/ratexpr.hpp"

namespace modlie {

enum class Trilean { False, True, Unknown };

// One summand coeff * ln|arg|. Arguments are nonzero expressions; after
// normalization the argument's numerator has positive leading coefficient and
// the pair {arg, 1/arg} is represented by the side whose numerator compares
// larger, flipping the coefficient's sign as needed.
struct LogTerm {
    mpq_class coeff;
    RatExpr arg;
};

// Finite sum of logarithm terms with exact rational coefficients, kept in a
// deterministic normal form (sorted by argument, equal arguments merged,
// equal coefficients grouped by multiplying their arguments).
class LogSum {
public:
    LogSum() = default;
    static LogSum term(const mpq_class& coeff, const RatExpr& arg);
    static LogSum fromTerms(std::vector<LogTerm> terms);

    bool empty() const { return terms_.empty(); }
    const std::vector<LogTerm>& terms() const { return terms_; }
    const ChartPtr& chart() const { return chart_; } // null when empty

    LogSum operator-() const;
    LogSum operator+(const LogSum& o) const;
    LogSum operator-(const LogSum& o) const;
    LogSum scale(const mpq_class& k) const;

    LogSum substitute(const ChartPtr& target, const std::vector<RatExpr>& images) const;

    // Sound three-valued test of mathematical equality: True and False are
    // proofs; Unknown only happens when the certifying product would exceed
    // the internal degree budget.
    static Trilean equal(const LogSum& a, const LogSum& b);
    Trilean isZero() const { return equal(*this, LogSum()); }

    // Structural comparison of normal forms (sufficient for equality,
    // not necessary).
    bool operator==(const LogSum& o) const;
    bool operator!=(const LogSum& o) const { return !(*this == o); }

    std::string str() const;

private:
    void normalize();

    ChartPtr chart_;
    std::vector<LogTerm> terms_;
};

} // namespace modlie
