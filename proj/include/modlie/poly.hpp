#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

namespace modlie {

using Exp = std::uint32_t;

// Exponent vector; length equals the ambient variable count.
using Mono = std::vector<Exp>;

// Graded lexicographic: higher total degree wins, ties broken lexicographically
// with the earlier variable more significant. Returns <0, 0, >0.
int monoCompare(const Mono& a, const Mono& b);

struct Term {
    Mono mono;
    mpz_class coeff;

    bool operator==(const Term& o) const { return mono == o.mono && coeff == o.coeff; }
};

// Sparse multivariate polynomial with integer coefficients. Terms are kept in
// strictly decreasing grlex order with no zero coefficients; every routine
// preserves that invariant.
class Poly {
public:
    Poly() = default; // zero polynomial in zero variables
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly constant(int nvars, mpz_class c);
    static Poly variable(int nvars, int index);
    static Poly fromTerms(int nvars, std::vector<Term> terms); // sorts and merges

    int nvars() const { return nvars_; }
    bool isZero() const { return terms_.empty(); }
    bool isConstant() const { return terms_.empty() || (terms_.size() == 1 && totalDegree() == 0); }
    mpz_class constantValue() const; // requires isConstant()

    const std::vector<Term>& terms() const { return terms_; }
    int totalDegree() const; // -1 for the zero polynomial
    int degreeIn(int var) const;
    const mpz_class& leadingCoeff() const; // requires nonzero

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly mulTerm(const Mono& m, const mpz_class& c) const;
    Poly pow(unsigned k) const;

    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly derivative(int var) const;
    mpq_class evalAt(const std::vector<mpq_class>& point) const;

    // Nonnegative gcd of all coefficients; 0 for the zero polynomial.
    mpz_class content() const;
    Poly primitivePart() const;
    // Sign-normalized: leading coefficient positive (zero stays zero).
    Poly normalizedSign() const;

    // Coefficient of var^k, with var's exponent set to zero in the result.
    Poly coeffOfPower(int var, int k) const;

    // Exact multivariate division; nullopt when b does not divide a.
    static std::optional<Poly> divExact(const Poly& a, const Poly& b);

    // Full gcd including integer content, sign-normalized positive.
    static Poly gcd(const Poly& a, const Poly& b);

    // Arbitrary total order (grlex term sequences), used for canonical sorting.
    static int compare(const Poly& a, const Poly& b);

private:
    int nvars_ = 0;
    std::vector<Term> terms_;
};

} // namespace modlie
