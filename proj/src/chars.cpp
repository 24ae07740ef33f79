#include "modlie/chars.hpp"

#include "modlie/errors.hpp"

namespace modlie {

Character charMul(const Character& a, const Character& b) {
    return Character{a.m + b.m, (a.eps + b.eps) % 2};
}

Character charInv(const Character& a) { return Character{-a.m, a.eps}; }

FormalScalar charApply(const Character& chi, const RatExpr& t) {
    if (t.isZero()) throw DomainError("character applied to the zero function");
    FormalScalar s;
    if (chi.m != 0) s.absPart = LogSum::term(mpq_class(chi.m), t);
    s.signPart = chi.eps ? t : RatExpr::one(t.chart());
    return s;
}

FormalScalar fsMul(const FormalScalar& a, const FormalScalar& b) {
    return FormalScalar{a.absPart + b.absPart, a.signPart * b.signPart};
}

FormalScalar fsDiv(const FormalScalar& a, const FormalScalar& b) {
    return FormalScalar{a.absPart - b.absPart, a.signPart / b.signPart};
}

FormalScalar fsSubstitute(const FormalScalar& s, const ChartPtr& target,
                          const std::vector<RatExpr>& images) {
    return FormalScalar{s.absPart.substitute(target, images),
                        s.signPart.substitute(target, images)};
}

RatExpr signCanonical(const RatExpr& e) {
    if (e.isZero()) throw DomainError("sign of the zero function");
    return RatExpr::fromPolys(e.chart(), e.num().primitivePart(), e.den().primitivePart());
}

namespace {

// +1 if every term has all-even exponents and a positive coefficient, -1 for
// the all-negative mirror, 0 when the cheap test cannot decide.
int definiteSign(const Poly& p) {
    if (p.isZero()) return 0;
    bool allPos = true, allNeg = true;
    for (const auto& t : p.terms()) {
        for (Exp e : t.mono)
            if (e % 2 != 0) return 0;
        if (t.coeff > 0) allNeg = false;
        if (t.coeff < 0) allPos = false;
    }
    if (allPos) return 1;
    if (allNeg) return -1;
    return 0;
}

} // namespace

Trilean fsIsOne(const FormalScalar& s) {
    RatExpr sc = signCanonical(s.signPart);
    int sign = 0;
    if (sc.isConstant()) {
        mpq_class v = sc.constantValue();
        if (v == 1) sign = 1;
        if (v == -1) sign = -1;
    } else {
        int sn = definiteSign(sc.num());
        int sd = definiteSign(sc.den());
        if (sn != 0 && sd != 0) sign = sn * sd;
    }
    if (sign == -1) return Trilean::False;
    if (sign == 0) return Trilean::Unknown;
    return s.absPart.isZero();
}

Trilean fsEqual(const FormalScalar& a, const FormalScalar& b) { return fsIsOne(fsDiv(a, b)); }

} // namespace modlie
