#include "modlie/poly.hpp"

#include <algorithm>
#include <map>

#include "modlie/errors.hpp"

namespace modlie {

int monoCompare(const Mono& a, const Mono& b) {
    long ta = 0, tb = 0;
    for (Exp e : a) ta += e;
    for (Exp e : b) tb += e;
    if (ta != tb) return ta < tb ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

namespace {

bool monoDivides(const Mono& d, const Mono& m) {
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] > m[i]) return false;
    return true;
}

Mono monoMul(const Mono& a, const Mono& b) {
    Mono r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Mono monoDiv(const Mono& a, const Mono& b) {
    Mono r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

mpq_class mpqPow(const mpq_class& base, Exp e) {
    mpq_class r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), e);
    // base is canonical, so num^e / den^e already is
    return r;
}

} // namespace

Poly Poly::constant(int nvars, mpz_class c) {
    Poly p(nvars);
    if (c != 0) p.terms_.push_back({Mono(static_cast<std::size_t>(nvars), 0), std::move(c)});
    return p;
}

Poly Poly::variable(int nvars, int index) {
    if (index < 0 || index >= nvars) throw DomainError("variable index out of range");
    Poly p(nvars);
    Mono m(static_cast<std::size_t>(nvars), 0);
    m[static_cast<std::size_t>(index)] = 1;
    p.terms_.push_back({std::move(m), mpz_class(1)});
    return p;
}

Poly Poly::fromTerms(int nvars, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return monoCompare(a.mono, b.mono) > 0; });
    Poly p(nvars);
    for (auto& t : terms) {
        if (static_cast<int>(t.mono.size()) != nvars) throw DomainError("term arity mismatch");
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono)
            p.terms_.back().coeff += t.coeff;
        else
            p.terms_.push_back(std::move(t));
        if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
    }
    return p;
}

mpz_class Poly::constantValue() const {
    if (terms_.empty()) return 0;
    if (totalDegree() != 0) throw DomainError("constantValue on non-constant polynomial");
    return terms_.front().coeff;
}

int Poly::totalDegree() const {
    if (terms_.empty()) return -1;
    long d = 0;
    for (Exp e : terms_.front().mono) d += e; // grlex leading term has max total degree
    return static_cast<int>(d);
}

int Poly::degreeIn(int var) const {
    Exp d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono[static_cast<std::size_t>(var)]);
    return static_cast<int>(d);
}

const mpz_class& Poly::leadingCoeff() const {
    if (terms_.empty()) throw DomainError("leadingCoeff of zero polynomial");
    return terms_.front().coeff;
}

Poly Poly::operator-() const {
    Poly r(*this);
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    if (nvars_ != o.nvars_) throw DomainError("polynomial arity mismatch");
    Poly r(nvars_);
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (i == terms_.size()) {
            r.terms_.push_back(o.terms_[j++]);
        } else if (j == o.terms_.size()) {
            r.terms_.push_back(terms_[i++]);
        } else {
            int c = monoCompare(terms_[i].mono, o.terms_[j].mono);
            if (c > 0) {
                r.terms_.push_back(terms_[i++]);
            } else if (c < 0) {
                r.terms_.push_back(o.terms_[j++]);
            } else {
                mpz_class s = terms_[i].coeff + o.terms_[j].coeff;
                if (s != 0) r.terms_.push_back({terms_[i].mono, std::move(s)});
                ++i, ++j;
            }
        }
    }
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (nvars_ != o.nvars_) throw DomainError("polynomial arity mismatch");
    auto monoGreater = [](const Mono& a, const Mono& b) { return monoCompare(a, b) > 0; };
    std::map<Mono, mpz_class, decltype(monoGreater)> acc(monoGreater);
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) acc[monoMul(a.mono, b.mono)] += a.coeff * b.coeff;
    Poly r(nvars_);
    for (auto& [m, c] : acc)
        if (c != 0) r.terms_.push_back({m, std::move(c)});
    return r;
}

Poly Poly::mulTerm(const Mono& m, const mpz_class& c) const {
    Poly r(nvars_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({monoMul(t.mono, m), t.coeff * c});
    return r;
}

Poly Poly::pow(unsigned k) const {
    Poly result = Poly::constant(nvars_, 1);
    Poly base(*this);
    while (k) {
        if (k & 1u) result = result * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return result;
}

Poly Poly::derivative(int var) const {
    Poly r(nvars_);
    for (const auto& t : terms_) {
        Exp e = t.mono[static_cast<std::size_t>(var)];
        if (e == 0) continue;
        Mono m = t.mono;
        m[static_cast<std::size_t>(var)] = e - 1;
        r.terms_.push_back({std::move(m), t.coeff * static_cast<unsigned long>(e)});
    }
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& a, const Term& b) { return monoCompare(a.mono, b.mono) > 0; });
    return r;
}

mpq_class Poly::evalAt(const std::vector<mpq_class>& point) const {
    if (static_cast<int>(point.size()) != nvars_) throw DomainError("evaluation point arity mismatch");
    mpq_class sum = 0;
    for (const auto& t : terms_) {
        mpq_class prod(t.coeff);
        for (std::size_t i = 0; i < t.mono.size(); ++i)
            if (t.mono[i] != 0) prod *= mpqPow(point[i], t.mono[i]);
        sum += prod;
    }
    return sum;
}

mpz_class Poly::content() const {
    mpz_class g = 0;
    for (const auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Poly Poly::primitivePart() const {
    if (terms_.empty()) return *this;
    mpz_class c = content();
    Poly r(nvars_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
        r.terms_.push_back({t.mono, std::move(q)});
    }
    return r;
}

Poly Poly::normalizedSign() const {
    if (!terms_.empty() && terms_.front().coeff < 0) return -(*this);
    return *this;
}

Poly Poly::coeffOfPower(int var, int k) const {
    Poly r(nvars_);
    for (const auto& t : terms_) {
        if (static_cast<int>(t.mono[static_cast<std::size_t>(var)]) != k) continue;
        Mono m = t.mono;
        m[static_cast<std::size_t>(var)] = 0;
        r.terms_.push_back({std::move(m), t.coeff});
    }
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& a, const Term& b) { return monoCompare(a.mono, b.mono) > 0; });
    return r;
}

std::optional<Poly> Poly::divExact(const Poly& a, const Poly& b) {
    if (b.isZero()) throw DomainError("exact division by zero polynomial");
    if (a.nvars() != b.nvars()) throw DomainError("polynomial arity mismatch");
    Poly rem = a;
    std::vector<Term> quot;
    const Term& lead = b.terms_.front();
    while (!rem.isZero()) {
        const Term& lr = rem.terms_.front();
        if (!monoDivides(lead.mono, lr.mono)) return std::nullopt;
        if (!mpz_divisible_p(lr.coeff.get_mpz_t(), lead.coeff.get_mpz_t())) return std::nullopt;
        mpz_class c;
        mpz_divexact(c.get_mpz_t(), lr.coeff.get_mpz_t(), lead.coeff.get_mpz_t());
        Mono m = monoDiv(lr.mono, lead.mono);
        rem = rem - b.mulTerm(m, c);
        quot.push_back({std::move(m), std::move(c)});
    }
    return Poly::fromTerms(a.nvars(), std::move(quot));
}

// ---------------------------------------------------------------------------
// gcd: recursive content/primitive-part split with a subresultant PRS in the
// chosen main variable (Knuth 4.6.1, algorithm C). Coefficient growth stays
// controlled because every intermediate division below is exact.

namespace {

using Uni = std::vector<Poly>; // Uni[k] multiplies var^k; invariant: back() nonzero

int uniDeg(const Uni& u) { return static_cast<int>(u.size()) - 1; }

void uniTrim(Uni& u) {
    while (!u.empty() && u.back().isZero()) u.pop_back();
}

Uni toUni(const Poly& p, int var) {
    Uni u(static_cast<std::size_t>(p.degreeIn(var)) + 1, Poly(p.nvars()));
    for (int k = 0; k <= p.degreeIn(var); ++k) u[static_cast<std::size_t>(k)] = p.coeffOfPower(var, k);
    uniTrim(u);
    return u;
}

Poly fromUni(const Uni& u, int var, int nvars) {
    Poly acc(nvars);
    Mono shift(static_cast<std::size_t>(nvars), 0);
    for (std::size_t k = 0; k < u.size(); ++k) {
        shift[static_cast<std::size_t>(var)] = static_cast<Exp>(k);
        acc = acc + u[k].mulTerm(shift, mpz_class(1));
    }
    return acc;
}

Uni uniScale(const Uni& u, const Poly& f) {
    Uni r;
    r.reserve(u.size());
    for (const auto& c : u) r.push_back(c * f);
    return r;
}

// r -= f * var^shift * w
void uniSubShifted(Uni& r, const Uni& w, int shift, const Poly& f) {
    if (r.size() < w.size() + static_cast<std::size_t>(shift))
        r.resize(w.size() + static_cast<std::size_t>(shift), Poly(f.nvars()));
    for (std::size_t k = 0; k < w.size(); ++k)
        r[k + static_cast<std::size_t>(shift)] = r[k + static_cast<std::size_t>(shift)] - w[k] * f;
    uniTrim(r);
}

// Pseudo-remainder of u by w in the main variable: lc(w)^(deg u - deg w + 1) * u mod w.
Uni prem(Uni r, const Uni& w) {
    const Poly& lw = w.back();
    long e = uniDeg(r) - uniDeg(w) + 1;
    while (!r.empty() && uniDeg(r) >= uniDeg(w)) {
        Poly lr = r.back();
        int shift = uniDeg(r) - uniDeg(w);
        r = uniScale(r, lw);
        uniSubShifted(r, w, shift, lr);
        --e;
    }
    if (e > 0 && !r.empty()) r = uniScale(r, lw.pow(static_cast<unsigned>(e)));
    return r;
}

Poly contentIn(const Poly& p, int var) {
    Poly g(p.nvars());
    for (int k = 0; k <= p.degreeIn(var); ++k) {
        Poly c = p.coeffOfPower(var, k);
        if (c.isZero()) continue;
        g = Poly::gcd(g, c);
        if (!g.isZero() && g.isConstant() && g.constantValue() == 1) break;
    }
    return g;
}

Poly uniDivCoeffs(const Uni& r, const Poly& divisor, int var, int nvars) {
    Uni v;
    v.reserve(r.size());
    for (const auto& c : r) {
        auto q = Poly::divExact(c, divisor);
        if (!q) throw DomainError("internal: inexact division in subresultant PRS");
        v.push_back(*q);
    }
    return fromUni(v, var, nvars);
}

// gcd of a, b that are primitive with respect to `var` and have positive degree in it.
Poly prsGcd(const Poly& a, const Poly& b, int var) {
    const int nvars = a.nvars();
    Uni u = toUni(a, var), v = toUni(b, var);
    if (uniDeg(u) < uniDeg(v)) std::swap(u, v);
    Poly g = Poly::constant(nvars, 1), h = Poly::constant(nvars, 1);
    while (true) {
        int delta = uniDeg(u) - uniDeg(v);
        Uni r = prem(u, v);
        if (r.empty()) {
            Poly w = fromUni(v, var, nvars);
            Poly c = contentIn(w, var);
            auto q = Poly::divExact(w, c);
            return q->normalizedSign();
        }
        if (uniDeg(r) == 0) return Poly::constant(nvars, 1);
        Poly divisor = g * h.pow(static_cast<unsigned>(delta));
        Poly vnew = uniDivCoeffs(r, divisor, var, nvars);
        u = std::move(v);
        v = toUni(vnew, var);
        g = u.back();
        if (delta == 1) {
            h = g;
        } else if (delta > 1) {
            auto q = Poly::divExact(g.pow(static_cast<unsigned>(delta)),
                                    h.pow(static_cast<unsigned>(delta - 1)));
            if (!q) throw DomainError("internal: inexact h-update in subresultant PRS");
            h = *q;
        }
    }
}

} // namespace

Poly Poly::gcd(const Poly& a, const Poly& b) {
    if (a.nvars() != b.nvars()) throw DomainError("polynomial arity mismatch");
    const int nvars = a.nvars();
    if (a.isZero()) return b.normalizedSign();
    if (b.isZero()) return a.normalizedSign();
    if (a.isConstant() || b.isConstant()) {
        mpz_class g;
        mpz_class ca = a.content(), cb = b.content();
        mpz_gcd(g.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
        return constant(nvars, g);
    }
    int var = -1;
    for (int v2 = nvars - 1; v2 >= 0; --v2)
        if (a.degreeIn(v2) > 0 || b.degreeIn(v2) > 0) {
            var = v2;
            break;
        }
    if (a.degreeIn(var) == 0) return gcd(a, contentIn(b, var));
    if (b.degreeIn(var) == 0) return gcd(contentIn(a, var), b);
    Poly ca = contentIn(a, var);
    Poly cb = contentIn(b, var);
    auto pa = divExact(a, ca), pb = divExact(b, cb);
    if (!pa || !pb) throw DomainError("internal: content division failed");
    Poly c = gcd(ca, cb);
    Poly g = prsGcd(*pa, *pb, var);
    return (c * g).normalizedSign();
}

int Poly::compare(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_ ? -1 : 1;
    const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = monoCompare(a.terms_[i].mono, b.terms_[i].mono);
        if (c != 0) return c;
        int s = cmp(a.terms_[i].coeff, b.terms_[i].coeff);
        if (s != 0) return s;
    }
    if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size() ? -1 : 1;
    return 0;
}

} // namespace modlie
