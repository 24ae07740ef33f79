#include "modlie/logsum.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "modlie/errors.hpp"

namespace modlie {

namespace {

constexpr long kMaxCertExponent = 4096;
constexpr int kMaxCertDegree = 512;

bool argIsPlusMinusOne(const RatExpr& e) {
    if (!e.isConstant()) return false;
    mpq_class v = e.constantValue();
    return v == 1 || v == -1;
}

// |arg| = |num|/|den|, so the numerator's sign is free; pick positive lc.
// Then pick the representative of {arg, 1/arg} with num >= den, flipping the
// coefficient when inverting.
void normalizeTerm(LogTerm& t) {
    RatExpr a = t.arg;
    if (a.isZero()) throw DomainError("logarithm of the zero expression");
    if (a.num().leadingCoeff() < 0) a = RatExpr::fromPolys(a.chart(), -a.num(), a.den());
    if (Poly::compare(a.num(), a.den()) < 0) {
        a = a.inverse();
        t.coeff = -t.coeff;
    }
    t.arg = a;
}

bool chartsAgree(const ChartPtr& a, const ChartPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

} // namespace

LogSum LogSum::term(const mpq_class& coeff, const RatExpr& arg) {
    return fromTerms({LogTerm{coeff, arg}});
}

LogSum LogSum::fromTerms(std::vector<LogTerm> terms) {
    LogSum s;
    for (auto& t : terms) {
        if (s.chart_ == nullptr)
            s.chart_ = t.arg.chart();
        else if (!chartsAgree(s.chart_, t.arg.chart()))
            throw DomainError("chart mismatch inside a log sum");
        s.terms_.push_back(std::move(t));
    }
    s.normalize();
    return s;
}

void LogSum::normalize() {
    for (int pass = 0; pass < 8; ++pass) {
        // per-term argument normalization, dropping trivial terms
        std::vector<LogTerm> work;
        for (auto& t : terms_) {
            if (t.coeff == 0) continue;
            normalizeTerm(t);
            if (argIsPlusMinusOne(t.arg)) continue;
            work.push_back(std::move(t));
        }
        // merge equal arguments
        std::sort(work.begin(), work.end(), [](const LogTerm& a, const LogTerm& b) {
            return RatExpr::compare(a.arg, b.arg) < 0;
        });
        std::vector<LogTerm> merged;
        for (auto& t : work) {
            if (!merged.empty() && merged.back().arg == t.arg)
                merged.back().coeff += t.coeff;
            else
                merged.push_back(std::move(t));
        }
        std::erase_if(merged, [](const LogTerm& t) { return t.coeff == 0; });
        // group equal coefficients by multiplying their arguments
        auto qLess = [](const mpq_class& a, const mpq_class& b) { return cmp(a, b) < 0; };
        std::map<mpq_class, RatExpr, decltype(qLess)> groups(qLess);
        for (const auto& t : merged) {
            auto it = groups.find(t.coeff);
            if (it == groups.end())
                groups.emplace(t.coeff, t.arg);
            else
                it->second = it->second * t.arg;
        }
        std::vector<LogTerm> next;
        for (const auto& [c, a] : groups) next.push_back({c, a});
        bool stable = next.size() == terms_.size();
        if (stable) {
            for (std::size_t i = 0; i < next.size(); ++i)
                if (!(next[i].coeff == terms_[i].coeff) || next[i].arg != terms_[i].arg) {
                    stable = false;
                    break;
                }
        }
        terms_ = std::move(next);
        if (stable) break;
    }
    if (terms_.empty()) chart_ = nullptr;
}

LogSum LogSum::operator-() const { return scale(mpq_class(-1)); }

LogSum LogSum::operator+(const LogSum& o) const {
    if (!empty() && !o.empty() && !chartsAgree(chart_, o.chart_))
        throw DomainError("chart mismatch between log sums");
    std::vector<LogTerm> all = terms_;
    all.insert(all.end(), o.terms_.begin(), o.terms_.end());
    return fromTerms(std::move(all));
}

LogSum LogSum::operator-(const LogSum& o) const { return *this + (-o); }

LogSum LogSum::scale(const mpq_class& k) const {
    std::vector<LogTerm> all;
    for (const auto& t : terms_) all.push_back({t.coeff * k, t.arg});
    return fromTerms(std::move(all));
}

LogSum LogSum::substitute(const ChartPtr& target, const std::vector<RatExpr>& images) const {
    std::vector<LogTerm> all;
    for (const auto& t : terms_) {
        RatExpr a = t.arg.substitute(target, images);
        if (a.isZero()) throw PoleError("substitution sends a logarithm argument to zero");
        all.push_back({t.coeff, a});
    }
    return fromTerms(std::move(all));
}

Trilean LogSum::equal(const LogSum& a, const LogSum& b) {
    LogSum d = a - b;
    if (d.empty()) return Trilean::True;
    // d = (1/L) * sum k_i ln|A_i| with integer k_i; d == 0 iff prod A_i^k_i = +-1
    mpz_class lcm = 1;
    for (const auto& t : d.terms_)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), t.coeff.get_den().get_mpz_t());
    RatExpr prod = RatExpr::one(d.chart_);
    for (const auto& t : d.terms_) {
        mpq_class kq = t.coeff * mpq_class(lcm);
        mpz_class k = kq.get_num(); // denominator is 1 by construction
        mpz_class ak = abs(k);
        if (ak > kMaxCertExponent) return Trilean::Unknown;
        long deg = std::max(t.arg.num().totalDegree(), t.arg.den().totalDegree());
        if (deg > 0 && ak.get_si() * deg > kMaxCertDegree) return Trilean::Unknown;
        prod = prod * t.arg.pow(k.get_si());
        if (prod.num().totalDegree() > kMaxCertDegree || prod.den().totalDegree() > kMaxCertDegree)
            return Trilean::Unknown;
    }
    if (!prod.isConstant()) return Trilean::False;
    mpq_class v = prod.constantValue();
    return (v == 1 || v == -1) ? Trilean::True : Trilean::False;
}

bool LogSum::operator==(const LogSum& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (!(terms_[i].coeff == o.terms_[i].coeff) || terms_[i].arg != o.terms_[i].arg)
            return false;
    return true;
}

std::string LogSum::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& t : terms_) {
        mpq_class c = t.coeff;
        if (first) {
            if (c < 0) {
                out << '-';
                c = -c;
            }
        } else {
            out << (c < 0 ? '-' : '+');
            if (c < 0) c = -c;
        }
        if (c != 1) out << c.get_str() << '*';
        out << "ln|" << t.arg.str() << '|';
        first = false;
    }
    return out.str();
}

} // namespace modlie
