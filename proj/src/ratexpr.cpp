#include "modlie/ratexpr.hpp"

#include "modlie/errors.hpp"

namespace modlie {

namespace {

const ChartPtr& emptyChart() {
    static const ChartPtr c = makeChart({});
    return c;
}

bool chartsAgree(const ChartPtr& a, const ChartPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

} // namespace

void requireSameChart(const RatExpr& a, const RatExpr& b) {
    if (!chartsAgree(a.chart(), b.chart())) throw DomainError("chart mismatch between expressions");
}

void requireChart(const RatExpr& a, const ChartPtr& chart) {
    if (!chartsAgree(a.chart(), chart)) throw DomainError("expression is over the wrong chart");
}

RatExpr::RatExpr() : RatExpr(emptyChart(), Poly(0), Poly::constant(0, 1)) {}

RatExpr::RatExpr(ChartPtr chart, Poly num, Poly den)
    : chart_(std::move(chart)), num_(std::move(num)), den_(std::move(den)) {
    canonicalize();
}

void RatExpr::canonicalize() {
    if (!chart_) throw DomainError("expression without a chart");
    if (num_.nvars() != chart_->dim() || den_.nvars() != chart_->dim())
        throw DomainError("polynomial arity does not match chart");
    if (den_.isZero()) throw DomainError("zero denominator");
    Poly g = Poly::gcd(num_, den_);
    auto qn = Poly::divExact(num_, g), qd = Poly::divExact(den_, g);
    if (!qn || !qd) throw DomainError("internal: gcd does not divide");
    num_ = std::move(*qn);
    den_ = std::move(*qd);
    if (den_.leadingCoeff() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

RatExpr RatExpr::zero(ChartPtr chart) {
    int n = chart ? chart->dim() : 0;
    return RatExpr(std::move(chart), Poly(n), Poly::constant(n, 1));
}

RatExpr RatExpr::one(ChartPtr chart) {
    int n = chart ? chart->dim() : 0;
    return RatExpr(std::move(chart), Poly::constant(n, 1), Poly::constant(n, 1));
}

RatExpr RatExpr::constant(ChartPtr chart, const mpq_class& value) {
    int n = chart ? chart->dim() : 0;
    return RatExpr(std::move(chart), Poly::constant(n, value.get_num()),
                   Poly::constant(n, value.get_den()));
}

RatExpr RatExpr::variable(ChartPtr chart, int index) {
    if (!chart) throw DomainError("expression without a chart");
    int n = chart->dim();
    return RatExpr(std::move(chart), Poly::variable(n, index), Poly::constant(n, 1));
}

RatExpr RatExpr::fromPolys(ChartPtr chart, Poly num, Poly den) {
    return RatExpr(std::move(chart), std::move(num), std::move(den));
}

bool RatExpr::isOne() const {
    return num_.isConstant() && den_.isConstant() && !num_.isZero() &&
           num_.constantValue() == den_.constantValue();
}

mpq_class RatExpr::constantValue() const {
    if (!isConstant()) throw DomainError("constantValue on non-constant expression");
    mpq_class q(num_.isZero() ? mpz_class(0) : num_.constantValue(), den_.constantValue());
    q.canonicalize();
    return q;
}

RatExpr RatExpr::operator-() const { return RatExpr(chart_, -num_, den_); }

RatExpr RatExpr::operator+(const RatExpr& o) const {
    requireSameChart(*this, o);
    return RatExpr(chart_, num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatExpr RatExpr::operator-(const RatExpr& o) const {
    requireSameChart(*this, o);
    return RatExpr(chart_, num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatExpr RatExpr::operator*(const RatExpr& o) const {
    requireSameChart(*this, o);
    return RatExpr(chart_, num_ * o.num_, den_ * o.den_);
}

RatExpr RatExpr::operator/(const RatExpr& o) const {
    requireSameChart(*this, o);
    if (o.isZero()) throw DomainError("division by zero expression");
    return RatExpr(chart_, num_ * o.den_, den_ * o.num_);
}

RatExpr RatExpr::inverse() const {
    if (isZero()) throw DomainError("inverse of zero expression");
    return RatExpr(chart_, den_, num_);
}

RatExpr RatExpr::pow(long k) const {
    if (k == 0) return one(chart_);
    if (k < 0) return inverse().pow(-k);
    return RatExpr(chart_, num_.pow(static_cast<unsigned>(k)), den_.pow(static_cast<unsigned>(k)));
}

RatExpr RatExpr::derivative(int var) const {
    if (var < 0 || var >= chart_->dim()) throw DomainError("derivative variable out of range");
    // (n/d)' = (n'd - nd') / d^2; canonicalization re-reduces
    return RatExpr(chart_, num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

mpq_class RatExpr::evalAt(const std::vector<mpq_class>& point) const {
    mpq_class d = den_.evalAt(point);
    if (d == 0) throw PoleError("expression has a pole at the evaluation point");
    return num_.evalAt(point) / d;
}

namespace {

RatExpr evalPolyWith(const Poly& p, const ChartPtr& target, const std::vector<RatExpr>& images) {
    RatExpr acc = RatExpr::zero(target);
    for (const auto& t : p.terms()) {
        RatExpr prod = RatExpr::constant(target, mpq_class(t.coeff));
        for (std::size_t i = 0; i < t.mono.size(); ++i)
            if (t.mono[i] != 0) prod = prod * images[i].pow(static_cast<long>(t.mono[i]));
        acc = acc + prod;
    }
    return acc;
}

} // namespace

RatExpr RatExpr::substitute(const ChartPtr& target, const std::vector<RatExpr>& images) const {
    if (static_cast<int>(images.size()) != chart_->dim())
        throw DomainError("substitution image count does not match chart");
    for (const auto& im : images) requireChart(im, target);
    RatExpr n = evalPolyWith(num_, target, images);
    RatExpr d = evalPolyWith(den_, target, images);
    if (d.isZero()) throw PoleError("substitution hits a pole of the expression");
    return n / d;
}

bool RatExpr::operator==(const RatExpr& o) const {
    return chartsAgree(chart_, o.chart_) && num_ == o.num_ && den_ == o.den_;
}

int RatExpr::compare(const RatExpr& a, const RatExpr& b) {
    int c = Poly::compare(a.num_, b.num_);
    if (c != 0) return c;
    return Poly::compare(a.den_, b.den_);
}

} // namespace modlie
