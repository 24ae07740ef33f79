#include "modlie/groupoid.hpp"

#include <algorithm>

#include "modlie/errors.hpp"

namespace modlie {

namespace {

// Lift an expression over the base chart into a composite chart whose block
// at `offset` holds the base variables.
RatExpr liftExpr(const RatExpr& e, const ChartPtr& target, int offset) {
    std::vector<RatExpr> images;
    images.reserve(static_cast<std::size_t>(e.chart()->dim()));
    for (int i = 0; i < e.chart()->dim(); ++i)
        images.push_back(RatExpr::variable(target, offset + i));
    return e.substitute(target, images);
}

std::vector<RatExpr> chartVars(const ChartPtr& chart, int offset, int count) {
    std::vector<RatExpr> v;
    v.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) v.push_back(RatExpr::variable(chart, offset + i));
    return v;
}

std::vector<RatExpr> zeros(const ChartPtr& chart, int count) {
    return std::vector<RatExpr>(static_cast<std::size_t>(count), RatExpr::zero(chart));
}

std::vector<RatExpr> concatImages(std::vector<RatExpr> a, const std::vector<RatExpr>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

using Matrix = std::vector<std::vector<RatExpr>>;

// Cofactor expansion; fine for the small ranks these models carry.
RatExpr detMatrix(const Matrix& m, const ChartPtr& chart) {
    const std::size_t n = m.size();
    if (n == 0) return RatExpr::one(chart);
    if (n == 1) return m[0][0];
    RatExpr acc = RatExpr::zero(chart);
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (!m[0][k].isZero()) {
            Matrix minor;
            minor.reserve(n - 1);
            for (std::size_t i = 1; i < n; ++i) {
                std::vector<RatExpr> row;
                row.reserve(n - 1);
                for (std::size_t j = 0; j < n; ++j)
                    if (j != k) row.push_back(m[i][j]);
                minor.push_back(std::move(row));
            }
            RatExpr term = m[0][k] * detMatrix(minor, chart);
            acc = sign > 0 ? acc + term : acc - term;
        }
        sign = -sign;
    }
    return acc;
}

Matrix mulMatrix(const Matrix& a, const Matrix& b, const ChartPtr& chart) {
    const std::size_t n = a.size();
    const std::size_t p = b.empty() ? 0 : b[0].size();
    const std::size_t k = b.size();
    Matrix out(n, std::vector<RatExpr>(p, RatExpr::zero(chart)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j)
            for (std::size_t l = 0; l < k; ++l) out[i][j] = out[i][j] + a[i][l] * b[l][j];
    return out;
}

Matrix addMatrix(const Matrix& a, const Matrix& b) {
    Matrix out = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] = a[i][j] + b[i][j];
    return out;
}

Trilean triAnd(Trilean a, Trilean b) {
    if (a == Trilean::False || b == Trilean::False) return Trilean::False;
    if (a == Trilean::Unknown || b == Trilean::Unknown) return Trilean::Unknown;
    return Trilean::True;
}

void validateMapList(const std::vector<RatExpr>& maps, const ChartPtr& over, int count,
                     const char* what) {
    if (static_cast<int>(maps.size()) != count)
        throw DomainError(std::string(what) + ": wrong number of components");
    for (const auto& e : maps) requireChart(e, over);
}

} // namespace

PairModel makePairModel(const ChartPtr& chart) {
    if (!chart) throw DomainError("pair model requires a chart");
    return PairModel{chart, concatCharts(chart, suffixChart(chart, "_t"))};
}

DiscreteActionModel makeDiscreteActionModel(const ChartPtr& chart,
                                            std::vector<DiscreteGenerator> generators) {
    if (!chart) throw DomainError("discrete action model requires a chart");
    for (const auto& g : generators) {
        validateMapList(g.map, chart, chart->dim(), "generator map");
        validateMapList(g.inverseMap, chart, chart->dim(), "generator inverse");
    }
    return DiscreteActionModel{chart, std::move(generators)};
}

LieActionModel makeLieActionModel(const ChartPtr& chart, const ChartPtr& groupChart,
                                  std::vector<RatExpr> mul, std::vector<RatExpr> inv,
                                  std::vector<RatExpr> action) {
    if (!chart || !groupChart) throw DomainError("action model requires both charts");
    LieActionModel m;
    m.chart = chart;
    m.groupChart = groupChart;
    m.mulChart = concatCharts(groupChart, suffixChart(groupChart, "_r"));
    m.arrowChart = concatCharts(groupChart, chart);
    validateMapList(mul, m.mulChart, groupChart->dim(), "group multiplication");
    validateMapList(inv, m.groupChart, groupChart->dim(), "group inverse");
    validateMapList(action, m.arrowChart, chart->dim(), "action");
    m.mul = std::move(mul);
    m.inv = std::move(inv);
    m.action = std::move(action);
    return m;
}

const ChartPtr& baseChart(const GroupoidModel& model) {
    return std::visit([](const auto& m) -> const ChartPtr& { return m.chart; }, model);
}

namespace {

ModelReport checkPair(const PairModel&) { return ModelReport{}; }

ModelReport checkDiscrete(const DiscreteActionModel& m) {
    ModelReport rep;
    for (const auto& g : m.generators) {
        for (int round = 0; round < 2; ++round) {
            const auto& outer = round == 0 ? g.inverseMap : g.map;
            const auto& inner = round == 0 ? g.map : g.inverseMap;
            const char* dir = round == 0 ? "inverse o map" : "map o inverse";
            for (int i = 0; i < m.chart->dim(); ++i) {
                RatExpr res = outer[static_cast<std::size_t>(i)].substitute(m.chart, inner) -
                              RatExpr::variable(m.chart, i);
                if (!res.isZero()) {
                    rep.ok = false;
                    rep.issues.push_back({"generator-inverse",
                                          g.name + ": " + dir + ", component " +
                                              std::to_string(i + 1),
                                          std::move(res)});
                }
            }
        }
    }
    return rep;
}

ModelReport checkLieAction(const LieActionModel& m) {
    ModelReport rep;
    const int gm = m.groupChart->dim();
    const int n = m.chart->dim();
    auto flag = [&](const char* kind, std::string where, RatExpr res) {
        rep.ok = false;
        rep.issues.push_back({kind, std::move(where), std::move(res)});
    };
    auto uVars = chartVars(m.groupChart, 0, gm);

    // mul(u, 0) = u and mul(0, u) = u
    for (int round = 0; round < 2; ++round) {
        auto images = round == 0 ? concatImages(uVars, zeros(m.groupChart, gm))
                                 : concatImages(zeros(m.groupChart, gm), uVars);
        for (int i = 0; i < gm; ++i) {
            RatExpr res = m.mul[static_cast<std::size_t>(i)].substitute(m.groupChart, images) -
                          RatExpr::variable(m.groupChart, i);
            if (!res.isZero())
                flag("unit", std::string(round == 0 ? "right" : "left") + " unit, component " +
                                 std::to_string(i + 1),
                     std::move(res));
        }
    }

    // mul(u, inv(u)) = 0 and mul(inv(u), u) = 0
    for (int round = 0; round < 2; ++round) {
        auto images = round == 0 ? concatImages(uVars, m.inv) : concatImages(m.inv, uVars);
        for (int i = 0; i < gm; ++i) {
            RatExpr res = m.mul[static_cast<std::size_t>(i)].substitute(m.groupChart, images);
            if (!res.isZero())
                flag("inverse", std::string(round == 0 ? "right" : "left") + " inverse, component " +
                                    std::to_string(i + 1),
                     std::move(res));
        }
    }

    // associativity over (u, v, w)
    {
        auto c3 = concatCharts(m.groupChart, suffixChart(m.groupChart, "_r"),
                               suffixChart(m.groupChart, "_s"));
        auto u = chartVars(c3, 0, gm), v = chartVars(c3, gm, gm), w = chartVars(c3, 2 * gm, gm);
        std::vector<RatExpr> uv, vw;
        for (int i = 0; i < gm; ++i)
            uv.push_back(m.mul[static_cast<std::size_t>(i)].substitute(c3, concatImages(u, v)));
        for (int i = 0; i < gm; ++i)
            vw.push_back(m.mul[static_cast<std::size_t>(i)].substitute(c3, concatImages(v, w)));
        for (int i = 0; i < gm; ++i) {
            RatExpr lhs = m.mul[static_cast<std::size_t>(i)].substitute(c3, concatImages(uv, w));
            RatExpr rhs = m.mul[static_cast<std::size_t>(i)].substitute(c3, concatImages(u, vw));
            RatExpr res = lhs - rhs;
            if (!res.isZero()) flag("assoc", "component " + std::to_string(i + 1), std::move(res));
        }
    }

    // a(0, x) = x
    {
        auto xVars = chartVars(m.chart, 0, n);
        auto images = concatImages(zeros(m.chart, gm), xVars);
        for (int i = 0; i < n; ++i) {
            RatExpr res = m.action[static_cast<std::size_t>(i)].substitute(m.chart, images) -
                          RatExpr::variable(m.chart, i);
            if (!res.isZero())
                flag("action-unit", "component " + std::to_string(i + 1), std::move(res));
        }
    }

    // a(mul(u, v), x) = a(u, a(v, x)) over (u, v, x)
    {
        auto c3 = concatCharts(m.groupChart, suffixChart(m.groupChart, "_r"), m.chart);
        auto u = chartVars(c3, 0, gm), v = chartVars(c3, gm, gm), x = chartVars(c3, 2 * gm, n);
        std::vector<RatExpr> uv, avx;
        for (int i = 0; i < gm; ++i)
            uv.push_back(m.mul[static_cast<std::size_t>(i)].substitute(c3, concatImages(u, v)));
        for (int i = 0; i < n; ++i)
            avx.push_back(m.action[static_cast<std::size_t>(i)].substitute(c3, concatImages(v, x)));
        for (int i = 0; i < n; ++i) {
            RatExpr lhs = m.action[static_cast<std::size_t>(i)].substitute(c3, concatImages(uv, x));
            RatExpr rhs =
                m.action[static_cast<std::size_t>(i)].substitute(c3, concatImages(u, avx));
            RatExpr res = lhs - rhs;
            if (!res.isZero())
                flag("action-compat", "component " + std::to_string(i + 1), std::move(res));
        }
    }

    return rep;
}

} // namespace

ModelReport checkModel(const GroupoidModel& model) {
    return std::visit(
        [](const auto& m) -> ModelReport {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, PairModel>) return checkPair(m);
            if constexpr (std::is_same_v<T, DiscreteActionModel>) return checkDiscrete(m);
            if constexpr (std::is_same_v<T, LieActionModel>) return checkLieAction(m);
        },
        model);
}

RatExpr tildeJacobian(const PairModel& model) {
    // The frame transport factor and the bisection pushforward are the same
    // matrix here, so their top wedges cancel identically.
    return RatExpr::one(model.arrowChart);
}

RatExpr tildeJacobian(const DiscreteActionModel& model, int gen) {
    if (gen < 0 || gen >= static_cast<int>(model.generators.size()))
        throw DomainError("generator index out of range");
    const auto& g = model.generators[static_cast<std::size_t>(gen)];
    const int n = model.chart->dim();
    Matrix d(static_cast<std::size_t>(n), std::vector<RatExpr>());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            d[static_cast<std::size_t>(i)].push_back(g.map[static_cast<std::size_t>(i)].derivative(j));
    RatExpr det = detMatrix(d, model.chart);
    if (det.isZero()) throw DomainError("generator is singular");
    return det;
}

namespace {

// B(w)_{ij} = d mul_i / d(first)_j at (0, w), as a matrix over groupChart.
Matrix translationFrame(const LieActionModel& m) {
    const int gm = m.groupChart->dim();
    auto images = concatImages(zeros(m.groupChart, gm), chartVars(m.groupChart, 0, gm));
    Matrix B(static_cast<std::size_t>(gm), std::vector<RatExpr>());
    for (int i = 0; i < gm; ++i)
        for (int j = 0; j < gm; ++j)
            B[static_cast<std::size_t>(i)].push_back(
                m.mul[static_cast<std::size_t>(i)].derivative(j).substitute(m.groupChart, images));
    return B;
}

} // namespace

RatExpr tildeJacobian(const LieActionModel& m) {
    const int gm = m.groupChart->dim();
    const int n = m.chart->dim();

    Matrix dinv(static_cast<std::size_t>(gm), std::vector<RatExpr>());
    for (int i = 0; i < gm; ++i)
        for (int j = 0; j < gm; ++j)
            dinv[static_cast<std::size_t>(i)].push_back(m.inv[static_cast<std::size_t>(i)].derivative(j));
    RatExpr detDinv = detMatrix(dinv, m.groupChart);
    if (detDinv.isZero()) throw DomainError("group inverse map is singular");

    Matrix dax(static_cast<std::size_t>(n), std::vector<RatExpr>());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            dax[static_cast<std::size_t>(i)].push_back(
                m.action[static_cast<std::size_t>(i)].derivative(gm + j));
    RatExpr detDax = detMatrix(dax, m.arrowChart);
    if (detDax.isZero()) throw DomainError("action is singular along the base");

    RatExpr detB = detMatrix(translationFrame(m), m.groupChart);
    if (detB.isZero()) throw DomainError("degenerate group multiplication");
    RatExpr detBinv = detB.substitute(m.groupChart, m.inv);

    RatExpr lift = liftExpr(detDinv * detB / detBinv, m.arrowChart, 0);
    RatExpr sign = RatExpr::constant(m.arrowChart, mpq_class(gm % 2 == 0 ? 1 : -1));
    return sign * lift * detDax;
}

RatExpr tildeJacobianAlongSection(const LieActionModel& m, const std::vector<RatExpr>& beta) {
    const int gm = m.groupChart->dim();
    const int n = m.chart->dim();
    validateMapList(beta, m.chart, gm, "bisection");

    std::vector<RatExpr> invBeta;
    for (int i = 0; i < gm; ++i)
        invBeta.push_back(m.inv[static_cast<std::size_t>(i)].substitute(m.chart, beta));
    auto atBetaInvBeta = concatImages(beta, invBeta);
    auto arrowImages = concatImages(beta, chartVars(m.chart, 0, n));

    // frame transport: Ad = D1mul(beta, inv beta) . Dbeta . V + D2mul(beta, inv beta) . B(inv beta)
    Matrix P(static_cast<std::size_t>(gm), std::vector<RatExpr>()),
        Q(static_cast<std::size_t>(gm), std::vector<RatExpr>());
    for (int i = 0; i < gm; ++i)
        for (int j = 0; j < gm; ++j) {
            P[static_cast<std::size_t>(i)].push_back(
                m.mul[static_cast<std::size_t>(i)].derivative(j).substitute(m.chart, atBetaInvBeta));
            Q[static_cast<std::size_t>(i)].push_back(
                m.mul[static_cast<std::size_t>(i)].derivative(gm + j).substitute(m.chart,
                                                                                 atBetaInvBeta));
        }
    Matrix dBeta(static_cast<std::size_t>(gm), std::vector<RatExpr>());
    for (int i = 0; i < gm; ++i)
        for (int j = 0; j < n; ++j)
            dBeta[static_cast<std::size_t>(i)].push_back(beta[static_cast<std::size_t>(i)].derivative(j));
    // V = d a / d u at (0, x): fundamental vector fields of the action
    auto unitImages = concatImages(zeros(m.chart, gm), chartVars(m.chart, 0, n));
    Matrix V(static_cast<std::size_t>(n), std::vector<RatExpr>());
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < gm; ++k)
            V[static_cast<std::size_t>(i)].push_back(
                m.action[static_cast<std::size_t>(i)].derivative(k).substitute(m.chart, unitImages));
    Matrix Binv(static_cast<std::size_t>(gm), std::vector<RatExpr>());
    {
        Matrix B = translationFrame(m);
        for (int i = 0; i < gm; ++i)
            for (int j = 0; j < gm; ++j)
                Binv[static_cast<std::size_t>(i)].push_back(
                    B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].substitute(m.chart,
                                                                                           invBeta));
    }
    Matrix ad = addMatrix(mulMatrix(P, mulMatrix(dBeta, V, m.chart), m.chart),
                          mulMatrix(Q, Binv, m.chart));
    RatExpr detAd = detMatrix(ad, m.chart);
    if (detAd.isZero()) throw DomainError("degenerate frame transport along the bisection");

    // target-map Jacobian along the bisection: d/dx [ a(beta(x), x) ]
    Matrix dtb(static_cast<std::size_t>(n), std::vector<RatExpr>());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RatExpr entry = m.action[static_cast<std::size_t>(i)].derivative(gm + j).substitute(
                m.chart, arrowImages);
            for (int k = 0; k < gm; ++k)
                entry = entry +
                        m.action[static_cast<std::size_t>(i)].derivative(k).substitute(
                            m.chart, arrowImages) *
                            dBeta[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            dtb[static_cast<std::size_t>(i)].push_back(std::move(entry));
        }
    return detMatrix(dtb, m.chart) / detAd;
}

GpdLineRep canonicalGroupoidRep(const GroupoidModel& model, const Character& chi) {
    (void)model;
    return GpdLineRep{chi, {}};
}

GpdLineRep tensorGroupoidRep(const GpdLineRep& a, const GpdLineRep& b) {
    GpdLineRep out;
    out.chi = charMul(a.chi, b.chi);
    if (a.scalar.empty()) {
        out.scalar = b.scalar;
    } else if (b.scalar.empty()) {
        out.scalar = a.scalar;
    } else {
        if (a.scalar.size() != b.scalar.size())
            throw DomainError("tensor of reps with different arrow families");
        for (std::size_t i = 0; i < a.scalar.size(); ++i)
            out.scalar.push_back(a.scalar[i] * b.scalar[i]);
    }
    return out;
}

namespace {

std::size_t familyCount(const GroupoidModel& model) {
    if (const auto* d = std::get_if<DiscreteActionModel>(&model)) return d->generators.size();
    return 1;
}

const ChartPtr& familyChart(const GroupoidModel& model) {
    if (const auto* p = std::get_if<PairModel>(&model)) return p->arrowChart;
    if (const auto* l = std::get_if<LieActionModel>(&model)) return l->arrowChart;
    return std::get<DiscreteActionModel>(model).chart;
}

RatExpr repScalar(const GroupoidModel& model, const GpdLineRep& rep, std::size_t family) {
    if (rep.scalar.empty()) return RatExpr::one(familyChart(model));
    if (rep.scalar.size() != familyCount(model))
        throw DomainError("rep scalar count does not match arrow families");
    RatExpr s = rep.scalar[family];
    requireChart(s, familyChart(model));
    if (s.isZero()) throw DomainError("rep scalar must be nonzero");
    return s;
}

FormalScalar densityTransport(const Character& chi, const RatExpr& jac, const RatExpr& scalar,
                              const RatExpr& sigmaSrc, const RatExpr& sigmaTgt) {
    FormalScalar out = charApply(chi, jac);
    out = fsMul(out, FormalScalar{LogSum::term(1, scalar), scalar});
    out = fsMul(out, FormalScalar{LogSum::term(1, sigmaSrc) - LogSum::term(1, sigmaTgt),
                                  sigmaSrc / sigmaTgt});
    return out;
}

} // namespace

MultCocycle tildeCocycle(const GroupoidModel& model, const GpdLineRep& rep, const RatExpr& sigma) {
    requireChart(sigma, baseChart(model));
    if (sigma.isZero()) throw DomainError("zero density section");
    MultCocycle out;
    out.rep = rep;
    out.sigma = sigma;

    if (const auto* p = std::get_if<PairModel>(&model)) {
        const int n = p->chart->dim();
        RatExpr srcSigma = liftExpr(sigma, p->arrowChart, 0);
        RatExpr tgtSigma = liftExpr(sigma, p->arrowChart, n);
        out.value.push_back(densityTransport(rep.chi, tildeJacobian(*p), repScalar(model, rep, 0),
                                             srcSigma, tgtSigma));
    } else if (const auto* d = std::get_if<DiscreteActionModel>(&model)) {
        for (std::size_t g = 0; g < d->generators.size(); ++g) {
            RatExpr tgtSigma = sigma.substitute(d->chart, d->generators[g].map);
            if (tgtSigma.isZero()) throw DomainError("density vanishes along a generator image");
            out.value.push_back(densityTransport(rep.chi, tildeJacobian(*d, static_cast<int>(g)),
                                                 repScalar(model, rep, g), sigma, tgtSigma));
        }
    } else {
        const auto& l = std::get<LieActionModel>(model);
        RatExpr srcSigma = liftExpr(sigma, l.arrowChart, l.groupChart->dim());
        RatExpr tgtSigma = sigma.substitute(l.arrowChart, l.action);
        if (tgtSigma.isZero()) throw DomainError("density vanishes along the action");
        out.value.push_back(densityTransport(rep.chi, tildeJacobian(l), repScalar(model, rep, 0),
                                             srcSigma, tgtSigma));
    }
    return out;
}

Trilean isZeroAdditive(const AdditiveValue& v) {
    // a nonzero rational part can never be cancelled by logarithm terms
    if (!v.ratPart.isZero()) return Trilean::False;
    return v.logPart.isZero();
}

AdditiveValue addValues(const AdditiveValue& a, const AdditiveValue& b) {
    return AdditiveValue{a.logPart + b.logPart, a.ratPart + b.ratPart};
}

AdditiveValue negateValue(const AdditiveValue& v) {
    return AdditiveValue{-v.logPart, -v.ratPart};
}

AdditiveCocycle additivePart(const MultCocycle& c) {
    AdditiveCocycle out;
    for (const auto& v : c.value) {
        ChartPtr ch = v.signPart.chart();
        out.value.push_back(AdditiveValue{-v.absPart, RatExpr::zero(ch)});
    }
    return out;
}

std::vector<RatExpr> signPart(const MultCocycle& c) {
    std::vector<RatExpr> out;
    out.reserve(c.value.size());
    for (const auto& v : c.value) out.push_back(signCanonical(v.signPart));
    return out;
}

AdditiveCocycle differential0(const GroupoidModel& model, const RatExpr& f) {
    requireChart(f, baseChart(model));
    AdditiveCocycle out;
    if (const auto* p = std::get_if<PairModel>(&model)) {
        RatExpr src = liftExpr(f, p->arrowChart, 0);
        RatExpr tgt = liftExpr(f, p->arrowChart, p->chart->dim());
        out.value.push_back(AdditiveValue{LogSum{}, tgt - src});
    } else if (const auto* d = std::get_if<DiscreteActionModel>(&model)) {
        for (const auto& g : d->generators)
            out.value.push_back(AdditiveValue{LogSum{}, f.substitute(d->chart, g.map) - f});
    } else {
        const auto& l = std::get<LieActionModel>(model);
        RatExpr src = liftExpr(f, l.arrowChart, l.groupChart->dim());
        out.value.push_back(AdditiveValue{LogSum{}, f.substitute(l.arrowChart, l.action) - src});
    }
    return out;
}

Trilean isGroupoidCoboundary(const GroupoidModel& model, const AdditiveCocycle& c,
                             const RatExpr& f) {
    AdditiveCocycle delta = differential0(model, f);
    if (c.value.size() != delta.value.size())
        throw DomainError("cocycle has the wrong number of arrow families");
    Trilean acc = Trilean::True;
    for (std::size_t i = 0; i < c.value.size(); ++i)
        acc = triAnd(acc, isZeroAdditive(addValues(c.value[i], delta.value[i])));
    return acc;
}

namespace {

std::vector<mpq_class> arrowPoint(const GroupoidModel& model, const IsotropyArrow& arrow) {
    if (const auto* p = std::get_if<PairModel>(&model)) {
        if (static_cast<int>(arrow.basePoint.size()) != p->chart->dim())
            throw DomainError("base point dimension mismatch");
        std::vector<mpq_class> pt = arrow.basePoint;
        pt.insert(pt.end(), arrow.basePoint.begin(), arrow.basePoint.end());
        return pt;
    }
    if (const auto* d = std::get_if<DiscreteActionModel>(&model)) {
        if (arrow.generator < 0 || arrow.generator >= static_cast<int>(d->generators.size()))
            throw DomainError("candidate names no generator");
        if (static_cast<int>(arrow.basePoint.size()) != d->chart->dim())
            throw DomainError("base point dimension mismatch");
        const auto& g = d->generators[static_cast<std::size_t>(arrow.generator)];
        for (int i = 0; i < d->chart->dim(); ++i)
            if (g.map[static_cast<std::size_t>(i)].evalAt(arrow.basePoint) !=
                arrow.basePoint[static_cast<std::size_t>(i)])
                throw DomainError("candidate point is not fixed by the generator");
        return arrow.basePoint;
    }
    const auto& l = std::get<LieActionModel>(model);
    if (static_cast<int>(arrow.groupPoint.size()) != l.groupChart->dim())
        throw DomainError("group point dimension mismatch");
    if (static_cast<int>(arrow.basePoint.size()) != l.chart->dim())
        throw DomainError("base point dimension mismatch");
    std::vector<mpq_class> pt = arrow.groupPoint;
    pt.insert(pt.end(), arrow.basePoint.begin(), arrow.basePoint.end());
    for (int i = 0; i < l.chart->dim(); ++i)
        if (l.action[static_cast<std::size_t>(i)].evalAt(pt) !=
            arrow.basePoint[static_cast<std::size_t>(i)])
            throw DomainError("candidate point is not fixed by the action");
    return pt;
}

std::size_t arrowFamily(const GroupoidModel& model, const IsotropyArrow& arrow) {
    if (std::holds_alternative<DiscreteActionModel>(model))
        return static_cast<std::size_t>(arrow.generator);
    return 0;
}

void evaluateAdditive(const AdditiveValue& v, const std::vector<mpq_class>& pt,
                      std::vector<std::pair<mpq_class, mpq_class>>& logValue,
                      mpq_class& ratValue) {
    logValue.clear();
    for (const auto& t : v.logPart.terms()) {
        mpq_class b = t.arg.evalAt(pt);
        if (b == 0) throw DomainError("cocycle has a singular logarithm at the candidate point");
        logValue.emplace_back(t.coeff, b);
    }
    ratValue = v.ratPart.evalAt(pt);
}

} // namespace

bool exactValueIsNonzero(const std::vector<std::pair<mpq_class, mpq_class>>& logValue,
                         const mpq_class& ratValue) {
    // sum q_i ln|b_i| is (1/L) ln|prod b_i^{k_i}|, zero iff the product is +-1;
    // a nonzero log remainder is irrational while ratValue is rational.
    mpz_class lcm = 1;
    for (const auto& [q, b] : logValue)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
    mpq_class prod = 1;
    for (const auto& [q, b] : logValue) {
        mpq_class kq = q * mpq_class(lcm);
        long k = kq.get_num().get_si();
        mpq_class p = 1;
        mpq_class base = k >= 0 ? b : mpq_class(1) / b;
        for (long i = 0; i < (k >= 0 ? k : -k); ++i) p *= base;
        prod *= p;
    }
    bool logZero = (prod == 1 || prod == -1);
    return !(logZero && ratValue == 0);
}

std::optional<FixedPointCertificate> fixedPointObstruction(
    const GroupoidModel& model, const AdditiveCocycle& c,
    const std::vector<IsotropyArrow>& candidates) {
    if (c.value.size() != familyCount(model))
        throw DomainError("cocycle has the wrong number of arrow families");
    for (const auto& arrow : candidates) {
        std::vector<mpq_class> pt = arrowPoint(model, arrow);
        std::size_t fam = arrowFamily(model, arrow);
        FixedPointCertificate cert;
        cert.arrow = arrow;
        evaluateAdditive(c.value[fam], pt, cert.logValue, cert.ratValue);
        if (exactValueIsNonzero(cert.logValue, cert.ratValue)) return cert;
    }
    return std::nullopt;
}

bool verifyFixedPointCertificate(const GroupoidModel& model, const AdditiveCocycle& c,
                                 const FixedPointCertificate& cert) {
    std::vector<mpq_class> pt;
    try {
        pt = arrowPoint(model, cert.arrow);
    } catch (const Error&) {
        return false;
    }
    std::size_t fam = arrowFamily(model, cert.arrow);
    if (fam >= c.value.size()) return false;
    std::vector<std::pair<mpq_class, mpq_class>> logValue;
    mpq_class ratValue;
    try {
        evaluateAdditive(c.value[fam], pt, logValue, ratValue);
    } catch (const Error&) {
        return false;
    }
    if (logValue != cert.logValue || ratValue != cert.ratValue) return false;
    return exactValueIsNonzero(logValue, ratValue);
}

Trilean invariantDensityCheck(const GroupoidModel& model, const GpdLineRep& rep,
                              const RatExpr& sigma) {
    MultCocycle c = tildeCocycle(model, rep, sigma);
    Trilean acc = Trilean::True;
    for (const auto& v : c.value) acc = triAnd(acc, fsIsOne(v));
    return acc;
}

namespace {

Trilean pairCocycleLaw(const PairModel& p, const MultCocycle& c) {
    const int n = p.chart->dim();
    auto c3 = concatCharts(p.chart, suffixChart(p.chart, "_t"), suffixChart(p.chart, "_s"));
    auto x = chartVars(c3, 0, n), y = chartVars(c3, n, n), z = chartVars(c3, 2 * n, n);
    FormalScalar g = fsSubstitute(c.value[0], c3, concatImages(y, z));
    FormalScalar h = fsSubstitute(c.value[0], c3, concatImages(x, y));
    FormalScalar gh = fsSubstitute(c.value[0], c3, concatImages(x, z));
    return fsEqual(fsMul(g, h), gh);
}

Trilean discreteCocycleLaw(const DiscreteActionModel& d, const MultCocycle& c) {
    Trilean acc = Trilean::True;
    for (std::size_t i = 0; i < d.generators.size(); ++i)
        for (std::size_t j = 0; j < d.generators.size(); ++j) {
            const auto& gi = d.generators[i];
            const auto& gj = d.generators[j];
            // composite arrow x -> g_i(g_j(x)) rebuilt from the stored chi/sigma
            std::vector<RatExpr> comp;
            for (int k = 0; k < d.chart->dim(); ++k)
                comp.push_back(gi.map[static_cast<std::size_t>(k)].substitute(d.chart, gj.map));
            const int n = d.chart->dim();
            Matrix dcomp(static_cast<std::size_t>(n), std::vector<RatExpr>());
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s)
                    dcomp[static_cast<std::size_t>(r)].push_back(
                        comp[static_cast<std::size_t>(r)].derivative(s));
            RatExpr jac = detMatrix(dcomp, d.chart);
            RatExpr scalComp = RatExpr::one(d.chart);
            if (!c.rep.scalar.empty())
                scalComp = c.rep.scalar[i].substitute(d.chart, gj.map) * c.rep.scalar[j];
            RatExpr tgtSigma = c.sigma.substitute(d.chart, comp);
            FormalScalar rhs =
                densityTransport(c.rep.chi, jac, scalComp, c.sigma, tgtSigma);
            FormalScalar lhs =
                fsMul(fsSubstitute(c.value[i], d.chart, gj.map), c.value[j]);
            acc = triAnd(acc, fsEqual(lhs, rhs));
        }
    return acc;
}

Trilean lieActionCocycleLaw(const LieActionModel& l, const MultCocycle& c) {
    const int gm = l.groupChart->dim();
    const int n = l.chart->dim();
    auto c3 = concatCharts(l.groupChart, suffixChart(l.groupChart, "_r"), l.chart);
    auto u = chartVars(c3, 0, gm), v = chartVars(c3, gm, gm), x = chartVars(c3, 2 * gm, n);
    std::vector<RatExpr> uv, avx;
    for (int i = 0; i < gm; ++i)
        uv.push_back(l.mul[static_cast<std::size_t>(i)].substitute(c3, concatImages(u, v)));
    for (int i = 0; i < n; ++i)
        avx.push_back(l.action[static_cast<std::size_t>(i)].substitute(c3, concatImages(v, x)));
    FormalScalar g = fsSubstitute(c.value[0], c3, concatImages(u, avx));
    FormalScalar h = fsSubstitute(c.value[0], c3, concatImages(v, x));
    FormalScalar gh = fsSubstitute(c.value[0], c3, concatImages(uv, x));
    return fsEqual(fsMul(g, h), gh);
}

} // namespace

Trilean cocycleLawHolds(const GroupoidModel& model, const MultCocycle& c) {
    if (c.value.size() != familyCount(model))
        throw DomainError("cocycle has the wrong number of arrow families");
    if (const auto* p = std::get_if<PairModel>(&model)) return pairCocycleLaw(*p, c);
    if (const auto* d = std::get_if<DiscreteActionModel>(&model)) return discreteCocycleLaw(*d, c);
    return lieActionCocycleLaw(std::get<LieActionModel>(model), c);
}

Trilean unitValueIsOne(const GroupoidModel& model, const MultCocycle& c) {
    if (c.value.size() != familyCount(model))
        throw DomainError("cocycle has the wrong number of arrow families");
    if (const auto* p = std::get_if<PairModel>(&model)) {
        const int n = p->chart->dim();
        auto x = chartVars(p->chart, 0, n);
        return fsIsOne(fsSubstitute(c.value[0], p->chart, concatImages(x, x)));
    }
    if (std::holds_alternative<DiscreteActionModel>(model)) {
        // the identity word: transport of sigma by the identity map
        const auto& d = std::get<DiscreteActionModel>(model);
        FormalScalar unit = densityTransport(c.rep.chi, RatExpr::one(d.chart),
                                             RatExpr::one(d.chart), c.sigma, c.sigma);
        return fsIsOne(unit);
    }
    const auto& l = std::get<LieActionModel>(model);
    auto images = concatImages(zeros(l.chart, l.groupChart->dim()),
                               chartVars(l.chart, 0, l.chart->dim()));
    return fsIsOne(fsSubstitute(c.value[0], l.chart, images));
}

} // namespace modlie
