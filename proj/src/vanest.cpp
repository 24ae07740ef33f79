#include "modlie/vanest.hpp"

#include "modlie/errors.hpp"

namespace modlie {

LieAlgebroid inducedAlgebroid(const LieActionModel& model) {
    const int gm = model.groupChart->dim();
    const int n = model.chart->dim();

    LieAlgebroid A;
    A.chart = model.chart;
    A.rank = gm;

    std::vector<RatExpr> unitImages;
    for (int i = 0; i < gm; ++i) unitImages.push_back(RatExpr::zero(model.chart));
    for (int j = 0; j < n; ++j) unitImages.push_back(RatExpr::variable(model.chart, j));

    A.anchor.assign(static_cast<std::size_t>(gm),
                    std::vector<RatExpr>(static_cast<std::size_t>(n), RatExpr::zero(model.chart)));
    for (int k = 0; k < gm; ++k)
        for (int j = 0; j < n; ++j)
            A.anchor[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] =
                model.action[static_cast<std::size_t>(j)].derivative(k).substitute(model.chart,
                                                                                   unitImages);

    std::vector<mpq_class> origin(static_cast<std::size_t>(2 * gm), 0);
    A.bracket.assign(static_cast<std::size_t>(gm),
                     std::vector<std::vector<RatExpr>>(
                         static_cast<std::size_t>(gm),
                         std::vector<RatExpr>(static_cast<std::size_t>(gm),
                                              RatExpr::zero(model.chart))));
    for (int a = 0; a < gm; ++a)
        for (int b = 0; b < gm; ++b)
            for (int c = 0; c < gm; ++c) {
                const auto& mc = model.mul[static_cast<std::size_t>(c)];
                mpq_class ba = mc.derivative(b).derivative(gm + a).evalAt(origin);
                mpq_class ab = mc.derivative(a).derivative(gm + b).evalAt(origin);
                A.bracket[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]
                         [static_cast<std::size_t>(c)] =
                    RatExpr::constant(model.chart, ba - ab);
            }
    return A;
}

Cochain1 vanEst1(const LieActionModel& model, const AdditiveValue& c) {
    const int gm = model.groupChart->dim();
    const int n = model.chart->dim();
    requireChart(c.ratPart, model.arrowChart);

    std::vector<RatExpr> unitImages;
    for (int i = 0; i < gm; ++i) unitImages.push_back(RatExpr::zero(model.chart));
    for (int j = 0; j < n; ++j) unitImages.push_back(RatExpr::variable(model.chart, j));

    Cochain1 out(static_cast<std::size_t>(gm), RatExpr::zero(model.chart));
    for (int k = 0; k < gm; ++k) {
        RatExpr d = c.ratPart.derivative(k);
        RatExpr acc = d.substitute(model.chart, unitImages);
        for (const auto& t : c.logPart.terms()) {
            RatExpr logDeriv = t.arg.derivative(k) / t.arg;
            acc = acc + RatExpr::constant(model.chart, t.coeff) *
                            logDeriv.substitute(model.chart, unitImages);
        }
        out[static_cast<std::size_t>(k)] = std::move(acc);
    }
    return out;
}

Cochain1 vanEst1(const LieActionModel& model, const AdditiveCocycle& c) {
    if (c.value.size() != 1) throw DomainError("action model cocycles have one arrow family");
    return vanEst1(model, c.value[0]);
}

} // namespace modlie
