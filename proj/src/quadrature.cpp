#include "modlie/quadrature.hpp"

#include <cmath>

#include "modlie/errors.hpp"

namespace modlie {

namespace {

// Walks a mixed-radix counter over {0..radix-1}^n; returns false after the last point.
bool advance(std::vector<int>& idx, int radix) {
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (++idx[i] < radix) return true;
        idx[i] = 0;
    }
    return false;
}

} // namespace

mpq_class integrateDensity(const RatExpr& f, const std::vector<Interval>& box, int resolution) {
    const int n = f.chart()->dim();
    if (static_cast<int>(box.size()) != n) throw DomainError("box dimension does not match chart");
    if (resolution < 1) throw DomainError("resolution must be positive");
    for (const auto& iv : box)
        if (iv.lo > iv.hi) throw DomainError("interval with lo > hi");
    if (n > 0 && n * std::log(static_cast<double>(resolution)) > std::log(1e8))
        throw DomainError("grid too large for this resolution");
    if (n == 0) return f.evalAt({});
    for (const auto& iv : box)
        if (iv.lo == iv.hi) return 0;

    std::vector<mpq_class> h(static_cast<std::size_t>(n));
    mpq_class cell = 1;
    for (int i = 0; i < n; ++i) {
        h[static_cast<std::size_t>(i)] = (box[static_cast<std::size_t>(i)].hi -
                                          box[static_cast<std::size_t>(i)].lo) /
                                         resolution;
        cell *= h[static_cast<std::size_t>(i)];
    }

    std::vector<mpq_class> pt(static_cast<std::size_t>(n));
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    do {
        for (int i = 0; i < n; ++i)
            pt[static_cast<std::size_t>(i)] =
                box[static_cast<std::size_t>(i)].lo + idx[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i)];
        if (f.den().evalAt(pt) == 0)
            throw PoleError("density has a pole on the integration grid");
    } while (advance(idx, resolution + 1));

    mpq_class sum = 0;
    std::fill(idx.begin(), idx.end(), 0);
    do {
        for (int i = 0; i < n; ++i)
            pt[static_cast<std::size_t>(i)] =
                box[static_cast<std::size_t>(i)].lo +
                (2 * idx[static_cast<std::size_t>(i)] + 1) * h[static_cast<std::size_t>(i)] / 2;
        sum += f.evalAt(pt);
    } while (advance(idx, resolution));
    return sum * cell;
}

} // namespace modlie
