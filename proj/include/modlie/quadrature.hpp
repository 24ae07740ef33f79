#pragma once

#include <vector>

#include "modlie/ratexpr.hpp"

namespace modlie {

struct Interval {
    mpq_class lo;
    mpq_class hi;
};

// Midpoint-rule integral of f over the product of the given intervals, one per
// chart variable, evaluated exactly in rational arithmetic. Before summing,
// the denominator is sampled on the (resolution+1)^n corner lattice so a pole
// sitting on a cell boundary raises PoleError instead of being skipped.
// Poles at midpoints surface through evaluation itself.
mpq_class integrateDensity(const RatExpr& f, const std::vector<Interval>& box, int resolution);

} // namespace modlie
