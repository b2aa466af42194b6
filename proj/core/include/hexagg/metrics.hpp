#pragma once

#include <optional>
#include <vector>

#include "hexagg/interval_set.hpp"

namespace hexagg {

/// |exact - est| / exact, or nullopt when exact is zero (the error is
/// undefined and such queries are left out of aggregates).
std::optional<double> relative_error(double exact, double est);

struct RangeErrors {
    double error = 0.0;   ///< share of the exact set missed by the estimate
    double excess = 0.0;  ///< share of the estimate not backed by the exact set
};

/// Coverage errors of an estimated interval set against the exact one. A
/// ratio with an empty denominator is 0 (its numerator is then 0 as well).
RangeErrors range_errors(const IntervalSet& exact, const IntervalSet& est);

struct Summary {
    std::size_t count = 0;
    double median = 0.0;
    double mean = 0.0;
    double max = 0.0;
};

/// Median, mean and maximum of `values` (all zero when empty).
Summary summarize(std::vector<double> values);

}  // namespace hexagg
