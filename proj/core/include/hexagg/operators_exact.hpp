/**
 * @file operators_exact.hpp
 * @brief Exact aggregation operators over a raw point set.
 *
 * Each point is inside the moving box during at most one time interval, so
 * the in-box count over time is a step function assembled from sorted entry
 * and exit events.
 */
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hexagg/core_model.hpp"
#include "hexagg/interval_set.hpp"
#include "hexagg/operators_estimated.hpp"

namespace hexagg {

/// Events closer than this are treated as simultaneous.
inline constexpr double kEventCoalesce = 1e-12;

/// Right-continuous in-box count over box.t.
struct CountStepFunction {
    struct Step {
        double t = 0.0;
        std::int64_t delta = 0;  ///< net change at t, never zero
    };

    TimeInterval t;
    std::int64_t initial = 0;  ///< count at t.l
    std::vector<Step> steps;   ///< strictly increasing times inside (t.l, t.u)

    /// Count on [s, next step), for s in [t.l, t.u].
    std::int64_t value_at(double s) const;
    std::int64_t final_count() const;
};

CountStepFunction exact_count_function(std::span<const Hex6> points, const QueryBox& box);

/// Extremal count and the first time it is attained.
MaxCountResult exact_max_count(const CountStepFunction& f, Extremum mode = Extremum::Max);
MaxCountResult exact_max_count(std::span<const Hex6> points, const QueryBox& box,
                               Extremum mode = Extremum::Max);

struct ThresholdResult {
    IntervalSet intervals;
    ThresholdStats stats;
};

/// Maximal spans of box.t during which more than m points are inside.
ThresholdResult exact_threshold_ops(const CountStepFunction& f, double m);
ThresholdResult exact_threshold_ops(std::span<const Hex6> points, const QueryBox& box, double m);

/// Number of points inside the box at some instant of box.t.
std::int64_t exact_count_range(std::span<const Hex6> points, const QueryBox& box);

}  // namespace hexagg
