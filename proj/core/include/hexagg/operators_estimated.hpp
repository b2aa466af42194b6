/**
 * @file operators_estimated.hpp
 * @brief Estimated aggregation operators over a MovingIndex.
 *
 * All time-extremal operators share one sweep: the partition of the query
 * interval into index time-intervals, with the estimated count polynomial
 * maximized and minimized on each. MaxCount, MinCount and ThresholdRange are
 * then read off that profile.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hexagg/bucket_index.hpp"
#include "hexagg/core_model.hpp"
#include "hexagg/interval_set.hpp"
#include "hexagg/polynomial.hpp"
#include "hexagg/sweep_integrator.hpp"

namespace hexagg {

struct MaxCountResult {
    double t_max = 0.0;
    double count = 0.0;            ///< raw expected (or exact) count
    std::int64_t count_rounded = 0;

    bool operator==(const MaxCountResult&) const = default;
};

/// Extrema of the estimated count n*C(t) on one index time-interval.
/// Values are clamped to [0, n].
struct IntervalExtrema {
    TimeInterval iv;
    IntervalOptimum max;
    IntervalOptimum min;
    int sign_changes = 0;
};

/// Result of one estimated sweep over a query.
struct CountProfile {
    TimeInterval t;
    std::int64_t n = 0;
    std::vector<IntervalExtrema> intervals;
    /// Count polynomial n*C(t) per interval, kept only on request.
    std::vector<GeneralFormPoly> polys;
    std::size_t buckets_used = 0;     ///< buckets that meet the box
    std::size_t multi_root_intervals = 0;  ///< intervals with > 1 derivative sign change
    SortStats sort_stats;

    /// n*C(s) from the kept polynomials (requires keep_polys).
    double count_at(double s) const;
};

CountProfile estimated_count_profile(const MovingIndex& idx, const QueryBox& box,
                                     const SweepOptions& opts = {}, bool keep_polys = false);

MaxCountResult max_count(const CountProfile& profile, Extremum mode = Extremum::Max);
MaxCountResult max_count(const MovingIndex& idx, const QueryBox& box,
                         Extremum mode = Extremum::Max, const SweepOptions& opts = {});

/// Union of the index time-intervals whose maximum estimated count exceeds m.
IntervalSet threshold_range(const CountProfile& profile, double m);
IntervalSet threshold_range(const MovingIndex& idx, const QueryBox& box, double m,
                            const SweepOptions& opts = {});

/// Estimated number of distinct points that are inside the box at some
/// instant of box.t.
double count_range(const MovingIndex& idx, const QueryBox& box, const SweepOptions& opts = {});

/// n*C(s) evaluated directly from every bucket, classifying at s.
double estimated_count_at(const MovingIndex& idx, const QueryBox& box, double s);

}  // namespace hexagg
