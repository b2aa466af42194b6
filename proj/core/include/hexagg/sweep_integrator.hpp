/**
 * @file sweep_integrator.hpp
 * @brief Closed-form integration of bucket densities over the moving query
 *        band, the time partition of a query, and interval extremization.
 *
 * In one view the points of a bucket that lie above the lower query corner at
 * time t are the duals above the line x2 = q.p - t (x1 - q.v). Which rectangle
 * edges that line crosses (the "case") fixes the shape of the region, and for
 * a fixed case the integral of f_v(x1) f_p(x2) over the region is a Laurent
 * polynomial a t^2 + b t + c + d/t + e/t^2. Multiplying the three view bands
 * gives a 13-term polynomial in t that is exact until some bucket vertex
 * crosses a corner line; those crossing times partition the query interval.
 */
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hexagg/bucket_index.hpp"
#include "hexagg/core_model.hpp"
#include "hexagg/polynomial.hpp"

namespace hexagg {

/// Numerical knobs of the estimated operators.
struct SweepOptions {
    double eps_time = kEpsTime;
    int scan_intervals = 32;  ///< derivative sign-scan subintervals per interval
    int bisect_max = 10;      ///< bisection iterations per bracketed root
    bool prune_disjoint = true;  ///< skip buckets that never meet the box
};

/// Which rectangle edges the slope -t line crosses.
///
/// Decreasing lines (t > 0): B top+right, C left+bottom, F top+bottom.
/// Increasing lines (t < 0): A left+top, D bottom+right, E top+bottom.
/// Either: G both sides, H entirely below, Empty entirely above.
enum class CaseTag : std::uint8_t { A, B, C, D, E, F, G, H, Empty };

char case_letter(CaseTag tag);

/// Classify the line through q with slope -t against `rect`. A line through a
/// corner is assigned to the case on the side that keeps the integral
/// continuous, so either neighbour gives the same value there.
CaseTag classify_case(ViewPoint q, const Rect2& rect, double t);

/// Integral of fv(x1) * fp(x2) over the part of `rect` above the slope -t
/// line through q, as a function of t valid while `tag` holds.
ViewPoly view_above_poly(const Rect2& rect, const TrendLine& fv, const TrendLine& fp, ViewPoint q,
                         CaseTag tag);

/// view_above_poly evaluated at a single time, classifying at that time.
double view_above_value(const Rect2& rect, const TrendLine& fv, const TrendLine& fp, ViewPoint q,
                        double t);

/// Expected fraction (of n) of the bucket's points inside the box, valid on
/// `interval` (classification at its midpoint). Scaled by c_norm(n).
GeneralFormPoly delta_p_poly(const SkewAwareBucket& bkt, const QueryBox& box,
                             TimeInterval interval, std::int64_t n);

/// delta_p_poly's value at a single time, classifying at that time.
double delta_p_value(const SkewAwareBucket& bkt, const QueryBox& box, double t, std::int64_t n);

/// True if some point of the bucket's cell lies inside the box at some
/// instant of box.t. Buckets failing this contribute zero throughout.
bool bucket_meets_box(const SkewAwareBucket& bkt, const QueryBox& box);

/// A bucket time-interval: bucket `bucket` keeps one case assignment on [l, u).
struct BucketInterval {
    double l = 0.0;
    double u = 0.0;
    std::uint32_t bucket = 0;
};

/// Lexicographic (l, u, bucket) order.
inline bool interval_before(const BucketInterval& a, const BucketInterval& b) {
    if (a.l != b.l) return a.l < b.l;
    if (a.u != b.u) return a.u < b.u;
    return a.bucket < b.bucket;
}

struct SortStats {
    std::size_t sorting_buckets = 0;
    std::size_t nonempty_buckets = 0;
    std::size_t max_occupancy = 0;
    double mean_occupancy = 0.0;  ///< over nonempty sorting buckets
};

/// Distribution-aware bucket sort of interval events by (l, u, bucket).
///
/// Sorting-bucket widths follow the area swept by the line through the query
/// midpoint across the whole index space (unit density), so that crossing
/// times, which crowd toward small t, spread evenly over sorting buckets.
void sort_interval_events(std::vector<BucketInterval>& events, TimeInterval t,
                          const Hex6& query_mid, const GridConfig& space,
                          SortStats* stats = nullptr);

/// Ordered boundary times of the index time-intervals of a query.
struct TimePartition {
    std::vector<double> times;  ///< times.front() = t.l, times.back() = t.u
    /// Per-bucket time-intervals in sorted order.
    std::vector<BucketInterval> intervals;
    /// intervals[group_offsets[i] .. group_offsets[i+1]) open at times[i];
    /// the last entry equals intervals.size().
    std::vector<std::size_t> group_offsets;
    /// Buckets that take part in the query (those that meet the box).
    std::vector<const SkewAwareBucket*> buckets;
    SortStats sort_stats;

    /// Number of index time-intervals.
    std::size_t interval_count() const { return times.empty() ? 0 : times.size() - 1; }
    /// Buckets (indices into `buckets`) whose case changes at interior boundary times[i].
    std::vector<std::uint32_t> changed_at(std::size_t boundary) const;
};

TimePartition build_time_partition(const MovingIndex& idx, const QueryBox& box,
                                   const SweepOptions& opts = {});

enum class Extremum : std::uint8_t { Max, Min };

struct IntervalOptimum {
    double t = 0.0;
    double value = 0.0;
};

struct ExtremaOnInterval {
    IntervalOptimum max;
    IntervalOptimum min;
    int sign_changes = 0;  ///< bracketed derivative roots found by the scan
};

/// Maximum and minimum of `poly` on [iv.l, iv.u] over the endpoints and the
/// derivative roots located by sign scan plus capped bisection. Ties go to
/// the earliest time.
ExtremaOnInterval extrema_on_interval(const GeneralFormPoly& poly, TimeInterval iv,
                                      const SweepOptions& opts = {});

/// (t*, v*) maximizing `poly` on iv (or minimizing, for Extremum::Min).
IntervalOptimum maximize_on_interval(const GeneralFormPoly& poly, TimeInterval iv,
                                     const SweepOptions& opts = {},
                                     Extremum mode = Extremum::Max);

}  // namespace hexagg
