#include "hexagg/operators_estimated.hpp"

#include <algorithm>
#include <cmath>

namespace hexagg {

namespace {

// Neumaier-compensated running sum of polynomial coefficients. The sweep
// adds and subtracts many bucket polynomials whose coefficients dwarf the
// result, so plain summation would drift along the partition.
struct CompensatedPoly {
    GeneralFormPoly sum;
    GeneralFormPoly carry;

    void add(const GeneralFormPoly& p, double sign) {
        for (std::size_t i = 0; i < GeneralFormPoly::kSize; ++i) {
            const double x = sign * p.c[i];
            const double s = sum.c[i] + x;
            if (std::abs(sum.c[i]) >= std::abs(x)) {
                carry.c[i] += (sum.c[i] - s) + x;
            } else {
                carry.c[i] += (x - s) + sum.c[i];
            }
            sum.c[i] = s;
        }
    }

    GeneralFormPoly value() const { return sum + carry; }
};

double clamp_count(double v, std::int64_t n) {
    return std::clamp(v, 0.0, static_cast<double>(n));
}

}  // namespace

double CountProfile::count_at(double s) const {
    if (polys.empty()) return 0.0;
    auto it = std::upper_bound(intervals.begin(), intervals.end(), s,
                               [](double x, const IntervalExtrema& e) { return x < e.iv.l; });
    const std::size_t i = it == intervals.begin() ? 0 : static_cast<std::size_t>(it - intervals.begin()) - 1;
    return polys[i](s);
}

CountProfile estimated_count_profile(const MovingIndex& idx, const QueryBox& box,
                                     const SweepOptions& opts, bool keep_polys) {
    CountProfile prof;
    prof.t = box.t;
    prof.n = idx.size();
    if (idx.empty()) {
        prof.intervals.push_back({box.t, {box.t.l, 0.0}, {box.t.l, 0.0}, 0});
        if (keep_polys) prof.polys.emplace_back();
        return prof;
    }

    const TimePartition part = build_time_partition(idx, box, opts);
    prof.buckets_used = part.buckets.size();
    prof.sort_stats = part.sort_stats;

    const std::int64_t n = prof.n;
    const double scale = static_cast<double>(n);
    std::vector<GeneralFormPoly> current(part.buckets.size());
    CompensatedPoly acc;

    const std::size_t groups = part.interval_count();
    prof.intervals.reserve(groups);
    for (std::size_t g = 0; g < groups; ++g) {
        for (std::size_t e = part.group_offsets[g]; e < part.group_offsets[g + 1]; ++e) {
            const BucketInterval& bi = part.intervals[e];
            const GeneralFormPoly next =
                delta_p_poly(*part.buckets[bi.bucket], box, {bi.l, bi.u}, n);
            acc.add(current[bi.bucket], -1.0);
            acc.add(next, +1.0);
            current[bi.bucket] = next;
        }
        const TimeInterval iv{part.times[g], part.times[g + 1]};
        const GeneralFormPoly count = acc.value() * scale;
        const ExtremaOnInterval ex = extrema_on_interval(count, iv, opts);
        IntervalExtrema row{iv, ex.max, ex.min, ex.sign_changes};
        row.max.value = clamp_count(row.max.value, n);
        row.min.value = clamp_count(row.min.value, n);
        if (ex.sign_changes > 1) ++prof.multi_root_intervals;
        prof.intervals.push_back(row);
        if (keep_polys) prof.polys.push_back(count);
    }
    return prof;
}

MaxCountResult max_count(const CountProfile& profile, Extremum mode) {
    MaxCountResult res{profile.t.l, 0.0, 0};
    bool first = true;
    for (const IntervalExtrema& row : profile.intervals) {
        const IntervalOptimum& cand = mode == Extremum::Max ? row.max : row.min;
        const bool better = mode == Extremum::Max ? cand.value > res.count : cand.value < res.count;
        if (first || better) {
            res.t_max = cand.t;
            res.count = cand.value;
            first = false;
        }
    }
    res.count_rounded = std::llround(res.count);
    return res;
}

MaxCountResult max_count(const MovingIndex& idx, const QueryBox& box, Extremum mode,
                         const SweepOptions& opts) {
    return max_count(estimated_count_profile(idx, box, opts), mode);
}

IntervalSet threshold_range(const CountProfile& profile, double m) {
    IntervalSet out;
    for (const IntervalExtrema& row : profile.intervals) {
        if (row.max.value > m) out.add(row.iv);
    }
    return out;
}

IntervalSet threshold_range(const MovingIndex& idx, const QueryBox& box, double m,
                            const SweepOptions& opts) {
    return threshold_range(estimated_count_profile(idx, box, opts), m);
}

double count_range(const MovingIndex& idx, const QueryBox& box, const SweepOptions& opts) {
    const std::int64_t n = idx.size();
    if (n == 0) return 0.0;
    double total = 0.0;
    for (const SkewAwareBucket* b : idx.sorted_buckets()) {
        if (opts.prune_disjoint && !bucket_meets_box(*b, box)) continue;
        // Per view: mass above the lower corner at one end of T minus mass
        // above the upper corner at the other end, for both pairings.
        const double cn = b->c_norm(n);
        double left = cn;
        double right = cn;
        double either = cn;
        for (std::size_t k = 0; k < kViews; ++k) {
            const Rect2 rect = b->view_rect(k);
            const TrendLine& fv = b->trend(2 * k);
            const TrendLine& fp = b->trend(2 * k + 1);
            const ViewPoint lo = box.lo.view(k);
            const ViewPoint hi = box.hi.view(k);
            const double lo_start = view_above_value(rect, fv, fp, lo, box.t.l);
            const double lo_end = view_above_value(rect, fv, fp, lo, box.t.u);
            const double hi_start = view_above_value(rect, fv, fp, hi, box.t.l);
            const double hi_end = view_above_value(rect, fv, fp, hi, box.t.u);
            const double dl = std::max(0.0, lo_start - hi_end);
            const double dr = std::max(0.0, lo_end - hi_start);
            left *= dl;
            right *= dr;
            either *= std::max(dl, dr);
        }
        const double full = static_cast<double>(b->count()) / static_cast<double>(n);
        const double tol = 1e-9 * full;
        if (std::abs(left - full) <= tol || std::abs(right - full) <= tol) {
            total += static_cast<double>(b->count());
        } else if (left <= tol && right <= tol && either <= tol) {
            continue;
        } else {
            // Partial overlap. Each view may be swept in its own direction, so
            // take the larger area per view rather than one direction for all.
            total += std::min(static_cast<double>(b->count()), static_cast<double>(n) * either);
        }
    }
    return std::clamp(total, 0.0, static_cast<double>(n));
}

double estimated_count_at(const MovingIndex& idx, const QueryBox& box, double s) {
    const std::int64_t n = idx.size();
    double total = 0.0;
    for (const SkewAwareBucket* b : idx.sorted_buckets()) total += delta_p_value(*b, box, s, n);
    return total * static_cast<double>(n);
}

}  // namespace hexagg
