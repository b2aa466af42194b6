/**
 * @file bucket_index.hpp
 * @brief Skew-aware 6-D grid index over hex points.
 *
 * The hex space is cut into a uniform grid; each occupied cell is a bucket
 * that keeps one histogram per axis and a least-squares line fitted to every
 * histogram. The product of the six lines is the bucket's (unnormalized)
 * density; scaling it so that its integral over the cell is b/n gives the
 * normalized trend function used by the estimated operators.
 *
 * Buckets are sufficient statistics: the index never stores the points.
 */
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "hexagg/core_model.hpp"

namespace hexagg {

/// Grid geometry: per-axis bounds and cell counts, plus the number of
/// histogram subdivisions per bucket axis.
struct GridConfig {
    std::array<double, kDims> lower{};
    std::array<double, kDims> upper{};
    std::array<int, kDims> divisions{};
    int subdivisions = 5;

    /// Same bounds and division count on every axis.
    static GridConfig uniform(double lower, double upper, int divisions, int subdivisions = 5);

    double cell_width(std::size_t axis) const {
        return (upper[axis] - lower[axis]) / divisions[axis];
    }

    /// Throws InvalidArgument unless the invariants hold.
    void validate() const;

    bool operator==(const GridConfig&) const = default;
};

using CellId = std::array<std::int32_t, kDims>;

struct CellIdHash {
    std::size_t operator()(const CellId& id) const noexcept;
};

/// Zero-based grid cell of p. A coordinate equal to the upper bound is
/// clamped into the last cell. Throws OutOfSpace outside the bounds.
CellId cell_id(const Hex6& p, const GridConfig& cfg);

/// Histogram of one bucket axis. x-coordinates of the least-squares fit are
/// the subdivision left edges in absolute axis coordinates.
struct AxisHistogram {
    std::vector<std::uint32_t> counts;
    double sum_y = 0.0;   ///< sum of counts
    double sum_xy = 0.0;  ///< sum of left-edge * count
};

/// f(x) = slope*x + intercept + shift, nonnegative over its bucket extent.
struct TrendLine {
    double slope = 0.0;
    double intercept = 0.0;
    double shift = 0.0;

    double operator()(double x) const { return slope * x + intercept + shift; }
    /// intercept + shift, i.e. the value at x = 0.
    double offset() const { return intercept + shift; }
    /// Integral over [lo, hi].
    double integral(double lo, double hi) const {
        return 0.5 * ((*this)(lo) + (*this)(hi)) * (hi - lo);
    }

    bool operator==(const TrendLine&) const = default;
};

/// Least-squares line through (lo + k*hw, counts[k]), hw = (hi-lo)/s, shifted
/// up just enough to be nonnegative at both ends of [lo, hi].
TrendLine fit_axis_trend(const AxisHistogram& h, double lo, double hi, int s);

class MovingIndex;

/// One occupied grid cell.
class SkewAwareBucket {
  public:
    SkewAwareBucket(const CellId& id, const GridConfig& cfg);

    const CellId& id() const { return id_; }
    std::int64_t count() const { return count_; }
    int subdivisions() const { return subdivisions_; }

    double low(std::size_t axis) const { return low_[axis]; }
    double high(std::size_t axis) const { return high_[axis]; }
    double histogram_width(std::size_t axis) const {
        return (high_[axis] - low_[axis]) / subdivisions_;
    }

    /// Bucket extent in view k (velocity axis 2k, position axis 2k+1).
    Rect2 view_rect(std::size_t k) const {
        return {low_[2 * k], high_[2 * k], low_[2 * k + 1], high_[2 * k + 1]};
    }

    std::span<const std::uint32_t> counts(std::size_t axis) const {
        return {counts_.data() + axis * subdivisions_, static_cast<std::size_t>(subdivisions_)};
    }
    AxisHistogram histogram(std::size_t axis) const;

    const TrendLine& trend(std::size_t axis) const { return trend_[axis]; }

    /// Integral of the product of the six trend lines over the bucket.
    double trend_integral() const { return trend_integral_; }

    /// b / trend_integral(): the normalization with n factored out.
    double mass_scale() const { return mass_scale_; }

    /// Normalization constant of F_i = c_norm * prod_j f_j for an index of n points.
    double c_norm(std::int64_t n) const { return n > 0 ? mass_scale_ / static_cast<double>(n) : 0.0; }

    /// True if the fitted density had zero mass and a flat density was used.
    bool uniform_fallback() const { return uniform_fallback_; }

    /// Histogram subdivision of coordinate x on `axis` (clamped to [0, s-1]).
    int subdivision_of(std::size_t axis, double x) const;

    /// Add (delta = +1) or remove (delta = -1) one point. Does not refit.
    /// Removal throws NotFound if any touched subdivision is already empty.
    void apply(const Hex6& p, int delta);

    /// Restore raw histogram state (snapshot loading). Does not refit.
    void set_counts(std::size_t axis, std::span<const std::uint32_t> counts);

  private:
    friend void refit_bucket(SkewAwareBucket& bkt);

    CellId id_{};
    int subdivisions_ = 5;
    std::int64_t count_ = 0;
    std::array<double, kDims> low_{};
    std::array<double, kDims> high_{};
    std::vector<std::uint32_t> counts_;          // kDims * subdivisions_
    std::array<std::int64_t, kDims> sum_ky_{};   // sum over k of k * counts[k]
    std::array<TrendLine, kDims> trend_{};
    double trend_integral_ = 0.0;
    double mass_scale_ = 0.0;
    bool uniform_fallback_ = false;
};

/// Refit the six trend lines and the normalization from the histograms.
/// Falls back to a flat density (with a warning on std::clog) when the
/// fitted product integrates to zero.
void refit_bucket(SkewAwareBucket& bkt);

/// Fraction of all n points that the bucket's normalized density assigns to
/// the whole bucket; equals b/n.
double bucket_point_fraction(const SkewAwareBucket& bkt, std::int64_t n);

/// Hash-table index of skew-aware buckets with O(1) insert and remove.
///
/// Single writer: insert/remove need exclusive access; const members may be
/// used concurrently between writes.
class MovingIndex {
  public:
    explicit MovingIndex(GridConfig cfg);

    const GridConfig& config() const { return cfg_; }
    std::int64_t size() const { return n_; }
    bool empty() const { return n_ == 0; }
    std::size_t bucket_count() const { return buckets_.size(); }

    void insert(const Hex6& p);
    /// Throws NotFound if p's bucket is absent or cannot hold p.
    void remove(const Hex6& p);

    const SkewAwareBucket* find(const CellId& id) const;

    /// Buckets in ascending CellId order; queries iterate this so that
    /// results do not depend on hash-table layout.
    std::vector<const SkewAwareBucket*> sorted_buckets() const;

    template <typename Fn>
    void for_each_bucket(Fn&& fn) const {
        for (const auto& [id, b] : buckets_) fn(b);
    }

    /// Insert a fully populated bucket (snapshot loading). The bucket is refit.
    void restore_bucket(SkewAwareBucket bucket);

  private:
    GridConfig cfg_;
    std::unordered_map<CellId, SkewAwareBucket, CellIdHash> buckets_;
    std::int64_t n_ = 0;
};

/// Build an index from a point set.
MovingIndex build_index(const GridConfig& cfg, std::span<const Hex6> points);

}  // namespace hexagg
