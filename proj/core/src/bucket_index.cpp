#include "hexagg/bucket_index.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "hexagg/errors.hpp"

namespace hexagg {

GridConfig GridConfig::uniform(double lower, double upper, int divisions, int subdivisions) {
    GridConfig cfg;
    cfg.lower.fill(lower);
    cfg.upper.fill(upper);
    cfg.divisions.fill(divisions);
    cfg.subdivisions = subdivisions;
    return cfg;
}

void GridConfig::validate() const {
    for (std::size_t a = 0; a < kDims; ++a) {
        if (!std::isfinite(lower[a]) || !std::isfinite(upper[a]) || !(lower[a] < upper[a])) {
            throw InvalidArgument("grid bounds must be finite with lower < upper on every axis");
        }
        if (divisions[a] < 1) {
            throw InvalidArgument("grid divisions must be >= 1 on every axis");
        }
        if (!(cell_width(a) > 0.0)) {
            throw InvalidArgument("grid cell width underflows");
        }
    }
    if (subdivisions < 2) {
        throw InvalidArgument("histogram subdivisions must be >= 2");
    }
}

std::size_t CellIdHash::operator()(const CellId& id) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::int32_t v : id) {
        h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)) + 0x9e3779b97f4a7c15ULL +
             (h << 6) + (h >> 2);
    }
    // splitmix64 finalizer
    h ^= h >> 30;
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 27;
    h *= 0x94d049bb133111ebULL;
    h ^= h >> 31;
    return static_cast<std::size_t>(h);
}

CellId cell_id(const Hex6& p, const GridConfig& cfg) {
    CellId id{};
    for (std::size_t a = 0; a < kDims; ++a) {
        const double x = p[a];
        if (!(x >= cfg.lower[a] && x <= cfg.upper[a])) {
            std::ostringstream os;
            os << "coordinate " << a << " = " << x << " outside [" << cfg.lower[a] << ", "
               << cfg.upper[a] << "]";
            throw OutOfSpace(os.str());
        }
        const auto raw = static_cast<std::int64_t>(std::floor((x - cfg.lower[a]) / cfg.cell_width(a)));
        id[a] = static_cast<std::int32_t>(std::clamp<std::int64_t>(raw, 0, cfg.divisions[a] - 1));
    }
    return id;
}

TrendLine fit_axis_trend(const AxisHistogram& h, double lo, double hi, int s) {
    const double hw = (hi - lo) / s;
    const double k_mean = 0.5 * (s - 1);
    const double x_mean = lo + hw * k_mean;
    const double y_mean = h.sum_y / s;
    // Centered normal equations; sum of (k - k_mean)^2 for k = 0..s-1.
    const double sxx = hw * hw * (static_cast<double>(s) * (static_cast<double>(s) * s - 1.0) / 12.0);
    const double sxy = h.sum_xy - x_mean * h.sum_y;

    TrendLine line;
    line.slope = sxy / sxx;
    line.intercept = y_mean - line.slope * x_mean;
    const double lowest = std::min(line(lo), line(hi));
    line.shift = lowest < 0.0 ? -lowest : 0.0;
    return line;
}

SkewAwareBucket::SkewAwareBucket(const CellId& id, const GridConfig& cfg)
    : id_(id),
      subdivisions_(cfg.subdivisions),
      counts_(kDims * static_cast<std::size_t>(cfg.subdivisions), 0U) {
    for (std::size_t a = 0; a < kDims; ++a) {
        const double w = cfg.cell_width(a);
        low_[a] = cfg.lower[a] + id[a] * w;
        high_[a] = cfg.lower[a] + (id[a] + 1) * w;
    }
}

AxisHistogram SkewAwareBucket::histogram(std::size_t axis) const {
    AxisHistogram h;
    const auto c = counts(axis);
    h.counts.assign(c.begin(), c.end());
    h.sum_y = static_cast<double>(count_);
    h.sum_xy = low_[axis] * static_cast<double>(count_) +
               histogram_width(axis) * static_cast<double>(sum_ky_[axis]);
    return h;
}

int SkewAwareBucket::subdivision_of(std::size_t axis, double x) const {
    const double k = std::floor((x - low_[axis]) / histogram_width(axis));
    if (!(k > 0.0)) return 0;
    if (k >= subdivisions_ - 1) return subdivisions_ - 1;
    return static_cast<int>(k);
}

void SkewAwareBucket::apply(const Hex6& p, int delta) {
    std::array<int, kDims> k{};
    for (std::size_t a = 0; a < kDims; ++a) {
        k[a] = subdivision_of(a, p[a]);
    }
    if (delta < 0) {
        for (std::size_t a = 0; a < kDims; ++a) {
            if (counts_[a * subdivisions_ + k[a]] == 0) {
                throw NotFound("point is not held by its bucket");
            }
        }
    }
    for (std::size_t a = 0; a < kDims; ++a) {
        auto& c = counts_[a * subdivisions_ + k[a]];
        c = static_cast<std::uint32_t>(static_cast<std::int64_t>(c) + delta);
        sum_ky_[a] += static_cast<std::int64_t>(delta) * k[a];
    }
    count_ += delta;
}

void SkewAwareBucket::set_counts(std::size_t axis, std::span<const std::uint32_t> counts) {
    if (counts.size() != static_cast<std::size_t>(subdivisions_)) {
        throw InvalidArgument("histogram length does not match subdivisions");
    }
    std::int64_t total = 0;
    std::int64_t ky = 0;
    for (int k = 0; k < subdivisions_; ++k) {
        counts_[axis * subdivisions_ + k] = counts[k];
        total += counts[k];
        ky += static_cast<std::int64_t>(k) * counts[k];
    }
    sum_ky_[axis] = ky;
    if (axis == 0) {
        count_ = total;
    } else if (total != count_) {
        throw InvalidArgument("histograms disagree on the bucket count");
    }
}

void refit_bucket(SkewAwareBucket& bkt) {
    double integral = 1.0;
    for (std::size_t a = 0; a < kDims; ++a) {
        bkt.trend_[a] = fit_axis_trend(bkt.histogram(a), bkt.low_[a], bkt.high_[a], bkt.subdivisions_);
        integral *= bkt.trend_[a].integral(bkt.low_[a], bkt.high_[a]);
    }
    bkt.uniform_fallback_ = false;
    if (!(integral > 0.0) || !std::isfinite(integral)) {
        std::clog << "hexagg: warning: bucket density has zero mass, using a flat density\n";
        integral = 1.0;
        for (std::size_t a = 0; a < kDims; ++a) {
            bkt.trend_[a] = TrendLine{0.0, 1.0, 0.0};
            integral *= bkt.high_[a] - bkt.low_[a];
        }
        bkt.uniform_fallback_ = true;
    }
    bkt.trend_integral_ = integral;
    bkt.mass_scale_ = static_cast<double>(bkt.count_) / integral;
}

double bucket_point_fraction(const SkewAwareBucket& bkt, std::int64_t n) {
    return bkt.c_norm(n) * bkt.trend_integral();
}

MovingIndex::MovingIndex(GridConfig cfg) : cfg_(cfg) { cfg_.validate(); }

void MovingIndex::insert(const Hex6& p) {
    const CellId id = cell_id(p, cfg_);
    auto [it, created] = buckets_.try_emplace(id, id, cfg_);
    it->second.apply(p, +1);
    refit_bucket(it->second);
    ++n_;
}

void MovingIndex::remove(const Hex6& p) {
    CellId id;
    try {
        id = cell_id(p, cfg_);
    } catch (const OutOfSpace&) {
        throw NotFound("point lies outside the index space");
    }
    auto it = buckets_.find(id);
    if (it == buckets_.end()) {
        throw NotFound("no bucket holds the point");
    }
    it->second.apply(p, -1);
    if (it->second.count() == 0) {
        buckets_.erase(it);
    } else {
        refit_bucket(it->second);
    }
    --n_;
}

const SkewAwareBucket* MovingIndex::find(const CellId& id) const {
    auto it = buckets_.find(id);
    return it == buckets_.end() ? nullptr : &it->second;
}

std::vector<const SkewAwareBucket*> MovingIndex::sorted_buckets() const {
    // Sort on row-major cell numbers, which order like the ids themselves;
    // this avoids chasing bucket pointers inside the comparator.
    std::vector<std::pair<std::uint64_t, const SkewAwareBucket*>> keyed;
    keyed.reserve(buckets_.size());
    double cells = 1.0;
    for (int d : cfg_.divisions) cells *= d;
    const bool packable = cells < 1.8e19;
    for (const auto& [id, b] : buckets_) {
        std::uint64_t key = 0;
        if (packable) {
            for (std::size_t a = 0; a < kDims; ++a) {
                key = key * static_cast<std::uint64_t>(cfg_.divisions[a]) + static_cast<std::uint64_t>(id[a]);
            }
        }
        keyed.emplace_back(key, &b);
    }
    if (packable) {
        std::sort(keyed.begin(), keyed.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
    } else {
        std::sort(keyed.begin(), keyed.end(),
                  [](const auto& x, const auto& y) { return x.second->id() < y.second->id(); });
    }
    std::vector<const SkewAwareBucket*> out;
    out.reserve(keyed.size());
    for (const auto& kv : keyed) out.push_back(kv.second);
    return out;
}

void MovingIndex::restore_bucket(SkewAwareBucket bucket) {
    if (bucket.count() <= 0) {
        throw InvalidArgument("restored bucket must hold at least one point");
    }
    refit_bucket(bucket);
    const CellId id = bucket.id();
    const std::int64_t b = bucket.count();
    auto [it, inserted] = buckets_.emplace(id, std::move(bucket));
    if (!inserted) {
        throw InvalidArgument("duplicate bucket id");
    }
    n_ += b;
}

MovingIndex build_index(const GridConfig& cfg, std::span<const Hex6> points) {
    MovingIndex idx(cfg);
    for (const Hex6& p : points) {
        idx.insert(p);
    }
    return idx;
}

}  // namespace hexagg
