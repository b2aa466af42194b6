/**
 * @file core_model.hpp
 * @brief Hex representation of linearly moving 3-D points and the moving
 *        query box.
 *
 * A point moving as x(t) = vx*t + x0 (and likewise for y, z) is stored as the
 * static 6-tuple (vx, x0, vy, y0, vz, z0). Each (velocity, position) pair is a
 * "view": at time t the set of points with x(t) < q_x(t) is exactly the set of
 * duals lying below the line of slope -t through the dual of q in that view.
 */
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace hexagg {

/// Smallest admissible query start time. The general-form count polynomial
/// carries 1/t^6 terms, so t must stay away from zero.
inline constexpr double kEpsTime = 1e-6;

inline constexpr std::size_t kDims = 6;
inline constexpr std::size_t kViews = 3;

/// One query corner (or point) projected into a single view.
struct ViewPoint {
    double v = 0.0;  ///< velocity coordinate
    double p = 0.0;  ///< position coordinate
};

/// Axis-aligned rectangle in one view: [vl, vu] x [pl, pu].
struct Rect2 {
    double vl = 0.0;
    double vu = 0.0;
    double pl = 0.0;
    double pu = 0.0;
};

/// Linearly moving 3-D point in hex form (vx, x0, vy, y0, vz, z0).
struct Hex6 {
    std::array<double, kDims> c{};

    static constexpr Hex6 of(double vx, double x0, double vy, double y0, double vz, double z0) {
        return Hex6{{vx, x0, vy, y0, vz, z0}};
    }

    constexpr double& operator[](std::size_t i) { return c[i]; }
    constexpr double operator[](std::size_t i) const { return c[i]; }

    constexpr double vx() const { return c[0]; }
    constexpr double x0() const { return c[1]; }
    constexpr double vy() const { return c[2]; }
    constexpr double y0() const { return c[3]; }
    constexpr double vz() const { return c[4]; }
    constexpr double z0() const { return c[5]; }

    /// Projection onto view k (0 = x, 1 = y, 2 = z).
    constexpr ViewPoint view(std::size_t k) const { return {c[2 * k], c[2 * k + 1]}; }

    bool operator==(const Hex6&) const = default;
};

/// Half-open time interval [l, u).
struct TimeInterval {
    double l = 0.0;
    double u = 0.0;

    constexpr double length() const { return u - l; }
    constexpr double mid() const { return 0.5 * (l + u); }
    constexpr bool contains(double s) const { return l <= s && s < u; }

    bool operator==(const TimeInterval&) const = default;
};

/// Moving axis-aligned box with per-axis lower/upper corners and a query
/// interval. Built through normalize_query(), which guarantees
/// lo_a(s) < hi_a(s) for every axis a and every s in [t.l, t.u].
struct QueryBox {
    Hex6 lo;
    Hex6 hi;
    TimeInterval t;
};

/// Positions (x, y, z) of p at time s.
std::array<double, 3> position_at(const Hex6& p, double s);

/// True iff q strictly dominates p at time s on all three axes.
bool dominates(const Hex6& q, const Hex6& p, double s);

/// Build a QueryBox from two corners given in any order.
///
/// Per axis the corner whose position line stays below the other throughout
/// `t` becomes the lower corner. Throws InvalidArgument if t.l < eps_time or
/// t.l >= t.u, and DegenerateBox if the two corner lines meet on some axis
/// inside [t.l, t.u].
QueryBox normalize_query(const Hex6& a, const Hex6& b, TimeInterval t, double eps_time = kEpsTime);

/// Maximal sub-interval of box.t during which p lies strictly inside the box,
/// or nullopt if p is never inside. The result is reported half-open.
std::optional<TimeInterval> containment_interval(const Hex6& p, const QueryBox& box);

/// Times strictly inside (t.l, t.u) at which the slope -s line through q
/// passes a corner of `rect`, sorted and deduplicated within eps_time.
std::vector<double> vertex_cross_times(ViewPoint q, const Rect2& rect, TimeInterval t,
                                       double eps_time = kEpsTime);

}  // namespace hexagg
