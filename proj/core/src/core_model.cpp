#include "hexagg/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hexagg/errors.hpp"

namespace hexagg {

std::array<double, 3> position_at(const Hex6& p, double s) {
    return {p.vx() * s + p.x0(), p.vy() * s + p.y0(), p.vz() * s + p.z0()};
}

bool dominates(const Hex6& q, const Hex6& p, double s) {
    const auto qs = position_at(q, s);
    const auto ps = position_at(p, s);
    return ps[0] < qs[0] && ps[1] < qs[1] && ps[2] < qs[2];
}

QueryBox normalize_query(const Hex6& a, const Hex6& b, TimeInterval t, double eps_time) {
    if (!std::isfinite(t.l) || !std::isfinite(t.u)) {
        throw InvalidArgument("query interval must be finite");
    }
    if (t.l < eps_time) {
        std::ostringstream os;
        os << "query start " << t.l << " is below the minimum time " << eps_time;
        throw InvalidArgument(os.str());
    }
    if (!(t.l < t.u)) {
        throw InvalidArgument("query interval must satisfy begin < end");
    }
    for (std::size_t i = 0; i < kDims; ++i) {
        if (!std::isfinite(a[i]) || !std::isfinite(b[i])) {
            throw InvalidArgument("query corners must be finite");
        }
    }

    QueryBox box{a, b, t};
    static constexpr const char* kAxis[] = {"x", "y", "z"};
    for (std::size_t k = 0; k < kViews; ++k) {
        const ViewPoint qa = a.view(k);
        const ViewPoint qb = b.view(k);
        // gap(s) = b_k(s) - a_k(s) is linear, so its sign on [l, u] is fixed
        // iff it has the same strict sign at both ends.
        const double gap_l = (qb.v - qa.v) * t.l + (qb.p - qa.p);
        const double gap_u = (qb.v - qa.v) * t.u + (qb.p - qa.p);
        if (gap_l > 0.0 && gap_u > 0.0) {
            continue;
        }
        if (gap_l < 0.0 && gap_u < 0.0) {
            std::swap(box.lo[2 * k], box.hi[2 * k]);
            std::swap(box.lo[2 * k + 1], box.hi[2 * k + 1]);
            continue;
        }
        std::ostringstream os;
        os << "corners coincide or cross on the " << kAxis[k] << " axis within [" << t.l << ", "
           << t.u << "]";
        throw DegenerateBox(os.str());
    }
    return box;
}

std::optional<TimeInterval> containment_interval(const Hex6& p, const QueryBox& box) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    // Admit s with slope*s + offset > 0.
    auto constrain = [&](double slope, double offset) {
        if (slope > 0.0) {
            lo = std::max(lo, -offset / slope);
        } else if (slope < 0.0) {
            hi = std::min(hi, -offset / slope);
        } else if (!(offset > 0.0)) {
            hi = -std::numeric_limits<double>::infinity();
        }
    };

    for (std::size_t k = 0; k < kViews; ++k) {
        const ViewPoint pv = p.view(k);
        const ViewPoint lv = box.lo.view(k);
        const ViewPoint hv = box.hi.view(k);
        constrain(pv.v - lv.v, pv.p - lv.p);
        constrain(hv.v - pv.v, hv.p - pv.p);
    }

    const double l = std::max(lo, box.t.l);
    const double u = std::min(hi, box.t.u);
    if (!(l < u)) {
        return std::nullopt;
    }
    return TimeInterval{l, u};
}

std::vector<double> vertex_cross_times(ViewPoint q, const Rect2& rect, TimeInterval t,
                                       double eps_time) {
    std::vector<double> out;
    out.reserve(4);
    const std::array<ViewPoint, 4> corners{{
        {rect.vl, rect.pl},
        {rect.vl, rect.pu},
        {rect.vu, rect.pl},
        {rect.vu, rect.pu},
    }};
    for (const ViewPoint& c : corners) {
        const double dv = c.v - q.v;
        if (dv == 0.0) {
            continue;
        }
        const double s = (q.p - c.p) / dv;
        if (s > t.l && s < t.u) {
            out.push_back(s);
        }
    }
    std::sort(out.begin(), out.end());
    std::vector<double> dedup;
    dedup.reserve(out.size());
    for (double s : out) {
        if (dedup.empty() || s - dedup.back() > eps_time) {
            dedup.push_back(s);
        }
    }
    return dedup;
}

}  // namespace hexagg
