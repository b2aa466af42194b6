#include "hexagg/sweep_integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hexagg {

char case_letter(CaseTag tag) {
    static constexpr char kLetters[] = {'a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', '-'};
    return kLetters[static_cast<std::size_t>(tag)];
}

CaseTag classify_case(ViewPoint q, const Rect2& rect, double t) {
    const double left = q.p - t * (rect.vl - q.v);
    const double right = q.p - t * (rect.vu - q.v);
    if (t >= 0.0) {
        if (right >= rect.pu) return CaseTag::Empty;
        if (left <= rect.pl) return CaseTag::H;
        const bool exits_top = left > rect.pu;
        const bool exits_bottom = right < rect.pl;
        if (exits_top) return exits_bottom ? CaseTag::F : CaseTag::B;
        return exits_bottom ? CaseTag::C : CaseTag::G;
    }
    if (left >= rect.pu) return CaseTag::Empty;
    if (right <= rect.pl) return CaseTag::H;
    const bool enters_bottom = left < rect.pl;
    const bool exits_top = right > rect.pu;
    if (enters_bottom) return exits_top ? CaseTag::E : CaseTag::D;
    return exits_top ? CaseTag::A : CaseTag::G;
}

namespace {

// Integration runs in u = x1 - q.v, where the line is x2 = q.p - t*u. A piece
// endpoint is either a rectangle edge (constant u) or the abscissa where the
// line meets a horizontal edge, u = a / t.
struct Endpoint {
    double a = 0.0;
    bool over_t = false;
};

// c * u^m * t^j
struct Monomial {
    double c;
    int m;
    int j;
};

void add_at(ViewPoly& out, const Monomial& mono, const Endpoint& at, double sign) {
    if (mono.c == 0.0) return;
    double am = 1.0;
    for (int i = 0; i < mono.m; ++i) am *= at.a;
    out.coeff(at.over_t ? mono.j - mono.m : mono.j) += sign * mono.c * am;
}

template <std::size_t N>
void add_piece(ViewPoly& out, const std::array<Monomial, N>& anti, const Endpoint& from,
               const Endpoint& to) {
    for (const Monomial& mono : anti) {
        add_at(out, mono, to, +1.0);
        add_at(out, mono, from, -1.0);
    }
}

}  // namespace

ViewPoly view_above_poly(const Rect2& rect, const TrendLine& fv, const TrendLine& fp, ViewPoint q,
                         CaseTag tag) {
    ViewPoly out;
    if (tag == CaseTag::Empty) return out;

    // fv(q.v + u) = alpha + beta*u;  Gp is an antiderivative of fp.
    const double alpha = fv(q.v);
    const double beta = fv.slope;
    const double gamma = fp.offset();
    const double delta = fp.slope;
    auto gp = [&](double x) { return gamma * x + 0.5 * delta * x * x; };

    // Partial column: integrand fv * (Gp(pu) - Gp(q.p - t u))
    //   = (alpha + beta u)(k0 + k1 t u - k2 t^2 u^2), integrated in u.
    const double k0 = gp(rect.pu) - gp(q.p);
    const double k1 = fp(q.p);
    const double k2 = 0.5 * delta;
    const std::array<Monomial, 6> partial{{
        {alpha * k0, 1, 0},
        {beta * k0 / 2.0, 2, 0},
        {alpha * k1 / 2.0, 2, 1},
        {beta * k1 / 3.0, 3, 1},
        {-alpha * k2 / 3.0, 3, 2},
        {-beta * k2 / 4.0, 4, 2},
    }};
    // Full column: fv * (Gp(pu) - Gp(pl)).
    const double mass = gp(rect.pu) - gp(rect.pl);
    const std::array<Monomial, 2> full{{
        {alpha * mass, 1, 0},
        {beta * mass / 2.0, 2, 0},
    }};

    const Endpoint left{rect.vl - q.v, false};
    const Endpoint right{rect.vu - q.v, false};
    const Endpoint top{q.p - rect.pu, true};
    const Endpoint bottom{q.p - rect.pl, true};

    switch (tag) {
        case CaseTag::G:
            add_piece(out, partial, left, right);
            break;
        case CaseTag::H:
            add_piece(out, full, left, right);
            break;
        case CaseTag::B:
            add_piece(out, partial, top, right);
            break;
        case CaseTag::C:
            add_piece(out, partial, left, bottom);
            add_piece(out, full, bottom, right);
            break;
        case CaseTag::F:
            add_piece(out, partial, top, bottom);
            add_piece(out, full, bottom, right);
            break;
        case CaseTag::A:
            add_piece(out, partial, left, top);
            break;
        case CaseTag::D:
            add_piece(out, full, left, bottom);
            add_piece(out, partial, bottom, right);
            break;
        case CaseTag::E:
            add_piece(out, full, left, bottom);
            add_piece(out, partial, bottom, top);
            break;
        case CaseTag::Empty:
            break;
    }
    return out;
}

double view_above_value(const Rect2& rect, const TrendLine& fv, const TrendLine& fp, ViewPoint q,
                        double t) {
    return view_above_poly(rect, fv, fp, q, classify_case(q, rect, t))(t);
}

GeneralFormPoly delta_p_poly(const SkewAwareBucket& bkt, const QueryBox& box,
                             TimeInterval interval, std::int64_t n) {
    const double tm = interval.mid();
    std::array<ViewPoly, kViews> band;
    for (std::size_t k = 0; k < kViews; ++k) {
        const Rect2 rect = bkt.view_rect(k);
        const TrendLine& fv = bkt.trend(2 * k);
        const TrendLine& fp = bkt.trend(2 * k + 1);
        const ViewPoint lo = box.lo.view(k);
        const ViewPoint hi = box.hi.view(k);
        const CaseTag tag_lo = classify_case(lo, rect, tm);
        if (tag_lo == CaseTag::Empty) return {};
        band[k] = view_above_poly(rect, fv, fp, lo, tag_lo) -
                  view_above_poly(rect, fv, fp, hi, classify_case(hi, rect, tm));
    }
    return multiply(band[0], band[1], band[2]) * bkt.c_norm(n);
}

double delta_p_value(const SkewAwareBucket& bkt, const QueryBox& box, double t, std::int64_t n) {
    double prod = bkt.c_norm(n);
    for (std::size_t k = 0; k < kViews; ++k) {
        const Rect2 rect = bkt.view_rect(k);
        const TrendLine& fv = bkt.trend(2 * k);
        const TrendLine& fp = bkt.trend(2 * k + 1);
        prod *= view_above_value(rect, fv, fp, box.lo.view(k), t) -
                view_above_value(rect, fv, fp, box.hi.view(k), t);
    }
    return prod;
}

bool bucket_meets_box(const SkewAwareBucket& bkt, const QueryBox& box) {
    double lo = box.t.l;
    double hi = box.t.u;
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
        const Rect2 r = bkt.view_rect(k);
        const ViewPoint qlo = box.lo.view(k);
        const ViewPoint qhi = box.hi.view(k);
        // Cell positions at time s span [vl s + pl, vu s + pu].
        constrain(qhi.v - r.vl, qhi.p - r.pl);
        constrain(r.vu - qlo.v, r.pu - qlo.p);
    }
    return lo < hi;
}

namespace {

// Unit-density area above the line through q within rect, split at q.v:
// returns area right of q.v minus area left of q.v, which grows
// monotonically as the line steepens and so measures the sweep.
double swept_measure(ViewPoint q, const Rect2& rect, double t) {
    static const TrendLine kUnit{0.0, 1.0, 0.0};
    const double split = std::clamp(q.v, rect.vl, rect.vu);
    double right = 0.0;
    double left = 0.0;
    if (split < rect.vu) {
        right = view_above_value({split, rect.vu, rect.pl, rect.pu}, kUnit, kUnit, q, t);
    }
    if (split > rect.vl) {
        left = view_above_value({rect.vl, split, rect.pl, rect.pu}, kUnit, kUnit, q, t);
    }
    return right - left;
}

template <typename Key>
void distribution_sort(std::vector<BucketInterval>& events, TimeInterval t, const Hex6& mid,
                       const GridConfig& space, Key key, SortStats* stats) {
    const std::size_t n = events.size();
    if (n < 2) {
        if (stats) {
            stats->sorting_buckets = stats->nonempty_buckets = stats->max_occupancy = n;
            stats->mean_occupancy = static_cast<double>(n);
        }
        return;
    }

    // Coarse equal-length slots; each gets sorting buckets in proportion to
    // the swept measure accumulated across it.
    const std::size_t slots =
        std::clamp<std::size_t>(static_cast<std::size_t>(std::sqrt(static_cast<double>(n))), 1, 1024);
    const double slot_len = t.length() / static_cast<double>(slots);
    std::array<Rect2, kViews> rects;
    for (std::size_t k = 0; k < kViews; ++k) {
        rects[k] = {space.lower[2 * k], space.upper[2 * k], space.lower[2 * k + 1],
                    space.upper[2 * k + 1]};
    }
    auto measure = [&](double s) {
        double m = 0.0;
        for (std::size_t k = 0; k < kViews; ++k) m += swept_measure(mid.view(k), rects[k], s);
        return m;
    };
    std::vector<double> weight(slots);
    double prev = measure(t.l);
    double total = 0.0;
    for (std::size_t i = 0; i < slots; ++i) {
        const double next = measure(i + 1 == slots ? t.u : t.l + (i + 1) * slot_len);
        weight[i] = std::max(0.0, next - prev);
        total += weight[i];
        prev = next;
    }
    // Keep every slot usable even where the model predicts nothing.
    const double floor = total > 0.0 ? 0.05 * total / slots : 1.0;
    total = 0.0;
    for (double& w : weight) {
        w += floor;
        total += w;
    }

    std::vector<std::size_t> offset(slots + 1, 0);
    for (std::size_t i = 0; i < slots; ++i) {
        const auto share = static_cast<std::size_t>(static_cast<double>(n) * weight[i] / total);
        offset[i + 1] = offset[i] + std::max<std::size_t>(1, share);
    }
    const std::size_t nb = offset[slots];

    auto locate = [&](const BucketInterval& e) {
        const double x = key(e) - t.l;
        const auto i = static_cast<std::size_t>(
            std::clamp(std::floor(x / slot_len), 0.0, static_cast<double>(slots - 1)));
        const std::size_t width = offset[i + 1] - offset[i];
        const double w = slot_len / static_cast<double>(width);
        const double j = std::floor((x - static_cast<double>(i) * slot_len) / w);
        return offset[i] + static_cast<std::size_t>(std::clamp(j, 0.0, static_cast<double>(width - 1)));
    };

    std::vector<std::uint32_t> fill(nb + 1, 0);
    std::vector<std::size_t> where(n);
    for (std::size_t e = 0; e < n; ++e) {
        where[e] = locate(events[e]);
        ++fill[where[e] + 1];
    }
    std::vector<std::size_t> start(nb + 1, 0);
    for (std::size_t b = 0; b < nb; ++b) start[b + 1] = start[b] + fill[b + 1];

    std::vector<BucketInterval> out(n);
    std::vector<std::size_t> cursor(start.begin(), start.end() - 1);
    for (std::size_t e = 0; e < n; ++e) out[cursor[where[e]]++] = events[e];

    auto less = [&](const BucketInterval& a, const BucketInterval& b) {
        const double ka = key(a);
        const double kb = key(b);
        if (ka != kb) return ka < kb;
        return interval_before(a, b);
    };
    std::size_t nonempty = 0;
    std::size_t max_occ = 0;
    for (std::size_t b = 0; b < nb; ++b) {
        const std::size_t len = start[b + 1] - start[b];
        if (len == 0) continue;
        ++nonempty;
        max_occ = std::max(max_occ, len);
        if (len > 1) std::sort(out.begin() + start[b], out.begin() + start[b + 1], less);
    }
    events.swap(out);

    if (stats) {
        stats->sorting_buckets = nb;
        stats->nonempty_buckets = nonempty;
        stats->max_occupancy = max_occ;
        stats->mean_occupancy = static_cast<double>(n) / static_cast<double>(nonempty);
    }
}

}  // namespace

void sort_interval_events(std::vector<BucketInterval>& events, TimeInterval t,
                          const Hex6& query_mid, const GridConfig& space, SortStats* stats) {
    // Intervals opening at t.l all tie on l; order them among themselves by u.
    auto head_end = std::stable_partition(events.begin(), events.end(),
                                          [&](const BucketInterval& e) { return e.l <= t.l; });
    std::vector<BucketInterval> head(events.begin(), head_end);
    std::vector<BucketInterval> tail(head_end, events.end());

    distribution_sort(
        head, t, query_mid, space, [](const BucketInterval& e) { return e.u; }, nullptr);
    distribution_sort(
        tail, t, query_mid, space, [](const BucketInterval& e) { return e.l; }, stats);

    std::copy(head.begin(), head.end(), events.begin());
    std::copy(tail.begin(), tail.end(), events.begin() + static_cast<std::ptrdiff_t>(head.size()));
}

TimePartition build_time_partition(const MovingIndex& idx, const QueryBox& box,
                                   const SweepOptions& opts) {
    TimePartition part;
    const TimeInterval T = box.t;
    const double eps = opts.eps_time;

    for (const SkewAwareBucket* b : idx.sorted_buckets()) {
        if (!opts.prune_disjoint || bucket_meets_box(*b, box)) part.buckets.push_back(b);
    }

    std::vector<double> cross;
    for (std::size_t i = 0; i < part.buckets.size(); ++i) {
        const SkewAwareBucket& b = *part.buckets[i];
        cross.clear();
        for (std::size_t k = 0; k < kViews; ++k) {
            const Rect2 rect = b.view_rect(k);
            for (const ViewPoint q : {box.lo.view(k), box.hi.view(k)}) {
                for (const double v : {rect.vl, rect.vu}) {
                    if (v == q.v) continue;
                    for (const double p : {rect.pl, rect.pu}) {
                        const double s = (q.p - p) / (v - q.v);
                        if (s > T.l && s < T.u) cross.push_back(s);
                    }
                }
            }
        }
        std::sort(cross.begin(), cross.end());
        const auto id = static_cast<std::uint32_t>(i);
        double l = T.l;
        for (double s : cross) {
            // Changes within eps of either end or of the previous change fold in.
            if (s - l <= eps || T.u - s <= eps) continue;
            part.intervals.push_back({l, s, id});
            l = s;
        }
        part.intervals.push_back({l, T.u, id});
    }

    const Hex6 mid = [&] {
        Hex6 m;
        for (std::size_t a = 0; a < kDims; ++a) m[a] = 0.5 * (box.lo[a] + box.hi[a]);
        return m;
    }();
    sort_interval_events(part.intervals, T, mid, idx.config(), &part.sort_stats);

    part.times.push_back(T.l);
    part.group_offsets.push_back(0);
    for (std::size_t e = 0; e < part.intervals.size(); ++e) {
        const double l = part.intervals[e].l;
        if (l - part.times.back() > eps) {
            part.times.push_back(l);
            part.group_offsets.push_back(e);
        }
    }
    part.times.push_back(T.u);
    part.group_offsets.push_back(part.intervals.size());
    return part;
}

std::vector<std::uint32_t> TimePartition::changed_at(std::size_t boundary) const {
    std::vector<std::uint32_t> out;
    if (boundary == 0 || boundary + 1 >= times.size()) return out;
    for (std::size_t e = group_offsets[boundary]; e < group_offsets[boundary + 1]; ++e) {
        out.push_back(intervals[e].bucket);
    }
    return out;
}

ExtremaOnInterval extrema_on_interval(const GeneralFormPoly& poly, TimeInterval iv,
                                      const SweepOptions& opts) {
    const auto num = derivative_numerator(poly);
    auto deriv = [&](double s) { return evaluate_ascending(num, s); };

    const int scans = std::max(1, opts.scan_intervals);
    const double h = iv.length() / scans;
    std::vector<double> ts(static_cast<std::size_t>(scans) + 1);
    std::vector<double> ds(ts.size());
    double scale = 0.0;
    for (int i = 0; i <= scans; ++i) {
        ts[i] = (i == scans) ? iv.u : iv.l + i * h;
        ds[i] = deriv(ts[i]);
        scale = std::max(scale, std::abs(ds[i]));
    }
    const double near_zero = 1e-9 * scale;

    ExtremaOnInterval out;
    std::vector<double> candidates{iv.l};
    for (int i = 0; i < scans; ++i) {
        double a = ts[i];
        double b = ts[i + 1];
        double da = ds[i];
        const double db = ds[i + 1];
        if (da == 0.0) {
            if (i > 0) candidates.push_back(a);
            continue;
        }
        if ((da < 0.0) != (db < 0.0) && db != 0.0) {
            ++out.sign_changes;
            for (int it = 0; it < opts.bisect_max; ++it) {
                const double m = 0.5 * (a + b);
                const double dm = deriv(m);
                if (dm == 0.0) {
                    a = b = m;
                    break;
                }
                if ((dm < 0.0) == (da < 0.0)) {
                    a = m;
                    da = dm;
                } else {
                    b = m;
                }
            }
            candidates.push_back(0.5 * (a + b));
        } else if (std::abs(da) <= near_zero && std::abs(db) <= near_zero) {
            // Flat derivative without a bracket: home in on the smallest |p'|.
            for (int it = 0; it < opts.bisect_max; ++it) {
                const double m = 0.5 * (a + b);
                if (std::abs(deriv(0.5 * (a + m))) <= std::abs(deriv(0.5 * (m + b)))) {
                    b = m;
                } else {
                    a = m;
                }
            }
            candidates.push_back(0.5 * (a + b));
        }
    }
    candidates.push_back(iv.u);

    out.max = {iv.l, poly(iv.l)};
    out.min = out.max;
    for (double s : candidates) {
        const double v = poly(s);
        if (v > out.max.value) out.max = {s, v};
        if (v < out.min.value) out.min = {s, v};
    }
    return out;
}

IntervalOptimum maximize_on_interval(const GeneralFormPoly& poly, TimeInterval iv,
                                     const SweepOptions& opts, Extremum mode) {
    const ExtremaOnInterval ex = extrema_on_interval(poly, iv, opts);
    return mode == Extremum::Max ? ex.max : ex.min;
}

}  // namespace hexagg
