#include "hexagg/operators_exact.hpp"

#include <algorithm>

namespace hexagg {

std::int64_t CountStepFunction::value_at(double s) const {
    std::int64_t v = initial;
    for (const Step& st : steps) {
        if (st.t > s) break;
        v += st.delta;
    }
    return v;
}

std::int64_t CountStepFunction::final_count() const {
    std::int64_t v = initial;
    for (const Step& st : steps) v += st.delta;
    return v;
}

CountStepFunction exact_count_function(std::span<const Hex6> points, const QueryBox& box) {
    CountStepFunction f;
    f.t = box.t;
    std::vector<CountStepFunction::Step> events;
    for (const Hex6& p : points) {
        const auto in = containment_interval(p, box);
        if (!in) continue;
        if (in->l <= box.t.l) {
            ++f.initial;
        } else {
            events.push_back({in->l, +1});
        }
        if (in->u < box.t.u) events.push_back({in->u, -1});
    }
    // Exits sort ahead of entries at equal times.
    std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) {
        return a.t != b.t ? a.t < b.t : a.delta < b.delta;
    });
    for (std::size_t i = 0; i < events.size();) {
        const double at = events[i].t;
        std::int64_t net = 0;
        while (i < events.size() && events[i].t - at <= kEventCoalesce) net += events[i++].delta;
        if (net != 0) f.steps.push_back({at, net});
    }
    return f;
}

MaxCountResult exact_max_count(const CountStepFunction& f, Extremum mode) {
    std::int64_t run = f.initial;
    MaxCountResult res{f.t.l, static_cast<double>(run), run};
    for (const auto& st : f.steps) {
        run += st.delta;
        const bool better = mode == Extremum::Max ? run > res.count_rounded : run < res.count_rounded;
        if (better) res = {st.t, static_cast<double>(run), run};
    }
    return res;
}

MaxCountResult exact_max_count(std::span<const Hex6> points, const QueryBox& box, Extremum mode) {
    return exact_max_count(exact_count_function(points, box), mode);
}

ThresholdResult exact_threshold_ops(const CountStepFunction& f, double m) {
    ThresholdResult out;
    std::int64_t run = f.initial;
    double from = f.t.l;
    for (const auto& st : f.steps) {
        if (static_cast<double>(run) > m) out.intervals.add({from, st.t});
        run += st.delta;
        from = st.t;
    }
    if (static_cast<double>(run) > m) out.intervals.add({from, f.t.u});
    out.stats = threshold_stats(out.intervals);
    return out;
}

ThresholdResult exact_threshold_ops(std::span<const Hex6> points, const QueryBox& box, double m) {
    return exact_threshold_ops(exact_count_function(points, box), m);
}

std::int64_t exact_count_range(std::span<const Hex6> points, const QueryBox& box) {
    std::int64_t c = 0;
    for (const Hex6& p : points) {
        if (containment_interval(p, box)) ++c;
    }
    return c;
}

}  // namespace hexagg
