#include "hexagg/interval_set.hpp"

#include <algorithm>

namespace hexagg {

IntervalSet::IntervalSet(std::initializer_list<TimeInterval> items) {
    for (const TimeInterval& iv : items) add(iv);
}

void IntervalSet::add(TimeInterval iv) {
    if (!(iv.l < iv.u)) return;
    if (items_.empty() || items_.back().u < iv.l) {
        items_.push_back(iv);
        return;
    }
    if (items_.back().l <= iv.l) {
        items_.back().u = std::max(items_.back().u, iv.u);
        return;
    }
    // Out-of-order insertion: merge into place.
    auto first = std::lower_bound(items_.begin(), items_.end(), iv.l,
                                  [](const TimeInterval& a, double l) { return a.u < l; });
    auto last = std::upper_bound(first, items_.end(), iv.u,
                                 [](double u, const TimeInterval& a) { return u < a.l; });
    if (first == last) {
        items_.insert(first, iv);
        return;
    }
    TimeInterval merged{std::min(first->l, iv.l), std::max((last - 1)->u, iv.u)};
    *first = merged;
    items_.erase(first + 1, last);
}

double IntervalSet::length() const {
    double total = 0.0;
    for (const TimeInterval& iv : items_) total += iv.length();
    return total;
}

bool IntervalSet::contains(double s) const {
    auto it = std::upper_bound(items_.begin(), items_.end(), s,
                               [](double x, const TimeInterval& a) { return x < a.l; });
    return it != items_.begin() && (it - 1)->contains(s);
}

double uncovered_length(const IntervalSet& a, const IntervalSet& b) {
    double covered = 0.0;
    auto jb = b.begin();
    for (const TimeInterval& x : a) {
        while (jb != b.end() && jb->u <= x.l) ++jb;
        for (auto k = jb; k != b.end() && k->l < x.u; ++k) {
            covered += std::min(x.u, k->u) - std::max(x.l, k->l);
        }
    }
    return std::max(0.0, a.length() - covered);
}

ThresholdStats threshold_stats(const IntervalSet& ts) {
    ThresholdStats st;
    st.count = ts.size();
    st.sum = ts.length();
    st.average = st.count == 0 ? 0.0 : st.sum / static_cast<double>(st.count);
    return st;
}

}  // namespace hexagg
