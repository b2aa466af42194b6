#include "hexagg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hexagg {

std::optional<double> relative_error(double exact, double est) {
    if (exact == 0.0) return std::nullopt;
    return std::abs(exact - est) / std::abs(exact);
}

RangeErrors range_errors(const IntervalSet& exact, const IntervalSet& est) {
    RangeErrors r;
    const double exact_len = exact.length();
    const double est_len = est.length();
    if (exact_len > 0.0) r.error = uncovered_length(exact, est) / exact_len;
    if (est_len > 0.0) r.excess = uncovered_length(est, exact) / est_len;
    return r;
}

Summary summarize(std::vector<double> values) {
    Summary s;
    s.count = values.size();
    if (values.empty()) return s;
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size() / 2;
    s.median = values.size() % 2 == 1 ? values[m] : 0.5 * (values[m - 1] + values[m]);
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    s.max = values.back();
    return s;
}

}  // namespace hexagg
