#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "hexagg/core_model.hpp"

namespace hexagg {

/// Sorted, pairwise-disjoint half-open intervals. Intervals that touch or
/// overlap are merged on insertion; empty intervals are dropped.
class IntervalSet {
  public:
    IntervalSet() = default;
    IntervalSet(std::initializer_list<TimeInterval> items);

    /// Add [iv.l, iv.u). Appending in ascending order is amortized O(1).
    void add(TimeInterval iv);

    const std::vector<TimeInterval>& intervals() const { return items_; }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

    /// Total length of all intervals.
    double length() const;

    /// True if s lies in some interval.
    bool contains(double s) const;

    bool operator==(const IntervalSet&) const = default;

  private:
    std::vector<TimeInterval> items_;
};

/// Length of the parts of `a` not covered by `b`.
double uncovered_length(const IntervalSet& a, const IntervalSet& b);

/// Number of intervals, their total length, and mean length (0 when empty).
struct ThresholdStats {
    std::size_t count = 0;
    double sum = 0.0;
    double average = 0.0;
};

ThresholdStats threshold_stats(const IntervalSet& ts);

}  // namespace hexagg
