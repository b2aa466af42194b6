/**
 * @file bench.hpp
 * @brief Estimated-versus-exact benchmark harness.
 *
 * For every (dataset size, grid divisions) cell the harness generates a
 * clustered dataset and a query corpus from the seed, builds the index, runs
 * every query through both paths and aggregates the error metrics and
 * wall-clock times per operator.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hexagg/datagen.hpp"
#include "hexagg/metrics.hpp"
#include "hexagg/sweep_integrator.hpp"

namespace hexagg {

struct BenchConfig {
    std::vector<std::int64_t> sizes{10000};
    std::vector<int> divisions{5, 10, 20};
    int subdivisions = 5;
    int clusters = 10;
    double spread = 0.5;
    std::uint64_t seed = 1;
    QueryCorpusConfig corpus;
    /// Thresholds for the ThresholdRange family, as fractions of each
    /// query's exact MaxCount.
    std::vector<double> thresholds{0.1, 0.5};
    /// Queries whose exact MaxCount is below this are flagged and kept out of
    /// the error aggregates.
    double min_result = 100.0;
    /// Queries at or above this exact MaxCount feed the large-query runtime ratio.
    double large_result = 1e4;
    SweepOptions sweep;
};

/// Per-query outcome in one (size, divisions) cell.
struct QueryOutcome {
    std::int64_t size = 0;
    int divisions = 0;
    std::size_t query = 0;
    QueryKind kind = QueryKind::Narrow;
    bool failed = false;
    std::string error;  ///< error name when failed
    bool flagged = false;  ///< result below min_result

    double exact_max = 0.0, exact_t_max = 0.0, est_max = 0.0, est_t_max = 0.0;
    double exact_min = 0.0, est_min = 0.0;
    double exact_range = 0.0, est_range = 0.0;
    struct Threshold {
        double fraction = 0.0;
        double m = 0.0;
        RangeErrors errors;
        double exact_count = 0.0, est_count = 0.0;
        double exact_sum = 0.0, est_sum = 0.0;
        double exact_avg = 0.0, est_avg = 0.0;
    };
    std::vector<Threshold> thresholds;
    double exact_seconds = 0.0;
    double est_seconds = 0.0;
    int multi_root_intervals = 0;
    bool unstable = false;  ///< t_max jumped after two stable resolutions
};

/// Aggregate row per (size, divisions, operator, threshold).
struct BenchRow {
    std::int64_t size = 0;
    int divisions = 0;
    std::string op;
    double threshold = 0.0;  ///< fraction of exact MaxCount; 0 for non-threshold ops
    std::size_t queries = 0;
    std::size_t flagged = 0;
    std::size_t failed = 0;
    std::size_t undefined = 0;  ///< relative error undefined (exact value 0)
    Summary error;   ///< relative error (absolute interval difference for tcount)
    Summary excess;  ///< trange only
    double exact_seconds = 0.0;
    double est_seconds = 0.0;
    double runtime_ratio = 0.0;        ///< exact / estimated over all queries
    double large_runtime_ratio = 0.0;  ///< same over queries >= large_result; 0 if none
    std::size_t large_queries = 0;
    double unstable_fraction = 0.0;
    std::size_t buckets = 0;
    // Echo of the configuration needed to regenerate the row.
    std::uint64_t seed = 0;
    int subdivisions = 0;
    int clusters = 0;
    double spread = 0.0;
    double eps_time = 0.0;
    int bisect_max = 0;
};

struct BenchReport {
    BenchConfig config;
    std::vector<BenchRow> rows;
    std::vector<QueryOutcome> queries;
};

BenchReport run_benchmark(const BenchConfig& cfg);

}  // namespace hexagg
