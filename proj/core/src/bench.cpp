#include "hexagg/bench.hpp"

#include <chrono>
#include <cmath>
#include <map>

#include "hexagg/bucket_index.hpp"
#include "hexagg/errors.hpp"
#include "hexagg/operators_estimated.hpp"
#include "hexagg/operators_exact.hpp"

namespace hexagg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

QueryOutcome run_query(const GeneratedQuery& g, const std::vector<Hex6>& points,
                       const MovingIndex& idx, const BenchConfig& cfg) {
    QueryOutcome out;
    out.kind = g.kind;
    QueryBox box;
    try {
        box = normalize_query(g.a, g.b, g.t, cfg.sweep.eps_time);
    } catch (const Error& e) {
        out.failed = true;
        out.error = e.name();
        return out;
    }

    auto start = Clock::now();
    const CountStepFunction step = exact_count_function(points, box);
    const MaxCountResult emax = exact_max_count(step, Extremum::Max);
    const MaxCountResult emin = exact_max_count(step, Extremum::Min);
    out.exact_range = static_cast<double>(exact_count_range(points, box));
    std::vector<ThresholdResult> exact_thr;
    for (double f : cfg.thresholds) exact_thr.push_back(exact_threshold_ops(step, f * emax.count));
    out.exact_seconds = seconds_since(start);

    start = Clock::now();
    const CountProfile prof = estimated_count_profile(idx, box, cfg.sweep);
    const MaxCountResult smax = max_count(prof, Extremum::Max);
    const MaxCountResult smin = max_count(prof, Extremum::Min);
    out.est_range = count_range(idx, box, cfg.sweep);
    std::vector<IntervalSet> est_thr;
    for (double f : cfg.thresholds) est_thr.push_back(threshold_range(prof, f * emax.count));
    out.est_seconds = seconds_since(start);

    out.exact_max = emax.count;
    out.exact_t_max = emax.t_max;
    out.exact_min = emin.count;
    out.est_max = smax.count;
    out.est_t_max = smax.t_max;
    out.est_min = smin.count;
    out.multi_root_intervals = static_cast<int>(prof.multi_root_intervals);
    out.flagged = emax.count < cfg.min_result;
    for (std::size_t i = 0; i < cfg.thresholds.size(); ++i) {
        QueryOutcome::Threshold th;
        th.fraction = cfg.thresholds[i];
        th.m = cfg.thresholds[i] * emax.count;
        th.errors = range_errors(exact_thr[i].intervals, est_thr[i]);
        const ThresholdStats es = threshold_stats(est_thr[i]);
        th.exact_count = static_cast<double>(exact_thr[i].stats.count);
        th.est_count = static_cast<double>(es.count);
        th.exact_sum = exact_thr[i].stats.sum;
        th.est_sum = es.sum;
        th.exact_avg = exact_thr[i].stats.average;
        th.est_avg = es.average;
        out.thresholds.push_back(th);
    }
    return out;
}

struct RowBuilder {
    BenchRow row;
    std::vector<double> errors;
    std::vector<double> excess;
    double large_exact = 0.0;
    double large_est = 0.0;
    std::size_t unstable = 0;

    void add_relative(double exact, double est) {
        if (auto e = relative_error(exact, est)) {
            errors.push_back(*e);
        } else {
            ++row.undefined;
        }
    }
};

}  // namespace

BenchReport run_benchmark(const BenchConfig& cfg) {
    BenchReport report;
    report.config = cfg;
    if (cfg.corpus.count == 0) return report;

    const char* kOps[] = {"maxcount", "mincount", "countrange", "trange", "tcount", "tsum", "tavg"};

    for (std::int64_t size : cfg.sizes) {
        GenConfig gen;
        gen.n = size;
        gen.clusters = cfg.clusters;
        gen.spread = cfg.spread;
        gen.seed = cfg.seed;
        gen.lower = cfg.corpus.lower;
        gen.upper = cfg.corpus.upper;
        const std::vector<Hex6> points = generate_clustered(gen);
        const std::vector<GeneratedQuery> corpus = generate_queries(points, cfg.corpus);
        std::vector<std::vector<double>> t_history(corpus.size());

        for (int d : cfg.divisions) {
            const MovingIndex idx = build_index(
                GridConfig::uniform(cfg.corpus.lower, cfg.corpus.upper, d, cfg.subdivisions), points);

            std::map<std::pair<std::string, double>, RowBuilder> rows;
            auto builder = [&](const std::string& op, double thr) -> RowBuilder& {
                RowBuilder& rb = rows[{op, thr}];
                rb.row.size = size;
                rb.row.divisions = d;
                rb.row.op = op;
                rb.row.threshold = thr;
                return rb;
            };
            for (const char* op : {kOps[0], kOps[1], kOps[2]}) builder(op, 0.0);
            for (double f : cfg.thresholds) {
                for (const char* op : {kOps[3], kOps[4], kOps[5], kOps[6]}) builder(op, f);
            }

            for (std::size_t q = 0; q < corpus.size(); ++q) {
                QueryOutcome out = run_query(corpus[q], points, idx, cfg);
                out.size = size;
                out.divisions = d;
                out.query = q;

                if (!out.failed) {
                    auto& hist = t_history[q];
                    hist.push_back(out.est_t_max);
                    const double tol = 0.05 * corpus[q].t.length();
                    const std::size_t k = hist.size();
                    out.unstable = k >= 3 && std::abs(hist[k - 2] - hist[k - 3]) <= tol &&
                                   std::abs(hist[k - 1] - hist[k - 2]) > tol;
                }

                for (auto& [key, rb] : rows) {
                    BenchRow& row = rb.row;
                    ++row.queries;
                    if (out.failed) {
                        ++row.failed;
                        continue;
                    }
                    row.exact_seconds += out.exact_seconds;
                    row.est_seconds += out.est_seconds;
                    if (out.exact_max >= cfg.large_result) {
                        ++row.large_queries;
                        rb.large_exact += out.exact_seconds;
                        rb.large_est += out.est_seconds;
                    }
                    if (out.unstable) ++rb.unstable;
                    if (out.flagged) {
                        ++row.flagged;
                        continue;
                    }
                    const std::string& op = key.first;
                    if (op == "maxcount") {
                        rb.add_relative(out.exact_max, out.est_max);
                    } else if (op == "mincount") {
                        rb.add_relative(out.exact_min, out.est_min);
                    } else if (op == "countrange") {
                        rb.add_relative(out.exact_range, out.est_range);
                    } else {
                        const QueryOutcome::Threshold* th = nullptr;
                        for (const auto& t : out.thresholds) {
                            if (t.fraction == key.second) th = &t;
                        }
                        if (op == "trange") {
                            rb.errors.push_back(th->errors.error);
                            rb.excess.push_back(th->errors.excess);
                        } else if (op == "tcount") {
                            rb.errors.push_back(std::abs(th->exact_count - th->est_count));
                        } else if (op == "tsum") {
                            rb.add_relative(th->exact_sum, th->est_sum);
                        } else {
                            rb.add_relative(th->exact_avg, th->est_avg);
                        }
                    }
                }
                report.queries.push_back(std::move(out));
            }

            for (auto& [key, rb] : rows) {
                BenchRow row = rb.row;
                row.error = summarize(rb.errors);
                row.excess = summarize(rb.excess);
                row.runtime_ratio = row.est_seconds > 0.0 ? row.exact_seconds / row.est_seconds : 0.0;
                row.large_runtime_ratio = rb.large_est > 0.0 ? rb.large_exact / rb.large_est : 0.0;
                const std::size_t ok = row.queries - row.failed;
                row.unstable_fraction = ok ? static_cast<double>(rb.unstable) / static_cast<double>(ok) : 0.0;
                row.buckets = idx.bucket_count();
                row.seed = cfg.seed;
                row.subdivisions = cfg.subdivisions;
                row.clusters = cfg.clusters;
                row.spread = cfg.spread;
                row.eps_time = cfg.sweep.eps_time;
                row.bisect_max = cfg.sweep.bisect_max;
                report.rows.push_back(std::move(row));
            }
        }
    }
    return report;
}

}  // namespace hexagg
