#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "hexagg/hexagg.hpp"

namespace hexagg::cli {

namespace {

using json = nlohmann::json;

/// Bad invocation; reported with exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::vector<std::string> kOps = {"maxcount", "mincount", "countrange", "trange",
                                       "tcount",   "tsum",     "tavg"};

bool needs_threshold(const std::string& op) { return op.size() > 1 && op[0] == 't'; }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(tok);
    return out;
}

double to_real(const std::string& s, const std::string& what) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0' || !std::isfinite(v)) {
        throw UsageError(what + ": not a number: '" + s + "'");
    }
    return v;
}

TimeInterval parse_time(const std::string& s) {
    const auto parts = split(s, ':');
    if (parts.size() != 2) throw UsageError("--t expects begin:end, got '" + s + "'");
    return {to_real(parts[0], "--t"), to_real(parts[1], "--t")};
}

Hex6 parse_corner(const std::string& s, const std::string& flag) {
    try {
        return parse_hex(s);
    } catch (const ParseError& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

std::array<int, kDims> parse_divisions(const std::string& s) {
    const auto parts = split(s, ',');
    std::array<int, kDims> d{};
    if (parts.size() != 1 && parts.size() != kDims) {
        throw UsageError("--divisions expects one integer or six comma-separated integers");
    }
    for (std::size_t a = 0; a < kDims; ++a) {
        const double v = to_real(parts[parts.size() == 1 ? 0 : a], "--divisions");
        if (v != std::floor(v) || v < 1) throw UsageError("--divisions must be positive integers");
        d[a] = static_cast<int>(v);
    }
    return d;
}

template <typename T>
std::vector<T> parse_list(const std::string& s, const std::string& flag) {
    std::vector<T> out;
    for (const auto& tok : split(s, ',')) out.push_back(static_cast<T>(to_real(tok, flag)));
    if (out.empty()) throw UsageError(flag + " must not be empty");
    return out;
}

/// Sweep options with the HEXAGG_EPS_TIME / HEXAGG_BISECT_MAX overrides.
SweepOptions sweep_options() {
    SweepOptions opts;
    if (const char* e = std::getenv("HEXAGG_EPS_TIME")) {
        opts.eps_time = to_real(e, "HEXAGG_EPS_TIME");
        if (!(opts.eps_time > 0.0)) throw UsageError("HEXAGG_EPS_TIME must be positive");
    }
    if (const char* b = std::getenv("HEXAGG_BISECT_MAX")) {
        const double v = to_real(b, "HEXAGG_BISECT_MAX");
        if (v != std::floor(v) || v < 0) throw UsageError("HEXAGG_BISECT_MAX must be a nonnegative integer");
        opts.bisect_max = static_cast<int>(v);
    }
    return opts;
}

/// Seed recorded by `gen` in a points file header, if any.
std::optional<std::uint64_t> recorded_seed(const std::string& path) {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line) && !line.empty() && line[0] == '#') {
        const auto pos = line.find("seed=");
        if (pos != std::string::npos) {
            return std::strtoull(line.c_str() + pos + 5, nullptr, 10);
        }
    }
    return std::nullopt;
}

json grid_json(const GridConfig& g) {
    return {{"lower", g.lower}, {"upper", g.upper}, {"divisions", g.divisions}, {"s", g.subdivisions}};
}

json intervals_json(const IntervalSet& s) {
    json arr = json::array();
    for (const TimeInterval& iv : s) arr.push_back({iv.l, iv.u});
    return arr;
}

json threshold_json(const IntervalSet& s, const std::string& op) {
    const ThresholdStats st = threshold_stats(s);
    json j = {{"intervals", intervals_json(s)},
              {"count", st.count},
              {"sum", st.sum},
              {"average", st.average}};
    if (op == "tcount") j["value"] = st.count;
    if (op == "tsum") j["value"] = st.sum;
    if (op == "tavg") j["value"] = st.average;
    return j;
}

json max_json(const MaxCountResult& r) {
    return {{"t", r.t_max}, {"count", r.count}, {"count_rounded", r.count_rounded}};
}

struct GridFlags {
    std::string divisions = "10";
    int s = 5;
    double lower = 0.0;
    double upper = 100.0;

    void add_to(CLI::App* sub) {
        sub->add_option("--divisions", divisions, "cells per axis: one integer or six")->capture_default_str();
        sub->add_option("--s", s, "histogram subdivisions per bucket axis")->capture_default_str();
        sub->add_option("--lower", lower, "lower space bound on every axis")->capture_default_str();
        sub->add_option("--upper", upper, "upper space bound on every axis")->capture_default_str();
    }

    GridConfig grid() const {
        GridConfig g = GridConfig::uniform(lower, upper, 1, s);
        g.divisions = parse_divisions(divisions);
        try {
            g.validate();
        } catch (const InvalidArgument& e) {
            throw UsageError(e.what());
        }
        return g;
    }
};

// ---- gen --------------------------------------------------------------------

struct GenArgs {
    GenConfig cfg;
    std::string out = "-";
};

void run_gen(const GenArgs& a, std::ostream& out) {
    try {
        a.cfg.validate();
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    const auto pts = generate_clustered(a.cfg);
    auto emit = [&](std::ostream& os) {
        os << "# hexagg gen n=" << a.cfg.n << " clusters=" << a.cfg.clusters
           << " spread=" << a.cfg.spread << " lower=" << a.cfg.lower << " upper=" << a.cfg.upper
           << " seed=" << a.cfg.seed << '\n';
        write_points(os, pts);
    };
    if (a.out == "-") {
        emit(out);
        return;
    }
    std::ofstream f(a.out);
    if (!f) throw ParseError("cannot write '" + a.out + "'");
    emit(f);
    out << json{{"record", "gen"}, {"out", a.out}, {"n", a.cfg.n}, {"clusters", a.cfg.clusters},
                {"spread", a.cfg.spread}, {"seed", a.cfg.seed}}
               .dump()
        << '\n';
}

// ---- build / inspect ----------------------------------------------------------

struct IndexArgs {
    std::string points;
    std::string index;
    GridFlags grid;
};

MovingIndex obtain_index(const IndexArgs& a) {
    if (!a.index.empty()) return load_index_file(a.index);
    if (a.points.empty()) throw UsageError("need --points or --index");
    return build_index(a.grid.grid(), read_points_file(a.points));
}

json seed_json(const std::string& points) {
    if (points.empty()) return nullptr;
    const auto s = recorded_seed(points);
    return s ? json(*s) : json(nullptr);
}

void run_build(const IndexArgs& a, const std::string& save, std::ostream& out) {
    if (a.points.empty()) throw UsageError("build needs --points");
    const MovingIndex idx = build_index(a.grid.grid(), read_points_file(a.points));
    if (!save.empty()) save_index_file(save, idx);
    out << json{{"record", "build"},
                {"points", a.points},
                {"n", idx.size()},
                {"buckets", idx.bucket_count()},
                {"saved", save.empty() ? json(nullptr) : json(save)},
                {"config", {{"grid", grid_json(idx.config())}, {"seed", seed_json(a.points)}}}}
               .dump()
        << '\n';
}

void run_inspect(const IndexArgs& a, bool buckets, std::ostream& out) {
    const MovingIndex idx = obtain_index(a);
    const std::int64_t n = idx.size();
    double worst = 0.0;
    std::size_t fallback = 0;
    for (const SkewAwareBucket* b : idx.sorted_buckets()) {
        const double b_est = static_cast<double>(n) * bucket_point_fraction(*b, n);
        const double resid = std::abs(b_est - static_cast<double>(b->count())) / static_cast<double>(b->count());
        worst = std::max(worst, resid);
        if (b->uniform_fallback()) ++fallback;
        if (!buckets) continue;
        json trends = json::array();
        for (std::size_t ax = 0; ax < kDims; ++ax) {
            const TrendLine& t = b->trend(ax);
            trends.push_back({t.slope, t.intercept, t.shift});
        }
        json hist = json::array();
        for (std::size_t ax = 0; ax < kDims; ++ax) {
            const auto c = b->counts(ax);
            hist.push_back(std::vector<std::uint32_t>(c.begin(), c.end()));
        }
        out << json{{"record", "bucket"},
                    {"id", b->id()},
                    {"b", b->count()},
                    {"histograms", hist},
                    {"trends", trends},
                    {"trend_integral", b->trend_integral()},
                    {"c_norm", b->c_norm(n)},
                    {"residual", resid},
                    {"uniform_fallback", b->uniform_fallback()}}
                   .dump()
            << '\n';
    }
    out << json{{"record", "index"},
                {"n", n},
                {"buckets", idx.bucket_count()},
                {"max_residual", worst},
                {"uniform_fallback_buckets", fallback},
                {"config", {{"grid", grid_json(idx.config())}, {"seed", seed_json(a.points)}}}}
               .dump()
        << '\n';
}

// ---- query -----------------------------------------------------------------------

struct QuerySpec {
    Hex6 a;
    Hex6 b;
    TimeInterval t;
    std::string op;
    std::string threshold;  // empty when absent
    std::string mode = "est";
};

void validate_spec(const QuerySpec& q) {
    if (std::find(kOps.begin(), kOps.end(), q.op) == kOps.end()) {
        throw UsageError("unknown --op '" + q.op + "'");
    }
    if (q.mode != "est" && q.mode != "exact" && q.mode != "both") {
        throw UsageError("--mode must be est, exact or both");
    }
    if (needs_threshold(q.op) && q.threshold.empty()) {
        throw UsageError("--op " + q.op + " requires --threshold");
    }
}

/// Parse a query-file line of key=value tokens (op, a, b, t, threshold, mode).
QuerySpec parse_query_line(const std::string& line, const QuerySpec& defaults) {
    QuerySpec q = defaults;
    bool has_a = false, has_b = false, has_t = false;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw UsageError("query file: expected key=value, got '" + tok + "'");
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        if (key == "op") {
            q.op = val;
        } else if (key == "a") {
            q.a = parse_corner(val, "a");
            has_a = true;
        } else if (key == "b") {
            q.b = parse_corner(val, "b");
            has_b = true;
        } else if (key == "t") {
            q.t = parse_time(val);
            has_t = true;
        } else if (key == "threshold") {
            q.threshold = val;
        } else if (key == "mode") {
            q.mode = val;
        } else {
            throw UsageError("query file: unknown key '" + key + "'");
        }
    }
    if (!has_a || !has_b || !has_t) throw UsageError("query file: each line needs a=, b= and t=");
    validate_spec(q);
    return q;
}

struct QueryContext {
    std::optional<MovingIndex> index;
    std::optional<std::vector<Hex6>> points;
    SweepOptions opts;
    json config;
};

json run_one_query(const QuerySpec& q, QueryContext& ctx) {
    const bool want_est = q.mode != "exact";
    const bool want_exact = q.mode != "est";
    if (want_exact && !ctx.points) throw UsageError("--mode " + q.mode + " needs --points");
    if (!ctx.index) throw UsageError("need --points or --index");

    const QueryBox box = normalize_query(q.a, q.b, q.t, ctx.opts.eps_time);
    json rec = {{"record", "query"},
                {"op", q.op},
                {"mode", q.mode},
                {"lo", box.lo.c},
                {"hi", box.hi.c},
                {"t", {box.t.l, box.t.u}}};

    std::optional<CountProfile> profile;
    auto get_profile = [&]() -> const CountProfile& {
        if (!profile) profile = estimated_count_profile(*ctx.index, box, ctx.opts);
        return *profile;
    };

    double m = 0.0;
    if (needs_threshold(q.op)) {
        const std::string& th = q.threshold;
        if (th.size() > 4 && th[0] == 'p' && th.substr(th.size() - 3) == "max") {
            const double pct = to_real(th.substr(1, th.size() - 4), "--threshold");
            const double base = max_count(get_profile(), Extremum::Max).count;
            m = pct / 100.0 * base;
            rec["threshold_base"] = base;
        } else {
            m = to_real(th, "--threshold");
        }
        rec["threshold"] = m;
    }

    if (want_est) {
        json est;
        if (q.op == "maxcount" || q.op == "mincount") {
            est = max_json(max_count(get_profile(), q.op == "maxcount" ? Extremum::Max : Extremum::Min));
        } else if (q.op == "countrange") {
            const double c = count_range(*ctx.index, box, ctx.opts);
            est = {{"count", c}, {"count_rounded", std::llround(c)}};
        } else {
            est = threshold_json(threshold_range(get_profile(), m), q.op);
        }
        est["intervals_in_partition"] = profile ? json(profile->intervals.size()) : json(nullptr);
        rec["est"] = est;
    }
    if (want_exact) {
        json ex;
        if (q.op == "maxcount" || q.op == "mincount") {
            ex = max_json(exact_max_count(*ctx.points, box, q.op == "maxcount" ? Extremum::Max : Extremum::Min));
        } else if (q.op == "countrange") {
            ex = {{"count", exact_count_range(*ctx.points, box)}};
        } else {
            ex = threshold_json(exact_threshold_ops(*ctx.points, box, m).intervals, q.op);
        }
        rec["exact"] = ex;
    }
    rec["config"] = ctx.config;
    return rec;
}

void run_query(const IndexArgs& ia, const QuerySpec& flags, const std::string& query_file,
               bool have_corners, std::ostream& out) {
    QueryContext ctx;
    ctx.opts = sweep_options();
    if (!ia.points.empty()) ctx.points = read_points_file(ia.points);
    if (!ia.index.empty()) {
        ctx.index = load_index_file(ia.index);
    } else if (ctx.points) {
        ctx.index = build_index(ia.grid.grid(), *ctx.points);
    } else {
        throw UsageError("query needs --points or --index");
    }
    ctx.config = {{"grid", grid_json(ctx.index->config())},
                  {"eps_time", ctx.opts.eps_time},
                  {"bisect_max", ctx.opts.bisect_max},
                  {"scan_intervals", ctx.opts.scan_intervals},
                  {"seed", seed_json(ia.points)}};

    if (query_file.empty()) {
        if (!have_corners) throw UsageError("query needs --a, --b and --t (or --query-file)");
        validate_spec(flags);
        out << run_one_query(flags, ctx).dump() << '\n';
        return;
    }
    std::ifstream in(query_file);
    if (!in) throw ParseError("cannot open '" + query_file + "'");
    std::string line;
    while (std::getline(in, line)) {
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        QuerySpec q = parse_query_line(line, flags);
        out << run_one_query(q, ctx).dump() << '\n';
    }
}

// ---- bench -------------------------------------------------------------------------

json row_json(const BenchRow& r) {
    auto summary = [](const Summary& s) {
        return json{{"n", s.count}, {"median", s.median}, {"mean", s.mean}, {"max", s.max}};
    };
    json j = {{"record", "bench_row"},
              {"size", r.size},
              {"divisions", r.divisions},
              {"op", r.op},
              {"threshold", r.threshold},
              {"queries", r.queries},
              {"flagged", r.flagged},
              {"failed", r.failed},
              {"undefined", r.undefined},
              {"error", summary(r.error)},
              {"exact_seconds", r.exact_seconds},
              {"est_seconds", r.est_seconds},
              {"runtime_ratio", r.runtime_ratio},
              {"large_queries", r.large_queries},
              {"large_runtime_ratio", r.large_runtime_ratio},
              {"unstable_fraction", r.unstable_fraction},
              {"buckets", r.buckets},
              {"config",
               {{"seed", r.seed},
                {"s", r.subdivisions},
                {"clusters", r.clusters},
                {"spread", r.spread},
                {"eps_time", r.eps_time},
                {"bisect_max", r.bisect_max}}}};
    if (r.op == "trange") j["excess"] = summary(r.excess);
    return j;
}

json outcome_json(const QueryOutcome& q) {
    json th = json::array();
    for (const auto& t : q.thresholds) {
        th.push_back({{"fraction", t.fraction},
                      {"m", t.m},
                      {"error", t.errors.error},
                      {"excess", t.errors.excess},
                      {"exact_count", t.exact_count},
                      {"est_count", t.est_count},
                      {"exact_sum", t.exact_sum},
                      {"est_sum", t.est_sum}});
    }
    return {{"record", "bench_query"},
            {"size", q.size},
            {"divisions", q.divisions},
            {"query", q.query},
            {"kind", query_kind_name(q.kind)},
            {"failed", q.failed},
            {"error", q.error},
            {"flagged", q.flagged},
            {"exact_max", q.exact_max},
            {"est_max", q.est_max},
            {"exact_t_max", q.exact_t_max},
            {"est_t_max", q.est_t_max},
            {"exact_min", q.exact_min},
            {"est_min", q.est_min},
            {"exact_range", q.exact_range},
            {"est_range", q.est_range},
            {"thresholds", th},
            {"exact_seconds", q.exact_seconds},
            {"est_seconds", q.est_seconds},
            {"multi_root_intervals", q.multi_root_intervals},
            {"unstable", q.unstable}};
}

void print_table(const BenchReport& rep, std::ostream& out) {
    out << std::left << std::setw(9) << "size" << std::setw(6) << "div" << std::setw(12) << "op"
        << std::setw(7) << "thr" << std::right << std::setw(8) << "used" << std::setw(9) << "flagged"
        << std::setw(11) << "median" << std::setw(11) << "mean" << std::setw(11) << "max"
        << std::setw(10) << "ratio" << '\n';
    out << std::fixed;
    for (const BenchRow& r : rep.rows) {
        out << std::left << std::setw(9) << r.size << std::setw(6) << r.divisions << std::setw(12)
            << r.op << std::setw(7) << std::setprecision(2) << r.threshold << std::right
            << std::setw(8) << r.error.count << std::setw(9) << r.flagged << std::setprecision(4)
            << std::setw(11) << r.error.median << std::setw(11) << r.error.mean << std::setw(11)
            << r.error.max << std::setprecision(2) << std::setw(10) << r.runtime_ratio << '\n';
    }
    out.unsetf(std::ios::fixed);
}

struct BenchArgs {
    std::string sizes = "10000";
    std::string divisions = "5,10,20";
    std::string thresholds = "0.1,0.5";
    std::size_t queries = 100;
    int clusters = 10;
    double spread = 0.5;
    std::uint64_t seed = 1;
    std::uint64_t query_seed = 7;
    int s = 5;
    double min_result = 100;
    std::string out = "-";
    bool table = false;
    bool per_query = false;
};

void run_bench(const BenchArgs& a, std::ostream& out) {
    BenchConfig cfg;
    cfg.sizes = parse_list<std::int64_t>(a.sizes, "--sizes");
    cfg.divisions = parse_list<int>(a.divisions, "--divisions");
    cfg.thresholds = parse_list<double>(a.thresholds, "--thresholds");
    cfg.corpus.count = a.queries;
    cfg.corpus.seed = a.query_seed;
    cfg.clusters = a.clusters;
    cfg.spread = a.spread;
    cfg.seed = a.seed;
    cfg.subdivisions = a.s;
    cfg.min_result = a.min_result;
    cfg.sweep = sweep_options();
    for (auto n : cfg.sizes) {
        if (n < 0) throw UsageError("--sizes must be nonnegative");
    }
    for (int d : cfg.divisions) {
        if (d < 1) throw UsageError("--divisions must be positive");
    }

    const BenchReport rep = run_benchmark(cfg);
    std::ofstream file;
    std::ostream* dst = &out;
    if (a.out != "-") {
        file.open(a.out);
        if (!file) throw ParseError("cannot write '" + a.out + "'");
        dst = &file;
    }
    for (const BenchRow& r : rep.rows) *dst << row_json(r).dump() << '\n';
    if (a.per_query) {
        for (const QueryOutcome& q : rep.queries) *dst << outcome_json(q).dump() << '\n';
    }
    if (a.table) print_table(rep, out);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Threshold aggregation over linearly moving 3-D points", "hexagg"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "write a clustered points file");
    gen_cmd->add_option("--n", gen.cfg.n, "number of points")->required();
    gen_cmd->add_option("--clusters", gen.cfg.clusters, "cluster count")->capture_default_str();
    gen_cmd->add_option("--spread", gen.cfg.spread, "spread coefficient")->capture_default_str();
    gen_cmd->add_option("--seed", gen.cfg.seed, "random seed")->capture_default_str();
    gen_cmd->add_option("--lower", gen.cfg.lower, "lower space bound")->capture_default_str();
    gen_cmd->add_option("--upper", gen.cfg.upper, "upper space bound")->capture_default_str();
    gen_cmd->add_option("--out", gen.out, "output file, - for stdout")->capture_default_str();

    IndexArgs build;
    std::string save;
    auto* build_cmd = app.add_subcommand("build", "build an index from a points file");
    build_cmd->add_option("--points", build.points, "points file")->required();
    build_cmd->add_option("--save", save, "write an index snapshot here");
    build.grid.add_to(build_cmd);

    IndexArgs qidx;
    QuerySpec qspec;
    std::string a_text, b_text, t_text, query_file;
    auto* query_cmd = app.add_subcommand("query", "run one query (or a query file)");
    query_cmd->add_option("--points", qidx.points, "points file (needed for exact mode)");
    query_cmd->add_option("--index", qidx.index, "index snapshot");
    qidx.grid.add_to(query_cmd);
    query_cmd->add_option("--op", qspec.op, "maxcount|mincount|countrange|trange|tcount|tsum|tavg");
    query_cmd->add_option("--a", a_text, "first corner vx,x0,vy,y0,vz,z0");
    query_cmd->add_option("--b", b_text, "second corner vx,x0,vy,y0,vz,z0");
    query_cmd->add_option("--t", t_text, "query interval begin:end");
    query_cmd->add_option("--threshold", qspec.threshold, "M, or pNNmax for NN% of the estimated MaxCount");
    query_cmd->add_option("--mode", qspec.mode, "est|exact|both")->capture_default_str();
    query_cmd->add_option("--query-file", query_file, "file of key=value query lines");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "estimated vs exact benchmark");
    bench_cmd->add_option("--sizes", bench.sizes, "dataset sizes")->capture_default_str();
    bench_cmd->add_option("--divisions", bench.divisions, "divisions per axis to sweep")->capture_default_str();
    bench_cmd->add_option("--thresholds", bench.thresholds, "threshold fractions of exact MaxCount")
        ->capture_default_str();
    bench_cmd->add_option("--queries", bench.queries, "query corpus size")->capture_default_str();
    bench_cmd->add_option("--clusters", bench.clusters, "cluster count")->capture_default_str();
    bench_cmd->add_option("--spread", bench.spread, "spread coefficient")->capture_default_str();
    bench_cmd->add_option("--seed", bench.seed, "data seed")->capture_default_str();
    bench_cmd->add_option("--query-seed", bench.query_seed, "query corpus seed")->capture_default_str();
    bench_cmd->add_option("--s", bench.s, "histogram subdivisions")->capture_default_str();
    bench_cmd->add_option("--min-result", bench.min_result, "flag queries below this exact MaxCount")
        ->capture_default_str();
    bench_cmd->add_option("--out", bench.out, "records file, - for stdout")->capture_default_str();
    bench_cmd->add_flag("--table", bench.table, "print a summary table");
    bench_cmd->add_flag("--per-query", bench.per_query, "also emit one record per query");

    IndexArgs insp;
    bool insp_buckets = false;
    auto* inspect_cmd = app.add_subcommand("inspect", "bucket statistics of an index");
    inspect_cmd->add_option("--points", insp.points, "points file");
    inspect_cmd->add_option("--index", insp.index, "index snapshot");
    insp.grid.add_to(inspect_cmd);
    inspect_cmd->add_flag("--buckets", insp_buckets, "one record per bucket");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (gen_cmd->parsed()) {
            run_gen(gen, out);
        } else if (build_cmd->parsed()) {
            run_build(build, save, out);
        } else if (query_cmd->parsed()) {
            const bool corners = !a_text.empty() && !b_text.empty() && !t_text.empty();
            if (corners) {
                qspec.a = parse_corner(a_text, "--a");
                qspec.b = parse_corner(b_text, "--b");
                qspec.t = parse_time(t_text);
            }
            if (query_file.empty() && qspec.op.empty()) throw UsageError("query needs --op");
            run_query(qidx, qspec, query_file, corners, out);
        } else if (bench_cmd->parsed()) {
            run_bench(bench, out);
        } else if (inspect_cmd->parsed()) {
            run_inspect(insp, insp_buckets, out);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.name() << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace hexagg::cli
