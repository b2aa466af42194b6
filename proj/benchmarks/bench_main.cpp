#include <benchmark/benchmark.h>

#include "hexagg/hexagg.hpp"

using namespace hexagg;

namespace {

std::vector<Hex6> clustered(std::int64_t n, std::uint64_t seed) {
    GenConfig g;
    g.n = n;
    g.seed = seed;
    return generate_clustered(g);
}

std::vector<QueryBox> corpus(const std::vector<Hex6>& pts, std::size_t count) {
    QueryCorpusConfig qc;
    qc.count = count;
    qc.mix[2] = qc.mix[3] = 0.0;
    std::vector<QueryBox> out;
    for (const GeneratedQuery& g : generate_queries(pts, qc)) out.push_back(normalize_query(g.a, g.b, g.t));
    return out;
}

void BM_Insert(benchmark::State& state) {
    MovingIndex idx = build_index(GridConfig::uniform(0, 100, 10, 5), clustered(state.range(0), 1));
    const auto fresh = clustered(4096, 2);
    std::size_t i = 0;
    for (auto _ : state) {
        idx.insert(fresh[i]);
        state.PauseTiming();
        idx.remove(fresh[i]);
        i = (i + 1) % fresh.size();
        state.ResumeTiming();
    }
}
BENCHMARK(BM_Insert)->Arg(10000)->Arg(100000)->Arg(1000000)->Unit(benchmark::kNanosecond);

void BM_EstimatedMaxCount(benchmark::State& state) {
    const auto pts = clustered(state.range(0), 3);
    const MovingIndex idx = build_index(GridConfig::uniform(0, 100, static_cast<int>(state.range(1)), 5), pts);
    const auto qs = corpus(pts, 32);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(max_count(idx, qs[i]));
        i = (i + 1) % qs.size();
    }
}
BENCHMARK(BM_EstimatedMaxCount)->Args({10000, 10})->Args({100000, 10})->Args({100000, 20})->Unit(benchmark::kMillisecond);

void BM_ExactMaxCount(benchmark::State& state) {
    const auto pts = clustered(state.range(0), 3);
    const auto qs = corpus(pts, 32);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_max_count(pts, qs[i]));
        i = (i + 1) % qs.size();
    }
}
BENCHMARK(BM_ExactMaxCount)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_CountRange(benchmark::State& state) {
    const auto pts = clustered(100000, 4);
    const MovingIndex idx = build_index(GridConfig::uniform(0, 100, 20, 5), pts);
    const auto qs = corpus(pts, 32);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(count_range(idx, qs[i]));
        i = (i + 1) % qs.size();
    }
}
BENCHMARK(BM_CountRange)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
