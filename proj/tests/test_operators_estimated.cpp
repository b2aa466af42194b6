#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "hexagg/operators_estimated.hpp"
#include "hexagg/operators_exact.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace hexagg;

namespace {

struct Instance {
    std::vector<Hex6> pts;
    MovingIndex idx;
};

Instance clustered_instance(std::int64_t n, int divisions, std::uint64_t seed) {
    GenConfig g;
    g.n = n;
    g.seed = seed;
    auto pts = generate_clustered(g);
    MovingIndex idx = build_index(GridConfig::uniform(0, 100, divisions, 5), pts);
    return {std::move(pts), std::move(idx)};
}

QueryBox anchored_box(Rng& rng, const std::vector<Hex6>& pts, double w) {
    const Hex6& c = pts[rng.index(pts.size())];
    Hex6 a, b;
    for (std::size_t ax = 0; ax < kDims; ++ax) {
        a[ax] = c[ax] - rng.uniform(0.5, 1.0) * w;
        b[ax] = c[ax] + rng.uniform(0.5, 1.0) * w;
    }
    const double l = rng.uniform(0.1, 1.0);
    return normalize_query(a, b, {l, l + rng.uniform(0.5, 4.0)});
}

bool covered(const IntervalSet& outer, const IntervalSet& inner) {
    return uncovered_length(inner, outer) <= 1e-12;
}

}  // namespace

TEST(MaxCount, WorkedExampleFirstIntervalReachesTwoPointEight) {
    const CountProfile prof = estimated_count_profile(fixture::example_index(), fixture::example_box(), {}, true);
    ASSERT_GE(prof.intervals.size(), 1u);
    const IntervalExtrema& first = prof.intervals.front();
    EXPECT_NEAR(first.max.t, 4.0 / 9.0, 1e-6);
    EXPECT_NEAR(first.max.value, 2.8, 0.05);
}

TEST(MaxCount, WorkedExampleGlobalMaximum) {
    const MaxCountResult r = max_count(fixture::example_index(), fixture::example_box());
    EXPECT_NEAR(r.t_max, 4.0 / 9.0, 1e-6);
    EXPECT_NEAR(r.count, 2.8, 0.05);
    EXPECT_EQ(r.count_rounded, 3);
}

TEST(MaxCount, EmptyIndexIsTheZeroCase) {
    const MovingIndex idx(fixture::example_grid());
    const QueryBox box = fixture::example_box();
    const MaxCountResult mx = max_count(idx, box);
    EXPECT_EQ(mx, (MaxCountResult{box.t.l, 0.0, 0}));
    EXPECT_EQ(max_count(idx, box, Extremum::Min), (MaxCountResult{box.t.l, 0.0, 0}));
    EXPECT_TRUE(threshold_range(idx, box, 0.0).empty());
    EXPECT_EQ(count_range(idx, box), 0.0);
}

TEST(MaxCount, RoundedCountMatchesRawCount) {
    const Instance inst = clustered_instance(5000, 5, 50);
    Rng rng(51);
    for (int i = 0; i < 100; ++i) {
        const MaxCountResult r = max_count(inst.idx, anchored_box(rng, inst.pts, 15));
        EXPECT_EQ(r.count_rounded, std::llround(r.count));
    }
}

TEST(MaxCount, TracksTheExactMaximumOnSmallInstances) {
    // One random query per instance of 200 uniform points; only queries holding >= 20 points count.
    Rng rng(52);
    int compared = 0;
    for (int inst = 0; inst < 60; ++inst) {
        std::vector<Hex6> pts(200);
        for (Hex6& p : pts) {
            for (std::size_t ax = 0; ax < kDims; ++ax) p[ax] = rng.uniform(0, 100);
        }
        const MovingIndex idx = build_index(GridConfig::uniform(0, 100, 2, 5), pts);
        const Hex6& c = pts[rng.index(pts.size())];
        Hex6 a, b;
        for (std::size_t ax = 0; ax < kDims; ++ax) {
            const double w = rng.uniform(30, 45);
            a[ax] = c[ax] - w;
            b[ax] = c[ax] + w;
        }
        const double l = rng.uniform(0.1, 1.0);
        const QueryBox box = normalize_query(a, b, {l, l + rng.uniform(0.5, 4.0)});
        const MaxCountResult ex = exact_max_count(pts, box);
        if (ex.count < 20) continue;
        const MaxCountResult est = max_count(idx, box);
        EXPECT_LE(std::abs(est.count - ex.count) / ex.count, 0.15) << "exact " << ex.count << " est " << est.count;
        ++compared;
    }
    EXPECT_GE(compared, 20);
}

TEST(MaxCount, ResultLiesInsideTheQueryAndTheCountRange) {
    const Instance inst = clustered_instance(5000, 5, 53);
    Rng rng(54);
    for (int i = 0; i < 200; ++i) {
        const QueryBox box = anchored_box(rng, inst.pts, 15);
        for (Extremum mode : {Extremum::Max, Extremum::Min}) {
            const MaxCountResult r = max_count(inst.idx, box, mode);
            EXPECT_GE(r.t_max, box.t.l);
            EXPECT_LE(r.t_max, box.t.u);
            EXPECT_GE(r.count, 0.0);
            EXPECT_LE(r.count, static_cast<double>(inst.idx.size()));
        }
    }
}

TEST(MaxCount, AgreesWithDirectEvaluation) {
    const Instance inst = clustered_instance(5000, 5, 55);
    Rng rng(56);
    for (int i = 0; i < 100; ++i) {
        const QueryBox box = anchored_box(rng, inst.pts, 15);
        const MaxCountResult r = max_count(inst.idx, box);
        const double direct = estimated_count_at(inst.idx, box, r.t_max);
        EXPECT_NEAR(r.count, direct, 1e-6 * std::max(1.0, direct));
        // No sampled time beats the reported maximum.
        for (int k = 0; k <= 50; ++k) {
            const double s = box.t.l + box.t.length() * k / 50.0;
            EXPECT_LE(estimated_count_at(inst.idx, box, std::min(s, box.t.u)), r.count + 1e-6 * std::max(1.0, r.count));
        }
    }
}

TEST(MinMaxDuality, MinNeverExceedsMax) {
    const Instance inst = clustered_instance(3000, 5, 57);
    Rng rng(58);
    for (int i = 0; i < 1000; ++i) {
        const QueryBox box = anchored_box(rng, inst.pts, rng.uniform(5, 25));
        const CountProfile prof = estimated_count_profile(inst.idx, box);
        EXPECT_LE(max_count(prof, Extremum::Min).count, max_count(prof, Extremum::Max).count);
    }
}

TEST(CountProfile, PolysMatchDirectEvaluationInsideIntervals) {
    const Instance inst = clustered_instance(5000, 5, 59);
    Rng rng(60);
    for (int i = 0; i < 30; ++i) {
        const QueryBox box = anchored_box(rng, inst.pts, 15);
        const CountProfile prof = estimated_count_profile(inst.idx, box, {}, true);
        ASSERT_EQ(prof.polys.size(), prof.intervals.size());
        for (const IntervalExtrema& e : prof.intervals) {
            const double s = e.iv.mid();
            const double want = estimated_count_at(inst.idx, box, s);
            EXPECT_NEAR(prof.count_at(s), want, 1e-6 * std::max(1.0, want));
            EXPECT_LE(e.min.value, e.max.value);
        }
    }
}

TEST(ThresholdRange, ZeroThresholdCoversTheWholeQuery) {
    const Instance inst = clustered_instance(5000, 5, 61);
    Rng rng(62);
    int checked = 0;
    for (int i = 0; i < 200 && checked < 20; ++i) {
        const QueryBox box = anchored_box(rng, inst.pts, 25);
        const CountProfile prof = estimated_count_profile(inst.idx, box);
        const bool positive = std::all_of(prof.intervals.begin(), prof.intervals.end(),
                                          [](const IntervalExtrema& e) { return e.min.value > 0.0; });
        if (!positive) continue;
        const IntervalSet ts = threshold_range(prof, 0.0);
        ASSERT_EQ(ts.size(), 1u);
        EXPECT_EQ(ts.intervals().front(), box.t);
        ++checked;
    }
    EXPECT_GT(checked, 0);
}

TEST(ThresholdRange, ThresholdAtLeastNIsEmpty) {
    const Instance inst = clustered_instance(2000, 5, 63);
    Rng rng(64);
    for (int i = 0; i < 50; ++i) {
        const QueryBox box = anchored_box(rng, inst.pts, 40);
        EXPECT_TRUE(threshold_range(inst.idx, box, static_cast<double>(inst.idx.size())).empty());
    }
}

TEST(ThresholdRange, NearMaxThresholdContainsTheMaximum) {
    const Instance inst = clustered_instance(5000, 5, 65);
    Rng rng(66);
    for (int i = 0; i < 100; ++i) {
        const QueryBox box = anchored_box(rng, inst.pts, 15);
        const CountProfile prof = estimated_count_profile(inst.idx, box);
        const MaxCountResult mx = max_count(prof);
        if (mx.count <= 0.0) continue;
        const IntervalSet ts = threshold_range(prof, 0.95 * mx.count);
        EXPECT_TRUE(std::any_of(ts.begin(), ts.end(), [&](const TimeInterval& iv) {
            return iv.l <= mx.t_max && mx.t_max <= iv.u;
        }));
    }
}

TEST(ThresholdRange, IsMonotoneInTheThreshold) {
    const Instance inst = clustered_instance(3000, 5, 67);
    Rng rng(68);
    for (int i = 0; i < 1000; ++i) {
        const QueryBox box = anchored_box(rng, inst.pts, rng.uniform(5, 25));
        const CountProfile prof = estimated_count_profile(inst.idx, box);
        const double top = max_count(prof).count;
        const double m1 = rng.uniform(0, 1.2) * top;
        const double m2 = m1 + rng.uniform(0, 0.5) * top;
        EXPECT_TRUE(covered(threshold_range(prof, m1), threshold_range(prof, m2)));
    }
}

TEST(ThresholdRange, NonemptyExactlyWhenMaxExceedsThreshold) {
    const Instance inst = clustered_instance(3000, 5, 69);
    Rng rng(70);
    for (int i = 0; i < 1000; ++i) {
        const QueryBox box = anchored_box(rng, inst.pts, rng.uniform(5, 25));
        const CountProfile prof = estimated_count_profile(inst.idx, box);
        const double top = max_count(prof).count;
        const double m = rng.uniform(0, 1.5) * top;
        EXPECT_EQ(top > m, !threshold_range(prof, m).empty());
        // The strict comparison: a threshold equal to the maximum selects nothing.
        EXPECT_TRUE(threshold_range(prof, top).empty());
    }
}

TEST(ThresholdRange, StatsStayWithinTheQuery) {
    const Instance inst = clustered_instance(3000, 5, 71);
    Rng rng(72);
    for (int i = 0; i < 300; ++i) {
        const QueryBox box = anchored_box(rng, inst.pts, 15);
        const CountProfile prof = estimated_count_profile(inst.idx, box);
        const IntervalSet ts = threshold_range(prof, rng.uniform(0, 1) * max_count(prof).count);
        const ThresholdStats st = threshold_stats(ts);
        EXPECT_LE(st.sum, box.t.length() + 1e-12);
        for (const TimeInterval& iv : ts) {
            EXPECT_GE(iv.l, box.t.l);
            EXPECT_LE(iv.u, box.t.u);
        }
    }
}

TEST(ThresholdRange, StatsTrackTheExactOperatorOnSmallInstances) {
    GenConfig g;
    g.n = 200;
    g.seed = 73;
    const auto pts = generate_clustered(g);
    const MovingIndex idx = build_index(GridConfig::uniform(0, 100, 2, 5), pts);
    Rng rng(74);
    std::vector<double> cov;
    for (int i = 0; i < 200; ++i) {
        const QueryBox box = anchored_box(rng, pts, 35);
        const CountStepFunction f = exact_count_function(pts, box);
        const double top = exact_max_count(f).count;
        if (top < 20) continue;
        const ThresholdResult ex = exact_threshold_ops(f, 0.5 * top);
        const IntervalSet est = threshold_range(idx, box, 0.5 * top);
        cov.push_back(uncovered_length(ex.intervals, est) / ex.stats.sum);
    }
    ASSERT_GE(cov.size(), 10u);
    std::sort(cov.begin(), cov.end());
    EXPECT_LE(cov[cov.size() / 2], 0.10);
}

TEST(CountRange, BucketInsideAtTheStartContributesItsCount) {
    MovingIndex idx(GridConfig::uniform(0, 10, 2, 5));
    for (double x : {0.5, 1.5, 2.5}) idx.insert(Hex6::of(x, x, x, x, x, x));
    const QueryBox box =
        normalize_query(Hex6::of(0, -100, 0, -100, 0, -100), Hex6::of(0, 100, 0, 100, 0, 100), {1, 2});
    EXPECT_NEAR(count_range(idx, box), 3.0, 1e-12);
}

TEST(CountRange, DisjointBucketContributesNothing) {
    MovingIndex idx(GridConfig::uniform(0, 10, 2, 5));
    for (double x : {0.5, 1.5, 2.5}) idx.insert(Hex6::of(x, x, x, x, x, x));
    // Box far above the bucket for the whole interval.
    const QueryBox box =
        normalize_query(Hex6::of(0, 500, 0, 500, 0, 500), Hex6::of(0, 600, 0, 600, 0, 600), {1, 2});
    EXPECT_EQ(count_range(idx, box), 0.0);
}

TEST(CountRange, BoundedByNAndByTheMaximum) {
    const Instance inst = clustered_instance(3000, 5, 75);
    Rng rng(76);
    for (int i = 0; i < 1000; ++i) {
        const QueryBox box = anchored_box(rng, inst.pts, rng.uniform(5, 25));
        const double cr = count_range(inst.idx, box);
        EXPECT_GE(cr, 0.0);
        EXPECT_LE(cr, static_cast<double>(inst.idx.size()));
    }
}

TEST(CountRange, TracksTheExactCountOnWideQueries) {
    GenConfig g;
    g.n = 100000;
    g.seed = 77;
    const auto pts = generate_clustered(g);
    const MovingIndex idx = build_index(GridConfig::uniform(0, 100, 20, 5), pts);
    QueryCorpusConfig qc;
    qc.count = 60;
    qc.mix[0] = 0;
    qc.mix[1] = 1;
    qc.mix[2] = 0;
    qc.mix[3] = 0;
    std::vector<double> err;
    for (const GeneratedQuery& q : generate_queries(pts, qc)) {
        const QueryBox box = normalize_query(q.a, q.b, q.t);
        const auto ex = static_cast<double>(exact_count_range(pts, box));
        if (ex < 1000) continue;
        err.push_back(std::abs(count_range(idx, box) - ex) / ex);
    }
    ASSERT_GE(err.size(), 20u);
    std::sort(err.begin(), err.end());
    EXPECT_LE(err[err.size() / 2], 0.05);
}

TEST(EstimatedCountAt, ExampleValueAtTheFirstBoundary) {
    EXPECT_NEAR(estimated_count_at(fixture::example_index(), fixture::example_box(), 4.0 / 9.0), 2.8356, 1e-3);
}
