#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "hexagg/core_model.hpp"
#include "hexagg/datagen.hpp"
#include "hexagg/errors.hpp"

using namespace hexagg;

namespace {

const Hex6 kPoint1 = Hex6::of(5.345, 7.543, 5.345, 8.158, 5.345, 5.488);

}  // namespace

TEST(PositionAt, ZeroTimeGivesInitialPositions) {
    const auto x = position_at(Hex6::of(1, 0, 1, 0, 1, 0), 0.0);
    EXPECT_EQ(x, (std::array<double, 3>{0, 0, 0}));
}

TEST(PositionAt, ExamplePointOneAtUnitTime) {
    const auto x = position_at(kPoint1, 1.0);
    EXPECT_NEAR(x[0], 12.888, 1e-12);
    EXPECT_NEAR(x[1], 13.503, 1e-12);
    EXPECT_NEAR(x[2], 10.833, 1e-12);
}

TEST(PositionAt, ZeroVelocityStaysPut) {
    const auto x = position_at(Hex6::of(0, 3, 0, 4, 0, 5), 100.0);
    EXPECT_EQ(x, (std::array<double, 3>{3, 4, 5}));
}

TEST(Dominates, StrictOnEveryAxis) {
    EXPECT_TRUE(dominates(Hex6::of(1, 0, 1, 0, 1, 0), Hex6::of(0.5, 0, 0.5, 0, 0.5, 0), 1.0));
}

TEST(Dominates, SelfIsNotDominated) {
    EXPECT_FALSE(dominates(kPoint1, kPoint1, 0.3));
    EXPECT_FALSE(dominates(kPoint1, kPoint1, 7.0));
}

TEST(Dominates, ExampleUpperCornerDominatesPointOne) {
    EXPECT_TRUE(dominates(Hex6::of(9.5, 8, 9.5, 8, 9.5, 8), kPoint1, 1.0));
}

TEST(DominationDuality, MatchesBelowLineInEveryView) {
    Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        Hex6 q, p;
        for (std::size_t a = 0; a < kDims; ++a) {
            q[a] = rng.uniform(-10, 10);
            p[a] = rng.uniform(-10, 10);
        }
        const double s = rng.uniform(0.01, 5);
        bool below = true;
        for (std::size_t k = 0; k < kViews; ++k) {
            const ViewPoint qv = q.view(k);
            const ViewPoint pv = p.view(k);
            below = below && pv.p < qv.p - s * (pv.v - qv.v);
        }
        EXPECT_EQ(dominates(q, p, s), below) << "case " << i;
    }
}

TEST(NormalizeQuery, ExampleCornersInEitherOrder) {
    const Hex6 q2 = Hex6::of(8.5, 5, 8.5, 5, 8.5, 5);
    const Hex6 q1 = Hex6::of(9.5, 8, 9.5, 8, 9.5, 8);
    for (const auto& [a, b] : {std::pair{q2, q1}, std::pair{q1, q2}}) {
        const QueryBox box = normalize_query(a, b, {0.1, 10});
        EXPECT_EQ(box.lo, q2);
        EXPECT_EQ(box.hi, q1);
        EXPECT_EQ(box.t, (TimeInterval{0.1, 10}));
    }
}

TEST(NormalizeQuery, PerAxisOrdering) {
    const QueryBox box = normalize_query(Hex6::of(0, 5, 0, 0, 0, 5), Hex6::of(0, 0, 0, 5, 0, 0), {1, 2});
    EXPECT_EQ(box.lo, Hex6::of(0, 0, 0, 0, 0, 0));
    EXPECT_EQ(box.hi, Hex6::of(0, 5, 0, 5, 0, 5));
}

TEST(NormalizeQuery, IdenticalCornersAreDegenerate) {
    EXPECT_THROW(normalize_query(kPoint1, kPoint1, {0.1, 1}), DegenerateBox);
}

TEST(NormalizeQuery, CornerLinesCrossingInsideIntervalAreDegenerate) {
    const Hex6 a = Hex6::of(0, 0, 0, 0, 0, 0);
    const Hex6 b = Hex6::of(1, -1, 1, -1, 1, -1);
    EXPECT_THROW(normalize_query(a, b, {0.5, 2}), DegenerateBox);
}

TEST(NormalizeQuery, RejectsTimesBelowEpsilonOrEmpty) {
    const Hex6 a = Hex6::of(0, 0, 0, 0, 0, 0);
    const Hex6 b = Hex6::of(0, 1, 0, 1, 0, 1);
    EXPECT_THROW(normalize_query(a, b, {0.0, 1}), InvalidArgument);
    EXPECT_THROW(normalize_query(a, b, {-1.0, 1}), InvalidArgument);
    EXPECT_THROW(normalize_query(a, b, {1.0, 1.0}), InvalidArgument);
    EXPECT_NO_THROW(normalize_query(a, b, {kEpsTime, 1}));
    EXPECT_THROW(normalize_query(a, b, {0.5, std::numeric_limits<double>::infinity()}), InvalidArgument);
}

TEST(ContainmentInterval, LinearSolve) {
    const QueryBox box = normalize_query(Hex6::of(0, 2, 0, 2, 0, 2), Hex6::of(0, 4, 0, 4, 0, 4), {0.1, 10});
    const auto iv = containment_interval(Hex6::of(1, 0, 1, 0, 1, 0), box);
    ASSERT_TRUE(iv.has_value());
    EXPECT_DOUBLE_EQ(iv->l, 2.0);
    EXPECT_DOUBLE_EQ(iv->u, 4.0);
}

TEST(ContainmentInterval, PermanentlyAboveIsNone) {
    const QueryBox box = normalize_query(Hex6::of(0, 2, 0, 2, 0, 2), Hex6::of(0, 4, 0, 4, 0, 4), {0.1, 10});
    EXPECT_FALSE(containment_interval(Hex6::of(0, 9, 0, 9, 0, 9), box).has_value());
}

TEST(ContainmentInterval, InsideThroughoutGivesWholeInterval) {
    const QueryBox box = normalize_query(Hex6::of(1, 0, 1, 0, 1, 0), Hex6::of(1, 1e6, 1, 1e6, 1, 1e6), {1, 2});
    const auto iv = containment_interval(Hex6::of(1, 3, 1, 3, 1, 3), box);
    ASSERT_TRUE(iv.has_value());
    EXPECT_EQ(*iv, (TimeInterval{1, 2}));
}

TEST(ContainmentInterval, FaceContactIsOutside) {
    // Sits exactly on the lower face for all time.
    const QueryBox box = normalize_query(Hex6::of(0, 0, 0, 0, 0, 0), Hex6::of(0, 1, 0, 1, 0, 1), {1, 2});
    EXPECT_FALSE(containment_interval(Hex6::of(0, 0, 0, 0.5, 0, 0.5), box).has_value());
}

TEST(ContainmentInterval, EndpointsLieOnAFace) {
    Rng rng(5);
    int checked = 0;
    for (int i = 0; i < 3000; ++i) {
        Hex6 a, b, p;
        for (std::size_t ax = 0; ax < kDims; ++ax) {
            a[ax] = rng.uniform(0, 10);
            b[ax] = a[ax] + rng.uniform(0.5, 5);
            p[ax] = rng.uniform(-2, 14);
        }
        const QueryBox box = normalize_query(a, b, {0.1, 5});
        const auto iv = containment_interval(p, box);
        if (!iv) continue;
        for (double s : {iv->l, iv->u}) {
            if (s == box.t.l || s == box.t.u) continue;
            const auto x = position_at(p, s);
            const auto lo = position_at(box.lo, s);
            const auto hi = position_at(box.hi, s);
            double gap = std::numeric_limits<double>::infinity();
            for (int ax = 0; ax < 3; ++ax) {
                gap = std::min({gap, std::abs(x[ax] - lo[ax]), std::abs(x[ax] - hi[ax])});
            }
            EXPECT_LE(gap, 1e-9);
            ++checked;
        }
        // Strictly inside at the midpoint.
        const double m = iv->mid();
        EXPECT_TRUE(dominates(box.hi, p, m) && dominates(p, box.lo, m));
    }
    EXPECT_GT(checked, 100);
}

TEST(VertexCrossTimes, ExampleUpperCorner) {
    const auto ts = vertex_cross_times({9.5, 8}, {5, 10, 5, 10}, {0.1, 10});
    ASSERT_EQ(ts.size(), 2u);
    EXPECT_NEAR(ts[0], 4.0 / 9.0, 1e-12);
    EXPECT_NEAR(ts[1], 6.0, 1e-12);
}

TEST(VertexCrossTimes, ExampleLowerCorner) {
    const auto ts = vertex_cross_times({8.5, 5}, {5, 10, 5, 10}, {0.1, 10});
    ASSERT_EQ(ts.size(), 1u);
    EXPECT_NEAR(ts[0], 10.0 / 7.0, 1e-12);
}

TEST(VertexCrossTimes, ParallelCornersGiveNothing) {
    EXPECT_TRUE(vertex_cross_times({5, 0}, {5, 5, 1, 2}, {0.1, 10}).empty());
}

TEST(VertexCrossTimes, MatchesSignChangesOfCornerEquations) {
    Rng rng(17);
    for (int i = 0; i < 1000; ++i) {
        const ViewPoint q{rng.uniform(0, 10), rng.uniform(0, 10)};
        const double vl = rng.uniform(0, 9);
        const double pl = rng.uniform(0, 9);
        const Rect2 r{vl, vl + rng.uniform(0.2, 3), pl, pl + rng.uniform(0.2, 3)};
        const TimeInterval t{0.1, 5};
        const auto got = vertex_cross_times(q, r, t);
        // Every reported time zeroes some corner equation...
        auto gap = [&](double v, double p0, double s) { return p0 + s * v - (q.p + s * q.v); };
        for (double s : got) {
            double best = std::numeric_limits<double>::infinity();
            for (double v : {r.vl, r.vu}) {
                for (double p0 : {r.pl, r.pu}) best = std::min(best, std::abs(gap(v, p0, s)));
            }
            EXPECT_LE(best, 1e-9);
            EXPECT_TRUE(s > t.l && s < t.u);
        }
        // ...and every sampled sign change is reported.
        const int samples = 4000;
        const double h = t.length() / samples;
        for (double v : {r.vl, r.vu}) {
            for (double p0 : {r.pl, r.pu}) {
                for (int k = 0; k < samples; ++k) {
                    const double a = t.l + k * h;
                    const double b = a + h;
                    if ((gap(v, p0, a) < 0) == (gap(v, p0, b) < 0)) continue;
                    const bool found = std::any_of(got.begin(), got.end(), [&](double s) {
                        return s >= a - 1e-6 && s <= b + 1e-6;
                    });
                    EXPECT_TRUE(found) << "case " << i;
                }
            }
        }
        EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
    }
}
