#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "hexagg/errors.hpp"
#include "hexagg/io.hpp"
#include "hexagg/operators_estimated.hpp"
#include "support/fixtures.hpp"

using namespace hexagg;

TEST(ReadPoints, CommentsBlankLinesAndWhitespace) {
    std::istringstream in("# header\n\n1,2,3,4,5,6  # trailing\n  -1.5, 0 ,1e-3,4,5,6\n");
    const auto pts = read_points(in);
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_EQ(pts[0], Hex6::of(1, 2, 3, 4, 5, 6));
    EXPECT_EQ(pts[1], Hex6::of(-1.5, 0, 1e-3, 4, 5, 6));
}

TEST(ReadPoints, MalformedLinesThrow) {
    for (const char* bad : {"1,2,3,4,5\n", "1,2,3,4,5,6,7\n", "1,2,x,4,5,6\n", "1,2,3,4,5,inf\n"}) {
        std::istringstream in(bad);
        EXPECT_THROW(read_points(in), ParseError) << bad;
    }
}

TEST(ReadPoints, MissingFileThrows) {
    EXPECT_THROW(read_points_file("/nonexistent/points.txt"), ParseError);
}

TEST(WritePoints, RoundTripIsBitExact) {
    GenConfig g;
    g.n = 500;
    const auto pts = generate_clustered(g);
    std::stringstream ss;
    write_points(ss, pts);
    EXPECT_EQ(read_points(ss), pts);
}

TEST(ParseHex, Accepts) {
    EXPECT_EQ(parse_hex("8.5,5,8.5,5,8.5,5"), Hex6::of(8.5, 5, 8.5, 5, 8.5, 5));
    EXPECT_THROW(parse_hex("1,2"), ParseError);
}

TEST(ExamplePoints, FileHoldsTenPoints) {
    const auto pts = fixture::example_points();
    ASSERT_EQ(pts.size(), 10u);
    EXPECT_EQ(pts[0], Hex6::of(5.345, 7.543, 5.345, 8.158, 5.345, 5.488));
}

TEST(IndexSnapshot, RoundTripKeepsEveryBucketAndQuery) {
    GenConfig g;
    g.n = 5000;
    g.seed = 100;
    const auto pts = generate_clustered(g);
    const MovingIndex idx = build_index(GridConfig::uniform(0, 100, 6, 5), pts);
    std::stringstream ss;
    save_index(ss, idx);
    const MovingIndex back = load_index(ss);
    EXPECT_EQ(back.size(), idx.size());
    ASSERT_EQ(back.bucket_count(), idx.bucket_count());
    const auto a = idx.sorted_buckets(), b = back.sorted_buckets();
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i]->id(), b[i]->id());
        EXPECT_EQ(a[i]->count(), b[i]->count());
        for (std::size_t ax = 0; ax < kDims; ++ax) {
            EXPECT_TRUE(std::ranges::equal(a[i]->counts(ax), b[i]->counts(ax)));
            EXPECT_EQ(a[i]->trend(ax), b[i]->trend(ax));
        }
        EXPECT_EQ(a[i]->mass_scale(), b[i]->mass_scale());
    }
    Rng rng(101);
    for (int q = 0; q < 20; ++q) {
        const QueryBox box = fixture::random_box(rng, 0, 80, 5, 30, {0.2, 2});
        EXPECT_EQ(max_count(idx, box), max_count(back, box));
        EXPECT_EQ(count_range(idx, box), count_range(back, box));
    }
}

TEST(IndexSnapshot, FileRoundTrip) {
    const auto path = std::filesystem::temp_directory_path() / "hexagg_io_test.idx";
    const MovingIndex idx = fixture::example_index();
    save_index_file(path.string(), idx);
    const MovingIndex back = load_index_file(path.string());
    std::filesystem::remove(path);
    EXPECT_EQ(back.size(), 10);
    EXPECT_EQ(max_count(back, fixture::example_box()), max_count(idx, fixture::example_box()));
}

TEST(IndexSnapshot, RejectsCorruption) {
    std::stringstream ss;
    save_index(ss, fixture::example_index());
    const std::string good = ss.str();

    auto expect_reject = [](std::string text, const char* what) {
        std::istringstream in(text);
        EXPECT_THROW(load_index(in), ParseError) << what;
    };
    expect_reject("", "empty");
    expect_reject("hexagg-index v2\n" + good.substr(good.find('\n') + 1), "version");
    {
        std::string t = good;
        t.replace(t.find("points 10"), 9, "points 11");
        expect_reject(t, "total");
    }
    {
        std::string t = good;
        const auto pos = t.find("trend 0 ");
        t.replace(pos, 8, "trend 0 9");
        expect_reject(t, "trend");
    }
    expect_reject(good.substr(0, good.size() / 2), "truncated");
}
