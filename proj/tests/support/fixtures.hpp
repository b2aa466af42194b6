#pragma once

#include <string>
#include <vector>

#include "hexagg/bucket_index.hpp"
#include "hexagg/core_model.hpp"
#include "hexagg/datagen.hpp"
#include "hexagg/io.hpp"

namespace hexagg::fixture {

inline std::string data_path(const std::string& name) { return std::string(HEXAGG_TEST_DATA) + "/" + name; }

/// The ten example points: one bucket of [0,10]^6 at two divisions per axis.
inline std::vector<Hex6> example_points() { return read_points_file(data_path("example_points.txt")); }

inline GridConfig example_grid() { return GridConfig::uniform(0.0, 10.0, 2, 5); }

inline MovingIndex example_index() { return build_index(example_grid(), example_points()); }

inline QueryBox example_box() {
    return normalize_query(Hex6::of(9.5, 8, 9.5, 8, 9.5, 8), Hex6::of(8.5, 5, 8.5, 5, 8.5, 5), {0.1, 10});
}

/// Random box with corners inside [lo, hi] whose position gaps stay positive.
inline QueryBox random_box(Rng& rng, double lo, double hi, double min_w, double max_w, TimeInterval t) {
    Hex6 a, b;
    for (std::size_t ax = 0; ax < kDims; ++ax) {
        a[ax] = rng.uniform(lo, hi);
        b[ax] = a[ax] + rng.uniform(min_w, max_w);
    }
    return normalize_query(a, b, t);
}

}  // namespace hexagg::fixture
