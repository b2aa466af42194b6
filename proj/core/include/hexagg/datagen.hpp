/**
 * @file datagen.hpp
 * @brief Clustered moving-point generator and random query corpora.
 *
 * Every stream is a function of its seed alone: the generator draws raw
 * 64-bit words from std::mt19937_64 (whose output sequence the standard fixes)
 * and converts them itself, so results match across standard libraries.
 */
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hexagg/core_model.hpp"

namespace hexagg {

/// Portable random stream over std::mt19937_64.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }
    /// Uniform integer in [0, k).
    std::uint64_t index(std::uint64_t k) {
        return static_cast<std::uint64_t>(uniform01() * static_cast<double>(k)) % k;
    }
    /// Standard normal (Box-Muller).
    double normal();

  private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

struct GenConfig {
    std::int64_t n = 0;
    int clusters = 10;
    double lower = 0.0;
    double upper = 100.0;
    /// Point i lies within spread * (i/n) * W of its cluster center, W being
    /// half the space width.
    double spread = 0.5;
    std::uint64_t seed = 1;

    void validate() const;
};

/// Points scattered around uniformly drawn cluster centers; later points
/// spread further. Deterministic in cfg.
std::vector<Hex6> generate_clustered(const GenConfig& cfg);

enum class QueryKind : std::uint8_t { Narrow, Wide, Edge, Outside };

const char* query_kind_name(QueryKind k);

struct GeneratedQuery {
    Hex6 a;
    Hex6 b;
    TimeInterval t;
    QueryKind kind = QueryKind::Narrow;
};

struct QueryCorpusConfig {
    std::size_t count = 100;
    std::uint64_t seed = 7;
    double lower = 0.0;
    double upper = 100.0;
    double t_begin_min = 0.1;
    double t_begin_max = 1.0;
    double length_min = 0.5;
    double length_max = 4.0;
    double narrow_min = 2.0;  ///< half-width range of narrow queries
    double narrow_max = 6.0;
    double wide_min = 6.0;    ///< half-width range of wide queries
    double wide_max = 16.0;
    /// Mix of kinds: narrow, wide, edge, outside (relative weights).
    double mix[4] = {0.4, 0.4, 0.1, 0.1};
};

/// Random query corpus. Narrow and wide queries follow a data point (their
/// corners move with it, offset by a half-width in velocity and position);
/// edge queries are anchored near a corner of the space and outside queries
/// beyond its upper face. Corners come in random order.
std::vector<GeneratedQuery> generate_queries(const std::vector<Hex6>& points,
                                             const QueryCorpusConfig& cfg);

}  // namespace hexagg
