#include "hexagg/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hexagg/errors.hpp"

namespace hexagg {

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

void GenConfig::validate() const {
    if (n < 0) throw InvalidArgument("n must be >= 0");
    if (clusters < 1) throw InvalidArgument("clusters must be >= 1");
    if (!(lower < upper)) throw InvalidArgument("space bounds must satisfy lower < upper");
    if (!(spread >= 0.0) || !std::isfinite(spread)) throw InvalidArgument("spread must be >= 0");
}

std::vector<Hex6> generate_clustered(const GenConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    std::vector<Hex6> centers(static_cast<std::size_t>(cfg.clusters));
    for (Hex6& c : centers) {
        for (std::size_t a = 0; a < kDims; ++a) c[a] = rng.uniform(cfg.lower, cfg.upper);
    }
    const double half = 0.5 * (cfg.upper - cfg.lower);
    std::vector<Hex6> pts;
    pts.reserve(static_cast<std::size_t>(cfg.n));
    for (std::int64_t i = 0; i < cfg.n; ++i) {
        const Hex6& c = centers[rng.index(centers.size())];
        std::array<double, kDims> dir{};
        double norm = 0.0;
        while (norm == 0.0) {
            for (double& d : dir) {
                d = rng.normal();
                norm += d * d;
            }
            norm = std::sqrt(norm);
        }
        const double radius =
            rng.uniform01() * cfg.spread * static_cast<double>(i) / static_cast<double>(cfg.n) * half;
        Hex6 p;
        for (std::size_t a = 0; a < kDims; ++a) {
            p[a] = std::clamp(c[a] + radius * dir[a] / norm, cfg.lower, cfg.upper);
        }
        pts.push_back(p);
    }
    return pts;
}

const char* query_kind_name(QueryKind k) {
    switch (k) {
        case QueryKind::Narrow: return "narrow";
        case QueryKind::Wide: return "wide";
        case QueryKind::Edge: return "edge";
        case QueryKind::Outside: return "outside";
    }
    return "?";
}

std::vector<GeneratedQuery> generate_queries(const std::vector<Hex6>& points,
                                             const QueryCorpusConfig& cfg) {
    Rng rng(cfg.seed);
    std::vector<GeneratedQuery> out;
    out.reserve(cfg.count);
    double total = 0.0;
    for (double w : cfg.mix) total += w;
    const double span = cfg.upper - cfg.lower;

    for (std::size_t q = 0; q < cfg.count; ++q) {
        GeneratedQuery g;
        double pick = rng.uniform01() * total;
        int kind = 0;
        while (kind < 3 && pick >= cfg.mix[kind]) pick -= cfg.mix[kind++];
        g.kind = static_cast<QueryKind>(kind);

        Hex6 anchor;
        double hmin = cfg.narrow_min;
        double hmax = cfg.narrow_max;
        switch (g.kind) {
            case QueryKind::Narrow:
            case QueryKind::Wide:
                if (!points.empty()) {
                    anchor = points[rng.index(points.size())];
                } else {
                    for (std::size_t a = 0; a < kDims; ++a) anchor[a] = rng.uniform(cfg.lower, cfg.upper);
                }
                if (g.kind == QueryKind::Wide) {
                    hmin = cfg.wide_min;
                    hmax = cfg.wide_max;
                }
                break;
            case QueryKind::Edge:
                for (std::size_t a = 0; a < kDims; ++a) {
                    const bool high = rng.uniform01() < 0.5;
                    const double off = rng.uniform(0.0, 0.05 * span);
                    anchor[a] = high ? cfg.upper - off : cfg.lower + off;
                }
                hmin = cfg.wide_min;
                hmax = cfg.wide_max;
                break;
            case QueryKind::Outside:
                for (std::size_t a = 0; a < kDims; ++a) {
                    anchor[a] = rng.uniform(cfg.upper + 0.05 * span, cfg.upper + 0.5 * span);
                }
                hmin = cfg.wide_min;
                hmax = cfg.wide_max;
                break;
        }
        for (std::size_t a = 0; a < kDims; ++a) {
            const double h = rng.uniform(hmin, hmax);
            g.a[a] = anchor[a] - h;
            g.b[a] = anchor[a] + h;
        }
        if (rng.uniform01() < 0.5) std::swap(g.a, g.b);
        g.t.l = rng.uniform(cfg.t_begin_min, cfg.t_begin_max);
        g.t.u = g.t.l + rng.uniform(cfg.length_min, cfg.length_max);
        out.push_back(g);
    }
    return out;
}

}  // namespace hexagg
