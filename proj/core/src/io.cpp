#include "hexagg/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "hexagg/errors.hpp"

namespace hexagg {

namespace {

double parse_real(const std::string& tok, const std::string& where) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
        throw ParseError(where + ": not a finite number: '" + tok + "'");
    }
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    return out;
}

// Whitespace-separated token reader that tracks the line for diagnostics.
class Tokens {
  public:
    explicit Tokens(std::istream& in) : in_(in) {}

    std::istringstream& line(const std::string& expect) {
        std::string text;
        if (!std::getline(in_, text)) throw ParseError("snapshot truncated before '" + expect + "'");
        ++lineno_;
        cur_.clear();
        cur_.str(text);
        std::string key;
        cur_ >> key;
        if (key != expect) {
            throw ParseError("snapshot line " + std::to_string(lineno_) + ": expected '" + expect +
                             "', found '" + key + "'");
        }
        return cur_;
    }

    template <typename T>
    T next() {
        T v{};
        if (!(cur_ >> v)) {
            throw ParseError("snapshot line " + std::to_string(lineno_) + ": malformed value");
        }
        return v;
    }

  private:
    std::istream& in_;
    std::istringstream cur_;
    int lineno_ = 0;
};

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

}  // namespace

Hex6 parse_hex(const std::string& text) {
    Hex6 p;
    std::size_t axis = 0;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (axis == kDims) throw ParseError("expected 6 comma-separated values: '" + text + "'");
        p[axis++] = parse_real(trim(tok), "point");
    }
    if (axis != kDims) throw ParseError("expected 6 comma-separated values: '" + text + "'");
    return p;
}

std::vector<Hex6> read_points(std::istream& in) {
    std::vector<Hex6> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        try {
            pts.push_back(parse_hex(line));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return pts;
}

std::vector<Hex6> read_points_file(const std::string& path) {
    auto in = open_in(path);
    return read_points(in);
}

void write_points(std::ostream& out, const std::vector<Hex6>& points) {
    out << "# vx,x0,vy,y0,vz,z0\n" << std::setprecision(17);
    for (const Hex6& p : points) {
        for (std::size_t a = 0; a < kDims; ++a) out << (a ? "," : "") << p[a];
        out << '\n';
    }
}

void write_points_file(const std::string& path, const std::vector<Hex6>& points) {
    auto out = open_out(path);
    write_points(out, points);
}

void save_index(std::ostream& out, const MovingIndex& idx) {
    const GridConfig& cfg = idx.config();
    out << std::setprecision(17);
    out << "hexagg-index v1\n";
    out << "subdivisions " << cfg.subdivisions << '\n';
    out << "points " << idx.size() << '\n';
    out << "lower";
    for (double v : cfg.lower) out << ' ' << v;
    out << "\nupper";
    for (double v : cfg.upper) out << ' ' << v;
    out << "\ndivisions";
    for (int v : cfg.divisions) out << ' ' << v;
    out << "\nbuckets " << idx.bucket_count() << '\n';
    for (const SkewAwareBucket* b : idx.sorted_buckets()) {
        out << "bucket";
        for (auto v : b->id()) out << ' ' << v;
        out << ' ' << b->count() << '\n';
        for (std::size_t a = 0; a < kDims; ++a) {
            out << "hist " << a;
            for (auto c : b->counts(a)) out << ' ' << c;
            out << '\n';
        }
        for (std::size_t a = 0; a < kDims; ++a) {
            const TrendLine& t = b->trend(a);
            out << "trend " << a << ' ' << t.slope << ' ' << t.intercept << ' ' << t.shift << '\n';
        }
        out << "scale " << b->mass_scale() << ' ' << b->trend_integral() << '\n';
    }
}

void save_index_file(const std::string& path, const MovingIndex& idx) {
    auto out = open_out(path);
    save_index(out, idx);
}

MovingIndex load_index(std::istream& in) {
    std::string header;
    if (!std::getline(in, header) || trim(header) != "hexagg-index v1") {
        throw ParseError("not a hexagg-index v1 snapshot");
    }
    Tokens tk(in);
    GridConfig cfg;
    tk.line("subdivisions");
    cfg.subdivisions = tk.next<int>();
    tk.line("points");
    const auto n = tk.next<std::int64_t>();
    tk.line("lower");
    for (double& v : cfg.lower) v = tk.next<double>();
    tk.line("upper");
    for (double& v : cfg.upper) v = tk.next<double>();
    tk.line("divisions");
    for (int& v : cfg.divisions) v = tk.next<int>();
    try {
        cfg.validate();
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("snapshot grid: ") + e.what());
    }
    tk.line("buckets");
    const auto count = tk.next<std::size_t>();

    MovingIndex idx(cfg);
    std::vector<std::uint32_t> counts(static_cast<std::size_t>(cfg.subdivisions));
    for (std::size_t i = 0; i < count; ++i) {
        tk.line("bucket");
        CellId id{};
        for (std::size_t a = 0; a < kDims; ++a) {
            id[a] = tk.next<std::int32_t>();
            if (id[a] < 0 || id[a] >= cfg.divisions[a]) throw ParseError("bucket id outside the grid");
        }
        const auto b = tk.next<std::int64_t>();
        SkewAwareBucket bkt(id, cfg);
        for (std::size_t a = 0; a < kDims; ++a) {
            tk.line("hist");
            if (tk.next<std::size_t>() != a) throw ParseError("histogram axes out of order");
            for (auto& c : counts) c = tk.next<std::uint32_t>();
            try {
                bkt.set_counts(a, counts);
            } catch (const InvalidArgument& e) {
                throw ParseError(std::string("bucket histograms: ") + e.what());
            }
        }
        std::array<TrendLine, kDims> stored{};
        for (std::size_t a = 0; a < kDims; ++a) {
            tk.line("trend");
            if (tk.next<std::size_t>() != a) throw ParseError("trend axes out of order");
            stored[a].slope = tk.next<double>();
            stored[a].intercept = tk.next<double>();
            stored[a].shift = tk.next<double>();
        }
        tk.line("scale");
        const auto scale = tk.next<double>();
        static_cast<void>(tk.next<double>());

        if (bkt.count() != b) throw ParseError("bucket count disagrees with its histograms");
        refit_bucket(bkt);
        for (std::size_t a = 0; a < kDims; ++a) {
            const TrendLine& t = bkt.trend(a);
            if (!close(t.slope, stored[a].slope) || !close(t.intercept, stored[a].intercept) ||
                !close(t.shift, stored[a].shift)) {
                throw ParseError("stored trend disagrees with the histograms");
            }
        }
        if (!close(bkt.mass_scale(), scale)) throw ParseError("stored normalization disagrees");
        try {
            idx.restore_bucket(std::move(bkt));
        } catch (const InvalidArgument& e) {
            throw ParseError(std::string("snapshot bucket: ") + e.what());
        }
    }
    if (idx.size() != n) throw ParseError("point total disagrees with the buckets");
    return idx;
}

MovingIndex load_index_file(const std::string& path) {
    auto in = open_in(path);
    return load_index(in);
}

}  // namespace hexagg
