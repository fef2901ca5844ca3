#ifndef PURSUIT_GENERATORS_HPP
#define PURSUIT_GENERATORS_HPP

#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "pursuit/graph.hpp"

namespace pursuit {

// mt19937_64 output is fully specified by the standard; the helpers below avoid
// the implementation-defined distributions so corpora reproduce across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    // Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do x = engine_();
        while (x >= limit);
        return x % bound;
    }
    // Uniform in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    bool chance(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

struct CycleSpec { std::size_t k; };
struct PathSpec { std::size_t k; };
struct GridSpec { std::size_t rows, cols; };
struct PetersenSpec {};
struct CompleteSpec { std::size_t k; };
// One character per vertex after the first: '1' adds a dominating vertex, '0' an isolated one.
struct ThresholdSpec { std::string creation; };
struct RandomConnectedSpec { std::size_t n; double p; };
struct RandomChordalSpec { std::size_t n; std::size_t max_clique; };

using GeneratorSpec = std::variant<CycleSpec, PathSpec, GridSpec, PetersenSpec, CompleteSpec, ThresholdSpec,
                                   RandomConnectedSpec, RandomChordalSpec>;

namespace detail {

inline Graph make_cycle(std::size_t k) {
    std::vector<Edge> edges;
    for (Vertex i = 0; i < k; ++i) edges.emplace_back(i, static_cast<Vertex>((i + 1) % k));
    return build_graph(k, edges);
}

inline Graph make_path(std::size_t k) {
    std::vector<Edge> edges;
    for (Vertex i = 0; i + 1 < k; ++i) edges.emplace_back(i, i + 1);
    return build_graph(k, edges);
}

inline Graph make_grid(std::size_t rows, std::size_t cols) {
    std::vector<Edge> edges;
    auto id = [cols](std::size_t r, std::size_t c) { return static_cast<Vertex>(r * cols + c); };
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
        }
    }
    return build_graph(rows * cols, edges);
}

// Outer 5-cycle 0..4, spokes i -> i+5, inner pentagram 5..9.
inline Graph make_petersen() {
    std::vector<Edge> edges;
    for (Vertex i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);
        edges.emplace_back(i, i + 5);
        edges.emplace_back(i + 5, (i + 2) % 5 + 5);
    }
    return build_graph(10, edges);
}

inline Graph make_complete(std::size_t k) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < k; ++u)
        for (Vertex v = u + 1; v < k; ++v) edges.emplace_back(u, v);
    return build_graph(k, edges);
}

inline Graph make_threshold(const std::string& creation) {
    const std::size_t n = creation.size() + 1;
    std::vector<Edge> edges;
    for (Vertex v = 1; v < n; ++v) {
        char c = creation[v - 1];
        if (c != '0' && c != '1') throw ParameterError("threshold creation sequence may only contain '0' and '1'");
        if (c == '1')
            for (Vertex u = 0; u < v; ++u) edges.emplace_back(u, v);
    }
    if (!creation.empty() && creation.back() != '1')
        throw ParameterError("threshold creation sequence must end with '1' to be connected");
    return build_graph(n, edges);
}

inline Graph make_random_connected(std::size_t n, double p, Rng& rng) {
    constexpr int kAttempts = 100000;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        std::vector<Edge> edges;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                if (rng.chance(p)) edges.emplace_back(u, v);
        Graph g = build_graph(n, edges);
        if (is_connected(g)) return g;
    }
    throw ParameterError("random_connected: no connected sample in " + std::to_string(kAttempts) + " attempts");
}

// Each new vertex is joined to a nonempty subset of a recorded clique, so it is
// simplicial on arrival and the reversed insertion order is a perfect elimination order.
inline Graph make_random_chordal(std::size_t n, std::size_t max_clique, Rng& rng) {
    std::vector<Edge> edges;
    std::vector<std::vector<Vertex>> cliques{{0}};
    for (Vertex x = 1; x < n; ++x) {
        const auto& base = cliques[rng.below(cliques.size())];
        std::vector<Vertex> pool = base;
        for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[rng.below(i)]);
        std::size_t cap = std::min(pool.size(), max_clique - 1);
        std::size_t take = 1 + rng.below(cap);
        pool.resize(take);
        std::sort(pool.begin(), pool.end());
        for (Vertex u : pool) edges.emplace_back(u, x);
        pool.push_back(x);
        cliques.push_back(std::move(pool));
    }
    return build_graph(n, edges);
}

}  // namespace detail

// Deterministic for a fixed (spec, seed); every kind yields a connected graph.
inline Graph generate(const GeneratorSpec& spec, std::uint64_t seed = 0) {
    Rng rng(seed);
    return std::visit(
        [&](const auto& s) -> Graph {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, CycleSpec>) {
                if (s.k < 3) throw ParameterError("cycle needs k >= 3");
                return detail::make_cycle(s.k);
            } else if constexpr (std::is_same_v<S, PathSpec>) {
                if (s.k < 1) throw ParameterError("path needs k >= 1");
                return detail::make_path(s.k);
            } else if constexpr (std::is_same_v<S, GridSpec>) {
                if (s.rows < 1 || s.cols < 1) throw ParameterError("grid needs rows, cols >= 1");
                return detail::make_grid(s.rows, s.cols);
            } else if constexpr (std::is_same_v<S, PetersenSpec>) {
                return detail::make_petersen();
            } else if constexpr (std::is_same_v<S, CompleteSpec>) {
                if (s.k < 1) throw ParameterError("complete needs k >= 1");
                return detail::make_complete(s.k);
            } else if constexpr (std::is_same_v<S, ThresholdSpec>) {
                return detail::make_threshold(s.creation);
            } else if constexpr (std::is_same_v<S, RandomConnectedSpec>) {
                if (s.n < 1) throw ParameterError("random_connected needs n >= 1");
                if (!(s.p > 0.0 && s.p <= 1.0) && s.n > 1) throw ParameterError("random_connected needs 0 < p <= 1");
                return detail::make_random_connected(s.n, s.p, rng);
            } else {
                if (s.n < 1) throw ParameterError("random_chordal needs n >= 1");
                if (s.max_clique < 2 && s.n > 1) throw ParameterError("random_chordal needs max_clique >= 2");
                return detail::make_random_chordal(s.n, s.max_clique, rng);
            }
        },
        spec);
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::size_t parse_count(const std::string& s) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size() || v < 0) throw ParameterError("");
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw ParameterError("expected a non-negative integer, got '" + s + "'");
    }
}

}  // namespace detail

// Text form used by the CLI and the game service: "cycle:6", "grid:3x3", "petersen",
// "complete:4", "threshold:0101", "random_connected:12:0.3", "random_chordal:12:4".
inline GeneratorSpec parse_generator_spec(const std::string& text) {
    auto parts = detail::split(text, ':');
    const std::string& kind = parts[0];
    auto want = [&](std::size_t args) {
        if (parts.size() != args + 1)
            throw ParameterError("generator '" + kind + "' takes " + std::to_string(args) + " argument(s)");
    };
    if (kind == "petersen") {
        want(0);
        return PetersenSpec{};
    }
    if (kind == "threshold") {
        want(1);
        return ThresholdSpec{parts[1]};
    }
    if (kind == "cycle" || kind == "path" || kind == "complete") {
        want(1);
        std::size_t k = detail::parse_count(parts[1]);
        if (kind == "cycle") return CycleSpec{k};
        if (kind == "path") return PathSpec{k};
        return CompleteSpec{k};
    }
    if (kind == "grid") {
        want(1);
        auto dims = detail::split(parts[1], 'x');
        if (dims.size() != 2) throw ParameterError("grid expects ROWSxCOLS");
        return GridSpec{detail::parse_count(dims[0]), detail::parse_count(dims[1])};
    }
    if (kind == "random_connected") {
        want(2);
        double p = 0;
        try {
            p = std::stod(parts[2]);
        } catch (const std::exception&) {
            throw ParameterError("bad probability '" + parts[2] + "'");
        }
        return RandomConnectedSpec{detail::parse_count(parts[1]), p};
    }
    if (kind == "random_chordal") {
        want(2);
        return RandomChordalSpec{detail::parse_count(parts[1]), detail::parse_count(parts[2])};
    }
    throw ParameterError("unknown generator '" + kind + "'");
}

inline std::string to_string(const GeneratorSpec& spec) {
    return std::visit(
        [](const auto& s) -> std::string {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, CycleSpec>) return "cycle:" + std::to_string(s.k);
            else if constexpr (std::is_same_v<S, PathSpec>) return "path:" + std::to_string(s.k);
            else if constexpr (std::is_same_v<S, GridSpec>)
                return "grid:" + std::to_string(s.rows) + "x" + std::to_string(s.cols);
            else if constexpr (std::is_same_v<S, PetersenSpec>) return "petersen";
            else if constexpr (std::is_same_v<S, CompleteSpec>) return "complete:" + std::to_string(s.k);
            else if constexpr (std::is_same_v<S, ThresholdSpec>) return "threshold:" + s.creation;
            else if constexpr (std::is_same_v<S, RandomConnectedSpec>) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "random_connected:%zu:%.4f", s.n, s.p);
                return buf;
            } else
                return "random_chordal:" + std::to_string(s.n) + ":" + std::to_string(s.max_clique);
        },
        spec);
}

}  // namespace pursuit

#endif  // PURSUIT_GENERATORS_HPP
