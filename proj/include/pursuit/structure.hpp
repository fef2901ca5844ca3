#ifndef PURSUIT_STRUCTURE_HPP
#define PURSUIT_STRUCTURE_HPP

#include <optional>
#include <vector>

#include "pursuit/graph.hpp"
#include "pursuit/graph_io.hpp"

namespace pursuit {

// An induced cycle on at least four vertices, in cyclic order.
struct HoleCertificate {
    std::vector<Vertex> cycle;
    std::size_t length() const noexcept { return cycle.size(); }
    friend bool operator==(const HoleCertificate&, const HoleCertificate&) = default;
};

inline bool validate(const Graph& g, const HoleCertificate& cert) { return is_hole(g, cert.cycle); }

inline json to_json(const HoleCertificate& cert) { return json{{"type", "hole"}, {"cycle", cert.cycle}}; }

namespace detail {

// Grows induced paths s, a, ... and closes them through a neighbour of s. A hole is
// generated only from its smallest vertex s with a the smaller of s's two cycle
// neighbours, so each hole is seen once.
class HoleSearch {
public:
    HoleSearch(const Graph& g, std::size_t min_length, bool stop_at_first)
        : g_(g), min_length_(min_length), stop_at_first_(stop_at_first) {}

    std::optional<HoleCertificate> run() {
        const std::size_t n = g_.order();
        for (Vertex s = 0; s < n && !done_; ++s) {
            VertexSet above(n);
            for (Vertex v = s + 1; v < n; ++v) above.insert(v);
            if (above.size() + 1 < std::max<std::size_t>(min_length_, best_ + 1)) break;
            for (Vertex a : g_.neighbors(s)) {
                if (a < s) continue;
                path_ = {s, a};
                // Vertices adjacent to s (other than a) may only appear as the closing vertex.
                const VertexSet& blocked = g_.closed_set(s);
                VertexSet closers = g_.open_set(s);
                closers.erase(a);
                extend(blocked, closers, above);
                if (done_) break;
            }
        }
        return best_cert_;
    }

private:
    // `blocked` holds vertices that cannot be appended as a non-closing vertex:
    // N[p] for every path vertex but the last, plus the path itself.
    void extend(const VertexSet& blocked, const VertexSet& closers, const VertexSet& above) {
        if (done_) return;
        const Vertex last = path_.back();
        const Vertex a = path_[1];
        VertexSet next_blocked = blocked | g_.closed_set(last);
        // Beyond the next vertex and the closing vertex, only vertices outside
        // next_blocked can still join the cycle.
        VertexSet free = above - next_blocked;
        std::size_t bound = path_.size() + 2 + free.size();
        if (bound < min_length_ || (!stop_at_first_ && bound <= best_)) return;

        for (Vertex y : g_.neighbors(last)) {
            if (y <= path_[0]) continue;
            if (closers.contains(y)) {
                // y is adjacent to s and closes the cycle; it must avoid the interior.
                if (path_.size() >= 3 && y > a && !in_interior_neighborhood(y)) record(y);
                if (done_) return;
                continue;
            }
            if (blocked.contains(y)) continue;
            path_.push_back(y);
            extend(next_blocked, closers, above);
            path_.pop_back();
            if (done_) return;
        }
    }

    bool in_interior_neighborhood(Vertex y) const {
        for (std::size_t i = 1; i + 1 < path_.size(); ++i)
            if (g_.adjacent(path_[i], y)) return true;
        return false;
    }

    void record(Vertex closing) {
        std::size_t len = path_.size() + 1;
        if (len < min_length_ || len <= best_) return;
        best_ = len;
        HoleCertificate cert{path_};
        cert.cycle.push_back(closing);
        best_cert_ = std::move(cert);
        if (stop_at_first_) done_ = true;
    }

    const Graph& g_;
    std::size_t min_length_;
    bool stop_at_first_;
    bool done_ = false;
    std::size_t best_ = 0;
    std::optional<HoleCertificate> best_cert_;
    Path path_;
};

}  // namespace detail

// Maximum-length hole, or nothing when G is chordal. Exhaustive; meant for n up to ~30.
inline std::optional<HoleCertificate> longest_hole(const Graph& g) {
    return detail::HoleSearch(g, 4, false).run();
}

inline std::optional<HoleCertificate> has_hole_at_least(const Graph& g, std::size_t t) {
    if (t < 4) throw ParameterError("hole threshold must be at least 4, got " + std::to_string(t));
    return detail::HoleSearch(g, t, true).run();
}

// Lexicographic breadth-first search order (first visited first). Ties go to the
// smallest vertex.
inline std::vector<Vertex> lex_bfs_order(const Graph& g) {
    const std::size_t n = g.order();
    std::vector<std::vector<std::size_t>> label(n);
    std::vector<bool> done(n, false);
    std::vector<Vertex> order;
    order.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        std::optional<Vertex> pick;
        for (Vertex v = 0; v < n; ++v)
            if (!done[v] && (!pick || label[v] > label[*pick])) pick = v;
        done[*pick] = true;
        order.push_back(*pick);
        for (Vertex w : g.neighbors(*pick))
            if (!done[w]) label[w].push_back(n - step);
    }
    return order;
}

// `order` is a perfect elimination ordering iff for each vertex, its neighbours
// later in the order form a clique.
inline bool is_perfect_elimination_order(const Graph& g, std::span<const Vertex> order) {
    std::vector<std::size_t> pos(g.order());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    for (std::size_t i = 0; i < order.size(); ++i) {
        std::vector<Vertex> later;
        for (Vertex w : g.neighbors(order[i]))
            if (pos[w] > i) later.push_back(w);
        for (std::size_t a = 0; a < later.size(); ++a)
            for (std::size_t b = a + 1; b < later.size(); ++b)
                if (!g.adjacent(later[a], later[b])) return false;
    }
    return true;
}

inline bool is_chordal(const Graph& g) {
    auto order = lex_bfs_order(g);
    std::reverse(order.begin(), order.end());
    return is_perfect_elimination_order(g, order);
}

struct InducedPath {
    std::size_t vertices = 0;
    Path path;
};

namespace detail {

// Depth-first search over induced extensions of `path`. Children are tried in
// increasing order and only strictly longer paths replace the incumbent, so the
// recorded witness is the lexicographically smallest among the longest.
class InducedPathSearch {
public:
    InducedPathSearch(const Graph& g, std::size_t target) : g_(g), target_(target) {}

    InducedPath from(Vertex v) {
        best_ = {};
        path_ = {v};
        VertexSet blocked(g_.order());
        grow(blocked);
        return best_;
    }

    bool reached_target() const { return target_ && best_.vertices >= target_; }

private:
    void grow(const VertexSet& blocked) {
        if (path_.size() > best_.vertices) best_ = {path_.size(), path_};
        if (reached_target()) return;
        const Vertex last = path_.back();
        VertexSet next_blocked = blocked | g_.closed_set(last);
        std::size_t bound = path_.size() + (g_.all_vertices() - next_blocked).size() + 1;
        if (bound <= best_.vertices) return;
        for (Vertex y : g_.neighbors(last)) {
            if (blocked.contains(y)) continue;
            path_.push_back(y);
            grow(next_blocked);
            path_.pop_back();
            if (reached_target()) return;
        }
    }

    const Graph& g_;
    std::size_t target_;
    InducedPath best_;
    Path path_;
};

}  // namespace detail

// z(v): number of vertices of a longest induced path whose first vertex is v.
inline InducedPath z_value(const Graph& g, Vertex v) {
    if (v >= g.order()) throw RangeError("z_value: vertex out of range");
    return detail::InducedPathSearch(g, 0).from(v);
}

struct ZOfGraph {
    std::size_t z = 0;
    Vertex argmin = 0;
};

// z(G) = min over v of z(v); the smallest-index argmin is reported.
inline ZOfGraph z_of_graph(const Graph& g) {
    if (g.order() == 0) throw PreconditionError("z_of_graph: empty graph");
    ZOfGraph best{z_value(g, 0).vertices, 0};
    for (Vertex v = 1; v < g.order(); ++v) {
        auto z = z_value(g, v).vertices;
        if (z < best.z) best = {z, v};
    }
    return best;
}

struct PtFreeness {
    bool free = true;
    std::optional<Path> witness;  // an induced path on exactly t vertices
};

inline PtFreeness is_pt_free(const Graph& g, std::size_t t) {
    if (t < 2) throw ParameterError("is_pt_free needs t >= 2");
    for (Vertex v = 0; v < g.order(); ++v) {
        detail::InducedPathSearch search(g, t);
        auto found = search.from(v);
        if (found.vertices >= t) {
            found.path.resize(t);
            return {false, std::move(found.path)};
        }
    }
    return {};
}

}  // namespace pursuit

#endif  // PURSUIT_STRUCTURE_HPP
