#ifndef PURSUIT_GRAPH_HPP
#define PURSUIT_GRAPH_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pursuit/errors.hpp"

namespace pursuit {

using Vertex = std::uint32_t;
using Path = std::vector<Vertex>;
using Edge = std::pair<Vertex, Vertex>;

// Fixed-universe bitset over the vertices 0..n-1.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t universe) : n_(universe), words_((universe + 63) / 64, 0) {}
    VertexSet(std::size_t universe, std::initializer_list<Vertex> members) : VertexSet(universe) {
        for (Vertex v : members) insert(v);
    }

    static VertexSet full(std::size_t universe) {
        VertexSet s(universe);
        for (std::size_t i = 0; i < s.words_.size(); ++i) s.words_[i] = ~std::uint64_t{0};
        s.trim();
        return s;
    }

    std::size_t universe() const noexcept { return n_; }

    bool contains(Vertex v) const noexcept {
        return v < n_ && ((words_[v >> 6] >> (v & 63)) & 1u);
    }
    void insert(Vertex v) {
        if (v >= n_) throw RangeError("vertex " + std::to_string(v) + " outside universe of size " +
                                      std::to_string(n_));
        words_[v >> 6] |= std::uint64_t{1} << (v & 63);
    }
    void erase(Vertex v) noexcept {
        if (v < n_) words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }

    std::size_t size() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool empty() const noexcept {
        return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
    }

    // Smallest member, if any.
    std::optional<Vertex> first() const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return static_cast<Vertex>(i * 64 + std::countr_zero(words_[i]));
        return std::nullopt;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                f(static_cast<Vertex>(i * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<Vertex> members() const {
        std::vector<Vertex> out;
        out.reserve(size());
        for_each([&](Vertex v) { out.push_back(v); });
        return out;
    }

    bool intersects(const VertexSet& o) const noexcept {
        for (std::size_t i = 0; i < std::min(words_.size(), o.words_.size()); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    bool is_subset_of(const VertexSet& o) const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t other = i < o.words_.size() ? o.words_[i] : 0;
            if (words_[i] & ~other) return false;
        }
        return true;
    }

    VertexSet& operator|=(const VertexSet& o) {
        for (std::size_t i = 0; i < std::min(words_.size(), o.words_.size()); ++i) words_[i] |= o.words_[i];
        trim();
        return *this;
    }
    VertexSet& operator&=(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= i < o.words_.size() ? o.words_[i] : 0;
        return *this;
    }
    // Set difference.
    VertexSet& operator-=(const VertexSet& o) {
        for (std::size_t i = 0; i < std::min(words_.size(), o.words_.size()); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    void trim() noexcept {
        if (n_ % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

// Immutable simple undirected graph on vertices 0..n-1.
class Graph {
public:
    Graph() = default;

    std::size_t order() const noexcept { return adj_.size(); }
    std::size_t edge_count() const noexcept { return edges_; }

    // Sorted ascending, no duplicates.
    std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(v); }
    std::size_t degree(Vertex v) const { return adj_.at(v).size(); }
    const VertexSet& open_set(Vertex v) const { return open_.at(v); }
    const VertexSet& closed_set(Vertex v) const { return closed_.at(v); }
    bool adjacent(Vertex u, Vertex v) const noexcept { return u < order() && open_[u].contains(v); }

    // Edges as (u, v) with u < v, lexicographically sorted.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edges_);
        for (Vertex u = 0; u < order(); ++u)
            for (Vertex v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    VertexSet all_vertices() const { return VertexSet::full(order()); }

    friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

    friend Graph build_graph(std::size_t n, std::span<const Edge> edge_list);

private:
    std::vector<std::vector<Vertex>> adj_;
    std::vector<VertexSet> open_;
    std::vector<VertexSet> closed_;
    std::size_t edges_ = 0;
};

inline Graph build_graph(std::size_t n, std::span<const Edge> edge_list) {
    Graph g;
    g.adj_.assign(n, {});
    for (const auto& [u, v] : edge_list) {
        std::string pair = "(" + std::to_string(u) + "," + std::to_string(v) + ")";
        if (u >= n || v >= n) throw GraphError("edge " + pair + " has an endpoint >= n = " + std::to_string(n));
        if (u == v) throw GraphError("edge " + pair + " is a self-loop");
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
    }
    g.open_.reserve(n);
    g.closed_.reserve(n);
    for (Vertex v = 0; v < n; ++v) {
        auto& list = g.adj_[v];
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        g.edges_ += list.size();
        VertexSet open(n);
        for (Vertex w : list) open.insert(w);
        VertexSet closed = open;
        closed.insert(v);
        g.open_.push_back(std::move(open));
        g.closed_.push_back(std::move(closed));
    }
    g.edges_ /= 2;
    return g;
}

inline Graph build_graph(std::size_t n, std::initializer_list<Edge> edge_list) {
    return build_graph(n, std::span<const Edge>(edge_list.begin(), edge_list.size()));
}

inline Graph build_graph(std::size_t n, const std::vector<Edge>& edge_list) {
    return build_graph(n, std::span<const Edge>(edge_list));
}

// Subgraph induced on `keep`, relabelled to 0..|keep|-1 in increasing order.
inline Graph induced_subgraph(const Graph& g, const VertexSet& keep) {
    std::vector<Vertex> members = keep.members();
    std::vector<Vertex> index(g.order(), 0);
    for (Vertex i = 0; i < members.size(); ++i) index[members[i]] = i;
    std::vector<Edge> edges;
    for (const auto& [u, v] : g.edges())
        if (keep.contains(u) && keep.contains(v)) edges.emplace_back(index[u], index[v]);
    return build_graph(members.size(), edges);
}

inline VertexSet closed_neighborhood(const Graph& g, Vertex v) {
    if (v >= g.order())
        throw RangeError("vertex " + std::to_string(v) + " out of range for n = " + std::to_string(g.order()));
    return g.closed_set(v);
}

// Union of N[v] over the given vertices.
inline VertexSet closed_neighborhood(const Graph& g, std::span<const Vertex> vs) {
    VertexSet out(g.order());
    for (Vertex v : vs) out |= closed_neighborhood(g, v);
    return out;
}

inline VertexSet component_of(const Graph& g, const VertexSet& within, Vertex v) {
    if (!within.contains(v))
        throw PreconditionError("component_of: vertex " + std::to_string(v) + " is not in the given set");
    VertexSet seen(g.order());
    seen.insert(v);
    std::vector<Vertex> stack{v};
    while (!stack.empty()) {
        Vertex u = stack.back();
        stack.pop_back();
        for (Vertex w : g.neighbors(u)) {
            if (within.contains(w) && !seen.contains(w)) {
                seen.insert(w);
                stack.push_back(w);
            }
        }
    }
    return seen;
}

// Components of G[within], ordered by smallest member.
inline std::vector<VertexSet> components_within(const Graph& g, const VertexSet& within) {
    std::vector<VertexSet> out;
    VertexSet rest = within;
    while (auto v = rest.first()) {
        out.push_back(component_of(g, rest, *v));
        rest -= out.back();
    }
    return out;
}

inline bool is_connected(const Graph& g) {
    if (g.order() == 0) return false;
    return component_of(g, g.all_vertices(), 0).size() == g.order();
}

// BFS distances from `src`; unreachable vertices get -1.
inline std::vector<int> bfs_distances(const Graph& g, Vertex src) {
    std::vector<int> dist(g.order(), -1);
    std::deque<Vertex> queue{src};
    dist.at(src) = 0;
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        for (Vertex w : g.neighbors(u)) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

// Minimum-edge path src..dst whose internal vertices all lie in `within`.
// Among shortest paths, the lexicographically smallest vertex sequence is returned.
inline std::optional<Path> shortest_path_within(const Graph& g, const VertexSet& within, Vertex src, Vertex dst) {
    if (src >= g.order() || dst >= g.order()) throw RangeError("shortest_path_within: endpoint out of range");
    if (src == dst) return Path{src};
    // Distances to dst over internal vertices in `within`, then walk greedily from src
    // taking the smallest neighbor that stays on a shortest route.
    std::vector<int> dist(g.order(), -1);
    dist[dst] = 0;
    std::deque<Vertex> queue{dst};
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        for (Vertex w : g.neighbors(u)) {
            if (dist[w] >= 0) continue;
            if (w == src) {
                dist[w] = dist[u] + 1;
                continue;
            }
            if (!within.contains(w)) continue;
            dist[w] = dist[u] + 1;
            queue.push_back(w);
        }
    }
    if (dist[src] < 0) return std::nullopt;
    Path path{src};
    Vertex cur = src;
    while (cur != dst) {
        for (Vertex w : g.neighbors(cur)) {
            if (dist[w] == dist[cur] - 1 && (w == dst || within.contains(w))) {
                cur = w;
                break;
            }
        }
        path.push_back(cur);
    }
    return path;
}

inline bool is_induced_path(const Graph& g, std::span<const Vertex> seq) {
    if (seq.empty()) return false;
    VertexSet seen(g.order());
    for (Vertex v : seq) {
        if (v >= g.order() || seen.contains(v)) return false;
        seen.insert(v);
    }
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j)
            if (g.adjacent(seq[i], seq[j]) != (j == i + 1)) return false;
    return true;
}

inline bool is_induced_path(const Graph& g, const Path& seq) { return is_induced_path(g, std::span<const Vertex>(seq)); }

// Induced cycle of length >= 4 given in cyclic order.
inline bool is_hole(const Graph& g, std::span<const Vertex> cycle) {
    const std::size_t len = cycle.size();
    if (len < 4) return false;
    VertexSet seen(g.order());
    for (Vertex v : cycle) {
        if (v >= g.order() || seen.contains(v)) return false;
        seen.insert(v);
    }
    for (std::size_t i = 0; i < len; ++i) {
        for (std::size_t j = i + 1; j < len; ++j) {
            bool consecutive = (j == i + 1) || (i == 0 && j == len - 1);
            if (g.adjacent(cycle[i], cycle[j]) != consecutive) return false;
        }
    }
    return true;
}

}  // namespace pursuit

#endif  // PURSUIT_GRAPH_HPP
