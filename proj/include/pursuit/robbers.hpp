#ifndef PURSUIT_ROBBERS_HPP
#define PURSUIT_ROBBERS_HPP

#include <deque>
#include <limits>

#include "pursuit/game.hpp"
#include "pursuit/generators.hpp"

namespace pursuit {

// Distance from every vertex to the nearest cop.
inline std::vector<int> distance_to_cops(const Graph& g, const std::vector<Vertex>& cops) {
    std::vector<int> dist(g.order(), -1);
    std::deque<Vertex> queue;
    for (Vertex c : cops) {
        if (dist[c] < 0) {
            dist[c] = 0;
            queue.push_back(c);
        }
    }
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        for (Vertex w : g.neighbors(u))
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

namespace detail {

// Vertices not on or next to a cop; falls back to unoccupied, then to everything.
inline std::vector<Vertex> safe_placements(const Graph& g, const GameState& state) {
    VertexSet danger = closed_neighborhood(g, state.cops);
    auto safe = (g.all_vertices() - danger).members();
    if (!safe.empty()) return safe;
    VertexSet occupied(g.order());
    for (Vertex c : state.cops) occupied.insert(c);
    auto free = (g.all_vertices() - occupied).members();
    return free.empty() ? g.all_vertices().members() : free;
}

}  // namespace detail

class StationaryRobber final : public RobberStrategy {
public:
    Vertex place(const Graph& g, const GameState& state) override { return detail::safe_placements(g, state).front(); }
    Vertex respond(const Graph&, const GameState& state) override { return *state.robber; }
};

// Uniform over N[r] minus cop-occupied vertices (stays put when boxed in).
class RandomWalkRobber final : public RobberStrategy {
public:
    explicit RandomWalkRobber(std::uint64_t seed) : rng_(seed) {}

    Vertex place(const Graph& g, const GameState& state) override {
        auto options = detail::safe_placements(g, state);
        return options[rng_.below(options.size())];
    }
    Vertex respond(const Graph& g, const GameState& state) override {
        std::vector<Vertex> options;
        for (Vertex v : g.closed_set(*state.robber).members())
            if (!state.cop_on(v)) options.push_back(v);
        if (options.empty()) return *state.robber;
        return options[rng_.below(options.size())];
    }

private:
    Rng rng_;
};

// Maximises graph distance to the nearest cop; ties go to the smallest vertex.
class GreedyMaxDistanceRobber final : public RobberStrategy {
public:
    Vertex place(const Graph& g, const GameState& state) override {
        return best_of(g.all_vertices().members(), distance_to_cops(g, state.cops));
    }
    Vertex respond(const Graph& g, const GameState& state) override {
        return best_of(g.closed_set(*state.robber).members(), distance_to_cops(g, state.cops));
    }

private:
    static Vertex best_of(const std::vector<Vertex>& options, const std::vector<int>& dist) {
        Vertex best = options.front();
        for (Vertex v : options)
            if (dist[v] > dist[best]) best = v;
        return best;
    }
};

// Baseline pursuer: all cops start on the smallest vertex of minimum eccentricity and
// each steps to a neighbour minimising its distance to the robber.
class GreedyCop final : public CopStrategy {
public:
    CopMove place(const Graph& g, std::size_t k) override {
        Vertex center = 0;
        int best = std::numeric_limits<int>::max();
        for (Vertex v = 0; v < g.order(); ++v) {
            auto dist = bfs_distances(g, v);
            int ecc = *std::max_element(dist.begin(), dist.end());
            if (ecc < best) {
                best = ecc;
                center = v;
            }
        }
        return CopMove(k, center);
    }
    CopMove respond(const Graph& g, const GameState& state) override {
        auto dist = bfs_distances(g, *state.robber);
        CopMove move;
        for (Vertex c : state.cops) {
            Vertex best = c;
            for (Vertex w : g.neighbors(c))
                if (dist[w] < dist[best]) best = w;
            move.push_back(best);
        }
        return move;
    }
};

}  // namespace pursuit

#endif  // PURSUIT_ROBBERS_HPP
