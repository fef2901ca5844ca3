#ifndef PURSUIT_DILWORTH_HPP
#define PURSUIT_DILWORTH_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "pursuit/graph.hpp"
#include "pursuit/graph_io.hpp"

namespace pursuit {

// Vicinal preorder: u <= v iff N(u) is contained in N[v].
inline bool vicinal_leq(const Graph& g, Vertex u, Vertex v) {
    return g.open_set(u).is_subset_of(g.closed_set(v));
}

// Some vertex of N(u) \ N[v], the smallest one.
inline std::optional<Vertex> private_neighbor(const Graph& g, Vertex u, Vertex v) {
    return (g.open_set(u) - g.closed_set(v)).first();
}

struct DilworthCertificate {
    std::vector<Vertex> antichain;
    // witnesses[{u, v}] is a vertex in N(u) \ N[v], for every ordered pair of distinct members.
    std::map<std::pair<Vertex, Vertex>, Vertex> witnesses;
};

inline bool validate(const Graph& g, const DilworthCertificate& cert) {
    for (Vertex u : cert.antichain) {
        if (u >= g.order()) return false;
        for (Vertex v : cert.antichain) {
            if (u == v) continue;
            auto it = cert.witnesses.find({u, v});
            if (it == cert.witnesses.end()) return false;
            Vertex w = it->second;
            if (w >= g.order() || !g.adjacent(u, w) || g.closed_set(v).contains(w)) return false;
        }
    }
    return true;
}

inline json to_json(const DilworthCertificate& cert) {
    json witnesses = json::object();
    for (const auto& [pair, w] : cert.witnesses)
        witnesses[std::to_string(pair.first) + "," + std::to_string(pair.second)] = w;
    return json{{"type", "dilworth"}, {"antichain", cert.antichain}, {"witnesses", std::move(witnesses)}};
}

inline DilworthCertificate make_dilworth_certificate(const Graph& g, std::vector<Vertex> antichain) {
    DilworthCertificate cert;
    std::sort(antichain.begin(), antichain.end());
    for (Vertex u : antichain)
        for (Vertex v : antichain)
            if (u != v)
                if (auto w = private_neighbor(g, u, v)) cert.witnesses[{u, v}] = *w;
    cert.antichain = std::move(antichain);
    return cert;
}

namespace detail {

// Kuhn's augmenting-path matching; left and right sides share the index range.
class BipartiteMatching {
public:
    explicit BipartiteMatching(const std::vector<std::vector<std::size_t>>& adj)
        : adj_(adj), match_left_(adj.size(), kNone), match_right_(adj.size(), kNone) {
        for (std::size_t u = 0; u < adj_.size(); ++u) {
            visited_.assign(adj_.size(), false);
            if (augment(u)) ++size_;
        }
    }

    std::size_t size() const { return size_; }

    // Left vertices reachable from unmatched left vertices along alternating paths,
    // and the right vertices reached on the way (Koenig's construction).
    std::pair<std::vector<bool>, std::vector<bool>> alternating_reach() const {
        std::vector<bool> left(adj_.size(), false), right(adj_.size(), false);
        std::vector<std::size_t> stack;
        for (std::size_t u = 0; u < adj_.size(); ++u)
            if (match_left_[u] == kNone) {
                left[u] = true;
                stack.push_back(u);
            }
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t r : adj_[u]) {
                if (right[r] || match_left_[u] == r) continue;
                right[r] = true;
                std::size_t next = match_right_[r];
                if (next != kNone && !left[next]) {
                    left[next] = true;
                    stack.push_back(next);
                }
            }
        }
        return {left, right};
    }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    bool augment(std::size_t u) {
        for (std::size_t r : adj_[u]) {
            if (visited_[r]) continue;
            visited_[r] = true;
            if (match_right_[r] == kNone || augment(match_right_[r])) {
                match_left_[u] = r;
                match_right_[r] = u;
                return true;
            }
        }
        return false;
    }

    const std::vector<std::vector<std::size_t>>& adj_;
    std::vector<std::size_t> match_left_, match_right_;
    std::vector<bool> visited_;
    std::size_t size_ = 0;
};

}  // namespace detail

struct DilworthResult {
    std::size_t number = 0;
    DilworthCertificate certificate;
};

namespace detail {

// Strict order on condensation classes plus a width query on any subset of them.
class VicinalClasses {
public:
    explicit VicinalClasses(const Graph& g) {
        const std::size_t n = g.order();
        std::vector<std::size_t> class_of(n, kNone);
        for (Vertex v = 0; v < n; ++v) {
            if (class_of[v] != kNone) continue;
            class_of[v] = representative_.size();
            for (Vertex w = v + 1; w < n; ++w)
                if (class_of[w] == kNone && vicinal_leq(g, v, w) && vicinal_leq(g, w, v)) class_of[w] = representative_.size();
            representative_.push_back(v);
        }
        const std::size_t c = representative_.size();
        less_.assign(c, std::vector<bool>(c, false));
        for (std::size_t x = 0; x < c; ++x)
            for (std::size_t y = 0; y < c; ++y)
                less_[x][y] = x != y && vicinal_leq(g, representative_[x], representative_[y]);
    }

    std::size_t size() const { return representative_.size(); }
    Vertex representative(std::size_t x) const { return representative_[x]; }
    bool comparable(std::size_t x, std::size_t y) const { return less_[x][y] || less_[y][x]; }

    // Width of the suborder on `subset`; fills `antichain` with a maximum antichain.
    std::size_t width(const std::vector<std::size_t>& subset, std::vector<std::size_t>* antichain = nullptr) const {
        std::vector<std::vector<std::size_t>> below(subset.size());
        for (std::size_t i = 0; i < subset.size(); ++i)
            for (std::size_t j = 0; j < subset.size(); ++j)
                if (less_[subset[i]][subset[j]]) below[i].push_back(j);
        BipartiteMatching matching(below);
        std::size_t w = subset.size() - matching.size();
        if (antichain) {
            auto [left, right] = matching.alternating_reach();
            antichain->clear();
            for (std::size_t i = 0; i < subset.size(); ++i)
                if (left[i] && !right[i]) antichain->push_back(subset[i]);
            if (antichain->size() != w) throw ContractError("dilworth_number: antichain size disagrees with chain cover");
        }
        return w;
    }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<Vertex> representative_;
    std::vector<std::vector<bool>> less_;
};

}  // namespace detail

// Width of the vicinal preorder. Mutually comparable vertices collapse into one
// class (represented by its smallest vertex); the strict order on classes is already
// transitive, so a maximum matching on it gives a minimum chain cover and, through
// Koenig's theorem, a maximum antichain. The reported antichain is the
// lexicographically smallest maximum one.
inline DilworthResult dilworth_number(const Graph& g) {
    if (g.order() == 0) return {};
    detail::VicinalClasses classes(g);
    std::vector<std::size_t> all(classes.size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::size_t> koenig;
    const std::size_t width = classes.width(all, &koenig);

    std::vector<std::size_t> chosen;
    for (std::size_t x = 0; x < classes.size() && chosen.size() < width; ++x) {
        bool free = std::none_of(chosen.begin(), chosen.end(), [&](std::size_t y) { return classes.comparable(x, y); });
        if (!free) continue;
        std::vector<std::size_t> rest;
        for (std::size_t y = x + 1; y < classes.size(); ++y)
            if (!classes.comparable(x, y) &&
                std::none_of(chosen.begin(), chosen.end(), [&](std::size_t c) { return classes.comparable(y, c); }))
                rest.push_back(y);
        if (chosen.size() + 1 + classes.width(rest) == width) chosen.push_back(x);
    }
    if (chosen.size() != width) throw ContractError("dilworth_number: canonical antichain is not maximum");

    std::vector<Vertex> antichain;
    for (std::size_t x : chosen) antichain.push_back(classes.representative(x));
    DilworthResult out;
    out.number = width;
    out.certificate = make_dilworth_certificate(g, std::move(antichain));
    return out;
}

inline constexpr std::size_t kDilworthBruteMaxOrder = 18;

// Largest pairwise-incomparable vertex set by exhaustive subset search.
inline std::size_t dilworth_brute(const Graph& g, std::size_t max_order = kDilworthBruteMaxOrder) {
    const std::size_t n = g.order();
    if (n > max_order)
        throw ParameterError("dilworth_brute refuses graphs with more than " + std::to_string(max_order) +
                             " vertices (got " + std::to_string(n) + ")");
    std::vector<std::vector<bool>> incomparable(n, std::vector<bool>(n, false));
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            incomparable[u][v] = u != v && !vicinal_leq(g, u, v) && !vicinal_leq(g, v, u);

    std::size_t best = n ? 1 : 0;
    std::vector<Vertex> chosen;
    auto search = [&](auto&& self, Vertex next) -> void {
        best = std::max(best, chosen.size());
        if (chosen.size() + (n - next) <= best) return;
        for (Vertex v = next; v < n; ++v) {
            bool ok = true;
            for (Vertex u : chosen) ok = ok && incomparable[u][v];
            if (!ok) continue;
            chosen.push_back(v);
            self(self, v + 1);
            chosen.pop_back();
        }
    };
    search(search, 0);
    return best;
}

}  // namespace pursuit

#endif  // PURSUIT_DILWORTH_HPP
