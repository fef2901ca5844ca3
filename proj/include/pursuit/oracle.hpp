#ifndef PURSUIT_ORACLE_HPP
#define PURSUIT_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "pursuit/game.hpp"
#include "pursuit/graph.hpp"

namespace pursuit {

inline constexpr std::size_t kDefaultStateBudget = 10'000'000;

// Number of multisets of size k over n symbols, saturating at SIZE_MAX.
inline std::size_t multiset_count(std::size_t n, std::size_t k) {
    if (n == 0) return k == 0 ? 1 : 0;
    long double c = 1;
    for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<long double>(n - 1 + i) / static_cast<long double>(i);
    if (c >= static_cast<long double>(std::numeric_limits<std::size_t>::max())) return std::numeric_limits<std::size_t>::max();
    return static_cast<std::size_t>(c + 0.5L);
}

// States of the k-cop game: sorted cop tuple x robber vertex x side to move.
inline std::size_t oracle_state_count(std::size_t n, std::size_t k) {
    std::size_t configs = multiset_count(n, k);
    if (configs > std::numeric_limits<std::size_t>::max() / (2 * std::max<std::size_t>(n, 1)))
        return std::numeric_limits<std::size_t>::max();
    return configs * n * 2;
}

namespace detail {

// Cop configurations as sorted tuples of every size 0..k, ranked colexicographically,
// plus the intermediate positions of a cop turn in which the cops move one at a time.
// A layer-j position (M, U) has j cops already moved to the multiset M while the
// multiset U still waits; the smallest waiting cop always moves next.
class CopLayers {
public:
    CopLayers(std::size_t n, std::size_t k) : n_(n), k_(k) {
        const std::size_t top = n + k + 1;
        binom_.assign(top * (k + 1), 0);
        for (std::size_t a = 0; a < top; ++a) {
            binom_[a * (k + 1)] = 1;
            for (std::size_t b = 1; b <= k && b <= a; ++b)
                binom_[a * (k + 1) + b] = binom_[(a - 1) * (k + 1) + b - 1] + (b <= a - 1 ? binom_[(a - 1) * (k + 1) + b] : 0);
        }
        tuples_.resize(k + 1);
        count_.resize(k + 1);
        for (std::size_t j = 0; j <= k; ++j) {
            count_[j] = multiset_count(n, j);
            tuples_[j].assign(count_[j] * j, 0);
            if (j == 0 || n == 0) continue;
            std::vector<Vertex> tuple(j, 0);
            while (true) {
                std::copy(tuple.begin(), tuple.end(), tuples_[j].begin() + static_cast<std::ptrdiff_t>(rank(tuple) * j));
                std::size_t i = j;
                while (i > 0 && tuple[i - 1] + 1 == n) --i;
                if (i == 0) break;
                ++tuple[i - 1];
                for (std::size_t m = i; m < j; ++m) tuple[m] = tuple[i - 1];
            }
        }
        offset_.assign(k + 2, 0);
        for (std::size_t j = 0; j <= k; ++j) offset_[j + 1] = offset_[j] + count_[j] * count_[k - j];
    }

    std::size_t count(std::size_t size) const { return count_[size]; }
    std::span<const Vertex> tuple(std::size_t size, std::size_t rank) const {
        return std::span<const Vertex>(tuples_[size]).subspan(rank * size, size);
    }
    std::size_t rank(std::span<const Vertex> sorted) const {
        std::size_t r = 0;
        for (std::size_t i = 0; i < sorted.size(); ++i) r += binom_[(sorted[i] + i) * (k_ + 1) + i + 1];
        return r;
    }
    std::size_t positions() const { return offset_[k_ + 1]; }
    std::size_t index(std::size_t j, std::size_t moved, std::size_t waiting) const {
        return offset_[j] + moved * count_[k_ - j] + waiting;
    }

private:
    std::size_t n_, k_;
    std::vector<std::size_t> binom_;  // binom_[a * (k + 1) + b] = C(a, b)
    std::vector<std::vector<Vertex>> tuples_;
    std::vector<std::size_t> count_, offset_;
};

}  // namespace detail

// Exact capture distances for every position of the k-cop game on one graph.
// Cops are interchangeable, so a cop configuration is a sorted k-tuple ranked in
// colexicographic order. Distances count cop move-turns; kInfinite marks robber wins.
class OracleTable {
public:
    using Distance = std::uint16_t;
    static constexpr Distance kInfinite = std::numeric_limits<Distance>::max();

    const Graph& graph() const noexcept { return *graph_; }
    std::size_t k() const noexcept { return k_; }
    std::size_t config_count() const noexcept { return layers_->count(k_); }
    std::size_t state_count() const noexcept { return cops_to_move_.size() * 2; }
    const detail::CopLayers& layers() const noexcept { return *layers_; }

    std::span<const Vertex> config(std::size_t index) const { return layers_->tuple(k_, index); }
    bool config_holds(std::size_t index, Vertex v) const {
        for (Vertex c : config(index))
            if (c == v) return true;
        return false;
    }
    // Rank of a cop multiset (any order).
    std::size_t config_index(std::span<const Vertex> cops) const {
        std::vector<Vertex> sorted(cops.begin(), cops.end());
        std::sort(sorted.begin(), sorted.end());
        return layers_->rank(sorted);
    }

    // Cops to move with the robber on r (0 when a cop already holds r).
    Distance cops_to_move(std::size_t index, Vertex r) const { return cops_to_move_[index * n() + r]; }
    Distance robber_to_move(std::size_t index, Vertex r) const { return robber_to_move_[index * n() + r]; }

    // Value of a cop placement: the robber picks the worst vertex for the cops.
    Distance placement_value(std::size_t index) const {
        Distance worst = 0;
        for (Vertex r = 0; r < n(); ++r) worst = std::max(worst, cops_to_move(index, r));
        return worst;
    }

    // Best cop placement; ties go to the lexicographically smallest tuple.
    std::size_t best_placement() const {
        std::size_t best = 0;
        for (std::size_t i = 1; i < config_count(); ++i) {
            auto vi = placement_value(i), vb = placement_value(best);
            if (vi < vb || (vi == vb && std::ranges::lexicographical_compare(config(i), config(best)))) best = i;
        }
        return best;
    }
    Distance root_value() const { return placement_value(best_placement()); }
    bool cops_win() const { return root_value() != kInfinite; }

    friend OracleTable solve(const Graph& g, std::size_t k, std::size_t budget);

private:
    std::size_t n() const noexcept { return graph_->order(); }

    std::shared_ptr<const Graph> graph_;
    std::size_t k_ = 0;
    std::shared_ptr<const detail::CopLayers> layers_;
    std::vector<Distance> cops_to_move_;
    std::vector<Distance> robber_to_move_;
};

// Retrograde analysis from the capture positions, level by level in distance order,
// so every position is finalised exactly once with its exact distance. A cop turn is
// unfolded into k single-cop steps, so the backward search from a robber-to-move
// position walks the intermediate layers instead of whole joint moves.
inline OracleTable solve(const Graph& g, std::size_t k, std::size_t budget = kDefaultStateBudget) {
    if (k < 1) throw ParameterError("the oracle needs k >= 1");
    const std::size_t n = g.order();
    const std::size_t states = oracle_state_count(n, k);
    if (states > budget) throw BudgetExceeded(states, budget);

    OracleTable t;
    t.graph_ = std::make_shared<const Graph>(g);
    t.k_ = k;
    t.layers_ = std::make_shared<const detail::CopLayers>(n, k);
    const detail::CopLayers& L = *t.layers_;
    const std::size_t configs = L.count(k);

    using Distance = OracleTable::Distance;
    constexpr Distance inf = OracleTable::kInfinite;
    t.cops_to_move_.assign(configs * n, inf);
    t.robber_to_move_.assign(configs * n, inf);
    // Unsettled robber options (stay or step) per robber-to-move position.
    std::vector<std::uint32_t> counter(configs * n);
    for (std::size_t ci = 0; ci < configs; ++ci)
        for (Vertex r = 0; r < n; ++r) counter[ci * n + r] = static_cast<std::uint32_t>(g.degree(r) + 1);
    std::vector<bool> reached(L.positions() * n, false);

    struct Layered {
        std::size_t j, moved, waiting;
    };
    std::vector<Layered> stack;
    std::vector<Vertex> fewer(k), more(k);

    std::vector<std::size_t> cop_level, robber_level, next_cop_level;
    for (std::size_t ci = 0; ci < configs; ++ci) {
        for (Vertex c : t.config(ci)) {
            std::size_t s = ci * n + c;
            if (t.cops_to_move_[s] == 0) continue;
            t.cops_to_move_[s] = 0;
            t.robber_to_move_[s] = 0;
            cop_level.push_back(s);
            robber_level.push_back(s);
        }
    }
    for (Distance d = 0; !cop_level.empty() || !robber_level.empty(); ++d) {
        if (d == inf - 1) throw ContractError("oracle distance overflow");
        // A robber-to-move position is settled once all its options are settled; the
        // last one settled carries the maximum distance.
        for (std::size_t s : cop_level) {
            std::size_t ci = s / n;
            Vertex r = static_cast<Vertex>(s % n);
            auto visit = [&](Vertex from) {
                std::size_t p = ci * n + from;
                if (t.robber_to_move_[p] != inf) return;
                if (--counter[p] == 0) {
                    t.robber_to_move_[p] = d;
                    robber_level.push_back(p);
                }
            };
            visit(r);
            for (Vertex from : g.neighbors(r)) visit(from);
        }
        // A cops-to-move position is settled by its first settled option.
        for (std::size_t s : robber_level) {
            const std::size_t ci = s / n;
            const Vertex r = static_cast<Vertex>(s % n);
            auto reach = [&](std::size_t j, std::size_t moved, std::size_t waiting) {
                std::size_t p = L.index(j, moved, waiting) * n + r;
                if (reached[p]) return;
                reached[p] = true;
                if (j > 0) {
                    stack.push_back({j, moved, waiting});
                    return;
                }
                std::size_t q = waiting * n + r;
                if (t.cops_to_move_[q] != inf) return;
                t.cops_to_move_[q] = static_cast<Distance>(d + 1);
                next_cop_level.push_back(q);
            };
            reach(k, ci, 0);
            while (!stack.empty()) {
                auto [j, moved, waiting] = stack.back();
                stack.pop_back();
                auto m = L.tuple(j, moved);
                auto u = L.tuple(k - j, waiting);
                // Undo the step that put some cop on y; it came from x <= every waiting cop.
                for (std::size_t i = 0; i < j; ++i) {
                    if (i > 0 && m[i] == m[i - 1]) continue;
                    const Vertex y = m[i];
                    std::copy(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(i), fewer.begin());
                    std::copy(m.begin() + static_cast<std::ptrdiff_t>(i) + 1, m.end(), fewer.begin() + static_cast<std::ptrdiff_t>(i));
                    const std::size_t moved_before = L.rank(std::span<const Vertex>(fewer).first(j - 1));
                    std::copy(u.begin(), u.end(), more.begin() + 1);
                    auto step_back = [&](Vertex x) {
                        if (!u.empty() && x > u[0]) return;
                        more[0] = x;
                        reach(j - 1, moved_before, L.rank(std::span<const Vertex>(more).first(k - j + 1)));
                    };
                    step_back(y);
                    for (Vertex x : g.neighbors(y)) step_back(x);
                }
            }
        }
        cop_level.swap(next_cop_level);
        next_cop_level.clear();
        robber_level.clear();
    }
    return t;
}

inline bool is_k_copwin(const Graph& g, std::size_t k, std::size_t budget = kDefaultStateBudget) {
    return solve(g, k, budget).cops_win();
}

// Smallest k <= k_max with a cop win, or nothing when k_max cops do not suffice.
inline std::optional<std::size_t> cop_number(const Graph& g, std::size_t k_max, std::size_t budget = kDefaultStateBudget) {
    if (k_max < 1) throw ParameterError("cop_number needs k_max >= 1");
    for (std::size_t k = 1; k <= k_max; ++k)
        if (is_k_copwin(g, k, budget)) return k;
    return std::nullopt;
}

// Number of positions where the stored distance disagrees with its recurrence. The
// best cop reply is recomputed forward, layer by layer, independently of the solver.
inline std::size_t fixpoint_violations(const OracleTable& t) {
    using Distance = OracleTable::Distance;
    constexpr Distance inf = OracleTable::kInfinite;
    const Graph& g = t.graph();
    const detail::CopLayers& L = t.layers();
    const std::size_t k = t.k(), n = g.order();
    std::vector<Distance> best(L.positions());
    std::vector<Vertex> grown(k);
    std::size_t bad = 0;
    for (Vertex r = 0; r < n; ++r) {
        for (std::size_t ci = 0; ci < t.config_count(); ++ci)
            best[L.index(k, ci, 0)] = t.config_holds(ci, r) ? Distance{0} : t.robber_to_move(ci, r);
        for (std::size_t j = k; j-- > 0;) {
            for (std::size_t moved = 0; moved < L.count(j); ++moved) {
                auto m = L.tuple(j, moved);
                for (std::size_t waiting = 0; waiting < L.count(k - j); ++waiting) {
                    auto u = L.tuple(k - j, waiting);
                    const std::size_t rest = L.rank(u.subspan(1));
                    Distance value = inf;
                    auto step = [&](Vertex y) {
                        auto at = std::upper_bound(m.begin(), m.end(), y) - m.begin();
                        std::copy(m.begin(), m.begin() + at, grown.begin());
                        grown[static_cast<std::size_t>(at)] = y;
                        std::copy(m.begin() + at, m.end(), grown.begin() + at + 1);
                        value = std::min(value, best[L.index(j + 1, L.rank(std::span<const Vertex>(grown).first(j + 1)), rest)]);
                    };
                    step(u[0]);
                    for (Vertex y : g.neighbors(u[0])) step(y);
                    best[L.index(j, moved, waiting)] = value;
                }
            }
        }
        for (std::size_t ci = 0; ci < t.config_count(); ++ci) {
            Distance c = t.cops_to_move(ci, r), rb = t.robber_to_move(ci, r);
            if (t.config_holds(ci, r)) {
                bad += (c != 0) + (rb != 0);
                continue;
            }
            Distance reply = best[L.index(0, 0, ci)];
            Distance expect_c = reply == inf ? inf : static_cast<Distance>(reply + 1);
            Distance worst = 0;
            for (Vertex to : g.closed_set(r).members())
                worst = std::max(worst, t.config_holds(ci, to) ? Distance{0} : t.cops_to_move(ci, to));
            bad += (c != expect_c) + (rb != worst);
        }
    }
    return bad;
}

inline json to_json(const OracleTable& t, std::size_t max_states = 100'000) {
    if (t.state_count() > max_states) throw BudgetExceeded(t.state_count(), max_states);
    json states = json::array();
    auto enc = [](OracleTable::Distance d) { return d == OracleTable::kInfinite ? json(nullptr) : json(d); };
    for (std::size_t ci = 0; ci < t.config_count(); ++ci)
        for (Vertex r = 0; r < t.graph().order(); ++r)
            states.push_back({{"cops", std::vector<Vertex>(t.config(ci).begin(), t.config(ci).end())},
                              {"robber", r},
                              {"cops_to_move", enc(t.cops_to_move(ci, r))},
                              {"robber_to_move", enc(t.robber_to_move(ci, r))}});
    return json{{"n", t.graph().order()}, {"k", t.k()}, {"states", std::move(states)}};
}

namespace detail {

inline void require_table(const OracleTable& t, const Graph& g, std::size_t k) {
    if (!(t.graph() == g) || t.k() != k) throw ContractError("oracle table was solved for a different graph or cop count");
}

}  // namespace detail

// Robber policy read off the table: maximise the capture distance (robber wins first),
// ties to the smallest vertex.
class OptimalEvader final : public RobberStrategy {
public:
    explicit OptimalEvader(std::shared_ptr<const OracleTable> table) : table_(std::move(table)) {}

    Vertex place(const Graph& g, const GameState& state) override {
        detail::require_table(*table_, g, state.k);
        return best_of(g.all_vertices().members(), table_->config_index(state.cops));
    }
    Vertex respond(const Graph& g, const GameState& state) override {
        detail::require_table(*table_, g, state.k);
        return best_of(g.closed_set(*state.robber).members(), table_->config_index(state.cops));
    }

private:
    Vertex best_of(const std::vector<Vertex>& options, std::size_t ci) const {
        Vertex best = options.front();
        auto value = [&](Vertex v) { return table_->config_holds(ci, v) ? 0 : table_->cops_to_move(ci, v); };
        for (Vertex v : options)
            if (value(v) > value(best)) best = v;
        return best;
    }

    std::shared_ptr<const OracleTable> table_;
};

// Cop policy read off the table: minimise the capture distance; ties go to the first
// assignment in lexicographic order of (cop 0 target, cop 1 target, ...).
class OptimalPursuer final : public CopStrategy {
public:
    explicit OptimalPursuer(std::shared_ptr<const OracleTable> table) : table_(std::move(table)) {}

    CopMove place(const Graph& g, std::size_t k) override {
        detail::require_table(*table_, g, k);
        auto cfg = table_->config(table_->best_placement());
        return CopMove(cfg.begin(), cfg.end());
    }

    CopMove respond(const Graph& g, const GameState& state) override {
        detail::require_table(*table_, g, state.k);
        const Vertex r = *state.robber;
        std::vector<std::vector<Vertex>> options;
        for (Vertex c : state.cops) options.push_back(g.closed_set(c).members());
        std::vector<std::size_t> digit(options.size(), 0);
        CopMove pick(options.size()), best;
        auto best_value = OracleTable::kInfinite;
        while (true) {
            for (std::size_t j = 0; j < options.size(); ++j) pick[j] = options[j][digit[j]];
            std::size_t ci = table_->config_index(pick);
            auto v = table_->config_holds(ci, r) ? OracleTable::Distance{0} : table_->robber_to_move(ci, r);
            if (best.empty() || v < best_value) {
                best = pick;
                best_value = v;
            }
            // Odometer with the last cop varying fastest keeps lexicographic order.
            std::size_t j = options.size();
            while (j > 0 && ++digit[j - 1] == options[j - 1].size()) digit[--j] = 0;
            if (j == 0) break;
        }
        return best;
    }

private:
    std::shared_ptr<const OracleTable> table_;
};

}  // namespace pursuit

#endif  // PURSUIT_ORACLE_HPP
