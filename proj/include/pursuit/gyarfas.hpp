#ifndef PURSUIT_GYARFAS_HPP
#define PURSUIT_GYARFAS_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pursuit/game.hpp"
#include "pursuit/graph.hpp"
#include "pursuit/structure.hpp"

// Cop strategy for graphs without holes of length >= t, using t-3 cops.
//
// The cops walk along an induced path v_0, v_1, ... (a Gyarfas path). With C_0 = V(G),
// each step sets
//
//     C_{m+1} = component of G[C_m \ N[v_m]] containing the robber,
//     v_{m+1} = smallest vertex of C_m ∩ N(v_m) with a neighbour in C_{m+1}.
//
// Choosing v_{m+1} inside C_m (rather than anywhere in N(v_m)) is what keeps the path
// induced: C_m avoids N[v_0] ∪ ... ∪ N[v_{m-1}], so v_{m+1} has no neighbour on the path
// except v_m. Such a vertex always exists because C_m is connected, contains C_{m+1},
// and every edge leaving C_{m+1} inside C_m must end in N(v_m).
//
// Phase 1 keeps one cop behind on each new path vertex and moves the rest of the stack
// forward; once a single cop is left on the tip, all cops shift one vertex along the
// path per turn. The robber stays in C_m: any vertex outside C_m adjacent to C_m lies
// in N(v_i) for some i < m, and stepping there without touching a cop's closed
// neighbourhood closes a hole of length >= t through v_i..v_m. So the path grows every
// turn and capture happens within z(v_0) <= |V(G)| cop turns.

namespace pursuit {

enum class V0Rule { FirstVertex, MinZ };

enum class Confinement { Ok, AdjacentToCop, Violation };

inline const char* to_string(Confinement c) {
    switch (c) {
        case Confinement::Ok: return "ok";
        case Confinement::AdjacentToCop: return "adjacent_to_cop";
        case Confinement::Violation: return "violation";
    }
    return "?";
}

struct GyarfasState {
    std::size_t t = 4;
    Path path;                     // v_0 .. v_m
    std::vector<VertexSet> comps;  // comps[i - 1] is C_i; C_0 = V(G) is implicit
    std::size_t tip_stack = 1;     // cops stacked on v_m
    std::size_t cop_lo = 0;        // index of the leftmost occupied path vertex

    std::size_t m() const noexcept { return path.size() - 1; }
    std::size_t cops() const noexcept { return t - 3; }
    bool phase_one() const noexcept { return tip_stack > 1; }

    VertexSet component(const Graph& g) const { return comps.empty() ? g.all_vertices() : comps.back(); }

    // Position of cop j: v_min(cop_lo + j, m).
    CopMove cop_positions() const {
        CopMove out;
        for (std::size_t j = 0; j < cops(); ++j) out.push_back(path[std::min(cop_lo + j, m())]);
        return out;
    }

    std::vector<Vertex> occupied_vertices() const { return {path.begin() + cop_lo, path.end()}; }
};

// Thrown by respond() when the path cannot be extended. This only happens on graphs
// that contain a hole of length >= t; when the cause is an escape from C_m, the
// extracted hole is attached.
class ExtensionImpossible : public Error {
public:
    ExtensionImpossible(const std::string& what, std::optional<HoleCertificate> hole)
        : Error("extension impossible: " + what), hole_(std::move(hole)) {}
    const std::optional<HoleCertificate>& hole() const noexcept { return hole_; }

private:
    std::optional<HoleCertificate> hole_;
};

// Raised when an extracted cycle fails validation; carries the raw cycle.
class CertificateError : public ContractError {
public:
    CertificateError(const std::string& what, Path cycle) : ContractError(what), cycle_(std::move(cycle)) {}
    const Path& cycle() const noexcept { return cycle_; }

private:
    Path cycle_;
};

inline Confinement confinement_check(const Graph& g, const GyarfasState& s, Vertex robber_from, Vertex robber_to) {
    VertexSet comp = s.component(g);
    if (!comp.contains(robber_from))
        throw PreconditionError("confinement_check: robber origin " + std::to_string(robber_from) +
                                " is not in the current component");
    if (robber_to == robber_from || comp.contains(robber_to)) return Confinement::Ok;
    for (Vertex c : s.occupied_vertices())
        if (g.closed_set(c).contains(robber_to)) return Confinement::AdjacentToCop;
    return Confinement::Violation;
}

// Turns an escape r -> r_escape into a hole v_i .. v_m P r_escape of length >= t, where
// i < cop_lo is the largest index with r_escape adjacent to v_i and P is a shortest
// path from v_m to r_escape through C_m.
inline HoleCertificate extract_long_hole(const Graph& g, const GyarfasState& s, Vertex r, Vertex r_escape) {
    if (confinement_check(g, s, r, r_escape) != Confinement::Violation)
        throw ContractError("extract_long_hole: the move " + std::to_string(r) + " -> " + std::to_string(r_escape) +
                            " is not a confinement violation");
    std::optional<std::size_t> anchor;
    for (std::size_t i = 0; i < s.cop_lo; ++i)
        if (g.adjacent(r_escape, s.path[i])) anchor = i;
    if (!anchor) throw CertificateError("escape vertex has no neighbour on the uncovered path", {});
    const VertexSet comp = s.component(g);
    auto route = shortest_path_within(g, comp, s.path.back(), r_escape);
    if (!route) throw CertificateError("no route from the path tip to the escape vertex through C_m", {});
    Path cycle(s.path.begin() + static_cast<std::ptrdiff_t>(*anchor), s.path.end());
    cycle.insert(cycle.end(), route->begin() + 1, route->end());
    HoleCertificate cert{cycle};
    if (!validate(g, cert) || cert.length() < s.t)
        throw CertificateError("extracted cycle is not a hole of length >= " + std::to_string(s.t), cycle);
    return cert;
}

// Every structural invariant of the strategy state; returns the list of failures.
inline std::vector<std::string> check_invariants(const Graph& g, const GyarfasState& s,
                                                 const std::vector<Vertex>* cops = nullptr) {
    std::vector<std::string> bad;
    const std::size_t m = s.m();
    if (!is_induced_path(g, s.path)) bad.push_back("path is not induced");
    if (s.comps.size() != m) bad.push_back("component count differs from path length");
    for (std::size_t i = 1; i <= std::min(m, s.comps.size()); ++i) {
        const VertexSet& ci = s.comps[i - 1];
        const VertexSet prev = i == 1 ? g.all_vertices() : s.comps[i - 2];
        std::string tag = "C_" + std::to_string(i);
        if (ci.empty()) {
            bad.push_back(tag + " is empty");
            continue;
        }
        if (!ci.is_subset_of(prev)) bad.push_back(tag + " is not nested in its predecessor");
        if (component_of(g, ci, *ci.first()) != ci) bad.push_back(tag + " is not connected");
        for (std::size_t j = 0; j < i; ++j)
            if (ci.intersects(g.closed_set(s.path[j])))
                bad.push_back(tag + " meets N[v_" + std::to_string(j) + "]");
        Vertex vi = s.path[i];
        if (!prev.contains(vi)) bad.push_back("v_" + std::to_string(i) + " is not in C_" + std::to_string(i - 1));
        if (!g.adjacent(vi, s.path[i - 1])) bad.push_back("v_" + std::to_string(i) + " is not adjacent to its predecessor");
        if (!g.open_set(vi).intersects(ci)) bad.push_back("v_" + std::to_string(i) + " has no neighbour in " + tag);
    }
    if (s.tip_stack < 1) bad.push_back("empty tip stack");
    if (s.cop_lo > m || (m - s.cop_lo) + s.tip_stack != s.cops()) bad.push_back("cop occupancy does not total t-3");
    if (s.phase_one() && s.cop_lo != 0) bad.push_back("phase one with a vacated path vertex");
    if (!s.phase_one() && s.cop_lo + (s.t - 4) != m) bad.push_back("phase two window is not t-3 wide");
    if (cops) {
        auto expect = s.cop_positions();
        auto have = *cops;
        std::sort(expect.begin(), expect.end());
        std::sort(have.begin(), have.end());
        if (expect != have) bad.push_back("cop positions disagree with the strategy state");
    }
    return bad;
}

class GyarfasStrategy final : public CopStrategy {
public:
    GyarfasStrategy(const Graph& g, std::size_t t, V0Rule rule = V0Rule::FirstVertex) {
        if (t < 4) throw ParameterError("Gyarfas strategy needs t >= 4, got " + std::to_string(t));
        if (!is_connected(g)) throw SetupError("the game is played on a connected graph");
        state_.t = t;
        v0_ = rule == V0Rule::MinZ ? z_of_graph(g).argmin : 0;
        reset();
    }

    std::size_t cops() const noexcept { return state_.cops(); }
    Vertex v0() const noexcept { return v0_; }
    const GyarfasState& state() const noexcept { return state_; }
    std::optional<Confinement> last_confinement() const noexcept { return last_confinement_; }
    const std::optional<HoleCertificate>& certificate() const noexcept { return certificate_; }

    // Re-verify every invariant after each response; failures raise ContractError.
    void set_invariant_checking(bool on) noexcept { check_ = on; }
    // One JSON object per response: {"turn","path","tip_stack","component_size"}.
    void set_diagnostics(std::ostream* out) noexcept { diagnostics_ = out; }

    CopMove place(const Graph&, std::size_t k) override {
        if (k != cops())
            throw ParameterError("Gyarfas(t=" + std::to_string(state_.t) + ") plays with " + std::to_string(cops()) +
                                 " cops, not " + std::to_string(k));
        reset();
        return state_.cop_positions();
    }

    CopMove respond(const Graph& g, const GameState& game) override {
        if (!game.robber || game.phase != Phase::CopsToMove)
            throw PreconditionError("Gyarfas respond called outside the cops' turn");
        const Vertex r = *game.robber;
        if (previous_robber_) {
            last_confinement_ = confinement_check(g, state_, *previous_robber_, r);
            if (*last_confinement_ == Confinement::Violation) {
                certificate_ = extract_long_hole(g, state_, *previous_robber_, r);
                throw ExtensionImpossible("robber escaped C_" + std::to_string(state_.m()) + " via " +
                                              std::to_string(*previous_robber_) + " -> " + std::to_string(r),
                                          certificate_);
            }
        }

        // A cop whose closed neighbourhood holds the robber takes it; the rest stay.
        for (std::size_t j = 0; j < game.cops.size(); ++j) {
            if (g.closed_set(game.cops[j]).contains(r)) {
                CopMove move = game.cops;
                move[j] = r;
                previous_robber_ = r;
                return move;
            }
        }

        extend(g, r);
        previous_robber_ = r;
        if (check_) {
            auto positions = state_.cop_positions();
            auto bad = check_invariants(g, state_, &positions);
            if (!bad.empty()) throw ContractError("Gyarfas invariant violated: " + bad.front());
        }
        if (diagnostics_) {
            json line = {{"turn", state_.m()},
                         {"path", state_.path},
                         {"tip_stack", state_.tip_stack},
                         {"component_size", state_.component(g).size()}};
            *diagnostics_ << line.dump() << '\n';
        }
        return state_.cop_positions();
    }

private:
    void reset() {
        state_.path = {v0_};
        state_.comps.clear();
        state_.tip_stack = state_.cops();
        state_.cop_lo = 0;
        previous_robber_.reset();
        last_confinement_.reset();
        certificate_.reset();
    }

    void extend(const Graph& g, Vertex r) {
        const Vertex tip = state_.path.back();
        VertexSet comp = state_.component(g);
        VertexSet rest = comp - g.closed_set(tip);
        if (!rest.contains(r))
            throw ExtensionImpossible("robber at " + std::to_string(r) + " is outside C_" + std::to_string(state_.m()) +
                                          " \\ N[v_" + std::to_string(state_.m()) + "]",
                                      std::nullopt);
        VertexSet next = component_of(g, rest, r);
        std::optional<Vertex> pick;
        for (Vertex w : g.neighbors(tip)) {
            if (comp.contains(w) && g.open_set(w).intersects(next)) {
                pick = w;
                break;
            }
        }
        if (!pick)
            throw ExtensionImpossible("no vertex of C_m ∩ N(v_m) attaches to the robber's component", std::nullopt);
        state_.path.push_back(*pick);
        state_.comps.push_back(std::move(next));
        if (state_.tip_stack > 1) --state_.tip_stack;
        else ++state_.cop_lo;
    }

    GyarfasState state_;
    Vertex v0_ = 0;
    std::optional<Vertex> previous_robber_;
    std::optional<Confinement> last_confinement_;
    std::optional<HoleCertificate> certificate_;
    bool check_ = false;
    std::ostream* diagnostics_ = nullptr;
};

}  // namespace pursuit

#endif  // PURSUIT_GYARFAS_HPP
