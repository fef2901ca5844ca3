#ifndef PURSUIT_GAME_HPP
#define PURSUIT_GAME_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "pursuit/graph.hpp"
#include "pursuit/graph_io.hpp"

namespace pursuit {

enum class Phase { CopsToPlace, RobberToPlace, CopsToMove, RobberToMove, Captured };

inline const char* to_string(Phase p) {
    switch (p) {
        case Phase::CopsToPlace: return "cops_to_place";
        case Phase::RobberToPlace: return "robber_to_place";
        case Phase::CopsToMove: return "cops_to_move";
        case Phase::RobberToMove: return "robber_to_move";
        case Phase::Captured: return "captured";
    }
    return "?";
}

// One target per cop, applied simultaneously. Also used for the initial placement.
using CopMove = std::vector<Vertex>;

struct GameState {
    std::size_t k = 0;
    std::vector<Vertex> cops;  // empty until placed; index = cop id
    std::optional<Vertex> robber;
    Phase phase = Phase::CopsToPlace;
    std::size_t cop_turns = 0;  // completed cop move-turns, placement excluded

    bool captured() const noexcept { return phase == Phase::Captured; }
    bool cop_on(Vertex v) const noexcept { return std::find(cops.begin(), cops.end(), v) != cops.end(); }

    friend bool operator==(const GameState&, const GameState&) = default;
};

inline GameState new_game(const Graph& g, std::size_t k) {
    if (k < 1) throw SetupError("at least one cop is required");
    if (!is_connected(g)) throw SetupError("the game is played on a connected graph");
    GameState s;
    s.k = k;
    return s;
}

namespace detail {

inline std::string cop_name(std::size_t i) { return "cop " + std::to_string(i); }

inline void settle_capture(GameState& s) {
    if (s.robber && s.cop_on(*s.robber)) s.phase = Phase::Captured;
}

}  // namespace detail

// Handles both the initial placement (CopsToPlace) and regular move turns.
inline GameState apply_cop_turn(const Graph& g, const GameState& state, const CopMove& move) {
    if (state.phase != Phase::CopsToPlace && state.phase != Phase::CopsToMove)
        throw MoveError("cops", std::string("not the cops' turn (phase ") + to_string(state.phase) + ")");
    if (move.size() != state.k)
        throw MoveError("cops", "expected " + std::to_string(state.k) + " targets, got " + std::to_string(move.size()));
    const bool placing = state.phase == Phase::CopsToPlace;
    for (std::size_t i = 0; i < move.size(); ++i) {
        if (move[i] >= g.order())
            throw MoveError(detail::cop_name(i), "target " + std::to_string(move[i]) + " out of range");
        if (!placing && !g.closed_set(state.cops[i]).contains(move[i]))
            throw MoveError(detail::cop_name(i), "cannot move from " + std::to_string(state.cops[i]) + " to " +
                                                     std::to_string(move[i]));
    }
    GameState next = state;
    next.cops = move;
    if (placing) {
        next.phase = Phase::RobberToPlace;
    } else {
        ++next.cop_turns;
        next.phase = Phase::RobberToMove;
        detail::settle_capture(next);
    }
    return next;
}

// Handles both the robber's placement (RobberToPlace) and regular move turns.
inline GameState apply_robber_turn(const Graph& g, const GameState& state, Vertex target) {
    if (state.phase != Phase::RobberToPlace && state.phase != Phase::RobberToMove)
        throw MoveError("robber", std::string("not the robber's turn (phase ") + to_string(state.phase) + ")");
    if (target >= g.order()) throw MoveError("robber", "target " + std::to_string(target) + " out of range");
    if (state.phase == Phase::RobberToMove && !g.closed_set(*state.robber).contains(target))
        throw MoveError("robber", "cannot move from " + std::to_string(*state.robber) + " to " + std::to_string(target));
    GameState next = state;
    next.robber = target;
    next.phase = Phase::CopsToMove;
    detail::settle_capture(next);
    return next;
}

inline std::vector<Vertex> legal_robber_targets(const Graph& g, const GameState& state) {
    if (state.phase == Phase::RobberToPlace) return g.all_vertices().members();
    if (state.phase == Phase::RobberToMove) return g.closed_set(*state.robber).members();
    return {};
}

class CopStrategy {
public:
    virtual ~CopStrategy() = default;
    virtual CopMove place(const Graph& g, std::size_t k) = 0;
    // Called with the state after the robber's action; phase is CopsToMove.
    virtual CopMove respond(const Graph& g, const GameState& state) = 0;
};

class RobberStrategy {
public:
    virtual ~RobberStrategy() = default;
    // Called after the cops have been placed.
    virtual Vertex place(const Graph& g, const GameState& state) = 0;
    virtual Vertex respond(const Graph& g, const GameState& state) = 0;
};

enum class Side { Cops, Robber };

enum class Result { Captured, CapReached, CopForfeit, RobberForfeit };

inline const char* to_string(Result r) {
    switch (r) {
        case Result::Captured: return "captured";
        case Result::CapReached: return "cap_reached";
        case Result::CopForfeit: return "cop_forfeit";
        case Result::RobberForfeit: return "robber_forfeit";
    }
    return "?";
}

struct TurnRecord {
    Side side;
    std::vector<Vertex> targets;  // a single entry for the robber
    friend bool operator==(const TurnRecord&, const TurnRecord&) = default;
};

struct Outcome {
    Result result = Result::CapReached;
    std::size_t cop_turns = 0;
    std::string reason;
    bool captured() const noexcept { return result == Result::Captured; }
};

struct Transcript {
    Graph graph;
    std::size_t k = 0;
    CopMove cop_placement;
    std::optional<Vertex> robber_placement;
    std::vector<TurnRecord> turns;
    Outcome outcome;
    GameState final_state;
};

// Alternates placement and turns until capture or `cap` completed cop turns. An
// exception raised by a strategy, or an illegal action, forfeits the match for that side.
inline Transcript play_match(const Graph& g, std::size_t k, CopStrategy& cops, RobberStrategy& robber,
                             std::size_t cap) {
    if (cap < 1) throw ParameterError("play_match needs cap >= 1");
    Transcript tr;
    tr.graph = g;
    tr.k = k;
    GameState state = new_game(g, k);
    auto finish = [&](Result r, std::string reason = {}) {
        tr.outcome = {r, state.cop_turns, std::move(reason)};
        tr.final_state = state;
        return tr;
    };
    auto cop_action = [&](bool placing) -> std::optional<std::string> {
        try {
            CopMove move = placing ? cops.place(g, k) : cops.respond(g, state);
            state = apply_cop_turn(g, state, move);
            if (placing) tr.cop_placement = move;
            else tr.turns.push_back({Side::Cops, move});
            return std::nullopt;
        } catch (const Error& e) {
            return std::string(e.what());
        }
    };
    auto robber_action = [&](bool placing) -> std::optional<std::string> {
        try {
            Vertex target = placing ? robber.place(g, state) : robber.respond(g, state);
            state = apply_robber_turn(g, state, target);
            if (placing) tr.robber_placement = target;
            else tr.turns.push_back({Side::Robber, {target}});
            return std::nullopt;
        } catch (const Error& e) {
            return std::string(e.what());
        }
    };

    if (auto err = cop_action(true)) return finish(Result::CopForfeit, *err);
    if (auto err = robber_action(true)) return finish(Result::RobberForfeit, *err);
    while (!state.captured()) {
        if (state.cop_turns >= cap) return finish(Result::CapReached);
        if (auto err = cop_action(false)) return finish(Result::CopForfeit, *err);
        if (state.captured()) break;
        if (auto err = robber_action(false)) return finish(Result::RobberForfeit, *err);
    }
    return finish(Result::Captured);
}

// States after placement and after every recorded turn. Throws ContractError when the
// recorded outcome is not reproduced.
inline std::vector<GameState> replay(const Transcript& tr) {
    std::vector<GameState> states;
    GameState s = new_game(tr.graph, tr.k);
    states.push_back(s);
    if (tr.cop_placement.empty()) return states;
    s = apply_cop_turn(tr.graph, s, tr.cop_placement);
    states.push_back(s);
    if (!tr.robber_placement) return states;
    s = apply_robber_turn(tr.graph, s, *tr.robber_placement);
    states.push_back(s);
    for (const auto& turn : tr.turns) {
        s = turn.side == Side::Cops ? apply_cop_turn(tr.graph, s, turn.targets)
                                    : apply_robber_turn(tr.graph, s, turn.targets.at(0));
        states.push_back(s);
    }
    if (s != tr.final_state) throw ContractError("replay does not reproduce the final state");
    if (s.captured() != tr.outcome.captured() || s.cop_turns != tr.outcome.cop_turns)
        throw ContractError("replay does not reproduce the recorded outcome");
    return states;
}

inline json to_json(const Transcript& tr) {
    json turns = json::array();
    for (const auto& t : tr.turns) {
        if (t.side == Side::Cops) turns.push_back({{"side", "cops"}, {"to", t.targets}});
        else turns.push_back({{"side", "robber"}, {"to", t.targets.at(0)}});
    }
    json placements = {{"cops", tr.cop_placement}, {"robber", nullptr}};
    if (tr.robber_placement) placements["robber"] = *tr.robber_placement;
    json outcome = {{"captured", tr.outcome.captured()},
                    {"cop_turns", tr.outcome.cop_turns},
                    {"result", to_string(tr.outcome.result)}};
    if (!tr.outcome.reason.empty()) outcome["reason"] = tr.outcome.reason;
    return json{{"graph", graph_to_json(tr.graph)},
                {"k", tr.k},
                {"placements", std::move(placements)},
                {"turns", std::move(turns)},
                {"outcome", std::move(outcome)}};
}

// Rebuilds a transcript from JSON by replaying it through the referee.
inline Transcript transcript_from_json(const json& doc) {
    Transcript tr;
    tr.graph = graph_from_json(doc.at("graph"));
    tr.k = doc.at("k").get<std::size_t>();
    const auto& pl = doc.at("placements");
    tr.cop_placement = pl.at("cops").get<CopMove>();
    if (!pl.at("robber").is_null()) tr.robber_placement = pl.at("robber").get<Vertex>();
    for (const auto& t : doc.at("turns")) {
        if (t.at("side") == "cops") tr.turns.push_back({Side::Cops, t.at("to").get<std::vector<Vertex>>()});
        else tr.turns.push_back({Side::Robber, {t.at("to").get<Vertex>()}});
    }
    const auto& out = doc.at("outcome");
    std::string result = out.value("result", out.at("captured").get<bool>() ? "captured" : "cap_reached");
    for (Result r : {Result::Captured, Result::CapReached, Result::CopForfeit, Result::RobberForfeit})
        if (result == to_string(r)) tr.outcome.result = r;
    tr.outcome.cop_turns = out.at("cop_turns").get<std::size_t>();
    tr.outcome.reason = out.value("reason", "");
    GameState s = new_game(tr.graph, tr.k);
    if (!tr.cop_placement.empty()) s = apply_cop_turn(tr.graph, s, tr.cop_placement);
    if (tr.robber_placement) s = apply_robber_turn(tr.graph, s, *tr.robber_placement);
    for (const auto& turn : tr.turns)
        s = turn.side == Side::Cops ? apply_cop_turn(tr.graph, s, turn.targets)
                                    : apply_robber_turn(tr.graph, s, turn.targets.at(0));
    tr.final_state = s;
    return tr;
}

}  // namespace pursuit

#endif  // PURSUIT_GAME_HPP
