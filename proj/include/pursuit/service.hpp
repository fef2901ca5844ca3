#ifndef PURSUIT_SERVICE_HPP
#define PURSUIT_SERVICE_HPP

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <shared_mutex>

#include "httplib.h"
#include "pursuit/generators.hpp"
#include "pursuit/gyarfas.hpp"

namespace pursuit {

// HTTP-level failure: status code, machine code, message and optional legal targets.
class ServiceError : public Error {
public:
    ServiceError(int status, std::string code, const std::string& message, std::optional<std::vector<Vertex>> legal = {})
        : Error(message), status_(status), code_(std::move(code)), legal_(std::move(legal)) {}
    int status() const noexcept { return status_; }
    const std::string& code() const noexcept { return code_; }
    const std::optional<std::vector<Vertex>>& legal() const noexcept { return legal_; }

    json body() const {
        json j = {{"error", code_}, {"message", what()}};
        if (legal_) j["legal"] = *legal_;
        return j;
    }

private:
    int status_;
    std::string code_;
    std::optional<std::vector<Vertex>> legal_;
};

struct ServiceOptions {
    std::chrono::seconds ttl{3600};
    std::optional<std::filesystem::path> transcript_dir;  // finished games are written here
    std::size_t max_order = 200;
};

// One robber-vs-Gyarfas game.
class Session {
public:
    Session(std::string id, Graph g, std::size_t t, V0Rule rule, bool analysis)
        : id_(std::move(id)), graph_(std::move(g)), t_(t), analysis_(analysis), strategy_(graph_, t, rule) {
        state_ = new_game(graph_, strategy_.cops());
        transcript_.graph = graph_;
        transcript_.k = strategy_.cops();
        transcript_.cop_placement = strategy_.place(graph_, strategy_.cops());
        state_ = apply_cop_turn(graph_, state_, transcript_.cop_placement);
        touch();
    }

    const std::string& id() const noexcept { return id_; }
    std::mutex& mutex() noexcept { return mutex_; }
    std::chrono::steady_clock::time_point last_used() const noexcept { return last_used_; }
    void touch() { last_used_ = std::chrono::steady_clock::now(); }
    bool finished() const noexcept { return state_.captured() || result_ == Result::CopForfeit; }
    const Transcript& transcript() const noexcept { return transcript_; }

    std::string outcome_name() const {
        if (state_.captured()) return "captured";
        if (result_ == Result::CopForfeit) return "cop_forfeit";
        return "in_progress";
    }

    json transcript_json() const {
        Transcript tr = transcript_;
        tr.outcome = {state_.captured() ? Result::Captured : result_.value_or(Result::CapReached), state_.cop_turns, reason_};
        tr.final_state = state_;
        json j = to_json(tr);
        j["outcome"]["result"] = outcome_name();
        return j;
    }

    json view() const {
        json j = {{"id", id_},
                  {"graph", graph_to_json(graph_)},
                  {"t", t_},
                  {"k", state_.k},
                  {"phase", finished() ? "captured" : to_string(state_.phase)},
                  {"cops", state_.cops},
                  {"robber", state_.robber ? json(*state_.robber) : json(nullptr)},
                  {"cop_turns", state_.cop_turns},
                  {"legal", finished() ? std::vector<Vertex>{} : legal_robber_targets(graph_, state_)},
                  {"analysis_enabled", analysis_},
                  {"outcome", {{"captured", state_.captured()}, {"result", outcome_name()}, {"cop_turns", state_.cop_turns}}},
                  {"transcript", transcript_json()}};
        if (!reason_.empty()) j["outcome"]["reason"] = reason_;
        if (result_ == Result::CopForfeit) j["phase"] = "finished";
        return j;
    }

    json analysis() const {
        if (!analysis_) throw ServiceError(403, "analysis_hidden", "analysis is disabled for this session");
        const GyarfasState& s = strategy_.state();
        auto conf = strategy_.last_confinement();
        const auto& cert = strategy_.certificate();
        return json{{"path", s.path},
                    {"m", s.m()},
                    {"component", s.component(graph_).members()},
                    {"tip_stack", s.tip_stack},
                    {"cop_lo", s.cop_lo},
                    {"phase_one", s.phase_one()},
                    {"v0", strategy_.v0()},
                    {"confinement", conf ? json(to_string(*conf)) : json(nullptr)},
                    {"certificate", cert ? to_json(*cert) : json(nullptr)}};
    }

    // Applies the robber's action and, unless the game ended, the cops' reply.
    json robber_action(long long vertex) {
        if (finished()) throw ServiceError(409, "game_over", "the game is over (" + outcome_name() + ")");
        if (state_.phase != Phase::RobberToPlace && state_.phase != Phase::RobberToMove)
            throw ServiceError(409, "wrong_phase", std::string("not the robber's turn (phase ") + to_string(state_.phase) + ")");
        auto legal = legal_robber_targets(graph_, state_);
        if (vertex < 0 || std::find(legal.begin(), legal.end(), static_cast<Vertex>(vertex)) == legal.end())
            throw ServiceError(422, "illegal_move", "robber cannot move to " + std::to_string(vertex), legal);
        const auto v = static_cast<Vertex>(vertex);
        const bool placing = state_.phase == Phase::RobberToPlace;
        state_ = apply_robber_turn(graph_, state_, v);
        if (placing) transcript_.robber_placement = v;
        else transcript_.turns.push_back({Side::Robber, {v}});

        json reply = {{"robber", v}, {"cops", nullptr}};
        if (!state_.captured()) {
            try {
                CopMove move = strategy_.respond(graph_, state_);
                state_ = apply_cop_turn(graph_, state_, move);
                transcript_.turns.push_back({Side::Cops, move});
                reply["cops"] = move;
            } catch (const Error& e) {
                result_ = Result::CopForfeit;
                reason_ = e.what();
            }
        }
        reply["captured"] = state_.captured();
        reply["cop_turns"] = state_.cop_turns;
        reply["state"] = view();
        return reply;
    }

private:
    std::string id_;
    Graph graph_;
    std::size_t t_;
    bool analysis_;
    GyarfasStrategy strategy_;
    GameState state_;
    Transcript transcript_;
    std::optional<Result> result_;
    std::string reason_;
    std::mutex mutex_;
    std::chrono::steady_clock::time_point last_used_;
};

// Thread-safe session table. The map lock is held only to look sessions up; each
// session's own mutex serialises its mutations.
class SessionManager {
public:
    explicit SessionManager(ServiceOptions opt = {}) : opt_(std::move(opt)), rng_(std::random_device{}()) {}

    // Body: {"graph": {...} | "generator": "petersen", "seed"?, "t", "v0_rule"?, "analysis"?}.
    json create(const json& body) {
        if (!body.is_object()) throw ServiceError(400, "bad_request", "request body must be a JSON object");
        if (!body.contains("t") || !body["t"].is_number_integer())
            throw ServiceError(400, "bad_request", "field 't' (integer >= 4) is required");
        const auto t = body["t"].get<long long>();
        if (t < 4) throw ServiceError(400, "bad_request", "t must be at least 4, got " + std::to_string(t));
        Graph g;
        try {
            if (body.contains("graph")) {
                g = graph_from_json(body["graph"]);
            } else if (body.contains("generator") && body["generator"].is_string()) {
                g = generate(parse_generator_spec(body["generator"].get<std::string>()), body.value("seed", std::uint64_t{0}));
            } else {
                throw ServiceError(400, "bad_request", "either 'graph' or 'generator' is required");
            }
        } catch (const ServiceError&) {
            throw;
        } catch (const std::exception& e) {
            throw ServiceError(400, "bad_graph", e.what());
        }
        if (g.order() == 0 || g.order() > opt_.max_order)
            throw ServiceError(400, "bad_graph", "graph order must be between 1 and " + std::to_string(opt_.max_order));
        if (!is_connected(g)) throw ServiceError(422, "disconnected", "the game is played on a connected graph");
        V0Rule rule = V0Rule::FirstVertex;
        std::string rule_name = body.value("v0_rule", "first");
        if (rule_name == "min_z") rule = V0Rule::MinZ;
        else if (rule_name != "first") throw ServiceError(400, "bad_request", "v0_rule must be 'first' or 'min_z'");
        const bool analysis = body.value("analysis", true);

        sweep();
        auto session = std::make_shared<Session>(new_id(), std::move(g), static_cast<std::size_t>(t), rule, analysis);
        std::unique_lock lock(map_mutex_);
        sessions_[session->id()] = session;
        std::lock_guard session_lock(session->mutex());
        return session->view();
    }

    json state(const std::string& id) {
        return with(id, [](Session& s) { return s.view(); });
    }
    json analysis(const std::string& id) {
        return with(id, [](Session& s) { return s.analysis(); });
    }

    json robber(const std::string& id, const json& body) {
        if (!body.is_object() || !body.contains("vertex") || !body["vertex"].is_number_integer())
            throw ServiceError(400, "bad_request", "field 'vertex' (integer) is required");
        auto v = body["vertex"].get<long long>();
        return with(id, [&](Session& s) {
            json reply = s.robber_action(v);
            if (s.finished()) persist(s);
            return reply;
        });
    }

    void remove(const std::string& id) {
        std::unique_lock lock(map_mutex_);
        if (!sessions_.erase(id)) throw ServiceError(404, "not_found", "no session " + id);
    }

    std::size_t size() const {
        std::shared_lock lock(map_mutex_);
        return sessions_.size();
    }

    // Drops sessions idle for longer than the TTL.
    void sweep() {
        const auto now = std::chrono::steady_clock::now();
        std::unique_lock lock(map_mutex_);
        for (auto it = sessions_.begin(); it != sessions_.end();) {
            std::unique_lock session_lock(it->second->mutex(), std::try_to_lock);
            if (session_lock.owns_lock() && now - it->second->last_used() > opt_.ttl) it = sessions_.erase(it);
            else ++it;
        }
    }

private:
    template <typename F>
    json with(const std::string& id, F&& f) {
        std::shared_ptr<Session> session;
        {
            std::shared_lock lock(map_mutex_);
            auto it = sessions_.find(id);
            if (it == sessions_.end()) throw ServiceError(404, "not_found", "no session " + id);
            session = it->second;
        }
        std::lock_guard lock(session->mutex());
        session->touch();
        return f(*session);
    }

    void persist(const Session& s) {
        if (!opt_.transcript_dir) return;
        std::filesystem::create_directories(*opt_.transcript_dir);
        std::ofstream out(*opt_.transcript_dir / (s.id() + ".json"));
        out << s.transcript_json().dump() << '\n';
    }

    std::string new_id() {
        std::lock_guard lock(rng_mutex_);
        static const char* hex = "0123456789abcdef";
        std::string id;
        for (int i = 0; i < 2; ++i) {
            auto word = rng_();
            for (int j = 0; j < 16; ++j, word >>= 4) id += hex[word & 15];
        }
        return id;
    }

    ServiceOptions opt_;
    mutable std::shared_mutex map_mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::mutex rng_mutex_;
    std::mt19937_64 rng_;
};

// Routes:
//   POST   /sessions                 create (201)
//   GET    /sessions/:id             state
//   POST   /sessions/:id/robber      robber action plus the cops' reply
//   GET    /sessions/:id/analysis    strategy internals
//   DELETE /sessions/:id             remove (204)
class GameServer {
public:
    explicit GameServer(ServiceOptions opt = {}) : sessions_(std::move(opt)) {
        auto respond = [](httplib::Response& res, int status, const json& body) {
            res.status = status;
            res.set_content(body.dump(), "application/json");
        };
        auto guarded = [respond](auto&& handler, int ok_status) {
            return [respond, handler, ok_status](const httplib::Request& req, httplib::Response& res) {
                try {
                    json body = handler(req);
                    if (ok_status == 204) res.status = 204;
                    else respond(res, ok_status, body);
                } catch (const ServiceError& e) {
                    respond(res, e.status(), e.body());
                } catch (const json::exception& e) {
                    respond(res, 400, json{{"error", "bad_request"}, {"message", e.what()}});
                } catch (const std::exception& e) {
                    respond(res, 500, json{{"error", "internal"}, {"message", e.what()}});
                }
            };
        };
        auto parse_body = [](const httplib::Request& req) {
            try {
                return req.body.empty() ? json::object() : json::parse(req.body);
            } catch (const json::parse_error& e) {
                throw ServiceError(400, "bad_json", e.what());
            }
        };

        http_.Post("/sessions", guarded([this, parse_body](const httplib::Request& req) {
                       return sessions_.create(parse_body(req));
                   }, 201));
        http_.Get("/sessions/:id", guarded([this](const httplib::Request& req) {
                      return sessions_.state(req.path_params.at("id"));
                  }, 200));
        http_.Post("/sessions/:id/robber", guarded([this, parse_body](const httplib::Request& req) {
                       return sessions_.robber(req.path_params.at("id"), parse_body(req));
                   }, 200));
        http_.Get("/sessions/:id/analysis", guarded([this](const httplib::Request& req) {
                      return sessions_.analysis(req.path_params.at("id"));
                  }, 200));
        http_.Delete("/sessions/:id", guarded([this](const httplib::Request& req) {
                         sessions_.remove(req.path_params.at("id"));
                         return json(nullptr);
                     }, 204));
    }

    SessionManager& sessions() noexcept { return sessions_; }
    httplib::Server& http() noexcept { return http_; }

    // Port 0 picks a free port; returns the bound port or -1.
    int bind(const std::string& host, int port) {
        if (port == 0) return http_.bind_to_any_port(host);
        return http_.bind_to_port(host, port) ? port : -1;
    }
    bool listen() { return http_.listen_after_bind(); }
    void stop() { http_.stop(); }

private:
    SessionManager sessions_;
    httplib::Server http_;
};

}  // namespace pursuit

#endif  // PURSUIT_SERVICE_HPP
