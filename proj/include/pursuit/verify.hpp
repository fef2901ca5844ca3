#ifndef PURSUIT_VERIFY_HPP
#define PURSUIT_VERIFY_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <memory>
#include <mutex>
#include <ostream>
#include <thread>

#include "pursuit/corpus.hpp"
#include "pursuit/dilworth.hpp"
#include "pursuit/gyarfas.hpp"
#include "pursuit/oracle.hpp"
#include "pursuit/robbers.hpp"

namespace pursuit {

enum class Suite { Theorem1, Corollary, Dilworth, Oracle };

inline const char* to_string(Suite s) {
    switch (s) {
        case Suite::Theorem1: return "theorem1";
        case Suite::Corollary: return "corollary";
        case Suite::Dilworth: return "dilworth";
        case Suite::Oracle: return "oracle";
    }
    return "?";
}

inline Suite parse_suite(const std::string& text) {
    for (Suite s : {Suite::Theorem1, Suite::Corollary, Suite::Dilworth, Suite::Oracle})
        if (text == to_string(s)) return s;
    throw ParameterError("unknown suite '" + text + "' (expected theorem1, corollary, dilworth or oracle)");
}

enum class Status { Pass, Fail, Skipped };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Skipped: return "skipped";
    }
    return "?";
}

struct VerifyOptions {
    std::optional<std::size_t> t;  // defaults to what the corpus filter guarantees
    std::size_t budget = kDefaultStateBudget;
    std::size_t jobs = 1;
    std::uint64_t seed = 1;
    bool check_invariants = true;
    std::size_t random_walkers = 3;  // ensemble size beyond greedy and stationary
};

struct VerificationRecord {
    std::string id;
    std::size_t n = 0;
    std::string generator;
    std::uint64_t seed = 0;
    Suite suite = Suite::Theorem1;
    std::size_t t = 0;
    std::size_t cops = 0;
    std::string v0_rule;    // "first" | "min_z" when a strategy ran
    std::string adversary;  // "optimal" | "ensemble" | ""
    bool captured = false;
    std::size_t cop_turns = 0;
    std::size_t bound = 0;
    std::string bound_kind;  // "n", "z", "t-1", "D-2", "t-3"
    std::optional<std::size_t> c_exact, dilworth, z;
    std::optional<HoleCertificate> certificate;
    std::size_t violations = 0;  // confinement violations observed
    Status status = Status::Pass;
    std::string reason;
    json extra = json::object();
    std::optional<Graph> graph;  // embedded on failure so the record replays alone
};

inline json to_json(const VerificationRecord& r) {
    json j = {{"id", r.id},           {"n", r.n},
              {"generator", r.generator}, {"seed", r.seed},
              {"suite", to_string(r.suite)}, {"t", r.t},
              {"cops", r.cops},       {"captured", r.captured},
              {"cop_turns", r.cop_turns}, {"bound", r.bound},
              {"bound_kind", r.bound_kind}, {"violations", r.violations},
              {"status", to_string(r.status)}};
    if (!r.v0_rule.empty()) j["v0_rule"] = r.v0_rule;
    if (!r.adversary.empty()) j["adversary"] = r.adversary;
    if (r.c_exact) j["c_exact"] = *r.c_exact;
    if (r.dilworth) j["D"] = *r.dilworth;
    if (r.z) j["z"] = *r.z;
    if (r.certificate) j["certificate"] = to_json(*r.certificate);
    if (!r.reason.empty()) j["reason"] = r.reason;
    if (!r.extra.empty()) j["extra"] = r.extra;
    if (r.graph) j["graph"] = graph_to_json(*r.graph);
    return j;
}

namespace detail {

struct MatchSummary {
    bool captured = true;
    std::size_t cop_turns = 0;
    std::size_t violations = 0;
    std::optional<HoleCertificate> certificate;
    std::string failure;
};

// Gyarfas(t) against either the optimal evader or, without a table, the fallback
// ensemble (greedy, stationary and seeded random walkers). Reports the worst match.
inline MatchSummary gyarfas_matches(const Graph& g, std::size_t t, V0Rule rule, const std::shared_ptr<const OracleTable>& table,
                                    const VerifyOptions& opt, std::uint64_t seed) {
    std::vector<std::unique_ptr<RobberStrategy>> robbers;
    if (table) {
        robbers.push_back(std::make_unique<OptimalEvader>(table));
    } else {
        robbers.push_back(std::make_unique<GreedyMaxDistanceRobber>());
        robbers.push_back(std::make_unique<StationaryRobber>());
        Rng rng(seed);
        for (std::size_t i = 0; i < opt.random_walkers; ++i) robbers.push_back(std::make_unique<RandomWalkRobber>(rng.next()));
    }
    MatchSummary out;
    const std::size_t cap = 2 * g.order() + 5;
    for (auto& robber : robbers) {
        GyarfasStrategy cops(g, t, rule);
        cops.set_invariant_checking(opt.check_invariants);
        Transcript tr = play_match(g, t - 3, cops, *robber, cap);
        if (cops.last_confinement() == Confinement::Violation) ++out.violations;
        if (cops.certificate() && !out.certificate) out.certificate = cops.certificate();
        out.cop_turns = std::max(out.cop_turns, tr.outcome.cop_turns);
        if (!tr.outcome.captured()) {
            out.captured = false;
            if (out.failure.empty())
                out.failure = std::string(to_string(tr.outcome.result)) + (tr.outcome.reason.empty() ? "" : ": " + tr.outcome.reason);
        }
    }
    return out;
}

inline std::shared_ptr<const OracleTable> table_within_budget(const Graph& g, std::size_t k, std::size_t budget) {
    if (oracle_state_count(g.order(), k) > budget) return nullptr;
    return std::make_shared<const OracleTable>(solve(g, k, budget));
}

inline VerificationRecord base_record(const CorpusEntry& e, Suite suite, std::size_t t) {
    VerificationRecord r;
    r.id = e.id;
    r.n = e.graph.order();
    r.generator = e.generator;
    r.seed = e.seed;
    r.suite = suite;
    r.t = t;
    return r;
}

inline void fail(VerificationRecord& r, const Graph& g, std::string reason) {
    r.status = Status::Fail;
    if (!r.reason.empty()) r.reason += "; ";
    r.reason += std::move(reason);
    r.graph = g;
}

// Gyarfas(t) with t-3 cops captures within n turns, and within z(G) turns
// when v_0 minimises z.
inline std::vector<VerificationRecord> verify_theorem1(const CorpusEntry& e, std::size_t t, const VerifyOptions& opt) {
    const Graph& g = e.graph;
    auto table = table_within_budget(g, t - 3, opt.budget);
    const ZOfGraph zg = z_of_graph(g);
    std::vector<VerificationRecord> out;
    for (V0Rule rule : {V0Rule::FirstVertex, V0Rule::MinZ}) {
        VerificationRecord r = base_record(e, Suite::Theorem1, t);
        r.cops = t - 3;
        r.v0_rule = rule == V0Rule::MinZ ? "min_z" : "first";
        r.adversary = table ? "optimal" : "ensemble";
        r.z = zg.z;
        r.bound = rule == V0Rule::MinZ ? zg.z : g.order();
        r.bound_kind = rule == V0Rule::MinZ ? "z" : "n";
        if (table) r.extra["game_value"] = table->root_value() == OracleTable::kInfinite ? json(nullptr) : json(table->root_value());
        MatchSummary m = gyarfas_matches(g, t, rule, table, opt, e.seed ^ opt.seed);
        r.captured = m.captured;
        r.cop_turns = m.cop_turns;
        r.violations = m.violations;
        r.certificate = m.certificate;
        if (!m.captured) fail(r, g, "not captured (" + m.failure + ")");
        else if (m.cop_turns > r.bound) fail(r, g, "cop_turns exceeds bound");
        if (m.violations) fail(r, g, "confinement violation");
        out.push_back(std::move(r));
    }
    return out;
}

// On a P_t-free graph, Gyarfas(t+1) from the minimum-z vertex uses t-2
// cops and captures within t-1 turns.
inline VerificationRecord verify_corollary(const CorpusEntry& e, std::size_t t, const VerifyOptions& opt) {
    const Graph& g = e.graph;
    VerificationRecord r = base_record(e, Suite::Corollary, t);
    GyarfasStrategy probe(g, t + 1, V0Rule::MinZ);
    r.cops = probe.cops();
    r.v0_rule = "min_z";
    r.bound = t - 1;
    r.bound_kind = "t-1";
    r.z = z_of_graph(g).z;
    auto table = table_within_budget(g, r.cops, opt.budget);
    r.adversary = table ? "optimal" : "ensemble";
    MatchSummary m = gyarfas_matches(g, t + 1, V0Rule::MinZ, table, opt, e.seed ^ opt.seed);
    r.captured = m.captured;
    r.cop_turns = m.cop_turns;
    r.violations = m.violations;
    r.certificate = m.certificate;
    if (r.cops != t - 2) fail(r, g, "expected t-2 cops");
    if (!m.captured) fail(r, g, "not captured (" + m.failure + ")");
    else if (m.cop_turns > r.bound) fail(r, g, "cop_turns exceeds t-1");
    if (*r.z > t - 1) fail(r, g, "z(G) exceeds t-1");
    return r;
}

// Dilworth bound: c(G) <= D(G) - 2 whenever D(G) >= 3.
inline VerificationRecord verify_dilworth(const CorpusEntry& e, const VerifyOptions& opt) {
    const Graph& g = e.graph;
    VerificationRecord r = base_record(e, Suite::Dilworth, 0);
    auto d = dilworth_number(g);
    r.dilworth = d.number;
    r.extra["antichain"] = d.certificate.antichain;
    r.bound_kind = "D-2";
    r.bound = d.number >= 2 ? d.number - 2 : 0;
    // Exact c up to D (or 3 when D is small), stopping at the first k over budget.
    const std::size_t k_max = std::max<std::size_t>(d.number, 3);
    for (std::size_t k = 1; k <= k_max; ++k) {
        if (oracle_state_count(g.order(), k) > opt.budget) {
            r.extra["oracle_budget_reached_at_k"] = k;
            break;
        }
        if (is_k_copwin(g, k, opt.budget)) {
            r.c_exact = k;
            break;
        }
    }
    if (d.number < 3) {
        r.extra["applies"] = false;
        return r;
    }
    r.extra["applies"] = true;
    if (!r.c_exact) {
        if (r.extra.contains("oracle_budget_reached_at_k") && r.extra["oracle_budget_reached_at_k"].get<std::size_t>() <= r.bound) {
            r.status = Status::Skipped;
            r.reason = "oracle over budget before k = D-2";
        } else {
            fail(r, g, "c(G) > D(G) - 2");
        }
    } else if (*r.c_exact > r.bound) {
        fail(r, g, "c(G) = " + std::to_string(*r.c_exact) + " > D(G) - 2 = " + std::to_string(r.bound));
    }
    return r;
}

// Cop number against the t-3 bound, optimal play realizing the table's value,
// and the fixpoint recurrences on every solved table.
inline VerificationRecord verify_oracle(const CorpusEntry& e, std::size_t t, const VerifyOptions& opt) {
    const Graph& g = e.graph;
    VerificationRecord r = base_record(e, Suite::Oracle, t);
    r.bound = t - 3;
    r.bound_kind = "t-3";
    r.cops = t - 3;
    for (std::size_t k = 1; k <= t - 3; ++k) {
        if (oracle_state_count(g.order(), k) > opt.budget) {
            r.status = Status::Skipped;
            r.reason = "oracle over budget at k = " + std::to_string(k);
            return r;
        }
        auto table = std::make_shared<const OracleTable>(solve(g, k, opt.budget));
        std::size_t bad = fixpoint_violations(*table);
        if (bad) fail(r, g, std::to_string(bad) + " fixpoint violations at k = " + std::to_string(k));
        if (!table->cops_win()) continue;
        r.c_exact = k;
        OptimalPursuer cops(table);
        OptimalEvader robber(table);
        Transcript tr = play_match(g, k, cops, robber, std::max<std::size_t>(table->root_value(), 1) + 5);
        r.adversary = "optimal";
        r.captured = tr.outcome.captured();
        r.cop_turns = tr.outcome.cop_turns;
        r.extra["game_value"] = table->root_value();
        if (!r.captured || r.cop_turns != table->root_value()) fail(r, g, "optimal play does not realize the game value");
        return r;
    }
    fail(r, g, "c(G) > t-3");
    return r;
}

}  // namespace detail

// Runs one suite over a corpus. Records come back sorted by graph id (then v0 rule),
// whatever the number of worker threads.
inline std::vector<VerificationRecord> run_suite(const Corpus& corpus, Suite suite, const VerifyOptions& opt) {
    std::size_t t = 0;
    switch (suite) {
        case Suite::Theorem1:
        case Suite::Oracle: t = opt.t.value_or(corpus.filter.hole_threshold()); break;
        case Suite::Corollary:
            if (!opt.t && corpus.filter.kind != CorpusFilter::Kind::PtFree)
                throw ParameterError("the corollary suite needs a pt-free corpus or an explicit t");
            t = opt.t.value_or(corpus.filter.t);
            break;
        case Suite::Dilworth: break;
    }
    if ((suite == Suite::Theorem1 || suite == Suite::Oracle) && t < 4) throw ParameterError("t must be at least 4");
    if (suite == Suite::Corollary && t < 3) throw ParameterError("the corollary suite needs t >= 3");

    std::vector<std::vector<VerificationRecord>> slots(corpus.entries.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < corpus.entries.size(); i = next++) {
            try {
                const CorpusEntry& e = corpus.entries[i];
                switch (suite) {
                    case Suite::Theorem1: slots[i] = detail::verify_theorem1(e, t, opt); break;
                    case Suite::Corollary: slots[i] = {detail::verify_corollary(e, t, opt)}; break;
                    case Suite::Dilworth: slots[i] = {detail::verify_dilworth(e, opt)}; break;
                    case Suite::Oracle: slots[i] = {detail::verify_oracle(e, t, opt)}; break;
                }
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    const std::size_t jobs = std::clamp<std::size_t>(opt.jobs, 1, std::max<std::size_t>(corpus.entries.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);

    std::vector<VerificationRecord> records;
    for (auto& slot : slots)
        for (auto& r : slot) records.push_back(std::move(r));
    std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return records;
}

struct SuiteSummary {
    Suite suite = Suite::Theorem1;
    std::size_t records = 0, passed = 0, failed = 0, skipped = 0;
    std::size_t captured = 0, violations = 0;
    std::size_t optimal = 0, ensemble = 0;
    std::size_t max_cop_turns = 0;
    std::vector<std::string> failing_ids;

    bool ok() const noexcept { return failed == 0; }
};

inline SuiteSummary summarize(Suite suite, const std::vector<VerificationRecord>& records) {
    SuiteSummary s;
    s.suite = suite;
    for (const auto& r : records) {
        ++s.records;
        switch (r.status) {
            case Status::Pass: ++s.passed; break;
            case Status::Fail:
                ++s.failed;
                if (s.failing_ids.empty() || s.failing_ids.back() != r.id) s.failing_ids.push_back(r.id);
                break;
            case Status::Skipped: ++s.skipped; break;
        }
        s.captured += r.captured;
        s.violations += r.violations;
        s.optimal += r.adversary == "optimal";
        s.ensemble += r.adversary == "ensemble";
        s.max_cop_turns = std::max(s.max_cop_turns, r.cop_turns);
    }
    return s;
}

inline json to_json(const SuiteSummary& s) {
    return json{{"summary", true},
                {"suite", to_string(s.suite)},
                {"records", s.records},
                {"passed", s.passed},
                {"failed", s.failed},
                {"skipped", s.skipped},
                {"captured", s.captured},
                {"violations", s.violations},
                {"adversary", {{"optimal", s.optimal}, {"ensemble", s.ensemble}}},
                {"max_cop_turns", s.max_cop_turns},
                {"failing_ids", s.failing_ids},
                {"ok", s.ok()}};
}

// One record per line, then the summary object.
inline void write_report(std::ostream& out, const std::vector<VerificationRecord>& records, const SuiteSummary& summary) {
    for (const auto& r : records) out << to_json(r).dump() << '\n';
    out << to_json(summary).dump() << '\n';
}

// Structural report for a single graph.
inline json analyze_graph(const Graph& g) {
    json report;
    report["n"] = g.order();
    report["m"] = g.edge_count();
    report["connected"] = is_connected(g);
    auto hole = longest_hole(g);
    report["longest_hole"] = hole ? json{{"length", hole->length()}, {"certificate", to_json(*hole)}} : json(nullptr);
    report["chordal"] = is_chordal(g);
    if (g.order() > 0) {
        ZOfGraph z = z_of_graph(g);
        report["z"] = {{"value", z.z}, {"argmin", z.argmin}, {"path", z_value(g, z.argmin).path}};
    }
    auto d = dilworth_number(g);
    report["dilworth"] = {{"number", d.number}, {"certificate", to_json(d.certificate)}};
    json pt = json::object();
    for (std::size_t t = 4; t <= 8; ++t) {
        auto res = is_pt_free(g, t);
        pt[std::to_string(t)] = res.witness ? json{{"free", false}, {"witness", *res.witness}} : json{{"free", true}};
    }
    report["pt_free"] = std::move(pt);
    return report;
}

}  // namespace pursuit

#endif  // PURSUIT_VERIFY_HPP
