// Acceptance suite: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every failing check is one of the documented known
// conflicts (see README, "Known failures"); any other failing check exits 1.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>

#include "brute_force.hpp"
#include "pursuit/corpus.hpp"
#include "pursuit/verify.hpp"

using namespace pursuit;
using Clock = std::chrono::steady_clock;

namespace {

struct Check {
    std::string name;
    bool ok;
    std::string detail;
    bool known = false;  // documented conflict between the stated claim and the computed value
};

struct Criterion {
    int number = 0;
    std::string title;
    std::vector<Check> checks = {};
    double seconds = 0;

    void add(std::string name, bool ok, std::string detail = {}, bool known = false) {
        checks.push_back({std::move(name), ok, std::move(detail), known});
    }
    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
    }
    bool unexpected_failure() const {
        return std::any_of(checks.begin(), checks.end(), [](const Check& c) { return !c.ok && !c.known; });
    }
};

double since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

std::size_t cop_number_upto(const Graph& g, std::size_t k_max) { return cop_number(g, k_max).value_or(k_max + 1); }

// Shared across criteria 1, 2, 4 and 7.
struct HoleFreeCorpora {
    std::map<std::size_t, Corpus> by_t;
};

HoleFreeCorpora build_corpora() {
    HoleFreeCorpora out;
    for (std::size_t t = 4; t <= 7; ++t) {
        CorpusOptions opt;
        opt.filter = {CorpusFilter::Kind::NoHoleGe, t};
        opt.count = 100;
        opt.n_min = 6;
        opt.n_max = 20;
        opt.seed = 1000 + t;
        out.by_t[t] = generate_corpus(opt);
    }
    return out;
}

Criterion criterion1_and_2(const HoleFreeCorpora& corpora, Criterion& z_bound) {
    Criterion c{1, "Gyarfas suite: Gyarfas(t), t-3 cops vs optimal evader, capture within n turns"};
    auto start = Clock::now();
    std::size_t records = 0, captured = 0, within_n = 0, optimal = 0, mixed = 0;
    std::size_t z_records = 0, within_z = 0;
    std::size_t max_n = 0;
    for (const auto& [t, corpus] : corpora.by_t) {
        VerifyOptions opt;
        opt.t = t;
        opt.seed = t;
        bool both_families = corpus.tally.count("random_chordal") && corpus.tally.at("random_chordal").accepted > 0 &&
                             corpus.tally.count("random_connected") && corpus.tally.at("random_connected").accepted > 0;
        mixed += both_families;
        for (const auto& e : corpus.entries) max_n = std::max(max_n, e.graph.order());
        for (const auto& r : run_suite(corpus, Suite::Theorem1, opt)) {
            if (r.v0_rule == "min_z") {
                ++z_records;
                within_z += r.captured && r.cop_turns <= *r.z;
                continue;
            }
            ++records;
            captured += r.captured;
            within_n += r.captured && r.cop_turns <= r.n;
            optimal += r.adversary == "optimal";
        }
    }
    c.seconds = since(start);
    c.add("corpus size", records == 400 && max_n <= 20, fmt("%zu records over t=4..7, n <= %zu", records, max_n));
    c.add("generator mix", mixed == 4, fmt("%zu/4 corpora mix random_chordal with rejection-sampled graphs", mixed));
    c.add("optimal adversary", optimal == records, fmt("%zu/%zu matches vs optimal evader", optimal, records));
    c.add("capture rate 100%", captured == records, fmt("%zu/%zu captured", captured, records));
    c.add("cop_turns <= n", within_n == records, fmt("%zu/%zu within n", within_n, records));
    c.add("runtime < 300 s", c.seconds < 300.0, fmt("%.1f s", c.seconds));

    z_bound = Criterion{2, "z-bound suite: v0 = argmin z, capture within z(G) turns"};
    z_bound.add("records", z_records == 400, fmt("%zu records", z_records));
    z_bound.add("cop_turns <= z(G)", within_z == z_records, fmt("%zu/%zu within z(G)", within_z, z_records));
    return c;
}

Criterion criterion3() {
    Criterion c{3, "P5-free suite: P5-free graphs, Gyarfas(6) with 3 cops captures within 4 turns"};
    auto start = Clock::now();
    CorpusOptions copt;
    copt.filter = {CorpusFilter::Kind::PtFree, 5};
    copt.count = 100;
    copt.n_min = 6;
    copt.n_max = 18;
    copt.seed = 2005;
    Corpus corpus = generate_corpus(copt);
    std::size_t pt_free = 0, max_n = 0;
    for (const auto& e : corpus.entries) {
        pt_free += is_pt_free(e.graph, 5).free && is_connected(e.graph);
        max_n = std::max(max_n, e.graph.order());
    }
    auto records = run_suite(corpus, Suite::Corollary, {});
    std::size_t three = 0, captured = 0, within = 0, optimal = 0, max_turns = 0;
    for (const auto& r : records) {
        three += r.cops == 3;
        captured += r.captured;
        within += r.captured && r.cop_turns <= 4;
        optimal += r.adversary == "optimal";
        max_turns = std::max(max_turns, r.cop_turns);
    }
    c.seconds = since(start);
    const std::size_t n = records.size();
    c.add("corpus", n >= 100 && pt_free == n && max_n <= 18, fmt("%zu connected P5-free graphs, n <= %zu", pt_free, max_n));
    c.add("exactly 3 cops", three == n, fmt("%zu/%zu", three, n));
    c.add("optimal adversary", optimal == n, fmt("%zu/%zu", optimal, n));
    c.add("captured within 4 turns", within == n && captured == n, fmt("%zu/%zu, max cop_turns %zu", within, n, max_turns));
    return c;
}

Criterion criterion4(const HoleFreeCorpora& corpora) {
    Criterion c{4, "Oracle cross-checks"};
    auto start = Clock::now();
    Rng rng(4004);
    std::size_t ones = 0;
    for (int i = 0; i < 20; ++i) {
        std::size_t n = static_cast<std::size_t>(rng.between(5, 20));
        Graph g = generate(RandomChordalSpec{n, 2 + rng.below(4)}, rng.next());
        ones += cop_number_upto(g, 2) == 1;
    }
    c.add("c(random_chordal) = 1", ones == 20, fmt("%zu/20 instances", ones));

    Graph c4 = generate(CycleSpec{4});
    const std::size_t c_c4 = cop_number_upto(c4, 3), d_c4 = dilworth_number(c4).number;
    c.add("c(C4) = 2", c_c4 == 2, fmt("c = %zu", c_c4));
    c.add("D(C4) = 4", d_c4 == 4,
          fmt("D = %zu: opposite vertices of C4 share a neighbourhood, so they are vicinally comparable", d_c4), true);
    c.add("c(C4) = D(C4) - 2", c_c4 + 2 == d_c4, fmt("c = %zu, D - 2 = %zu", c_c4, d_c4 - 2), true);

    Graph petersen = generate(PetersenSpec{});
    auto t3 = solve(petersen, 3);
    const std::size_t c_p = cop_number_upto(petersen, 3);
    c.add("c(Petersen) = 3", c_p == 3 && fixpoint_violations(t3) == 0, fmt("c = %zu, fixpoint clean", c_p));

    std::size_t checked = 0, within = 0;
    for (const auto& [t, corpus] : corpora.by_t)
        for (const auto& e : corpus.entries) {
            if (e.graph.order() > 14) continue;
            ++checked;
            within += is_k_copwin(e.graph, t - 3);
        }
    c.add("c <= t-3 on corpus graphs with n <= 14", within == checked, fmt("%zu/%zu", within, checked));
    c.seconds = since(start);
    return c;
}

Criterion criterion5() {
    Criterion c{5, "Dilworth bound suite: c(G) <= D(G) - 2 whenever D(G) >= 3"};
    auto start = Clock::now();
    std::vector<Graph> graphs;
    for (std::size_t n = 1; n <= 6; ++n) {
        const std::uint64_t pairs = n * (n - 1) / 2;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
            Graph g = build_graph(n, brute::edges_from_mask(n, mask));
            if (is_connected(g)) graphs.push_back(std::move(g));
        }
    }
    const std::size_t exhaustive = graphs.size();
    Rng rng(5005);
    std::size_t sampled = 0;
    while (sampled < 1000) {
        Graph g = build_graph(7, brute::edges_from_mask(7, rng.next() & ((std::uint64_t{1} << 21) - 1)));
        if (!is_connected(g)) continue;
        graphs.push_back(std::move(g));
        ++sampled;
    }
    for (std::size_t k = 4; k <= 9; ++k) graphs.push_back(generate(CycleSpec{k}));

    std::size_t applies = 0, violations = 0, violations_d3 = 0, violations_hole4 = 0;
    std::string example;
    for (const auto& g : graphs) {
        const std::size_t d = dilworth_number(g).number;
        if (d < 3) continue;
        ++applies;
        if (is_k_copwin(g, d - 2)) continue;
        ++violations;
        violations_d3 += d == 3;
        auto hole = longest_hole(g);
        violations_hole4 += hole && hole->length() == 4;
        if (example.empty()) example = serialize_graph(g);
    }
    c.add("c <= D-2 (n <= 6 exhaustive, 1000 sampled n = 7, C4..C9)", violations == 0,
          fmt("%zu graphs (%zu exhaustive, %zu sampled), %zu with D >= 3; %zu violations, %zu with D = 3, %zu with a 4-hole as longest hole",
              graphs.size(), exhaustive, sampled, applies, violations, violations_d3, violations_hole4) +
              (example.empty() ? "" : "; first: " + example),
          violations == violations_d3);

    std::string cycles;
    bool cycles_ok = true, c5_on = true;
    for (std::size_t k = 4; k <= 9; ++k) {
        std::size_t d = dilworth_number(generate(CycleSpec{k})).number;
        cycles += fmt("%sD(C%zu)=%zu", k == 4 ? "" : " ", k, d);
        cycles_ok = cycles_ok && d == k;
        if (k >= 5) c5_on = c5_on && d == k;
    }
    c.add("D(C_k) = k for k = 4..9", cycles_ok, cycles, c5_on);

    std::size_t compared = 0, equal = 0;
    auto compare = [&](const Graph& g) {
        ++compared;
        auto d = dilworth_number(g);
        equal += d.number == brute::dilworth(g) && d.certificate.antichain == brute::dilworth_set(g);
    };
    for (std::size_t i = 0; i < graphs.size(); i += 7) compare(graphs[i]);
    for (int i = 0; i < 200; ++i) {
        std::size_t n = static_cast<std::size_t>(rng.between(8, 12));
        compare(i % 2 ? generate(RandomChordalSpec{n, 2 + rng.below(4)}, rng.next())
                      : generate(RandomConnectedSpec{n, 0.15 + 0.7 * rng.unit()}, rng.next()));
    }
    c.add("dilworth_number = brute force for n <= 12", equal == compared, fmt("%zu/%zu", equal, compared));
    c.seconds = since(start);
    return c;
}

Criterion criterion6() {
    Criterion c{6, "Certificate extraction: violations yield valid long holes"};
    auto start = Clock::now();
    std::string cycles;
    bool cycles_ok = true;
    for (std::size_t k = 6; k <= 12; ++k) {
        Graph g = generate(CycleSpec{k});
        auto table = std::make_shared<const OracleTable>(solve(g, 2));
        GyarfasStrategy cops(g, 5);
        OptimalEvader robber(table);
        Transcript tr = play_match(g, 2, cops, robber, 2 * k + 5);
        const auto& cert = cops.certificate();
        bool ok = tr.outcome.captured() ||
                  (cops.last_confinement() == Confinement::Violation && cert && validate(g, *cert) && cert->length() == k);
        cycles_ok = cycles_ok && ok;
        cycles += fmt(" C%zu:%s", k, tr.outcome.captured() ? "captured" : cert ? fmt("hole%zu", cert->length()).c_str() : "none");
    }
    c.add("C6..C12 vs optimal evader", cycles_ok, cycles.substr(1));

    Rng rng(6006);
    std::size_t graphs = 0, matches = 0, violations = 0, valid = 0;
    while (graphs < 50) {
        std::size_t n = static_cast<std::size_t>(rng.between(6, 16));
        Graph g = generate(RandomConnectedSpec{n, (2.0 + 2.0 * rng.unit()) / static_cast<double>(n)}, rng.next());
        if (!has_hole_at_least(g, 5)) continue;
        ++graphs;
        auto table = std::make_shared<const OracleTable>(solve(g, 2));
        std::vector<std::unique_ptr<RobberStrategy>> robbers;
        robbers.push_back(std::make_unique<OptimalEvader>(table));
        robbers.push_back(std::make_unique<GreedyMaxDistanceRobber>());
        for (int w = 0; w < 4; ++w) robbers.push_back(std::make_unique<RandomWalkRobber>(rng.next()));
        for (auto& robber : robbers) {
            GyarfasStrategy cops(g, 5);
            play_match(g, 2, cops, *robber, 2 * n + 5);
            ++matches;
            if (cops.last_confinement() != Confinement::Violation) continue;
            ++violations;
            const auto& cert = cops.certificate();
            valid += cert && validate(g, *cert) && cert->length() >= 5;
        }
    }
    c.add("50 random graphs with a hole >= 5", violations == valid && violations > 0,
          fmt("%zu matches, %zu violations, %zu valid certificates of length >= 5", matches, violations, valid));
    c.seconds = since(start);
    return c;
}

Criterion criterion7(const HoleFreeCorpora& corpora) {
    Criterion c{7, "Invariant suite: per-turn invariants, zero violations, oracle fixpoints"};
    auto start = Clock::now();
    std::size_t matches = 0, invariant_failures = 0, violations = 0, tables = 0, bad_tables = 0;
    std::string first_failure;
    for (const auto& [t, corpus] : corpora.by_t) {
        Rng rng(7000 + t);
        for (const auto& e : corpus.entries) {
            const Graph& g = e.graph;
            auto table = std::make_shared<const OracleTable>(solve(g, t - 3));
            ++tables;
            bad_tables += fixpoint_violations(*table) != 0;
            for (V0Rule rule : {V0Rule::FirstVertex, V0Rule::MinZ}) {
                std::vector<std::unique_ptr<RobberStrategy>> robbers;
                robbers.push_back(std::make_unique<OptimalEvader>(table));
                robbers.push_back(std::make_unique<GreedyMaxDistanceRobber>());
                robbers.push_back(std::make_unique<StationaryRobber>());
                for (int w = 0; w < 10; ++w) robbers.push_back(std::make_unique<RandomWalkRobber>(rng.next()));
                for (auto& robber : robbers) {
                    GyarfasStrategy cops(g, t, rule);
                    cops.set_invariant_checking(true);
                    Transcript tr = play_match(g, t - 3, cops, *robber, 2 * g.order() + 5);
                    ++matches;
                    violations += cops.last_confinement() == Confinement::Violation;
                    if (!tr.outcome.captured()) {
                        ++invariant_failures;
                        if (first_failure.empty()) first_failure = e.id + ": " + tr.outcome.reason;
                    }
                }
            }
        }
    }
    c.add("matches >= 10^4", matches >= 10000, fmt("%zu matches", matches));
    c.add("invariants hold every turn", invariant_failures == 0,
          fmt("%zu matches ended without capture%s", invariant_failures, first_failure.empty() ? "" : (" (" + first_failure + ")").c_str()));
    c.add("confinement violations = 0", violations == 0, fmt("%zu", violations));
    c.add("oracle fixpoint sweep", bad_tables == 0, fmt("%zu/%zu tables clean", tables - bad_tables, tables));
    c.seconds = since(start);
    return c;
}

void report(const Criterion& c) {
    std::cout << "criterion " << c.number << ": " << (c.passed() ? "PASS" : "FAIL") << "  " << c.title
              << fmt("  (%.1f s)", c.seconds) << '\n';
    for (const auto& check : c.checks)
        std::cout << "    [" << (check.ok ? "ok" : check.known ? "FAIL, known" : "FAIL") << "] " << check.name << ": "
                  << check.detail << '\n';
    std::cout.flush();
}

}  // namespace

int main() {
    auto start = Clock::now();
    HoleFreeCorpora corpora = build_corpora();
    std::vector<Criterion> results;
    Criterion z_bound;
    results.push_back(criterion1_and_2(corpora, z_bound));
    report(results.back());
    results.push_back(z_bound);
    report(results.back());
    results.push_back(criterion3());
    report(results.back());
    results.push_back(criterion4(corpora));
    report(results.back());
    results.push_back(criterion5());
    report(results.back());
    results.push_back(criterion6());
    report(results.back());
    results.push_back(criterion7(corpora));
    report(results.back());

    std::size_t passed = 0;
    std::vector<int> known, unexpected;
    for (const auto& c : results) {
        if (c.passed()) ++passed;
        else if (c.unexpected_failure()) unexpected.push_back(c.number);
        else known.push_back(c.number);
    }
    std::cout << fmt("acceptance: %zu/%zu PASS", passed, results.size());
    auto list = [](const std::vector<int>& v) {
        std::string s;
        for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
        return s;
    };
    if (!known.empty()) std::cout << "; FAIL on documented conflicts only: " << list(known);
    if (!unexpected.empty()) std::cout << "; UNEXPECTED FAIL: " << list(unexpected);
    std::cout << fmt(" (%.1f s total)", since(start)) << std::endl;
    return unexpected.empty() ? 0 : 1;
}
