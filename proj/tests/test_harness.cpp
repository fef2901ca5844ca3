#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "brute_force.hpp"
#include "pursuit/corpus.hpp"
#include "pursuit/verify.hpp"

using namespace pursuit;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("pursuit_harness_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

struct CliRun {
    int code;
    std::string out;
};

CliRun cli(const std::string& args) {
    std::string cmd = std::string(PURSUIT_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    CliRun r{-1, {}};
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, got);
    int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<json> json_lines(const std::string& text) {
    std::vector<json> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) out.push_back(json::parse(line));
    return out;
}

// The house: a 4-cycle 0-1-2-3 with a roof vertex 4 on the edge 0-1.
Graph house() { return build_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {1, 4}}); }

Corpus small_corpus(const std::string& filter, std::size_t count, std::uint64_t seed, std::size_t n_max = 12) {
    CorpusOptions opt;
    opt.filter = parse_corpus_filter(filter);
    opt.count = count;
    opt.n_min = 5;
    opt.n_max = n_max;
    opt.seed = seed;
    return generate_corpus(opt);
}

}  // namespace

TEST(CorpusFilter, ParseAndPrint) {
    for (std::string text : {"chordal", "no-hole-ge:5", "pt-free:5", "no-hole-ge:4"})
        EXPECT_EQ(to_string(parse_corpus_filter(text)), text);
    EXPECT_EQ(parse_corpus_filter("no-hole-ge:6").hole_threshold(), 6u);
    EXPECT_EQ(parse_corpus_filter("chordal").hole_threshold(), 4u);
    EXPECT_EQ(parse_corpus_filter("pt-free:5").hole_threshold(), 6u);
    EXPECT_THROW(parse_corpus_filter("no-hole-ge:3"), ParameterError);
    EXPECT_THROW(parse_corpus_filter("pt-free:1"), ParameterError);
    EXPECT_THROW(parse_corpus_filter("holes"), ParameterError);
    EXPECT_THROW(parse_corpus_filter("no-hole-ge:x"), ParameterError);
}

TEST(GenerateCorpus, FilterContracts) {
    Corpus a = small_corpus("no-hole-ge:5", 50, 1, 15);
    ASSERT_EQ(a.entries.size(), 50u);
    for (const auto& e : a.entries) {
        EXPECT_TRUE(is_connected(e.graph));
        EXPECT_FALSE(has_hole_at_least(e.graph, 5)) << e.id;
        EXPECT_LT(brute::longest_hole(e.graph), 5u) << e.id;
    }
    Corpus b = small_corpus("chordal", 20, 2);
    ASSERT_EQ(b.entries.size(), 20u);
    for (const auto& e : b.entries) EXPECT_EQ(brute::longest_hole(e.graph), 0u) << e.id;
    Corpus c = small_corpus("pt-free:5", 30, 3);
    ASSERT_EQ(c.entries.size(), 30u);
    for (const auto& e : c.entries)
        for (Vertex v = 0; v < e.graph.order(); ++v) EXPECT_LE(brute::z_value(e.graph, v), 4u) << e.id;
}

TEST(GenerateCorpus, MixesFamiliesAndCountsRejections) {
    Corpus c = small_corpus("no-hole-ge:4", 40, 5);
    ASSERT_TRUE(c.tally.count("random_chordal"));
    ASSERT_TRUE(c.tally.count("random_connected"));
    EXPECT_GT(c.tally["random_chordal"].accepted, 0u);
    EXPECT_EQ(c.tally["random_chordal"].attempts, c.tally["random_chordal"].accepted);
    std::size_t accepted = 0, attempts = 0;
    for (const auto& [_, t] : c.tally) {
        accepted += t.accepted;
        attempts += t.attempts;
    }
    EXPECT_EQ(accepted, 40u);
    EXPECT_EQ(c.rejections(), attempts - accepted);
}

TEST(GenerateCorpus, DeterministicGivenSeed) {
    Corpus a = small_corpus("pt-free:5", 15, 77), b = small_corpus("pt-free:5", 15, 77), c = small_corpus("pt-free:5", 15, 78);
    EXPECT_EQ(manifest_json(a), manifest_json(b));
    EXPECT_NE(manifest_json(a), manifest_json(c));
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        EXPECT_EQ(a.entries[i].graph, b.entries[i].graph);
        EXPECT_EQ(a.entries[i].graph, generate(parse_generator_spec(a.entries[i].generator), a.entries[i].seed));
    }
}

TEST(GenerateCorpus, BudgetExhaustionReportsStatistics) {
    CorpusOptions opt;
    opt.filter = parse_corpus_filter("pt-free:2");
    opt.count = 3;
    opt.budget_factor = 5;
    try {
        generate_corpus(opt);
        FAIL() << "expected ParameterError";
    } catch (const ParameterError& e) {
        std::string what = e.what();
        EXPECT_NE(what.find("accepted 0 of 3"), std::string::npos) << what;
        EXPECT_NE(what.find("15 attempts"), std::string::npos) << what;
        EXPECT_NE(what.find("random_chordal=0/"), std::string::npos) << what;
    }
    opt.count = 0;
    EXPECT_THROW(generate_corpus(opt), ParameterError);
}

TEST(CorpusFiles, RoundTrip) {
    TempDir dir;
    Corpus c = small_corpus("chordal", 8, 4);
    write_corpus(c, dir.path);
    EXPECT_TRUE(fs::exists(dir.path / "manifest.json"));
    EXPECT_TRUE(fs::exists(dir.path / "graphs" / "g0007.json"));
    Corpus back = read_corpus(dir.path);
    EXPECT_EQ(back.filter, c.filter);
    EXPECT_EQ(manifest_json(back), manifest_json(c));
    EXPECT_THROW(read_corpus(dir.path / "missing"), Error);
}

TEST(RunSuite, Theorem1OnChordalCorpusUsesOneCop) {
    Corpus c = small_corpus("chordal", 25, 6);
    VerifyOptions opt;
    opt.t = 4;
    auto records = run_suite(c, Suite::Theorem1, opt);
    ASSERT_EQ(records.size(), 50u);
    for (const auto& r : records) {
        EXPECT_EQ(r.cops, 1u);
        EXPECT_TRUE(r.captured) << r.id;
        EXPECT_EQ(r.status, Status::Pass) << r.id << " " << r.reason;
        EXPECT_EQ(r.adversary, "optimal");
        EXPECT_LE(r.cop_turns, r.bound);
    }
    EXPECT_TRUE(summarize(Suite::Theorem1, records).ok());
}

TEST(RunSuite, CorollaryOnP5FreeCorpus) {
    Corpus c = small_corpus("pt-free:5", 25, 7);
    auto records = run_suite(c, Suite::Corollary, {});
    ASSERT_EQ(records.size(), 25u);
    for (const auto& r : records) {
        EXPECT_EQ(r.cops, 3u);
        EXPECT_EQ(r.t, 5u);
        EXPECT_TRUE(r.captured);
        EXPECT_LE(r.cop_turns, 4u);
        EXPECT_EQ(r.status, Status::Pass) << r.reason;
    }
    EXPECT_THROW(run_suite(small_corpus("chordal", 2, 1), Suite::Corollary, {}), ParameterError);
}

TEST(RunSuite, OracleSuiteSandwich) {
    Corpus c = small_corpus("no-hole-ge:6", 20, 8);
    auto records = run_suite(c, Suite::Oracle, {});
    for (const auto& r : records) {
        EXPECT_EQ(r.status, Status::Pass) << r.id << " " << r.reason;
        ASSERT_TRUE(r.c_exact);
        EXPECT_LE(*r.c_exact, 3u);
        const Graph& g = c.entries[std::stoul(r.id.substr(1))].graph;
        EXPECT_TRUE(is_k_copwin(g, *r.c_exact));
        if (*r.c_exact > 1) {
            EXPECT_FALSE(is_k_copwin(g, *r.c_exact - 1));
        }
        EXPECT_EQ(r.extra["game_value"], solve(g, *r.c_exact).root_value());
    }
}

// Failing records carry the graph, so they replay without the corpus.
TEST(RunSuite, DilworthFailureIsSelfContained) {
    Corpus c = corpus_of(CorpusFilter{}, {generate(CycleSpec{5}), house(), generate(PathSpec{4})});
    auto records = run_suite(c, Suite::Dilworth, {});
    ASSERT_EQ(records.size(), 3u);
    EXPECT_EQ(records[0].status, Status::Pass);
    EXPECT_EQ(*records[0].dilworth, 5u);
    EXPECT_EQ(*records[0].c_exact, 2u);
    EXPECT_EQ(records[1].status, Status::Fail);
    EXPECT_EQ(*records[1].dilworth, 3u);
    EXPECT_EQ(*records[1].c_exact, 2u);
    ASSERT_TRUE(records[1].graph);
    EXPECT_EQ(*records[1].graph, house());
    EXPECT_EQ(records[2].extra["applies"], false);
    auto summary = summarize(Suite::Dilworth, records);
    EXPECT_FALSE(summary.ok());
    EXPECT_EQ(summary.failing_ids, std::vector<std::string>{"g0001"});

    json line = to_json(records[1]);
    EXPECT_EQ(graph_from_json(line["graph"]), house());
    EXPECT_EQ(line["status"], "fail");
}

TEST(RunSuite, EnsembleFallbackIsLabeled) {
    Corpus c = small_corpus("chordal", 5, 9);
    VerifyOptions opt;
    opt.t = 5;
    opt.budget = 1;
    auto records = run_suite(c, Suite::Theorem1, opt);
    for (const auto& r : records) {
        EXPECT_EQ(r.adversary, "ensemble");
        EXPECT_FALSE(r.extra.contains("game_value"));
        EXPECT_EQ(r.status, Status::Pass);
    }
    auto summary = to_json(summarize(Suite::Theorem1, records));
    EXPECT_EQ(summary["adversary"]["ensemble"], records.size());
    EXPECT_EQ(summary["adversary"]["optimal"], 0);
}

TEST(RunSuite, ReportIndependentOfThreadCount) {
    Corpus c = small_corpus("no-hole-ge:5", 16, 10);
    VerifyOptions one, four;
    four.jobs = 4;
    std::ostringstream a, b;
    auto ra = run_suite(c, Suite::Theorem1, one), rb = run_suite(c, Suite::Theorem1, four);
    write_report(a, ra, summarize(Suite::Theorem1, ra));
    write_report(b, rb, summarize(Suite::Theorem1, rb));
    EXPECT_EQ(a.str(), b.str());
    auto lines = json_lines(a.str());
    ASSERT_EQ(lines.size(), 33u);
    EXPECT_EQ(lines.back()["summary"], true);
    for (std::size_t i = 1; i + 1 < lines.size(); ++i) EXPECT_LE(lines[i - 1]["id"], lines[i]["id"]);
}

TEST(AnalyzeGraph, Examples) {
    json c5 = analyze_graph(generate(CycleSpec{5}));
    EXPECT_EQ(c5["longest_hole"]["length"], 5);
    EXPECT_EQ(c5["z"]["value"], brute::z_value(generate(CycleSpec{5}), 0));
    EXPECT_EQ(c5["z"]["value"], 4);
    EXPECT_EQ(c5["dilworth"]["number"], 5);
    EXPECT_EQ(c5["chordal"], false);

    json k4 = analyze_graph(generate(CompleteSpec{4}));
    EXPECT_TRUE(k4["longest_hole"].is_null());
    EXPECT_EQ(k4["chordal"], true);
    EXPECT_EQ(k4["z"]["value"], 2);
    EXPECT_EQ(k4["dilworth"]["number"], 1);

    Graph petersen = generate(PetersenSpec{});
    json p = analyze_graph(petersen);
    EXPECT_EQ(p["longest_hole"]["length"], brute::longest_hole(petersen));
    EXPECT_EQ(p["z"]["value"], brute::z_value(petersen, 0));
    EXPECT_EQ(p["dilworth"]["number"], brute::dilworth(petersen));
    for (int t = 4; t <= 8; ++t) EXPECT_EQ(p["pt_free"][std::to_string(t)]["free"], t >= 6);
}

TEST(Cli, CorpusExamplesHonourTheirFilters) {
    TempDir dir;
    struct Case {
        std::string args;
        std::size_t count;
        std::function<bool(const Graph&)> check;
    };
    std::vector<Case> cases = {
        {"--filter no-hole-ge:5 --count 50 --n 15 --seed 1", 50, [](const Graph& g) { return !has_hole_at_least(g, 5) && g.order() == 15; }},
        {"--filter chordal --count 20", 20, [](const Graph& g) { return is_chordal(g); }},
        {"--filter pt-free:5 --count 30", 30, [](const Graph& g) { return is_pt_free(g, 5).free; }},
    };
    for (std::size_t i = 0; i < cases.size(); ++i) {
        fs::path out = dir.path / std::to_string(i);
        CliRun r = cli("corpus " + cases[i].args + " --out " + out.string());
        ASSERT_EQ(r.code, 0) << cases[i].args;
        EXPECT_EQ(json::parse(r.out)["count"], cases[i].count);
        Corpus c = read_corpus(out);
        ASSERT_EQ(c.entries.size(), cases[i].count);
        for (const auto& e : c.entries) EXPECT_TRUE(cases[i].check(e.graph)) << cases[i].args << " " << e.id;
    }
}

TEST(Cli, VerifyExitCodeAndReproducibility) {
    TempDir dir;
    ASSERT_EQ(cli("corpus --filter chordal --count 12 --n-max 12 --seed 5 --out " + (dir.path / "chordal").string()).code, 0);
    const std::string verify = "verify theorem1 --corpus " + (dir.path / "chordal").string();
    CliRun first = cli(verify + " --t 4 --jobs 2");
    EXPECT_EQ(first.code, 0);
    CliRun second = cli(verify + " --t 4");
    EXPECT_EQ(first.out, second.out);
    auto lines = json_lines(first.out);
    ASSERT_EQ(lines.size(), 25u);
    EXPECT_EQ(lines.back()["ok"], true);

    ASSERT_EQ(cli(verify + " --t 4 --out " + (dir.path / "report.jsonl").string()).code, 0);
    EXPECT_EQ(slurp(dir.path / "report.jsonl"), first.out);

    write_corpus(corpus_of(CorpusFilter{}, {house(), generate(CycleSpec{6})}), dir.path / "house");
    CliRun bad = cli("verify dilworth --corpus " + (dir.path / "house").string());
    EXPECT_EQ(bad.code, 1);
    auto bad_lines = json_lines(bad.out);
    ASSERT_EQ(bad_lines.size(), 3u);
    EXPECT_EQ(bad_lines[0]["status"], "fail");
    EXPECT_EQ(graph_from_json(bad_lines[0]["graph"]), house());
    EXPECT_EQ(bad_lines[1]["status"], "pass");
    EXPECT_EQ(bad_lines[2]["failing_ids"], json::array({"g0000"}));
}

TEST(Cli, Errors) {
    TempDir dir;
    EXPECT_EQ(cli("corpus --filter holes --count 3 --out " + dir.path.string()).code, 2);
    EXPECT_EQ(cli("corpus --filter pt-free:2 --count 2 --rejection-factor 3 --out " + dir.path.string()).code, 2);
    EXPECT_EQ(cli("verify theorem1 --corpus " + (dir.path / "none").string()).code, 2);
    EXPECT_EQ(cli("verify sideways --corpus " + dir.path.string()).code, 2);
    std::ofstream(dir.path / "broken.json") << "{\"n\": 3, \"edges\": [[0, 1], [1, 5]]}";
    EXPECT_EQ(cli("analyze " + (dir.path / "broken.json").string()).code, 2);
    EXPECT_NE(cli("frobnicate").code, 0);
}

TEST(Cli, Analyze) {
    TempDir dir;
    std::ofstream(dir.path / "c5.json") << serialize_graph(generate(CycleSpec{5}), "c5");
    CliRun r = cli("analyze " + (dir.path / "c5.json").string());
    ASSERT_EQ(r.code, 0);
    json report = json::parse(r.out);
    EXPECT_EQ(report["name"], "c5");
    EXPECT_EQ(report["longest_hole"]["length"], 5);
    EXPECT_EQ(report["z"]["value"], 4);
    EXPECT_EQ(report["dilworth"]["number"], 5);
}
