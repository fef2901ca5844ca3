#include <csignal>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "pursuit/corpus.hpp"
#include "pursuit/service.hpp"
#include "pursuit/verify.hpp"

using namespace pursuit;

namespace {

struct Globals {
    std::uint64_t seed = 1;
    std::string out;
    std::size_t budget = kDefaultStateBudget;
    std::size_t jobs = 1;
};

GameServer* running_server = nullptr;

void on_signal(int) {
    if (running_server) running_server->stop();
}

// Writes `text` to --out when given, stdout otherwise.
void emit(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.out);
    out << text;
    if (!out) throw Error("cannot write " + g.out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cops and robbers on graphs without long holes"};
    app.require_subcommand(1);
    Globals globals;
    app.add_option("--seed", globals.seed, "Master seed")->capture_default_str();
    app.add_option("--out", globals.out, "Output file (directory for corpus)");
    app.add_option("--budget", globals.budget, "Oracle state budget")->capture_default_str();
    app.add_option("--jobs", globals.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

    auto* corpus_cmd = app.add_subcommand("corpus", "Generate a filtered graph corpus");
    corpus_cmd->fallthrough();
    std::string filter_text = "chordal";
    std::size_t count = 100, n_exact = 0, n_min = 6, n_max = 20, budget_factor = 1000;
    corpus_cmd->add_option("--filter", filter_text, "no-hole-ge:T | chordal | pt-free:T")->capture_default_str();
    corpus_cmd->add_option("--count", count, "Number of graphs")->capture_default_str();
    auto* n_opt = corpus_cmd->add_option("--n", n_exact, "Exact order of every graph");
    corpus_cmd->add_option("--n-min", n_min, "Smallest order")->capture_default_str()->excludes(n_opt);
    corpus_cmd->add_option("--n-max", n_max, "Largest order")->capture_default_str()->excludes(n_opt);
    corpus_cmd->add_option("--rejection-factor", budget_factor, "Attempts allowed per requested graph")->capture_default_str();

    auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite over a corpus");
    verify_cmd->fallthrough();
    std::string suite_text, corpus_dir;
    std::optional<std::size_t> t_opt;
    bool no_invariants = false;
    verify_cmd->add_option("suite", suite_text, "theorem1 | corollary | dilworth | oracle")->required();
    verify_cmd->add_option("--corpus", corpus_dir, "Corpus directory")->required();
    verify_cmd->add_option("--t", t_opt, "Hole threshold (default: from the corpus filter)");
    verify_cmd->add_flag("--no-invariants", no_invariants, "Skip per-turn invariant checks");

    auto* analyze_cmd = app.add_subcommand("analyze", "Structural report for one graph file");
    analyze_cmd->fallthrough();
    std::string graph_file;
    analyze_cmd->add_option("graph", graph_file, "Graph JSON file")->required()->check(CLI::ExistingFile);

    auto* serve_cmd = app.add_subcommand("serve", "Start the game service");
    serve_cmd->fallthrough();
    std::string host = "127.0.0.1", transcripts;
    int port = 8080;
    long ttl = 3600;
    serve_cmd->add_option("--host", host, "Bind address")->capture_default_str();
    serve_cmd->add_option("--port", port, "Port (0 picks a free one)")->capture_default_str();
    serve_cmd->add_option("--transcripts", transcripts, "Directory for finished-game transcripts");
    serve_cmd->add_option("--ttl", ttl, "Idle session lifetime in seconds")->capture_default_str()->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*corpus_cmd) {
            if (globals.out.empty()) throw ParameterError("corpus needs --out <directory>");
            CorpusOptions opt;
            opt.filter = parse_corpus_filter(filter_text);
            opt.count = count;
            opt.n_min = n_exact ? n_exact : n_min;
            opt.n_max = n_exact ? n_exact : n_max;
            opt.seed = globals.seed;
            opt.budget_factor = budget_factor;
            Corpus c = generate_corpus(opt);
            write_corpus(c, globals.out);
            json m = manifest_json(c);
            m.erase("graphs");
            std::cout << m.dump() << '\n';
            return 0;
        }
        if (*verify_cmd) {
            Suite suite = parse_suite(suite_text);
            Corpus c = read_corpus(corpus_dir);
            VerifyOptions opt;
            opt.t = t_opt;
            opt.budget = globals.budget;
            opt.jobs = globals.jobs;
            opt.seed = globals.seed;
            opt.check_invariants = !no_invariants;
            auto records = run_suite(c, suite, opt);
            auto summary = summarize(suite, records);
            std::ostringstream report;
            write_report(report, records, summary);
            emit(globals, report.str());
            if (!globals.out.empty()) std::cout << to_json(summary).dump() << '\n';
            for (const auto& r : records)
                if (r.status == Status::Fail)
                    std::cerr << "FAIL " << r.id << " (generator " << r.generator << ", seed " << r.seed << "): " << r.reason << '\n';
            return summary.ok() ? 0 : 1;
        }
        if (*analyze_cmd) {
            NamedGraph ng = load_graph_file(graph_file);
            json report = analyze_graph(ng.graph);
            if (ng.name) report["name"] = *ng.name;
            emit(globals, report.dump(2) + "\n");
            return 0;
        }
        if (*serve_cmd) {
            ServiceOptions opt;
            opt.ttl = std::chrono::seconds(ttl);
            if (!transcripts.empty()) opt.transcript_dir = transcripts;
            GameServer server(opt);
            int bound = server.bind(host, port);
            if (bound < 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
            running_server = &server;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            std::cout << "listening on " << host << ":" << bound << std::endl;
            server.listen();
            running_server = nullptr;
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
