#ifndef PURSUIT_CORPUS_HPP
#define PURSUIT_CORPUS_HPP

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "pursuit/generators.hpp"
#include "pursuit/graph_io.hpp"
#include "pursuit/structure.hpp"

namespace pursuit {

// Which graphs a corpus admits.
struct CorpusFilter {
    enum class Kind { NoHoleGe, Chordal, PtFree };
    Kind kind = Kind::Chordal;
    std::size_t t = 4;

    bool accepts(const Graph& g) const {
        switch (kind) {
            case Kind::NoHoleGe: return !has_hole_at_least(g, t);
            case Kind::Chordal: return is_chordal(g);
            case Kind::PtFree: return is_pt_free(g, t).free;
        }
        return false;
    }

    // Largest t' such that every admitted graph has no hole of length >= t'.
    std::size_t hole_threshold() const {
        switch (kind) {
            case Kind::NoHoleGe: return t;
            case Kind::Chordal: return 4;
            case Kind::PtFree: return t + 1;
        }
        return 0;
    }

    friend bool operator==(const CorpusFilter&, const CorpusFilter&) = default;
};

inline std::string to_string(const CorpusFilter& f) {
    switch (f.kind) {
        case CorpusFilter::Kind::NoHoleGe: return "no-hole-ge:" + std::to_string(f.t);
        case CorpusFilter::Kind::Chordal: return "chordal";
        case CorpusFilter::Kind::PtFree: return "pt-free:" + std::to_string(f.t);
    }
    return "?";
}

// "no-hole-ge:T" (T >= 4), "chordal", "pt-free:T" (T >= 2).
inline CorpusFilter parse_corpus_filter(const std::string& text) {
    if (text == "chordal") return {CorpusFilter::Kind::Chordal, 4};
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    if (colon == std::string::npos || (head != "no-hole-ge" && head != "pt-free"))
        throw ParameterError("unknown corpus filter '" + text + "' (expected no-hole-ge:T, chordal or pt-free:T)");
    std::size_t t = detail::parse_count(text.substr(colon + 1));
    if (head == "no-hole-ge") {
        if (t < 4) throw ParameterError("no-hole-ge needs T >= 4");
        return {CorpusFilter::Kind::NoHoleGe, t};
    }
    if (t < 2) throw ParameterError("pt-free needs T >= 2");
    return {CorpusFilter::Kind::PtFree, t};
}

struct CorpusEntry {
    std::string id;
    std::string generator;  // text form accepted by parse_generator_spec
    std::uint64_t seed = 0;
    Graph graph;
};

struct GeneratorTally {
    std::size_t attempts = 0;
    std::size_t accepted = 0;
};

struct Corpus {
    CorpusFilter filter;
    std::uint64_t seed = 0;
    std::vector<CorpusEntry> entries;
    std::map<std::string, GeneratorTally> tally;  // keyed by generator family

    std::size_t rejections() const {
        std::size_t r = 0;
        for (const auto& [_, t] : tally) r += t.attempts - t.accepted;
        return r;
    }
};

struct CorpusOptions {
    CorpusFilter filter;
    std::size_t count = 100;
    std::size_t n_min = 6, n_max = 20;
    std::uint64_t seed = 1;
    std::size_t budget_factor = 1000;  // attempts allowed per requested graph
};

namespace detail {

inline std::string family_of(const std::string& generator) { return generator.substr(0, generator.find(':')); }

inline std::string format_p(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", p);
    return buf;
}

// Candidate generator for attempt `i`. Families alternate so every corpus mixes
// random chordal graphs with rejection-sampled random graphs; the P_t-free filter also
// draws threshold graphs.
inline std::string propose(const CorpusFilter& filter, std::size_t i, std::size_t n, Rng& rng) {
    const bool pt = filter.kind == CorpusFilter::Kind::PtFree;
    const std::size_t families = pt ? 3 : 2;
    switch (i % families) {
        case 0: return "random_chordal:" + std::to_string(n) + ":" + std::to_string(2 + rng.below(4));
        case 1: {
            double p;
            if (pt || rng.chance(0.5)) p = 0.6 + 0.35 * rng.unit();
            else p = std::min(0.9, (2.0 + 2.0 * rng.unit()) / static_cast<double>(n));
            return "random_connected:" + std::to_string(n) + ":" + format_p(p);
        }
        default: {
            std::string seq;
            for (std::size_t v = 1; v < n; ++v) seq += rng.chance(0.5) ? '1' : '0';
            seq.back() = '1';
            return "threshold:" + seq;
        }
    }
}

}  // namespace detail

// Rejection sampling against the filter. Throws ParameterError with the tally when
// the attempt budget runs out first.
inline Corpus generate_corpus(const CorpusOptions& opt) {
    if (opt.count == 0) throw ParameterError("corpus count must be positive");
    if (opt.n_min < 2 || opt.n_min > opt.n_max) throw ParameterError("corpus needs 2 <= n_min <= n_max");
    Corpus corpus;
    corpus.filter = opt.filter;
    corpus.seed = opt.seed;
    Rng rng(opt.seed);
    const std::size_t budget = opt.budget_factor * opt.count;
    for (std::size_t attempt = 0; corpus.entries.size() < opt.count; ++attempt) {
        if (attempt == budget) {
            std::string stats;
            for (const auto& [fam, t] : corpus.tally)
                stats += " " + fam + "=" + std::to_string(t.accepted) + "/" + std::to_string(t.attempts);
            throw ParameterError("filter " + to_string(opt.filter) + " accepted " + std::to_string(corpus.entries.size()) +
                                 " of " + std::to_string(opt.count) + " graphs within " + std::to_string(budget) +
                                 " attempts (accepted/attempts:" + stats + ")");
        }
        const auto n = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(opt.n_min), static_cast<std::int64_t>(opt.n_max)));
        std::string gen = detail::propose(opt.filter, attempt, n, rng);
        const std::uint64_t seed = rng.next();
        auto& tally = corpus.tally[detail::family_of(gen)];
        ++tally.attempts;
        Graph g = generate(parse_generator_spec(gen), seed);
        if (!opt.filter.accepts(g)) continue;
        ++tally.accepted;
        char id[16];
        std::snprintf(id, sizeof id, "g%04zu", corpus.entries.size());
        corpus.entries.push_back({id, gen, seed, std::move(g)});
    }
    return corpus;
}

inline json manifest_json(const Corpus& c) {
    json graphs = json::array();
    for (const auto& e : c.entries)
        graphs.push_back({{"id", e.id}, {"n", e.graph.order()}, {"generator", e.generator}, {"seed", e.seed},
                          {"file", "graphs/" + e.id + ".json"}});
    json tally = json::object();
    for (const auto& [fam, t] : c.tally)
        tally[fam] = {{"attempts", t.attempts}, {"accepted", t.accepted}, {"rejected", t.attempts - t.accepted}};
    return json{{"filter", to_string(c.filter)},
                {"seed", c.seed},
                {"count", c.entries.size()},
                {"rejections", c.rejections()},
                {"generators", std::move(tally)},
                {"graphs", std::move(graphs)}};
}

inline void write_corpus(const Corpus& c, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir / "graphs");
    for (const auto& e : c.entries) {
        std::ofstream out(dir / "graphs" / (e.id + ".json"));
        out << serialize_graph(e.graph, e.id) << '\n';
        if (!out) throw Error("cannot write " + (dir / "graphs" / (e.id + ".json")).string());
    }
    std::ofstream out(dir / "manifest.json");
    out << manifest_json(c).dump(2) << '\n';
    if (!out) throw Error("cannot write " + (dir / "manifest.json").string());
}

// Reads a corpus directory and checks each graph against its recorded generator.
inline Corpus read_corpus(const std::filesystem::path& dir) {
    std::ifstream in(dir / "manifest.json");
    if (!in) throw Error("no corpus manifest at " + (dir / "manifest.json").string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(0, e.what());
    }
    Corpus c;
    c.filter = parse_corpus_filter(doc.at("filter").get<std::string>());
    c.seed = doc.value("seed", std::uint64_t{0});
    const json generators = doc.value("generators", json::object());
    for (const auto& [fam, t] : generators.items())
        c.tally[fam] = {t.at("attempts").get<std::size_t>(), t.at("accepted").get<std::size_t>()};
    for (const auto& item : doc.at("graphs")) {
        CorpusEntry e;
        e.id = item.at("id").get<std::string>();
        e.generator = item.value("generator", "");
        e.seed = item.value("seed", std::uint64_t{0});
        e.graph = load_graph_file((dir / item.at("file").get<std::string>()).string()).graph;
        c.entries.push_back(std::move(e));
    }
    return c;
}

// A corpus from explicit graphs (ids g0000, g0001, ...), for library callers.
inline Corpus corpus_of(const CorpusFilter& filter, const std::vector<Graph>& graphs, const std::string& generator = "explicit") {
    Corpus c;
    c.filter = filter;
    for (const auto& g : graphs) {
        char id[16];
        std::snprintf(id, sizeof id, "g%04zu", c.entries.size());
        c.entries.push_back({id, generator, 0, g});
    }
    return c;
}

}  // namespace pursuit

#endif  // PURSUIT_CORPUS_HPP
