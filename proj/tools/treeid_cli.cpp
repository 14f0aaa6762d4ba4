// Command-line front end: identify / verify / cycles / canon over tree-shaped
// linear SCMs given as edge lists ("0->1 1->2 1<->2") or JSON documents.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "treeid/treeid.hpp"

namespace {

using treeid::json;

struct Options {
    std::string graph_path;
    std::string format = "edgelist";
    std::string seed_text = "";
    std::string output = "text";
    int pit_trials = 3;
    int max_cycle_len = 0;
    int max_cycles = 64;
    int models = 100;
    std::string report_json_path;  // debug: verify a stored report instead
};

std::uint64_t parse_seed(const std::string& text) {
    if (text.empty()) return treeid::kDefaultSeed;
    if (text == "random") return std::random_device{}();
    return std::stoull(text);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw treeid::GraphError("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

treeid::TreeGraph load_graph(const Options& opt) {
    std::string text = read_file(opt.graph_path);
    if (opt.format == "doc") return treeid::graph_from_json(json::parse(text));
    return treeid::TreeGraph::parse_edgelist(text);
}

treeid::EngineConfig engine_config(const Options& opt) {
    treeid::EngineConfig cfg;
    cfg.pit_trials = opt.pit_trials;
    cfg.seed = parse_seed(opt.seed_text);
    cfg.max_cycle_len = opt.max_cycle_len;
    cfg.max_cycles = opt.max_cycles;
    return cfg;
}

int cmd_identify(const Options& opt) {
    treeid::TreeGraph g = load_graph(opt);
    treeid::IdReport rep = treeid::run_treeid(g, engine_config(opt));
    if (opt.output == "doc") {
        std::cout << treeid::report_to_json(rep).dump(2) << "\n";
    } else {
        std::cout << treeid::report_to_text(rep);
    }
    return rep.all_unique() ? 0 : 2;
}

int cmd_verify(const Options& opt) {
    treeid::TreeGraph g = load_graph(opt);
    treeid::IdReport rep = opt.report_json_path.empty()
                               ? treeid::run_treeid(g, engine_config(opt))
                               : treeid::report_from_json(json::parse(read_file(opt.report_json_path)));
    std::uint64_t seed = parse_seed(opt.seed_text);
    treeid::VerifySummary s = treeid::verify_report(g, rep, opt.models, seed);
    if (opt.output == "doc") {
        json j{{"models", s.models},
               {"checked_claims", s.checked_claims},
               {"exact_matches", s.exact_matches},
               {"violations", s.violations},
               {"details", s.details}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << s.exact_matches << "/" << s.checked_claims << " exact over " << s.models
                  << " models, " << s.violations << " violations\n";
        for (const auto& d : s.details) std::cout << "  " << d << "\n";
    }
    return s.violations == 0 ? 0 : 2;
}

int cmd_cycles(const Options& opt) {
    treeid::TreeGraph g = load_graph(opt);
    int max_len = opt.max_cycle_len > 0 ? opt.max_cycle_len : g.node_count() - 1;
    json doc = json::array();
    bool any = false;
    for (int i = 1; i < g.node_count(); ++i) {
        auto en = treeid::enumerate_missing_cycles(g, i, max_len, opt.max_cycles);
        if (opt.output == "doc") {
            json row{{"node", i}, {"truncated", en.truncated}};
            json cycles = json::array();
            for (const auto& c : en.cycles) cycles.push_back(c.nodes);
            row["cycles"] = std::move(cycles);
            doc.push_back(std::move(row));
        } else {
            std::cout << "node " << i << ":";
            if (en.cycles.empty()) std::cout << " no missing cycles";
            std::cout << "\n";
            for (const auto& c : en.cycles) {
                std::cout << "  ";
                for (std::size_t t = 0; t < c.nodes.size(); ++t)
                    std::cout << (t ? "<->" : "") << c.nodes[t];
                std::cout << "<->" << c.nodes[0] << "\n";
            }
            if (en.truncated) std::cout << "  (truncated at " << opt.max_cycles << " cycles)\n";
        }
        any = any || !en.cycles.empty();
    }
    if (opt.output == "doc") std::cout << doc.dump(2) << "\n";
    else if (!any) std::cout << "no missing cycles\n";
    return 0;
}

int cmd_canon(const Options& opt) {
    treeid::TreeGraph g = load_graph(opt);
    treeid::PathCanonResult res = treeid::canonicalize_path_graph(g);
    if (opt.output == "doc") {
        json j{{"graph", treeid::graph_to_json(res.graph)}, {"perm", res.perm}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "canonical: " << res.graph.to_edgelist() << "\n";
        std::cout << "perm:";
        for (std::size_t i = 0; i < res.perm.size(); ++i) {
            std::cout << ' ' << i << "->";
            if (res.perm[i] < 0) std::cout << "removed";
            else std::cout << res.perm[i];
        }
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Identification of direct effects in tree-shaped linear SCMs"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub, bool with_models) {
        sub->add_option("--graph", opt.graph_path, "graph file")->required();
        sub->add_option("--format", opt.format, "graph file format")
            ->check(CLI::IsMember({"edgelist", "doc"}));
        sub->add_option("--seed", opt.seed_text, "integer seed or 'random'");
        sub->add_option("--pit-trials", opt.pit_trials, "PIT trials per zero test")
            ->check(CLI::PositiveNumber);
        sub->add_option("--max-cycle-len", opt.max_cycle_len, "missing-cycle length cap");
        sub->add_option("--max-cycles", opt.max_cycles, "missing cycles per node cap")
            ->check(CLI::PositiveNumber);
        sub->add_option("--output", opt.output, "output format")
            ->check(CLI::IsMember({"text", "doc"}));
        if (with_models)
            sub->add_option("--models", opt.models, "verification model count")
                ->check(CLI::PositiveNumber);
    };

    CLI::App* identify = app.add_subcommand("identify", "decide identifiability, print formulas");
    add_common(identify, false);
    CLI::App* verify = app.add_subcommand("verify", "identify, then check formulas numerically");
    add_common(verify, true);
    verify->add_option("--report-json", opt.report_json_path,
                       "verify this stored report instead of running TreeID");
    CLI::App* cycles = app.add_subcommand("cycles", "list missing cycles per node");
    add_common(cycles, false);
    CLI::App* canon = app.add_subcommand("canon", "canonicalize a path graph");
    add_common(canon, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(identify)) return cmd_identify(opt);
        if (app.got_subcommand(verify)) return cmd_verify(opt);
        if (app.got_subcommand(cycles)) return cmd_cycles(opt);
        if (app.got_subcommand(canon)) return cmd_canon(opt);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 1;
}
