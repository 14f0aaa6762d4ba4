#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "treeid/engine.hpp"
#include "treeid/expr.hpp"
#include "treeid/graph.hpp"
#include "treeid/model.hpp"

namespace treeid {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Graph document format: {"nodes": n+1, "directed": [[i,j],...],
// "bidirected": [[i,j],...]}

inline json graph_to_json(const TreeGraph& g) {
    json j;
    j["nodes"] = g.node_count();
    json dir = json::array();
    for (int i = 1; i < g.node_count(); ++i) dir.push_back({g.parent(i), i});
    j["directed"] = std::move(dir);
    json bid = json::array();
    for (const auto& [a, b] : g.bidirected_pairs()) bid.push_back({a, b});
    j["bidirected"] = std::move(bid);
    return j;
}

inline TreeGraph graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("directed"))
        throw GraphError("graph document needs a \"directed\" array");
    std::vector<std::pair<long, long>> directed, bidirected;
    for (const auto& e : j.at("directed"))
        directed.push_back({e.at(0).get<long>(), e.at(1).get<long>()});
    if (j.contains("bidirected"))
        for (const auto& e : j.at("bidirected"))
            bidirected.push_back({e.at(0).get<long>(), e.at(1).get<long>()});
    TreeGraph g(std::move(directed), std::move(bidirected));
    if (j.contains("nodes") && j.at("nodes").get<int>() != g.node_count())
        throw GraphError("graph document node count disagrees with the edges");
    return g;
}

// ---------------------------------------------------------------------------
// Covariance matrices as exact "p/q" strings; round-trips bit-exactly.

inline json cov_to_json(const CovMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.size(); ++j) row.push_back(to_string(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"nodes", m.size()}, {"sigma", std::move(rows)}};
}

inline CovMatrix cov_from_json(const json& j) {
    int n = j.at("nodes").get<int>();
    CovMatrix m(n);
    const json& rows = j.at("sigma");
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            m.set(i, k, parse_rational(rows.at(static_cast<std::size_t>(i))
                                           .at(static_cast<std::size_t>(k))
                                           .get<std::string>()));
    return m;
}

// ---------------------------------------------------------------------------
// Expression ASTs

inline json expr_to_json(Expr e) {
    const ExprNode& n = e.node();
    switch (n.op) {
        case Op::Const: return json{{"op", "const"}, {"value", to_string(n.value)}};
        case Op::Sym: return json{{"op", "sym"}, {"i", n.i}, {"j", n.j}};
        case Op::Lam: return json{{"op", "lam"}, {"i", n.i}, {"j", n.j}};
        case Op::Sqrt:
            return json{{"op", "sqrt"}, {"args", json::array({expr_to_json(Expr(e.arena(), n.a))})}};
        default: break;
    }
    const char* name = n.op == Op::Add   ? "add"
                       : n.op == Op::Sub ? "sub"
                       : n.op == Op::Mul ? "mul"
                                         : "div";
    return json{{"op", name},
                {"args", json::array({expr_to_json(Expr(e.arena(), n.a)),
                                      expr_to_json(Expr(e.arena(), n.b))})}};
}

inline Expr expr_from_json(ExprArena& ar, const json& j) {
    const std::string op = j.at("op").get<std::string>();
    if (op == "const") return cst(ar, parse_rational(j.at("value").get<std::string>()));
    if (op == "sym") return sym(ar, j.at("i").get<int>(), j.at("j").get<int>());
    if (op == "lam") return lam(ar, j.at("i").get<int>(), j.at("j").get<int>());
    if (op == "sqrt") return sqrt_expr(expr_from_json(ar, j.at("args").at(0)));
    Expr a = expr_from_json(ar, j.at("args").at(0));
    Expr b = expr_from_json(ar, j.at("args").at(1));
    if (op == "add") return a + b;
    if (op == "sub") return a - b;
    if (op == "mul") return a * b;
    if (op == "div") return a / b;
    throw std::invalid_argument("unknown expression op: " + op);
}

// ---------------------------------------------------------------------------
// Identification reports

inline json report_to_json(const IdReport& rep) {
    json edges = json::array();
    for (const EdgeReport& e : rep.edges) {
        json formulas = json::array();
        json pretty_list = json::array();
        for (Expr f : e.formulas) {
            formulas.push_back(expr_to_json(f));
            pretty_list.push_back(pretty(f));
        }
        json row{{"from", rep.graph.parent(e.node)},
                 {"to", e.node},
                 {"status", status_name(e.status)},
                 {"formulas", std::move(formulas)},
                 {"pretty", std::move(pretty_list)},
                 {"provenance", e.provenance},
                 {"degree", e.degree},
                 {"pit_failure_bound", e.pit_failure_bound}};
        if (!e.diagnostic.empty()) row["diagnostic"] = e.diagnostic;
        edges.push_back(std::move(row));
    }
    json j{{"graph", graph_to_json(rep.graph)},
           {"edges", std::move(edges)},
           {"config",
            {{"seed", rep.config.seed},
             {"pit_trials", rep.config.pit_trials},
             {"max_cycle_len", rep.config.max_cycle_len},
             {"max_cycles", rep.config.max_cycles}}},
           {"truncated_cycles", rep.truncated_cycles}};
    json labels = json::array();
    for (long l : rep.graph.input_labels()) labels.push_back(l);
    j["labels"] = std::move(labels);
    if (!rep.omega.empty()) {
        json womega = json::array();
        for (const OmegaEntry& oe : rep.omega)
            womega.push_back(json{{"i", oe.i},
                                  {"j", oe.j},
                                  {"formula", expr_to_json(oe.formula)},
                                  {"pretty", pretty(oe.formula)}});
        j["omega"] = std::move(womega);
    }
    return j;
}

inline IdReport report_from_json(const json& j) {
    IdReport rep{graph_from_json(j.at("graph")), EngineConfig{}, false, {}, {},
                 std::make_shared<ExprArena>()};
    const json& cfg = j.at("config");
    rep.config.seed = cfg.at("seed").get<std::uint64_t>();
    rep.config.pit_trials = cfg.at("pit_trials").get<int>();
    rep.config.max_cycle_len = cfg.at("max_cycle_len").get<int>();
    rep.config.max_cycles = cfg.at("max_cycles").get<int>();
    rep.truncated_cycles = j.at("truncated_cycles").get<bool>();
    for (const json& row : j.at("edges")) {
        EdgeReport e;
        e.node = row.at("to").get<int>();
        const std::string st = row.at("status").get<std::string>();
        e.status = st == "unique"          ? EdgeStatus::Unique
                   : st == "two"           ? EdgeStatus::TwoCandidates
                   : st == "unknown"       ? EdgeStatus::Unknown
                                           : EdgeStatus::Unidentified;
        for (const json& f : row.at("formulas"))
            e.formulas.push_back(expr_from_json(*rep.arena, f));
        e.provenance = row.value("provenance", std::string());
        e.diagnostic = row.value("diagnostic", std::string());
        e.degree = row.value("degree", 0LL);
        e.pit_failure_bound = row.value("pit_failure_bound", 0.0);
        rep.edges.push_back(std::move(e));
    }
    if (j.contains("omega"))
        for (const json& row : j.at("omega"))
            rep.omega.push_back(OmegaEntry{row.at("i").get<int>(), row.at("j").get<int>(),
                                           expr_from_json(*rep.arena, row.at("formula"))});
    return rep;
}

inline std::string report_to_text(const IdReport& rep) {
    std::ostringstream out;
    const TreeGraph& g = rep.graph;
    out << "graph: " << g.to_edgelist() << "\n";
    if (g.relabeled()) {
        out << "input labels:";
        for (int i = 0; i < g.node_count(); ++i)
            out << ' ' << g.input_labels()[static_cast<std::size_t>(i)] << "->" << i;
        out << "\n";
    }
    int unique = 0, two = 0, unid = 0, unknown = 0;
    for (const EdgeReport& e : rep.edges) {
        int p = g.parent(e.node);
        out << "edge " << p << "->" << e.node << " [" << status_name(e.status) << "]";
        if (e.status == EdgeStatus::Unique) {
            ++unique;
            out << "  λ(" << p << "→" << e.node << ") = " << pretty(e.formulas[0]);
        } else if (e.status == EdgeStatus::TwoCandidates) {
            ++two;
            out << "  λ(" << p << "→" << e.node << ") ∈ {"
                << pretty(e.formulas[0]) << ", " << pretty(e.formulas[1]) << "}";
        } else if (e.status == EdgeStatus::Unknown) {
            ++unknown;
        } else {
            ++unid;
        }
        out << "\n";
        if (!e.provenance.empty()) out << "    via: " << e.provenance << "\n";
        if (!e.diagnostic.empty()) out << "    diagnostic: " << e.diagnostic << "\n";
    }
    for (const OmegaEntry& oe : rep.omega)
        out << "ω(" << oe.i << "," << oe.j << ") = " << pretty(oe.formula) << "\n";
    if (rep.truncated_cycles) out << "note: cycle enumeration truncated by --max-cycles\n";
    out << "summary: " << unique << " unique, " << two << " two-candidate, " << unid
        << " unidentified, " << unknown << " unknown\n";
    return out.str();
}

}  // namespace treeid
