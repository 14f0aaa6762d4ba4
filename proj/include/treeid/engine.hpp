#pragma once

#include <algorithm>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "treeid/cycleq.hpp"
#include "treeid/eval.hpp"
#include "treeid/expr.hpp"
#include "treeid/graph.hpp"
#include "treeid/model.hpp"
#include "treeid/pit.hpp"

namespace treeid {

enum class EdgeStatus { Unidentified, Unique, TwoCandidates, Unknown };

inline const char* status_name(EdgeStatus s) {
    switch (s) {
        case EdgeStatus::Unique: return "unique";
        case EdgeStatus::TwoCandidates: return "two";
        case EdgeStatus::Unknown: return "unknown";
        default: return "unidentified";
    }
}

struct EdgeReport {
    int node = 0;  // edge parent(node) -> node
    EdgeStatus status = EdgeStatus::Unidentified;
    std::vector<Expr> formulas;
    std::string provenance;
    std::string diagnostic;
    long long degree = 0;
    double pit_failure_bound = 0.0;
};

struct EngineConfig {
    int pit_trials = 3;
    std::uint64_t seed = kDefaultSeed;
    int max_cycle_len = 0;  // 0: number of non-root nodes
    int max_cycles = 64;
    bool rotation_fallback = true;
    bool preliminary_only = false;  // stop after the instrument/propagation phase
};

struct OmegaEntry {
    int i = 0;
    int j = 0;
    Expr formula;
};

struct IdReport {
    TreeGraph graph;
    EngineConfig config;
    bool truncated_cycles = false;
    std::vector<EdgeReport> edges;   // nodes 1..n in order
    std::vector<OmegaEntry> omega;   // filled when every edge is unique
    std::shared_ptr<ExprArena> arena;

    const EdgeReport& edge(int node) const { return edges.at(static_cast<std::size_t>(node) - 1); }

    bool all_unique() const {
        return std::all_of(edges.begin(), edges.end(),
                           [](const EdgeReport& e) { return e.status == EdgeStatus::Unique; });
    }
};

namespace detail {

inline std::string cycle_str(const MissingCycle& cyc) {
    std::string s = "(";
    for (std::size_t t = 0; t < cyc.nodes.size(); ++t) {
        if (t) s += ',';
        s += std::to_string(cyc.nodes[t]);
    }
    s += ')';
    return s;
}

class TreeIdEngine {
  public:
    TreeIdEngine(const TreeGraph& g, EngineConfig cfg)
        : g_(g),
          cfg_(cfg),
          arena_(std::make_shared<ExprArena>()),
          pit_(g, PitConfig{cfg.pit_trials, cfg.seed, 32}) {
        table_.resize(static_cast<std::size_t>(g.node_count()));
    }

    IdReport run() {
        preliminary();
        if (!cfg_.preliminary_only) {
            cycle_phase();
            if (cfg_.rotation_fallback) fallback_phase();
        }
        return make_report();
    }

  private:
    struct Entry {
        EdgeStatus status = EdgeStatus::Unidentified;
        std::vector<Expr> formulas;
        std::string provenance;
        std::string diagnostic;
    };

    std::size_t count(int i) const { return table_[static_cast<std::size_t>(i)].formulas.size(); }

    Entry& entry(int i) { return table_[static_cast<std::size_t>(i)]; }

    void assign(int i, EdgeStatus status, std::vector<Expr> formulas, std::string prov) {
        Entry& e = entry(i);
        // Monotone refinement: a status may only tighten.
        if (!e.formulas.empty() && formulas.size() > e.formulas.size())
            throw std::logic_error("identification table regressed at node " + std::to_string(i));
        e.status = status;
        e.formulas = std::move(formulas);
        e.provenance = std::move(prov);
        e.diagnostic.clear();
    }

    void set_unique(int i, Expr f, std::string prov) {
        assign(i, EdgeStatus::Unique, {f}, std::move(prov));
    }

    // Candidate pairs whose two formulas coincide as functions collapse to a
    // unique identification.
    void set_two(int i, Expr f1, Expr f2, std::string prov, bool certified_distinct) {
        if (!certified_distinct && pit_.is_zero(f1 - f2)) {
            set_unique(i, f1, prov + ", coincident candidates merged");
            return;
        }
        assign(i, EdgeStatus::TwoCandidates, {f1, f2}, std::move(prov));
    }

    void mark_unknown(int i, const std::string& diag) {
        Entry& e = entry(i);
        if (!e.formulas.empty()) return;  // keep partial information
        e.status = EdgeStatus::Unknown;
        e.diagnostic = diag;
    }

    void preliminary() {
        for (int i = 1; i < g_.node_count(); ++i) {
            if (g_.has_bidirected(0, i)) continue;
            int p = g_.parent(i);
            set_unique(i, sym(*arena_, 0, i) / sym(*arena_, 0, p), "root instrument");
            propagate(i);
        }
    }

    // Corollary-2 propagation with the trek-condition guard. For a unique
    // formula the combinatorial test is exact; candidate pairs additionally
    // get a PIT check per candidate, since a spurious candidate can zero the
    // denominator even when the trek exists.
    void propagate(int i) {
        if (count(i) == 0) return;
        int p = g_.parent(i);
        for (int j = 1; j < g_.node_count(); ++j) {
            if (j == i || g_.has_bidirected(i, j)) continue;
            std::size_t have = count(j);
            if (have != 0 && have <= count(i)) continue;
            int q = g_.parent(j);
            if (!trek_exists_avoiding_parent_edge(g_, i, q)) continue;
            try {
                Expr s_pq = sym(*arena_, p, q);
                Expr s_iq = sym(*arena_, i, q);
                bool degenerate = false;
                if (count(i) > 1) {
                    for (Expr f : entry(i).formulas) {
                        if (pit_.is_zero(f * s_pq - s_iq)) {
                            degenerate = true;
                            break;
                        }
                    }
                }
                if (degenerate) continue;
                Expr s_pj = sym(*arena_, p, j);
                Expr s_ij = sym(*arena_, i, j);
                std::vector<Expr> mapped;
                for (Expr f : entry(i).formulas)
                    mapped.push_back((f * s_pj - s_ij) / (f * s_pq - s_iq));
                std::string prov = "propagated from node " + std::to_string(i);
                if (mapped.size() == 1) {
                    set_unique(j, mapped[0], prov);
                } else {
                    set_two(j, mapped[0], mapped[1], prov, false);
                }
            } catch (const DenominatorIdenticallyZero&) {
                continue;
            } catch (const EvalError&) {
                continue;
            }
            propagate(j);
        }
    }

    // One Theorem-1 equation for the edge into variant.nodes[0]. Returns
    // true when the table changed.
    bool process_cycle_variant(const MissingCycle& variant, const std::string& tag) {
        int target = variant.nodes[0];
        CycleQuadratic q = build_quadratic(*arena_, g_, variant);
        std::string label = "cycle " + cycle_str(variant) + tag;
        if (pit_.is_zero(q.a)) {
            if (pit_.is_zero(q.b)) return false;  // vanishing equation, no information
            set_unique(target, neg(q.c) / q.b, label + ": linear");
            return true;
        }
        if (count(target) == 0) {
            std::vector<Expr> roots = solve_quadratic(q.a, q.b, q.c, pit_);
            if (roots.size() == 1) {
                set_unique(target, roots[0], label + ": double root");
            } else {
                set_two(target, roots[0], roots[1], label + ": two roots", true);
            }
            return true;
        }
        if (count(target) == 2) {
            std::vector<Expr> keep;
            for (Expr f : entry(target).formulas)
                if (satisfies_equation(f, q.a, q.b, q.c, pit_)) keep.push_back(f);
            if (keep.size() == 1) {
                set_unique(target, keep[0], entry(target).provenance + "; filtered by " + label);
                return true;
            }
            // Empty would contradict soundness; treat as no information.
            return false;
        }
        return false;
    }

    CycleEnumeration enumerate(int i) {
        int max_len = cfg_.max_cycle_len > 0 ? cfg_.max_cycle_len : g_.node_count() - 1;
        CycleEnumeration en = enumerate_missing_cycles(g_, i, max_len, cfg_.max_cycles);
        truncated_ = truncated_ || en.truncated;
        return en;
    }

    void cycle_phase() {
        for (int i = 1; i < g_.node_count(); ++i) {
            if (count(i) == 1) continue;
            try {
                for (const MissingCycle& cyc : enumerate(i).cycles) {
                    process_cycle_variant(cyc, "");
                    if (count(i) == 1) break;
                }
            } catch (const DenominatorIdenticallyZero& ex) {
                mark_unknown(i, ex.what());
            } catch (const EvalError& ex) {
                mark_unknown(i, ex.what());
            }
            if (count(i) >= 1) propagate(i);
        }
    }

    // Re-runs every cycle from every rotation start and both traversal
    // directions. The recursion can attach a spurious second root to one
    // rotation while another rotation of the same cycle turns linear, so the
    // extra equations can pin nodes the first pass left ambiguous.
    void fallback_phase() {
        bool progress = true;
        int sweeps = 0;
        while (progress && ++sweeps <= 2 * g_.node_count()) {
            progress = false;
            for (int i = 1; i < g_.node_count(); ++i) {
                if (count(i) == 1) continue;
                for (const MissingCycle& cyc : enumerate(i).cycles) {
                    const std::size_t k = cyc.nodes.size();
                    for (std::size_t start = 0; start < k; ++start) {
                        for (bool reversed : {false, true}) {
                            MissingCycle variant = cyc.rotated(start, reversed);
                            if (count(variant.nodes[0]) == 1) continue;
                            bool changed = false;
                            try {
                                changed = process_cycle_variant(variant, " [rotation]");
                            } catch (const DenominatorIdenticallyZero&) {
                                continue;
                            } catch (const EvalError&) {
                                continue;
                            }
                            if (changed) {
                                progress = true;
                                propagate(variant.nodes[0]);
                            }
                            if (count(i) == 1) break;
                        }
                        if (count(i) == 1) break;
                    }
                    if (count(i) == 1) break;
                }
            }
        }
    }

    IdReport make_report() {
        IdReport rep{g_, cfg_, truncated_, {}, {}, arena_};
        for (int i = 1; i < g_.node_count(); ++i) {
            Entry& e = entry(i);
            EdgeReport er;
            er.node = i;
            er.status = e.status;
            er.formulas = e.formulas;
            er.provenance = e.provenance;
            er.diagnostic = e.diagnostic;
            for (Expr f : e.formulas)
                er.degree = std::max(er.degree, degree_bound(f, g_));
            er.pit_failure_bound = e.formulas.empty()
                                       ? 0.0
                                       : pit_failure_bound(er.degree, cfg_.pit_trials);
            rep.edges.push_back(std::move(er));
        }
        if (rep.all_unique() && !cfg_.preliminary_only) fill_omega(rep);
        return rep;
    }

    // Lemma-4 recovery written over the identified lambda formulas; emitted
    // for the diagonal and every bidirected pair.
    void fill_omega(IdReport& rep) {
        ExprArena& ar = *arena_;
        auto f = [&](int i) { return rep.edge(i).formulas[0]; };
        rep.omega.push_back(OmegaEntry{0, 0, sym(ar, 0, 0)});
        for (int i = 1; i < g_.node_count(); ++i) {
            int p = g_.parent(i);
            rep.omega.push_back(OmegaEntry{
                i, i,
                f(i) * f(i) * sym(ar, p, p) - cst(ar, 2L) * f(i) * sym(ar, p, i) + sym(ar, i, i)});
        }
        for (const auto& [a, b] : g_.bidirected_pairs()) {
            if (a == 0) {
                int q = g_.parent(b);
                rep.omega.push_back(OmegaEntry{0, b, sym(ar, 0, b) - f(b) * sym(ar, 0, q)});
            } else {
                int p = g_.parent(a);
                int q = g_.parent(b);
                rep.omega.push_back(
                    OmegaEntry{a, b, f(a) * f(b) * sym(ar, p, q) - f(a) * sym(ar, p, b) -
                                         f(b) * sym(ar, a, q) + sym(ar, a, b)});
            }
        }
    }

    const TreeGraph& g_;
    EngineConfig cfg_;
    std::shared_ptr<ExprArena> arena_;
    PitOracle pit_;
    std::vector<Entry> table_;
    bool truncated_ = false;
};

}  // namespace detail

inline IdReport run_treeid(const TreeGraph& g, const EngineConfig& cfg = {}) {
    detail::TreeIdEngine engine(g, cfg);
    return engine.run();
}

// ---------------------------------------------------------------------------
// Numeric verification: every claimed formula must reproduce the true
// coefficient exactly at freshly sampled models.

struct VerifySummary {
    int models = 0;
    int checked_claims = 0;
    int exact_matches = 0;
    int violations = 0;
    std::vector<std::string> details;
};

inline VerifySummary verify_report(const TreeGraph& g, const IdReport& report, int n_models,
                                   std::uint64_t seed) {
    VerifySummary s;
    s.models = n_models;
    for (int m = 0; m < n_models; ++m) {
        for (int retry = 0;; ++retry) {
            std::uint64_t model_seed = mix_seed(seed, 0xbead, (static_cast<std::uint64_t>(m) << 8) | static_cast<std::uint64_t>(retry));
            ModelParams params = sample_model(g, model_seed);
            CovMatrix sigma = compute_sigma(g, params);
            EvalContext ctx;
            ctx.sigma = &sigma;
            ctx.params = &params;
            try {
                int claims = 0, matches = 0;
                std::vector<std::string> local;
                for (const EdgeReport& e : report.edges) {
                    if (e.status != EdgeStatus::Unique && e.status != EdgeStatus::TwoCandidates)
                        continue;
                    ++claims;
                    const QuadExt truth(params.lambda[static_cast<std::size_t>(e.node)]);
                    bool ok = false;
                    for (Expr fexpr : e.formulas)
                        if (evaluate(fexpr, ctx) == truth) ok = true;
                    if (ok) {
                        ++matches;
                    } else {
                        std::ostringstream msg;
                        msg << "edge " << g.parent(e.node) << "->" << e.node
                            << ": no formula matched lambda=" << to_string(truth.rational())
                            << " at model seed " << model_seed;
                        local.push_back(msg.str());
                    }
                }
                s.checked_claims += claims;
                s.exact_matches += matches;
                s.violations += claims - matches;
                for (auto& d : local) s.details.push_back(std::move(d));
                break;
            } catch (const DegenerateEvaluation&) {
                if (retry >= 15) {
                    s.details.push_back("model " + std::to_string(m) +
                                        ": degenerate evaluation persisted, skipped");
                    ++s.violations;
                    break;
                }
            }
        }
    }
    return s;
}

}  // namespace treeid
