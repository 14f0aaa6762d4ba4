#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "treeid/eval.hpp"
#include "treeid/expr.hpp"
#include "treeid/model.hpp"
#include "treeid/rng.hpp"

namespace treeid {

// Raised when an expression could not be evaluated at any sampled model
// because some denominator kept vanishing: the denominator is identically
// zero on the model variety (up to the one-sided PIT guarantee).
struct DenominatorIdenticallyZero : std::runtime_error {
    explicit DenominatorIdenticallyZero(const std::string& what) : std::runtime_error(what) {}
};

struct PitConfig {
    int trials = 3;
    std::uint64_t seed = kDefaultSeed;
    int resample_limit = 32;
};

// Randomized zero test by exact evaluation at random valid-model points.
// "false" answers are certain; "true" answers fail with probability at most
// (deg/|S|)^trials over the seed choice. One oracle caches its sampled
// contexts, so repeated tests against the same graph share the Sigma
// computations and per-context memo tables.
class PitOracle {
  public:
    PitOracle(const TreeGraph& g, PitConfig cfg) : g_(&g), cfg_(cfg) {}

    const PitConfig& config() const { return cfg_; }

    bool is_zero(Expr e) {
        for (int t = 0; t < cfg_.trials; ++t) {
            if (!evaluate_robust(e, t).is_zero()) return false;
        }
        return true;
    }

    // Evaluates e at trial point t, resampling past degenerate points.
    QuadExt evaluate_robust(Expr e, int t) {
        try {
            return evaluate(e, context(t));
        } catch (const DegenerateEvaluation&) {
        }
        for (int r = 0; r < cfg_.resample_limit; ++r) {
            ModelCtx fresh = make_context(mix_seed(cfg_.seed, 0xf5e5, (static_cast<std::uint64_t>(t) << 20) | static_cast<std::uint64_t>(r)));
            try {
                return evaluate(e, fresh.ctx);
            } catch (const DegenerateEvaluation&) {
            }
        }
        throw DenominatorIdenticallyZero(
            "expression hit an exact-zero denominator at every sampled model");
    }

  private:
    struct ModelCtx {
        std::unique_ptr<ModelParams> params;
        std::unique_ptr<CovMatrix> sigma;
        EvalContext ctx;
    };

    ModelCtx make_context(std::uint64_t seed) {
        ModelCtx mc;
        mc.params = std::make_unique<ModelParams>(sample_model(*g_, seed));
        mc.sigma = std::make_unique<CovMatrix>(compute_sigma(*g_, *mc.params));
        mc.ctx.sigma = mc.sigma.get();
        mc.ctx.params = mc.params.get();
        return mc;
    }

    EvalContext& context(int t) {
        while (pool_.size() <= static_cast<std::size_t>(t))
            pool_.push_back(make_context(mix_seed(cfg_.seed, 0x9017, pool_.size())));
        return pool_[static_cast<std::size_t>(t)].ctx;
    }

    const TreeGraph* g_;
    PitConfig cfg_;
    std::vector<ModelCtx> pool_;
};

inline bool is_zero(Expr e, const TreeGraph& g, int trials = 3,
                    std::uint64_t seed = kDefaultSeed) {
    PitOracle oracle(g, PitConfig{trials, seed, 32});
    return oracle.is_zero(e);
}

// Roots of a x^2 + b x + c with a not identically zero (the caller handles
// the linear case). A single root when the discriminant vanishes
// identically; otherwise both FASTP roots, the "+sqrt" branch first.
inline std::vector<Expr> solve_quadratic(Expr a, Expr b, Expr c, PitOracle& oracle) {
    ExprArena& ar = *a.arena();
    Expr disc = b * b - cst(ar, 4L) * a * c;
    Expr two_a = cst(ar, 2L) * a;
    if (oracle.is_zero(disc)) return {neg(b) / two_a};
    Expr root = sqrt_expr(disc);
    return {(neg(b) + root) / two_a, (neg(b) - root) / two_a};
}

inline std::vector<Expr> solve_quadratic(Expr a, Expr b, Expr c, const TreeGraph& g,
                                         PitConfig cfg = {}) {
    PitOracle oracle(g, cfg);
    return solve_quadratic(a, b, c, oracle);
}

// Whether the candidate lam satisfies a lam^2 + b lam + c = 0 identically,
// by the same one-sided test. Branch identity is stable because every
// context evaluates the shared sqrt node on its own nonnegative branch.
inline bool satisfies_equation(Expr lam_formula, Expr a, Expr b, Expr c, PitOracle& oracle) {
    Expr q = a * lam_formula * lam_formula + b * lam_formula + c;
    return oracle.is_zero(q);
}

inline bool satisfies_equation(Expr lam_formula, Expr a, Expr b, Expr c, const TreeGraph& g,
                               int trials = 3, std::uint64_t seed = kDefaultSeed) {
    PitOracle oracle(g, PitConfig{trials, seed, 32});
    return satisfies_equation(lam_formula, a, b, c, oracle);
}

// Reported failure bound (deg/|S|)^trials. |S| = 65 is the smallest value
// set among the sampled parameters (the diagonal slack draws).
inline double pit_failure_bound(long long degree, int trials) {
    double per_trial = static_cast<double>(degree) / 65.0;
    if (per_trial >= 1.0) return 1.0;
    double bound = 1.0;
    for (int t = 0; t < trials; ++t) bound *= per_trial;
    return bound;
}

}  // namespace treeid
