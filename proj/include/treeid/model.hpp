#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "treeid/graph.hpp"
#include "treeid/rational.hpp"
#include "treeid/rng.hpp"

namespace treeid {

// Dense symmetric matrix of exact rationals.
class SymMatrix {
  public:
    SymMatrix() : n_(0) {}
    explicit SymMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}

    int size() const { return n_; }

    const Rational& at(int i, int j) const { return a_[index(i, j)]; }

    void set(int i, int j, Rational v) {
        a_[index(i, j)] = v;
        a_[index(j, i)] = std::move(v);
    }

    bool operator==(const SymMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

  private:
    std::size_t index(int i, int j) const {
        if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range("matrix index");
        return static_cast<std::size_t>(i) * n_ + j;
    }

    int n_;
    std::vector<Rational> a_;
};

using CovMatrix = SymMatrix;

// Exact parameter assignment for one structural model: lambda[i] is the
// coefficient of the edge parent(i) -> i, omega is the error covariance with
// the graph's sparsity.
struct ModelParams {
    std::vector<Rational> lambda;  // index by child node; [0] unused
    SymMatrix omega;
};

// Deterministic in (graph, seed). Off-diagonal draws avoid zero; the diagonal
// gets 1 + sum of absolute off-diagonal row entries + slack, which makes
// Omega strictly diagonally dominant with positive diagonal.
inline ModelParams sample_model(const TreeGraph& g, std::uint64_t seed) {
    SplitMix64 rng(mix_seed(seed, 0x6d0de1));
    const int n1 = g.node_count();
    ModelParams m;
    m.lambda.assign(static_cast<std::size_t>(n1), Rational(0));
    m.omega = SymMatrix(n1);

    auto nonzero_scaled = [&](long bound) {
        long v = 0;
        do {
            v = rng.range(-bound, bound);
        } while (v == 0);
        return make_rational(v, 64);
    };

    for (int i = 1; i < n1; ++i) m.lambda[static_cast<std::size_t>(i)] = nonzero_scaled(128);
    for (const auto& [a, b] : g.bidirected_pairs()) m.omega.set(a, b, nonzero_scaled(64));
    for (int i = 0; i < n1; ++i) {
        Rational diag = 1;
        for (int j = 0; j < n1; ++j)
            if (j != i) diag += abs(m.omega.at(i, j));
        diag += make_rational(rng.range(0, 64), 64);
        m.omega.set(i, i, diag);
    }
    return m;
}

namespace detail {

// Per-node ancestor chain with the directed-path products L(s, i) for every
// ancestor s, L(i, i) = 1.
struct AncestorProducts {
    std::vector<int> nodes;       // root .. i
    std::vector<Rational> prod;   // prod[t] = L(nodes[t], i)
};

inline AncestorProducts ancestor_products(const TreeGraph& g, const ModelParams& m, int i) {
    AncestorProducts ap;
    ap.nodes = g.ancestors(i);
    ap.prod.assign(ap.nodes.size(), Rational(1));
    for (std::size_t t = ap.nodes.size(); t-- > 1;) {
        // L(parent, i) = lambda_child * L(child, i) walking up from i.
        ap.prod[t - 1] = m.lambda[static_cast<std::size_t>(ap.nodes[t])] * ap.prod[t];
    }
    return ap;
}

}  // namespace detail

// Exact covariance matrix via the ancestor double sum:
// sigma_ij = sum over s in An(i), t in An(j) of omega_st L(s,i) L(t,j).
inline CovMatrix compute_sigma(const TreeGraph& g, const ModelParams& m) {
    const int n1 = g.node_count();
    std::vector<detail::AncestorProducts> ap;
    ap.reserve(static_cast<std::size_t>(n1));
    for (int i = 0; i < n1; ++i) ap.push_back(detail::ancestor_products(g, m, i));

    CovMatrix sigma(n1);
    for (int i = 0; i < n1; ++i) {
        for (int j = i; j < n1; ++j) {
            Rational acc = 0;
            const auto& ai = ap[static_cast<std::size_t>(i)];
            const auto& aj = ap[static_cast<std::size_t>(j)];
            for (std::size_t s = 0; s < ai.nodes.size(); ++s) {
                for (std::size_t t = 0; t < aj.nodes.size(); ++t) {
                    const Rational& w = m.omega.at(ai.nodes[s], aj.nodes[t]);
                    if (w == 0) continue;
                    acc += w * ai.prod[s] * aj.prod[t];
                }
            }
            sigma.set(i, j, acc);
        }
    }
    return sigma;
}

// Test oracle: sums trek monomials by explicit enumeration of both trek
// forms, walking parent chains edge by edge. Limited to small graphs.
inline Rational sigma_by_trek_enumeration(const TreeGraph& g, const ModelParams& m, int i, int j) {
    if (g.node_count() > 10)
        throw std::invalid_argument("trek enumeration oracle is limited to <= 10 nodes");

    // Upward walks from a node: (top node, product of lambdas along the walk).
    auto upward = [&](int start) {
        std::vector<std::pair<int, Rational>> walks;
        Rational prod = 1;
        int v = start;
        walks.push_back({v, prod});
        while (g.parent(v) != -1) {
            prod *= m.lambda[static_cast<std::size_t>(v)];
            v = g.parent(v);
            walks.push_back({v, prod});
        }
        return walks;
    };

    Rational acc = 0;
    for (const auto& [u, pu] : upward(i)) {
        for (const auto& [v, pv] : upward(j)) {
            if (u == v) {
                acc += m.omega.at(u, u) * pu * pv;  // i <- ... <- u -> ... -> j
            } else if (g.has_bidirected(u, v)) {
                acc += m.omega.at(u, v) * pu * pv;  // i <- ... <- u <-> v -> ... -> j
            }
        }
    }
    return acc;
}

// Recovers Omega from Sigma and a full lambda assignment:
//   omega_ij = lam_i lam_j sigma_pq - lam_i sigma_pj - lam_j sigma_iq + sigma_ij
//   omega_0j = sigma_0j - lam_j sigma_0q
// with p, q the parents of i, j; the diagonal uses the first formula at i = j.
inline SymMatrix recover_omega(const TreeGraph& g, const CovMatrix& sigma,
                               const std::vector<Rational>& lambda) {
    const int n1 = g.node_count();
    SymMatrix omega(n1);
    omega.set(0, 0, sigma.at(0, 0));
    for (int j = 1; j < n1; ++j) {
        int q = g.parent(j);
        omega.set(0, j, sigma.at(0, j) - lambda[static_cast<std::size_t>(j)] * sigma.at(0, q));
    }
    for (int i = 1; i < n1; ++i) {
        int p = g.parent(i);
        const Rational& li = lambda[static_cast<std::size_t>(i)];
        for (int j = i; j < n1; ++j) {
            int q = g.parent(j);
            const Rational& lj = lambda[static_cast<std::size_t>(j)];
            omega.set(i, j, li * lj * sigma.at(p, q) - li * sigma.at(p, j) -
                                lj * sigma.at(i, q) + sigma.at(i, j));
        }
    }
    return omega;
}

// Exact LDL^T positive definiteness test.
inline bool ldlt_positive_definite(const SymMatrix& a) {
    const int n = a.size();
    std::vector<std::vector<Rational>> w(static_cast<std::size_t>(n),
                                         std::vector<Rational>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a.at(i, j);

    for (int k = 0; k < n; ++k) {
        const Rational& pivot = w[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
        if (sgn(pivot) <= 0) return false;
        for (int i = k + 1; i < n; ++i) {
            Rational f = w[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] / pivot;
            for (int j = k; j < n; ++j)
                w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                    f * w[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        }
    }
    return true;
}

}  // namespace treeid
