#pragma once

#include <stdexcept>
#include <vector>

#include "treeid/expr.hpp"
#include "treeid/graph.hpp"

namespace treeid {

// One equation a x_i x_{i+1} + b x_i + c x_{i+1} + d = 0 of the missing-edge
// system, with x_i the coefficient of the edge into cycle node v_i.
struct CoeffQuadruple {
    Expr a, b, c, d;
};

// Base quadruples of the missing-edge system: for the cyclic pair
// (v, w) with parents p, q the equation lam_v lam_w s_pq - lam_v s_pw
// - lam_w s_vq + s_vw = 0 gives (s_pq, -s_pw, -s_vq, s_vw).
inline std::vector<CoeffQuadruple> base_coefficients(ExprArena& ar, const TreeGraph& g,
                                                     const MissingCycle& cyc) {
    const std::size_t k = cyc.nodes.size();
    if (k < 3) throw std::invalid_argument("missing cycle needs at least 3 nodes");
    std::vector<CoeffQuadruple> out;
    out.reserve(k);
    for (std::size_t t = 0; t < k; ++t) {
        int v = cyc.nodes[t];
        int w = cyc.nodes[(t + 1) % k];
        if (v <= 0 || w <= 0) throw std::invalid_argument("cycle node without a parent");
        int p = g.parent(v);
        int q = g.parent(w);
        out.push_back(CoeffQuadruple{sym(ar, p, q), neg(sym(ar, p, w)), neg(sym(ar, v, q)),
                                     sym(ar, v, w)});
    }
    return out;
}

// One level of the pairwise elimination. Quadruples (a1,b1,c1,d1) over
// (x, u) and (a2,b2,c2,d2) over (u, y) combine, eliminating u, into
//   (a1 c2 - a2 b1, a1 d2 - b1 b2, c1 c2 - a2 d1, c1 d2 - b2 d1)
// over (x, y); a trailing odd quadruple is carried through unchanged.
inline std::vector<CoeffQuadruple> reduce_once(const std::vector<CoeffQuadruple>& level) {
    if (level.size() < 2) throw std::invalid_argument("reduce_once needs at least 2 quadruples");
    std::vector<CoeffQuadruple> out;
    out.reserve((level.size() + 1) / 2);
    for (std::size_t t = 0; t + 1 < level.size(); t += 2) {
        const CoeffQuadruple& e1 = level[t];
        const CoeffQuadruple& e2 = level[t + 1];
        out.push_back(CoeffQuadruple{e1.a * e2.c - e2.a * e1.b, e1.a * e2.d - e1.b * e2.b,
                                     e1.c * e2.c - e2.a * e1.d, e1.c * e2.d - e2.b * e1.d});
    }
    if (level.size() % 2 == 1) out.push_back(level.back());
    return out;
}

// Coefficients of the quadratic A x^2 + B x + C = 0 satisfied by the
// coefficient of the edge into the cycle's start node.
struct CycleQuadratic {
    Expr a, b, c;
};

inline CycleQuadratic build_quadratic(ExprArena& ar, const TreeGraph& g,
                                      const MissingCycle& cyc) {
    std::vector<CoeffQuadruple> level = base_coefficients(ar, g, cyc);
    while (level.size() > 1) level = reduce_once(level);
    const CoeffQuadruple& f = level.front();
    return CycleQuadratic{f.a, f.b + f.c, f.d};
}

}  // namespace treeid
