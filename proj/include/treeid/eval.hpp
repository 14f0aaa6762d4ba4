#pragma once

#include <unordered_map>

#include "treeid/expr.hpp"
#include "treeid/model.hpp"
#include "treeid/quadext.hpp"

namespace treeid {

// One evaluation point: exact sigma values plus (optionally) the model
// parameters behind them, for expressions with lambda leaves. The memo table
// is keyed by node id and owned per context; contexts are not shared across
// threads.
struct EvalContext {
    const CovMatrix* sigma = nullptr;
    const ModelParams* params = nullptr;
    std::unordered_map<int, QuadExt> memo;
};

inline QuadExt evaluate(Expr e, EvalContext& ctx) {
    if (!e.valid()) throw UnsupportedExpression("evaluating an empty expression");
    auto rec = [&](auto&& self, int id) -> QuadExt {
        auto it = ctx.memo.find(id);
        if (it != ctx.memo.end()) return it->second;
        const ExprNode& n = e.arena()->node(id);
        QuadExt v;
        switch (n.op) {
            case Op::Const: v = QuadExt(n.value); break;
            case Op::Sym:
                if (ctx.sigma == nullptr || n.i >= ctx.sigma->size())
                    throw UnsupportedExpression("sigma symbol outside the context");
                v = QuadExt(ctx.sigma->at(n.i, n.j));
                break;
            case Op::Lam:
                if (ctx.params == nullptr ||
                    n.j >= static_cast<int>(ctx.params->lambda.size()))
                    throw UnsupportedExpression("lambda symbol without model parameters");
                v = QuadExt(ctx.params->lambda[static_cast<std::size_t>(n.j)]);
                break;
            case Op::Add: v = self(self, n.a) + self(self, n.b); break;
            case Op::Sub: v = self(self, n.a) - self(self, n.b); break;
            case Op::Mul: v = self(self, n.a) * self(self, n.b); break;
            case Op::Div: v = self(self, n.a) / self(self, n.b); break;
            case Op::Sqrt: v = QuadExt::sqrt_of(self(self, n.a)); break;
        }
        ctx.memo.emplace(id, v);
        return v;
    };
    return rec(rec, e.id());
}

}  // namespace treeid
