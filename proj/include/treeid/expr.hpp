#pragma once

#include <cassert>
#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "treeid/graph.hpp"
#include "treeid/rational.hpp"

namespace treeid {

enum class Op : std::uint8_t { Const, Sym, Lam, Add, Sub, Mul, Div, Sqrt };

struct ExprNode {
    Op op;
    int a = -1;  // children by arena id
    int b = -1;
    int i = -1;  // symbol indices: sigma_{i,j} with i <= j, lambda for edge i -> j
    int j = -1;
    Rational value;  // Const payload
};

// Immutable hash-consed expression DAG. Shared subterms get one node, so
// structural equality is id equality and per-context evaluation memoizes by
// id.
class ExprArena {
  public:
    int intern(ExprNode n) {
        std::string key = make_key(n);
        auto it = index_.find(key);
        if (it != index_.end()) return it->second;
        int id = static_cast<int>(nodes_.size());
        nodes_.push_back(std::move(n));
        index_.emplace(std::move(key), id);
        return id;
    }

    const ExprNode& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }

    std::size_t size() const { return nodes_.size(); }

  private:
    static std::string make_key(const ExprNode& n) {
        std::string key;
        key += static_cast<char>('A' + static_cast<int>(n.op));
        key += std::to_string(n.a);
        key += ',';
        key += std::to_string(n.b);
        key += ',';
        key += std::to_string(n.i);
        key += ',';
        key += std::to_string(n.j);
        if (n.op == Op::Const) {
            key += ':';
            key += n.value.get_str();
        }
        return key;
    }

    std::deque<ExprNode> nodes_;
    std::unordered_map<std::string, int> index_;
};

// Lightweight handle; all operands of one operation must live in one arena.
class Expr {
  public:
    Expr() : arena_(nullptr), id_(-1) {}
    Expr(ExprArena* arena, int id) : arena_(arena), id_(id) {}

    bool valid() const { return arena_ != nullptr && id_ >= 0; }
    int id() const { return id_; }
    ExprArena* arena() const { return arena_; }
    const ExprNode& node() const { return arena_->node(id_); }

    bool operator==(const Expr& o) const { return arena_ == o.arena_ && id_ == o.id_; }

  private:
    ExprArena* arena_;
    int id_;
};

inline Expr cst(ExprArena& ar, Rational value) {
    ExprNode n;
    n.op = Op::Const;
    n.value = std::move(value);
    return Expr(&ar, ar.intern(std::move(n)));
}

inline Expr cst(ExprArena& ar, long value) { return cst(ar, Rational(value)); }

// Covariance symbol sigma_{i,j}; stored with i <= j since Sigma is symmetric.
inline Expr sym(ExprArena& ar, int i, int j) {
    if (i > j) std::swap(i, j);
    ExprNode n;
    n.op = Op::Sym;
    n.i = i;
    n.j = j;
    return Expr(&ar, ar.intern(std::move(n)));
}

// Structural coefficient lambda of the edge parent -> child, as a free
// evaluation variable. Engine-produced identification formulas never contain
// these; they exist for identity tests over the model parameters.
inline Expr lam(ExprArena& ar, int parent, int child) {
    ExprNode n;
    n.op = Op::Lam;
    n.i = parent;
    n.j = child;
    return Expr(&ar, ar.intern(std::move(n)));
}

namespace detail {

inline Expr binary(Op op, Expr x, Expr y) {
    assert(x.valid() && y.valid() && x.arena() == y.arena());
    ExprArena& ar = *x.arena();
    const ExprNode& nx = x.node();
    const ExprNode& ny = y.node();
    if (nx.op == Op::Const && ny.op == Op::Const) {
        switch (op) {
            case Op::Add: return cst(ar, nx.value + ny.value);
            case Op::Sub: return cst(ar, nx.value - ny.value);
            case Op::Mul: return cst(ar, nx.value * ny.value);
            case Op::Div:
                if (ny.value != 0) return cst(ar, nx.value / ny.value);
                break;  // keep the division node; evaluation reports it
            default: break;
        }
    }
    ExprNode n;
    n.op = op;
    n.a = x.id();
    n.b = y.id();
    return Expr(&ar, ar.intern(std::move(n)));
}

}  // namespace detail

inline Expr operator+(Expr x, Expr y) { return detail::binary(Op::Add, x, y); }
inline Expr operator-(Expr x, Expr y) { return detail::binary(Op::Sub, x, y); }
inline Expr operator*(Expr x, Expr y) { return detail::binary(Op::Mul, x, y); }
inline Expr operator/(Expr x, Expr y) { return detail::binary(Op::Div, x, y); }

inline Expr neg(Expr x) { return cst(*x.arena(), 0L) - x; }

inline Expr sqrt_expr(Expr x) {
    ExprArena& ar = *x.arena();
    const ExprNode& nx = x.node();
    if (nx.op == Op::Const) {
        if (auto r = exact_sqrt(nx.value)) return cst(ar, *r);
    }
    ExprNode n;
    n.op = Op::Sqrt;
    n.a = x.id();
    return Expr(&ar, ar.intern(std::move(n)));
}

// ---------------------------------------------------------------------------
// Pretty printing

namespace detail {

inline int precedence(Op op) {
    switch (op) {
        case Op::Add:
        case Op::Sub: return 1;
        case Op::Mul:
        case Op::Div: return 2;
        default: return 3;
    }
}

inline std::string index_pair(const char* prefix, int i, int j) {
    std::string s(prefix);
    if (i <= 9 && j <= 9) {
        s += std::to_string(i);
        s += std::to_string(j);
    } else {
        s += '(';
        s += std::to_string(i);
        s += ',';
        s += std::to_string(j);
        s += ')';
    }
    return s;
}

inline void print_rec(Expr e, int parent_prec, bool right_operand, std::string& out) {
    const ExprNode& n = e.node();
    ExprArena& ar = *e.arena();
    switch (n.op) {
        case Op::Const: {
            bool wrap = parent_prec > 0 && sgn(n.value) < 0;
            if (wrap) out += '(';
            out += n.value.get_str();
            if (wrap) out += ')';
            return;
        }
        case Op::Sym: out += index_pair("σ", n.i, n.j); return;
        case Op::Lam: out += index_pair("λ", n.i, n.j); return;
        case Op::Sqrt: {
            out += "√(";
            print_rec(Expr(&ar, n.a), 0, false, out);
            out += ')';
            return;
        }
        default: break;
    }
    // Unary minus spelled as 0 - x.
    if (n.op == Op::Sub && ar.node(n.a).op == Op::Const && ar.node(n.a).value == 0) {
        bool wrap = parent_prec >= 2;
        if (wrap) out += '(';
        out += '-';
        print_rec(Expr(&ar, n.b), 2, true, out);
        if (wrap) out += ')';
        return;
    }
    int prec = precedence(n.op);
    bool wrap = prec < parent_prec || (prec == parent_prec && right_operand);
    if (wrap) out += '(';
    print_rec(Expr(&ar, n.a), prec, false, out);
    switch (n.op) {
        case Op::Add: out += " + "; break;
        case Op::Sub: out += " - "; break;
        case Op::Mul: out += '*'; break;
        case Op::Div: out += '/'; break;
        default: break;
    }
    print_rec(Expr(&ar, n.b), prec, true, out);
    if (wrap) out += ')';
}

}  // namespace detail

inline std::string pretty(Expr e) {
    if (!e.valid()) return "<none>";
    std::string out;
    detail::print_rec(e, 0, false, out);
    return out;
}

// ---------------------------------------------------------------------------
// Syntactic degree bound in the model parameters (lambda, omega), used for
// the reported Schwartz-Zippel failure bound. sigma_{ij} substitutes to a
// polynomial of degree depth(i) + depth(j) + 1; a square root contributes
// half its argument, rounded up.
inline long long degree_bound(Expr e, const TreeGraph& g) {
    std::unordered_map<int, long long> memo;
    auto rec = [&](auto&& self, int id) -> long long {
        auto it = memo.find(id);
        if (it != memo.end()) return it->second;
        const ExprNode& n = e.arena()->node(id);
        long long d = 0;
        switch (n.op) {
            case Op::Const: d = 0; break;
            case Op::Sym: d = g.depth(n.i) + g.depth(n.j) + 1; break;
            case Op::Lam: d = 1; break;
            case Op::Add:
            case Op::Sub: d = std::max(self(self, n.a), self(self, n.b)); break;
            case Op::Mul:
            case Op::Div: d = self(self, n.a) + self(self, n.b); break;
            case Op::Sqrt: d = (self(self, n.a) + 1) / 2; break;
        }
        memo[id] = d;
        return d;
    };
    return e.valid() ? rec(rec, e.id()) : 0;
}

}  // namespace treeid
