#pragma once

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "treeid/rational.hpp"

namespace treeid {

struct GraphError : std::runtime_error {
    explicit GraphError(const std::string& what) : std::runtime_error(what) {}
};

// Rooted directed tree over nodes 0..n plus an arbitrary set of bidirected
// edges. Construction relabels nodes into topological order (ancestors get
// smaller labels, root becomes 0) and keeps the original labels around for
// reporting. Immutable after construction.
class TreeGraph {
  public:
    TreeGraph(std::vector<std::pair<long, long>> directed,
              std::vector<std::pair<long, long>> bidirected) {
        build(std::move(directed), std::move(bidirected));
    }

    static TreeGraph parse_edgelist(const std::string& text);

    int node_count() const { return static_cast<int>(parent_.size()); }
    int last_node() const { return node_count() - 1; }

    // -1 for the root.
    int parent(int i) const { return parent_.at(static_cast<std::size_t>(i)); }

    int depth(int i) const { return depth_.at(static_cast<std::size_t>(i)); }

    bool has_bidirected(int i, int j) const {
        check_node(i);
        check_node(j);
        return i != j && bidi_[static_cast<std::size_t>(i) * parent_.size() + j];
    }

    // Sorted list of pairs {i, j} with i < j.
    const std::vector<std::pair<int, int>>& bidirected_pairs() const { return bidi_pairs_; }

    const std::vector<int>& children(int i) const {
        check_node(i);
        return children_[static_cast<std::size_t>(i)];
    }

    // Path from the root to i, inclusive on both ends.
    std::vector<int> ancestors(int i) const {
        check_node(i);
        std::vector<int> chain;
        for (int v = i; v != -1; v = parent_[static_cast<std::size_t>(v)]) chain.push_back(v);
        std::reverse(chain.begin(), chain.end());
        return chain;
    }

    bool is_ancestor(int a, int i) const {
        check_node(a);
        check_node(i);
        for (int v = i; v != -1; v = parent_[static_cast<std::size_t>(v)])
            if (v == a) return true;
        return false;
    }

    bool is_path_graph() const {
        for (int i = 1; i < node_count(); ++i)
            if (parent_[static_cast<std::size_t>(i)] != i - 1) return false;
        return true;
    }

    // input_labels()[internal] == label used in the source text/document.
    const std::vector<long>& input_labels() const { return input_label_; }
    bool relabeled() const {
        for (int i = 0; i < node_count(); ++i)
            if (input_label_[static_cast<std::size_t>(i)] != i) return true;
        return false;
    }

    std::string to_edgelist() const {
        std::ostringstream out;
        for (int i = 1; i < node_count(); ++i) {
            if (i > 1) out << ' ';
            out << parent_[static_cast<std::size_t>(i)] << "->" << i;
        }
        for (const auto& [a, b] : bidi_pairs_) out << ' ' << a << "<->" << b;
        return out.str();
    }

    bool operator==(const TreeGraph& o) const {
        return parent_ == o.parent_ && bidi_pairs_ == o.bidi_pairs_;
    }

  private:
    void check_node(int i) const {
        if (i < 0 || i >= node_count()) throw GraphError("node out of range");
    }

    void build(std::vector<std::pair<long, long>> directed,
               std::vector<std::pair<long, long>> bidirected);

    std::vector<int> parent_;
    std::vector<int> depth_;
    std::vector<std::vector<int>> children_;
    std::vector<bool> bidi_;
    std::vector<std::pair<int, int>> bidi_pairs_;
    std::vector<long> input_label_;
};

inline void TreeGraph::build(std::vector<std::pair<long, long>> directed,
                             std::vector<std::pair<long, long>> bidirected) {
    std::set<long> labels;
    for (const auto& [a, b] : directed) {
        if (a == b) throw GraphError("self-loop on node " + std::to_string(a));
        labels.insert(a);
        labels.insert(b);
    }
    for (const auto& [a, b] : bidirected) {
        if (a == b) throw GraphError("bidirected self-loop on node " + std::to_string(a));
        labels.insert(a);
        labels.insert(b);
    }
    if (labels.empty()) throw GraphError("empty graph");

    std::map<long, long> par;
    std::map<long, std::vector<long>> kids;
    std::set<std::pair<long, long>> seen_directed;
    for (const auto& [a, b] : directed) {
        if (!seen_directed.insert({a, b}).second) continue;
        auto [it, fresh] = par.insert({b, a});
        if (!fresh) throw GraphError("node " + std::to_string(b) + " has two parents");
        kids[a].push_back(b);
    }

    std::vector<long> roots;
    for (long v : labels)
        if (!par.count(v)) roots.push_back(v);
    if (roots.size() != 1)
        throw GraphError(roots.empty()
                             ? std::string("directed component has a cycle (no root)")
                             : "directed component is not connected (multiple roots)");

    // BFS relabel, children visited in increasing original label so the
    // topological numbering is deterministic.
    std::map<long, int> internal;
    std::vector<long> order;
    std::queue<long> frontier;
    frontier.push(roots[0]);
    while (!frontier.empty()) {
        long v = frontier.front();
        frontier.pop();
        internal[v] = static_cast<int>(order.size());
        order.push_back(v);
        auto it = kids.find(v);
        if (it == kids.end()) continue;
        std::sort(it->second.begin(), it->second.end());
        for (long c : it->second) frontier.push(c);
    }
    if (order.size() != labels.size())
        throw GraphError("directed component is not a connected tree");

    const std::size_t n1 = order.size();
    parent_.assign(n1, -1);
    depth_.assign(n1, 0);
    children_.assign(n1, {});
    input_label_ = order;
    for (const auto& [child, p] : par) {
        int c = internal[child];
        int q = internal[p];
        parent_[static_cast<std::size_t>(c)] = q;
        children_[static_cast<std::size_t>(q)].push_back(c);
    }
    for (auto& c : children_) std::sort(c.begin(), c.end());
    for (std::size_t i = 1; i < n1; ++i)
        depth_[i] = depth_[static_cast<std::size_t>(parent_[i])] + 1;

    bidi_.assign(n1 * n1, false);
    for (const auto& [a, b] : bidirected) {
        int x = internal[a];
        int y = internal[b];
        bidi_[static_cast<std::size_t>(x) * n1 + y] = true;
        bidi_[static_cast<std::size_t>(y) * n1 + x] = true;
    }
    for (int i = 0; i < static_cast<int>(n1); ++i)
        for (int j = i + 1; j < static_cast<int>(n1); ++j)
            if (bidi_[static_cast<std::size_t>(i) * n1 + j]) bidi_pairs_.push_back({i, j});
}

inline TreeGraph TreeGraph::parse_edgelist(const std::string& text) {
    std::vector<std::pair<long, long>> directed, bidirected;
    std::istringstream in(text);
    std::string tok;
    auto parse_label = [](const std::string& s, const std::string& tok_) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw GraphError("malformed token: " + tok_);
        return std::stol(s);
    };
    while (in >> tok) {
        auto bid = tok.find("<->");
        if (bid != std::string::npos) {
            long a = parse_label(tok.substr(0, bid), tok);
            long b = parse_label(tok.substr(bid + 3), tok);
            bidirected.push_back({a, b});
            continue;
        }
        auto dir = tok.find("->");
        if (dir != std::string::npos) {
            long a = parse_label(tok.substr(0, dir), tok);
            long b = parse_label(tok.substr(dir + 2), tok);
            directed.push_back({a, b});
            continue;
        }
        throw GraphError("malformed token: " + tok);
    }
    return TreeGraph(std::move(directed), std::move(bidirected));
}

// ---------------------------------------------------------------------------
// Missing cycles

// A cyclic sequence of distinct non-root nodes such that no cyclically
// consecutive pair carries a bidirected edge.
struct MissingCycle {
    std::vector<int> nodes;

    std::size_t length() const { return nodes.size(); }

    bool operator==(const MissingCycle& o) const { return nodes == o.nodes; }

    MissingCycle rotated(std::size_t start, bool reversed) const {
        const std::size_t k = nodes.size();
        MissingCycle out;
        out.nodes.reserve(k);
        for (std::size_t t = 0; t < k; ++t) {
            std::size_t idx = reversed ? (start + k - t) % k : (start + t) % k;
            out.nodes.push_back(nodes[idx]);
        }
        return out;
    }
};

inline bool cycle_is_missing(const TreeGraph& g, const MissingCycle& cyc) {
    const std::size_t k = cyc.nodes.size();
    if (k < 3) return false;
    for (std::size_t t = 0; t < k; ++t) {
        int a = cyc.nodes[t];
        int b = cyc.nodes[(t + 1) % k];
        if (a <= 0 || b <= 0 || a == b) return false;
        if (g.has_bidirected(a, b)) return false;
    }
    return true;
}

struct CycleEnumeration {
    std::vector<MissingCycle> cycles;
    bool truncated = false;
};

// Simple cycles through node i in the complement of the bidirected edge set
// restricted to {1..n}. Deduplicated up to rotation and reflection (the
// representative starts at i and its second node is smaller than its last),
// emitted shortest first, lexicographic within a length. Stops after
// max_cycles and flags the truncation.
inline CycleEnumeration enumerate_missing_cycles(const TreeGraph& g, int i, int max_len,
                                                 int max_cycles) {
    if (i <= 0 || i >= g.node_count()) throw GraphError("cycle enumeration needs a non-root node");
    const int n = g.last_node();
    CycleEnumeration out;
    if (max_len < 3 || max_cycles <= 0) {
        out.truncated = max_cycles <= 0;
        return out;
    }

    std::vector<std::vector<int>> missing_adj(static_cast<std::size_t>(n) + 1);
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            if (a != b && !g.has_bidirected(a, b))
                missing_adj[static_cast<std::size_t>(a)].push_back(b);

    std::vector<bool> on_path(static_cast<std::size_t>(n) + 1, false);
    std::vector<int> path{i};
    on_path[static_cast<std::size_t>(i)] = true;
    bool stop = false;

    // Paths of exactly `target` nodes starting at i, closed back to i.
    auto dfs = [&](auto&& self, std::size_t target) -> void {
        if (stop) return;
        if (path.size() == target) {
            int last = path.back();
            if (path[1] < last && !g.has_bidirected(last, i)) {
                if (out.cycles.size() == static_cast<std::size_t>(max_cycles)) {
                    out.truncated = true;
                    stop = true;
                    return;
                }
                out.cycles.push_back(MissingCycle{path});
            }
            return;
        }
        for (int next : missing_adj[static_cast<std::size_t>(path.back())]) {
            if (stop) return;
            if (on_path[static_cast<std::size_t>(next)]) continue;
            path.push_back(next);
            on_path[static_cast<std::size_t>(next)] = true;
            self(self, target);
            on_path[static_cast<std::size_t>(next)] = false;
            path.pop_back();
        }
    };

    for (int len = 3; len <= std::min(max_len, n) && !stop; ++len)
        dfs(dfs, static_cast<std::size_t>(len));
    return out;
}

// Decides whether a trek between i and q exists in the graph with the edge
// p(i) -> i removed. With that edge gone i cannot be entered from above, so
// a trek either descends from i to q or leaves i over one bidirected edge
// i <-> v and descends from v; hence the test below is exact.
inline bool trek_exists_avoiding_parent_edge(const TreeGraph& g, int i, int q) {
    if (i <= 0 || i >= g.node_count()) throw GraphError("trek test needs a non-root node");
    if (g.is_ancestor(i, q)) return true;  // q is a descendant of i (possibly q == i)
    for (int v : g.ancestors(q))
        if (g.has_bidirected(i, v)) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Path-graph canonicalization

struct PathCanonResult {
    TreeGraph graph;
    // perm[old internal label] = new label, or -1 for removed nodes.
    std::vector<int> perm;
};

// Compacts a path graph whose root is bidirected to every other node: nodes
// that sit on no directed edge into a missing pair are removed and the rest
// are relabeled order-preservingly. Idempotent.
inline PathCanonResult canonicalize_path_graph(const TreeGraph& g) {
    const int n = g.last_node();
    if (!g.is_path_graph()) throw GraphError("not a path graph");
    for (int i = 1; i <= n; ++i)
        if (!g.has_bidirected(0, i))
            throw GraphError("path graph lacks root bidirected edge 0<->" + std::to_string(i));

    std::vector<bool> in_missing(static_cast<std::size_t>(n) + 1, false);
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            if (!g.has_bidirected(a, b)) {
                in_missing[static_cast<std::size_t>(a)] = true;
                in_missing[static_cast<std::size_t>(b)] = true;
            }

    std::vector<int> perm(static_cast<std::size_t>(n) + 1, -1);
    perm[0] = 0;
    int next = 1;
    for (int i = 1; i <= n; ++i) {
        bool keep = in_missing[static_cast<std::size_t>(i)] ||
                    (i + 1 <= n && in_missing[static_cast<std::size_t>(i) + 1]);
        if (keep) perm[static_cast<std::size_t>(i)] = next++;
    }
    if (next == 1)
        throw GraphError("no missing bidirected pairs; the canonical graph is trivial");

    std::vector<std::pair<long, long>> directed, bidirected;
    for (int i = 1; i < next; ++i) directed.push_back({i - 1, i});
    for (const auto& [a, b] : g.bidirected_pairs()) {
        int pa = perm[static_cast<std::size_t>(a)];
        int pb = perm[static_cast<std::size_t>(b)];
        if (pa >= 0 && pb >= 0) bidirected.push_back({pa, pb});
    }
    return PathCanonResult{TreeGraph(std::move(directed), std::move(bidirected)), std::move(perm)};
}

}  // namespace treeid
