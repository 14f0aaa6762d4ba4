#pragma once

// Shared fixture graphs for the test suites.

#include <utility>
#include <vector>

#include "treeid/graph.hpp"

namespace fixtures {

using treeid::TreeGraph;

// Classic instrumental-variable model: 0 -> 1 -> 2 with 1 <-> 2.
inline TreeGraph iv_chain() { return TreeGraph::parse_edgelist("0->1 1->2 1<->2"); }

// Star-plus-tail tree 0->1, 0->2, 0->3, 3->4 with the root confounded with
// every node.
inline TreeGraph root_confounded_tree() {
    return TreeGraph::parse_edgelist("0->1 0->2 0->3 3->4 0<->1 0<->2 0<->3 0<->4");
}

// Path 0->1->2->3->4, root confounded with every node, plus 2<->4.
inline TreeGraph root_confounded_path() {
    return TreeGraph::parse_edgelist("0->1 1->2 2->3 3->4 0<->1 0<->2 0<->3 0<->4 2<->4");
}

// The 3-node chain pair used for the zero-test examples: lambda12*sigma10 -
// sigma20 vanishes on the first graph and equals -omega02 on the second.
inline TreeGraph pit_chain_a() { return TreeGraph::parse_edgelist("0->1 1->2 0<->1"); }
inline TreeGraph pit_chain_b() { return TreeGraph::parse_edgelist("0->1 1->2 0<->1 0<->2"); }

// The five hard 5-node trees; every edge is uniquely identifiable.
inline TreeGraph hard5_4680_403() {
    return TreeGraph::parse_edgelist("0->1 1->2 2->3 3->4 0<->1 0<->2 0<->3 0<->4 1<->3");
}
inline TreeGraph hard5_4680_914() { return root_confounded_path(); }
inline TreeGraph hard5_360_117() {
    return TreeGraph::parse_edgelist("0->1 0->2 2->3 3->4 0<->1 0<->2 0<->3 0<->4 1<->3");
}
inline TreeGraph hard5_360_369() {
    return TreeGraph::parse_edgelist("0->1 0->2 2->3 3->4 0<->1 0<->2 0<->3 0<->4 2<->4");
}
inline TreeGraph hard5_840_466() {
    return TreeGraph::parse_edgelist("0->1 0->2 1->3 2->4 0<->1 0<->2 0<->3 0<->4 1<->4");
}

inline std::vector<std::pair<const char*, TreeGraph>> hard5_suite() {
    return {{"(4680,403)", hard5_4680_403()},
            {"(4680,914)", hard5_4680_914()},
            {"(360,117)", hard5_360_117()},
            {"(360,369)", hard5_360_369()},
            {"(840,466)", hard5_840_466()}};
}

// Path graph 0 -> 1 -> ... -> n whose bidirected component is complete
// except for the given missing cycle.
inline TreeGraph path_with_missing_cycle(const std::vector<int>& cycle, int n = 0) {
    for (int v : cycle) n = std::max(n, v);
    std::vector<std::pair<long, long>> directed, bidirected;
    for (int i = 1; i <= n; ++i) directed.push_back({i - 1, i});
    std::vector<std::vector<bool>> missing(static_cast<std::size_t>(n) + 1,
                                           std::vector<bool>(static_cast<std::size_t>(n) + 1));
    const std::size_t k = cycle.size();
    for (std::size_t t = 0; t < k; ++t) {
        int a = cycle[t];
        int b = cycle[(t + 1) % k];
        missing[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
        missing[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = true;
    }
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (i == 0 || !missing[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                bidirected.push_back({i, j});
    return TreeGraph(std::move(directed), std::move(bidirected));
}

// The six special single-missing-cycle path graphs: the first two are
// unidentifiable, the last four uniquely identifiable.
inline std::vector<int> special_cycle(int idx) {
    switch (idx) {
        case 0: return {1, 3, 2, 4};
        case 1: return {1, 4, 2, 5};
        case 2: return {1, 2, 4, 3};
        case 3: return {1, 2, 5, 3};
        case 4: return {1, 3, 2, 5};
        default: return {1, 4, 2, 6};
    }
}

}  // namespace fixtures
