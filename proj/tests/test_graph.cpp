#include "treeid/graph.hpp"

#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "treeid/io.hpp"
#include "treeid/rng.hpp"

using treeid::GraphError;
using treeid::MissingCycle;
using treeid::SplitMix64;
using treeid::TreeGraph;

namespace {

std::vector<std::vector<int>> cycle_nodes(const treeid::CycleEnumeration& en) {
    std::vector<std::vector<int>> out;
    for (const auto& c : en.cycles) out.push_back(c.nodes);
    return out;
}

TEST(Parse, IvChain) {
    TreeGraph g = fixtures::iv_chain();
    EXPECT_EQ(g.node_count(), 3);
    EXPECT_EQ(g.parent(1), 0);
    EXPECT_EQ(g.parent(2), 1);
    EXPECT_TRUE(g.has_bidirected(1, 2));
    EXPECT_FALSE(g.has_bidirected(0, 1));
    EXPECT_FALSE(g.relabeled());
}

TEST(Parse, SingleEdgeAndErrors) {
    TreeGraph g = TreeGraph::parse_edgelist("0->1");
    EXPECT_EQ(g.node_count(), 2);
    EXPECT_TRUE(g.bidirected_pairs().empty());

    EXPECT_THROW(TreeGraph::parse_edgelist("0->1 0->2 1->2"), GraphError);  // two parents
    EXPECT_THROW(TreeGraph::parse_edgelist("0->0"), GraphError);
    EXPECT_THROW(TreeGraph::parse_edgelist("0->1 2->3"), GraphError);      // disconnected
    EXPECT_THROW(TreeGraph::parse_edgelist("0->1 1->x"), GraphError);
    EXPECT_THROW(TreeGraph::parse_edgelist("0<->1"), GraphError);          // no tree at all
}

TEST(Parse, RelabelsToTopologicalOrder) {
    // 7 is the root here; labels are arbitrary.
    TreeGraph g = TreeGraph::parse_edgelist("7->3 3->5 7<->5");
    EXPECT_EQ(g.node_count(), 3);
    EXPECT_EQ(g.parent(1), 0);
    EXPECT_EQ(g.parent(2), 1);
    EXPECT_TRUE(g.relabeled());
    EXPECT_EQ(g.input_labels(), (std::vector<long>{7, 3, 5}));
    EXPECT_TRUE(g.has_bidirected(0, 2));
}

TEST(Parse, JsonDocumentRoundTrip) {
    TreeGraph g = fixtures::root_confounded_path();
    treeid::json doc = treeid::graph_to_json(g);
    TreeGraph back = treeid::graph_from_json(doc);
    EXPECT_TRUE(g == back);
    EXPECT_EQ(doc.at("nodes").get<int>(), 5);
}

TEST(Ancestors, PathAndRoot) {
    TreeGraph path = TreeGraph::parse_edgelist("0->1 1->2");
    EXPECT_EQ(path.ancestors(2), (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(path.ancestors(0), (std::vector<int>{0}));
    TreeGraph g2 = fixtures::root_confounded_tree();
    EXPECT_EQ(g2.ancestors(4), (std::vector<int>{0, 3, 4}));
}

TEST(MissingCycles, CompleteComplementThroughNode1) {
    TreeGraph g = fixtures::root_confounded_tree();  // no bidirected edges among 1..4
    auto en = treeid::enumerate_missing_cycles(g, 1, 4, 64);
    EXPECT_FALSE(en.truncated);
    EXPECT_EQ(cycle_nodes(en),
              (std::vector<std::vector<int>>{
                  {1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {1, 2, 3, 4}, {1, 2, 4, 3}, {1, 3, 2, 4}}));
}

TEST(MissingCycles, PresentEdgeExcluded) {
    TreeGraph g = fixtures::root_confounded_path();  // 2<->4 present
    auto en = treeid::enumerate_missing_cycles(g, 1, 4, 64);
    EXPECT_EQ(cycle_nodes(en),
              (std::vector<std::vector<int>>{{1, 2, 3}, {1, 3, 4}, {1, 2, 3, 4}}));
}

TEST(MissingCycles, CompleteBidirectedGivesNone) {
    TreeGraph g = fixtures::path_with_missing_cycle({1, 2, 3});  // then add the cycle back
    std::vector<std::pair<long, long>> dir, bid;
    for (int i = 1; i <= 3; ++i) dir.push_back({i - 1, i});
    for (int i = 0; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j) bid.push_back({i, j});
    TreeGraph complete(dir, bid);
    auto en = treeid::enumerate_missing_cycles(complete, 1, 3, 64);
    EXPECT_TRUE(en.cycles.empty());
    EXPECT_FALSE(en.truncated);
    (void)g;
}

TEST(MissingCycles, TruncationFlag) {
    TreeGraph g = fixtures::root_confounded_tree();
    auto en = treeid::enumerate_missing_cycles(g, 1, 4, 2);
    EXPECT_TRUE(en.truncated);
    EXPECT_EQ(en.cycles.size(), 2u);
    EXPECT_EQ(en.cycles[0].nodes, (std::vector<int>{1, 2, 3}));
}

// Enumeration matches subset/permutation brute force on every bidirected
// pattern over small trees.
TEST(MissingCycles, MatchesBruteForce) {
    SplitMix64 rng(4242);
    for (int iter = 0; iter < 300; ++iter) {
        int n = 3 + static_cast<int>(rng.below(5));  // up to 7 non-root nodes
        TreeGraph g = oracles::random_tree(rng, n, 3);
        int target = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        auto en = treeid::enumerate_missing_cycles(g, target, n, 100000);
        ASSERT_FALSE(en.truncated);
        EXPECT_EQ(cycle_nodes(en), oracles::brute_force_cycles(g, target, n));
        for (const auto& c : en.cycles) EXPECT_TRUE(treeid::cycle_is_missing(g, c));
    }
}

TEST(TrekCondition, SpecCases) {
    // A bidirected edge to the root reaches anything.
    TreeGraph g1 = TreeGraph::parse_edgelist("0->1 1->2 0<->1");
    EXPECT_TRUE(treeid::trek_exists_avoiding_parent_edge(g1, 1, 0));
    // Descendants are reachable without the parent edge.
    TreeGraph g2 = TreeGraph::parse_edgelist("0->1 1->2");
    EXPECT_TRUE(treeid::trek_exists_avoiding_parent_edge(g2, 1, 2));
    // Siblings are not, absent any bidirected edge.
    TreeGraph g3 = TreeGraph::parse_edgelist("0->1 0->2");
    EXPECT_FALSE(treeid::trek_exists_avoiding_parent_edge(g3, 1, 0));
}

TEST(TrekCondition, MatchesExhaustiveEnumeration) {
    SplitMix64 rng(777);
    int checked = 0;
    while (checked < 600) {
        int n = 2 + static_cast<int>(rng.below(4));  // up to 5 non-root nodes
        TreeGraph g = oracles::random_tree(rng, n, 1 + static_cast<int>(rng.below(4)));
        int i = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int q = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
        EXPECT_EQ(treeid::trek_exists_avoiding_parent_edge(g, i, q),
                  oracles::brute_force_trek(g, i, q))
            << g.to_edgelist() << " i=" << i << " q=" << q;
        ++checked;
    }
}

TEST(Canonicalize, RemovesTailAndKeepsMissingPairs) {
    // Path of length 6, single missing cycle among {2,3,4}: kept nodes are
    // {1,2,3,4} (node 1 carries the directed edge into cycle node 2).
    std::vector<std::pair<long, long>> dir, bid;
    for (int i = 1; i <= 6; ++i) dir.push_back({i - 1, i});
    std::set<std::pair<int, int>> missing{{2, 3}, {2, 4}, {3, 4}};
    for (int i = 0; i <= 6; ++i)
        for (int j = i + 1; j <= 6; ++j)
            if (i == 0 || !missing.count({i, j})) bid.push_back({i, j});
    TreeGraph g(dir, bid);
    auto res = treeid::canonicalize_path_graph(g);
    EXPECT_EQ(res.graph.node_count(), 5);
    EXPECT_EQ(res.perm, (std::vector<int>{0, 1, 2, 3, 4, -1, -1}));
    EXPECT_FALSE(res.graph.has_bidirected(2, 3));
    EXPECT_FALSE(res.graph.has_bidirected(2, 4));
    EXPECT_FALSE(res.graph.has_bidirected(3, 4));
    EXPECT_TRUE(res.graph.has_bidirected(1, 2));

    auto again = treeid::canonicalize_path_graph(res.graph);
    EXPECT_TRUE(again.graph == res.graph);  // fixpoint
}

TEST(Canonicalize, AlreadyCanonicalAndErrors) {
    TreeGraph g = fixtures::path_with_missing_cycle({1, 2, 4, 3});
    auto res = treeid::canonicalize_path_graph(g);
    EXPECT_TRUE(res.graph == g);
    EXPECT_EQ(res.perm, (std::vector<int>{0, 1, 2, 3, 4}));

    EXPECT_THROW(treeid::canonicalize_path_graph(fixtures::root_confounded_tree()), GraphError);
    EXPECT_THROW(treeid::canonicalize_path_graph(TreeGraph::parse_edgelist("0->1 1->2")),
                 GraphError);
}

// Idempotence plus preservation of the missing-pair multiset under the
// permutation, over random padded path graphs.
TEST(Canonicalize, IdempotentAndPreservesMissingPairs) {
    SplitMix64 rng(1312);
    for (int iter = 0; iter < 200; ++iter) {
        int n = 3 + static_cast<int>(rng.below(6));
        std::vector<std::pair<long, long>> dir, bid;
        for (int i = 1; i <= n; ++i) dir.push_back({i - 1, i});
        std::set<std::pair<int, int>> missing;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (rng.below(3) == 0) missing.insert({i, j});
        if (missing.empty()) missing.insert({1, 2});
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (i == 0 || !missing.count({i, j})) bid.push_back({i, j});
        TreeGraph g(dir, bid);
        auto res = treeid::canonicalize_path_graph(g);

        std::multiset<std::pair<int, int>> before, after;
        for (const auto& [a, b] : missing)
            before.insert({res.perm[static_cast<std::size_t>(a)], res.perm[static_cast<std::size_t>(b)]});
        int m = res.graph.node_count() - 1;
        for (int i = 1; i <= m; ++i)
            for (int j = i + 1; j <= m; ++j)
                if (!res.graph.has_bidirected(i, j)) after.insert({i, j});
        EXPECT_EQ(before, after) << g.to_edgelist();

        auto again = treeid::canonicalize_path_graph(res.graph);
        EXPECT_TRUE(again.graph == res.graph);
    }
}

}  // namespace
