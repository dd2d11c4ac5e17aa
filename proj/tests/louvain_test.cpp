#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "topicnet/graphalg.hpp"

using namespace topicnet;
using topicnet::tests::best_modularity_partition;
using topicnet::tests::canonical_partition;
using topicnet::tests::random_graph;

namespace {

WeightedGraph two_cliques_with_bridge() {
    WeightedGraph g;
    for (int v = 0; v < 8; ++v) g.add_node("n" + std::to_string(v));
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) g.add_edge(u, v, 1.0);
    for (int u = 4; u < 8; ++u)
        for (int v = u + 1; v < 8; ++v) g.add_edge(u, v, 1.0);
    g.add_edge(0, 4, 1.0);
    return g;
}

}  // namespace

TEST_CASE("two 4-cliques joined by a bridge split into the clique partition") {
    WeightedGraph g = two_cliques_with_bridge();
    Partition found = louvain(g);
    CHECK(found.num_communities() == 2);

    auto [best, best_q] = best_modularity_partition(g);
    CHECK(canonical_partition(found.community) == best.community);
    CHECK(modularity(g, found) == doctest::Approx(best_q).epsilon(1e-12));
}

TEST_CASE("a single clique is one community") {
    WeightedGraph g;
    for (int v = 0; v < 5; ++v) g.add_node("n" + std::to_string(v));
    for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v) g.add_edge(u, v, 1.0);
    CHECK(louvain(g).num_communities() == 1);
}

TEST_CASE("disconnected triangles never merge") {
    WeightedGraph g;
    g.add_edge("a", "b", 1.0);
    g.add_edge("b", "c", 1.0);
    g.add_edge("a", "c", 1.0);
    g.add_edge("x", "y", 1.0);
    g.add_edge("y", "z", 1.0);
    g.add_edge("x", "z", 1.0);
    Partition p = louvain(g);
    CHECK(p.num_communities() == 2);
    CHECK(p.community[0] == p.community[1]);
    CHECK(p.community[0] == p.community[2]);
    CHECK(p.community[3] == p.community[4]);
    CHECK(p.community[0] != p.community[3]);
}

TEST_CASE("an edgeless graph keeps every node in its own community") {
    WeightedGraph g;
    g.add_node("a");
    g.add_node("b");
    g.add_node("c");
    Partition p = louvain(g);
    CHECK(p.num_communities() == 3);
    CHECK(p.community == std::vector<int>{0, 1, 2});
}

TEST_CASE("louvain modularity beats the singleton baseline") {
    std::mt19937 rng(7070);
    for (int trial = 0; trial < 20; ++trial) {
        WeightedGraph g = random_graph(rng, 12, 0.3);
        if (g.total_weight() == 0.0) continue;
        Partition found = louvain(g);
        Partition singleton;
        for (int v = 0; v < g.num_nodes(); ++v) singleton.community.push_back(v);
        CHECK(modularity(g, found) >= modularity(g, singleton) - 1e-12);
    }
}

TEST_CASE("louvain is deterministic") {
    std::mt19937 rng(909);
    WeightedGraph g = random_graph(rng, 15, 0.3);
    Partition a = louvain(g);
    Partition b = louvain(g);
    CHECK(a.community == b.community);
}

TEST_CASE("louvain matches the exhaustive optimum on small graphs") {
    std::mt19937 rng(1234);
    int checked = 0;
    for (int trial = 0; trial < 12; ++trial) {
        WeightedGraph g = random_graph(rng, 7, 0.45);
        if (g.total_weight() == 0.0) continue;
        ++checked;
        auto [best, best_q] = best_modularity_partition(g);
        double found_q = modularity(g, louvain(g));
        // Louvain is a greedy heuristic; it must come close to the optimum
        // and never exceed it.
        CHECK(found_q <= best_q + 1e-12);
        CHECK(found_q >= best_q - 0.10);
    }
    CHECK(checked > 5);
}

TEST_CASE("resolution controls community granularity") {
    WeightedGraph g = two_cliques_with_bridge();
    // Low resolution favors coarse partitions.
    Partition coarse = louvain(g, 0.05);
    Partition fine = louvain(g, 1.0);
    CHECK(coarse.num_communities() <= fine.num_communities());
}
