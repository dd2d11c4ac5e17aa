#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "topicnet/graphalg.hpp"

using namespace topicnet;
using topicnet::tests::brute_force_betweenness;
using topicnet::tests::random_graph;

namespace {

WeightedGraph triangle() {
    WeightedGraph g;
    g.add_edge("a", "b", 1.0);
    g.add_edge("b", "c", 1.0);
    g.add_edge("a", "c", 1.0);
    return g;
}

WeightedGraph star(int leaves) {
    WeightedGraph g;
    g.add_node("center");
    for (int i = 0; i < leaves; ++i)
        g.add_edge("center", "leaf" + std::to_string(i), 1.0);
    return g;
}

WeightedGraph path3() {
    WeightedGraph g;
    g.add_edge("a", "b", 1.0);
    g.add_edge("b", "c", 1.0);
    return g;
}

WeightedGraph complete(int n) {
    WeightedGraph g;
    for (int v = 0; v < n; ++v) g.add_node("k" + std::to_string(v));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v, 1.0);
    return g;
}

}  // namespace

TEST_CASE("degree stats") {
    DegreeStats tri = degree_stats(triangle());
    CHECK(tri.degree == std::vector<int>{2, 2, 2});
    CHECK(tri.average == 2.0);

    DegreeStats st = degree_stats(star(4));
    CHECK(st.degree[0] == 4);
    CHECK(st.average == doctest::Approx(1.6));

    CHECK_THROWS_AS(degree_stats(WeightedGraph{}), std::runtime_error);
}

TEST_CASE("clustering coefficients") {
    for (int m = 3; m <= 6; ++m) CHECK(clustering(complete(m)).average == 1.0);
    CHECK(clustering(star(5)).average == 0.0);
    CHECK(clustering(path3()).average == 0.0);
}

TEST_CASE("average path length") {
    CHECK(avg_path_length(triangle()) == 1.0);
    CHECK(avg_path_length(path3()) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));

    WeightedGraph two_edges;
    two_edges.add_edge("a", "b", 1.0);
    two_edges.add_edge("c", "d", 1.0);
    CHECK(avg_path_length(two_edges) == 1.0);  // cross-component pairs excluded

    WeightedGraph isolates;
    isolates.add_node("a");
    isolates.add_node("b");
    CHECK_THROWS_AS(avg_path_length(isolates), std::runtime_error);

    for (int m = 2; m <= 6; ++m) CHECK(avg_path_length(complete(m)) == 1.0);
}

TEST_CASE("connected components and giant fraction") {
    ComponentInfo tri = components(triangle());
    CHECK(tri.n_components == 1);
    CHECK(tri.giant_fraction == 1.0);

    WeightedGraph mixed = triangle();
    mixed.add_node("i1");
    mixed.add_node("i2");
    mixed.add_node("i3");
    ComponentInfo info = components(mixed);
    CHECK(info.n_components == 4);
    CHECK(info.giant_fraction == 0.5);

    CHECK(components(WeightedGraph{}).n_components == 0);
}

TEST_CASE("betweenness on hand graphs") {
    WeightedGraph p3 = path3();
    CentralityScores raw = betweenness(p3, false);
    CHECK(raw.scores[*p3.node_id("b")] == 1.0);

    CentralityScores norm = betweenness(p3, true);
    CHECK(norm.scores[*p3.node_id("b")] == 1.0);
    CHECK(norm.scores[*p3.node_id("a")] == 0.0);
    CHECK(norm.scores[*p3.node_id("c")] == 0.0);

    for (int leaves : {2, 5, 9}) {
        CentralityScores s = betweenness(star(leaves), true);
        CHECK(s.scores[0] == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("Brandes matches brute-force enumeration on random graphs") {
    std::mt19937 rng(404);
    std::uniform_int_distribution<int> size(2, 7);
    std::uniform_real_distribution<double> prob(0.15, 0.9);
    for (int trial = 0; trial < 60; ++trial) {
        WeightedGraph g = random_graph(rng, size(rng), prob(rng));
        for (bool normalized : {false, true}) {
            CentralityScores fast = betweenness(g, normalized);
            std::vector<double> slow = brute_force_betweenness(g, normalized);
            for (int v = 0; v < g.num_nodes(); ++v)
                CHECK(fast.scores[v] == doctest::Approx(slow[v]).epsilon(1e-9));
        }
    }
}

TEST_CASE("normalized betweenness lies in [0, 1]") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        WeightedGraph g = random_graph(rng, 10, 0.3);
        CentralityScores s = betweenness(g, true);
        for (double value : s.scores) {
            CHECK(value >= 0.0);
            CHECK(value <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("eigenvector centrality on symmetric graphs") {
    CentralityScores st = eigenvector_centrality(star(4));
    CHECK(st.scores[0] == doctest::Approx(1.0));
    for (int leaf = 1; leaf <= 4; ++leaf) {
        CHECK(st.scores[leaf] == doctest::Approx(0.5).epsilon(1e-6));  // 1/sqrt(4)
        CHECK(st.scores[leaf] < st.scores[0]);
    }

    CentralityScores comp = eigenvector_centrality(complete(5));
    for (double value : comp.scores) CHECK(value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("eigenvector centrality matches a closed-form weighted case") {
    // Weighted star: A x = lambda x with lambda = sqrt(sum w_i^2),
    // center 1, leaf_i = w_i / lambda under max-norm.
    WeightedGraph g;
    g.add_edge("c", "l1", 1.0);
    g.add_edge("c", "l2", 4.0);
    g.add_edge("c", "l3", 4.0);
    double lambda = std::sqrt(1.0 + 16.0 + 16.0);
    CentralityScores s = eigenvector_centrality(g);
    CHECK(s.scores[*g.node_id("c")] == doctest::Approx(1.0));
    CHECK(s.scores[*g.node_id("l1")] == doctest::Approx(1.0 / lambda).epsilon(1e-6));
    CHECK(s.scores[*g.node_id("l2")] == doctest::Approx(4.0 / lambda).epsilon(1e-6));
    CHECK(s.scores[*g.node_id("l3")] == doctest::Approx(4.0 / lambda).epsilon(1e-6));
}

TEST_CASE("eigenvector centrality is zero outside the giant component") {
    WeightedGraph g = triangle();
    g.add_edge("x", "y", 1.0);
    CentralityScores s = eigenvector_centrality(g);
    CHECK(s.scores[*g.node_id("x")] == 0.0);
    CHECK(s.scores[*g.node_id("y")] == 0.0);
    CHECK(s.scores[*g.node_id("a")] > 0.0);
}

TEST_CASE("eigenvector centrality requires a non-trivial giant component") {
    WeightedGraph isolates;
    isolates.add_node("a");
    isolates.add_node("b");
    CHECK_THROWS_AS(eigenvector_centrality(isolates), std::runtime_error);
}

TEST_CASE("eigenvector equation holds on the giant component") {
    std::mt19937 rng(88);
    for (int trial = 0; trial < 10; ++trial) {
        WeightedGraph g = random_graph(rng, 12, 0.25);
        ComponentInfo info = components(g);
        if (info.giant < 0 || info.sizes[info.giant] < 2) continue;
        CentralityScores s = eigenvector_centrality(g);
        // Rayleigh estimate of lambda on the giant component
        double num = 0.0, den = 0.0;
        for (int v = 0; v < g.num_nodes(); ++v) {
            if (info.component[v] != info.giant) continue;
            double av = 0.0;
            for (const auto& [u, w] : g.neighbors(v)) av += w * s.scores[u];
            num += av * s.scores[v];
            den += s.scores[v] * s.scores[v];
        }
        double lambda = num / den;
        for (int v = 0; v < g.num_nodes(); ++v) {
            if (info.component[v] != info.giant) continue;
            double av = 0.0;
            for (const auto& [u, w] : g.neighbors(v)) av += w * s.scores[u];
            CHECK(std::abs(av - lambda * s.scores[v]) < 1e-6);
        }
    }
}

TEST_CASE("modularity identities") {
    WeightedGraph tri2;  // two disjoint unit triangles
    tri2.add_edge("a", "b", 1.0);
    tri2.add_edge("b", "c", 1.0);
    tri2.add_edge("a", "c", 1.0);
    tri2.add_edge("x", "y", 1.0);
    tri2.add_edge("y", "z", 1.0);
    tri2.add_edge("x", "z", 1.0);

    Partition one;
    one.community.assign(6, 0);
    CHECK(modularity(tri2, one) == 0.0);  // exactly

    Partition natural;
    natural.community = {0, 0, 0, 1, 1, 1};
    CHECK(modularity(tri2, natural) == doctest::Approx(0.5).epsilon(1e-12));

    WeightedGraph edgeless;
    edgeless.add_node("a");
    CHECK_THROWS_AS(modularity(edgeless, Partition{{0}}), std::runtime_error);
}

TEST_CASE("modularity equals the per-pair formula on random graphs") {
    std::mt19937 rng(55);
    std::uniform_int_distribution<int> n_comm(1, 4);
    for (int trial = 0; trial < 25; ++trial) {
        WeightedGraph g = random_graph(rng, 9, 0.4);
        if (g.total_weight() == 0.0) continue;
        Partition p;
        std::uniform_int_distribution<int> pick(0, n_comm(rng) - 1);
        for (int v = 0; v < g.num_nodes(); ++v) p.community.push_back(pick(rng));
        p.community = topicnet::tests::canonical_partition(p.community);
        CHECK(modularity(g, p) ==
              doctest::Approx(topicnet::tests::brute_force_modularity(g, p))
                  .epsilon(1e-12));
    }
}

TEST_CASE("average rank: fractional ties and ordering") {
    CentralityScores a{"degree", {3.0, 2.0, 1.0, 0.5}, false};
    CentralityScores b{"betweenness", {0.9, 1.0, 0.2, 0.1}, true};
    CentralityScores c{"eigenvector", {0.5, 0.8, 0.9, 1.0}, false};
    AverageRanking ranking = average_rank({a, b, c});
    // node 0: ranks 1, 2, 4 -> average 2.33
    const auto& entry0 = *std::find_if(ranking.entries.begin(), ranking.entries.end(),
                                       [](const auto& e) { return e.node == 0; });
    CHECK(entry0.ranks[0] == 1.0);
    CHECK(entry0.ranks[1] == 2.0);
    CHECK(entry0.ranks[2] == 4.0);
    CHECK(entry0.average == doctest::Approx(7.0 / 3.0).epsilon(1e-12));
    CHECK(ranking.entries.front().average <= ranking.entries.back().average);
}

TEST_CASE("a node best under all metrics has average rank 1") {
    CentralityScores a{"degree", {5.0, 2.0}, false};
    CentralityScores b{"betweenness", {1.0, 0.0}, true};
    CentralityScores c{"eigenvector", {1.0, 0.3}, false};
    AverageRanking ranking = average_rank({a, b, c});
    CHECK(ranking.entries.front().node == 0);
    CHECK(ranking.entries.front().average == 1.0);
}

TEST_CASE("tied scores share a fractional rank") {
    CentralityScores a{"degree", {9.0, 4.0, 4.0, 1.0}, false};
    CentralityScores b{"betweenness", {1.0, 0.8, 0.6, 0.4}, true};
    CentralityScores c{"eigenvector", {1.0, 0.8, 0.6, 0.4}, false};
    AverageRanking ranking = average_rank({a, b, c});
    for (const auto& entry : ranking.entries) {
        if (entry.node == 1 || entry.node == 2)
            CHECK(entry.ranks[0] == 2.5);  // tied at ranks 2-3
    }
}

TEST_CASE("average rank is invariant under monotone rescaling") {
    std::mt19937 rng(66);
    WeightedGraph g = random_graph(rng, 8, 0.5);
    CentralityScores deg{"degree", {}, false};
    for (int v = 0; v < g.num_nodes(); ++v)
        deg.scores.push_back(static_cast<double>(g.degree(v)));
    CentralityScores bet = betweenness(g, true);
    CentralityScores eig = eigenvector_centrality(g);

    AverageRanking base = average_rank({deg, bet, eig});
    CentralityScores deg_scaled = deg;
    for (double& s : deg_scaled.scores) s = std::exp(3.0 * s + 1.0);
    AverageRanking scaled = average_rank({deg_scaled, bet, eig});
    REQUIRE(base.entries.size() == scaled.entries.size());
    for (std::size_t i = 0; i < base.entries.size(); ++i) {
        CHECK(base.entries[i].node == scaled.entries[i].node);
        CHECK(base.entries[i].average == scaled.entries[i].average);
    }
}

TEST_CASE("average rank rejects mismatched node sets") {
    CentralityScores a{"degree", {1.0, 2.0}, false};
    CentralityScores b{"betweenness", {1.0}, true};
    CentralityScores c{"eigenvector", {1.0, 2.0}, false};
    CHECK_THROWS_AS(average_rank({a, b, c}), std::invalid_argument);
}
