#ifndef TOPICNET_GRAPHALG_HPP
#define TOPICNET_GRAPHALG_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "topicnet/graph.hpp"
#include "topicnet/netbuild.hpp"

namespace topicnet {

/// One centrality scoring of a graph, aligned to node ids.
struct CentralityScores {
    std::string metric;
    std::vector<double> scores;
    bool normalized = false;
};

/// Node -> community id, dense integers from 0.
struct Partition {
    std::vector<int> community;

    int num_communities() const;
};

struct DegreeStats {
    std::vector<int> degree;
    double average = 0.0;
};

struct ClusteringStats {
    std::vector<double> local;
    double average = 0.0;
};

struct ComponentInfo {
    std::vector<int> component;  ///< node -> component id
    std::vector<int> sizes;      ///< component id -> node count
    int n_components = 0;
    double giant_fraction = 0.0;
    int giant = -1;  ///< id of the largest component
};

/// Per-node ranks (fractional tie-averaging, rank 1 = best) under three
/// centrality metrics, sorted ascending by the averaged rank.
struct AverageRanking {
    std::array<std::string, 3> metrics;
    struct Entry {
        int node;
        std::array<double, 3> ranks;
        double average;
    };
    std::vector<Entry> entries;
};

/// One (node, year, value) sample of a betweenness time series.
struct SeriesPoint {
    std::string node;
    int year;
    double value;
};

struct AlluvialBlock {
    int year;
    int community;
    int size;
};

struct AlluvialFlow {
    int year_from;  ///< flows connect year_from to the next snapshot year
    int from_community;
    int to_community;
    int count;  ///< number of shared nodes
};

struct AlluvialData {
    std::vector<AlluvialBlock> blocks;  ///< per year, ordered by size
    std::vector<AlluvialFlow> flows;
};

/// Unweighted degree per node and its average. Throws on an empty graph.
DegreeStats degree_stats(const WeightedGraph& g);

/// Local clustering coefficient 2 tri(v) / (deg(v)(deg(v)-1)), zero below
/// degree 2; average taken over all nodes.
ClusteringStats clustering(const WeightedGraph& g);

/// Mean hop-count distance over connected unordered pairs; pairs in different
/// components are excluded. Throws when no connected pair exists.
double avg_path_length(const WeightedGraph& g);

ComponentInfo components(const WeightedGraph& g);

/// Brandes betweenness over unweighted shortest paths, undirected convention
/// (accumulations halved). Normalized scores divide by (n-1)(n-2)/2 with n
/// counting every node of the graph.
CentralityScores betweenness(const WeightedGraph& g, bool normalized);

/// Power iteration on the weighted adjacency of the giant component
/// (max-norm 1, tolerance 1e-9, at most 1000 iterations); nodes outside the
/// giant component score 0. Throws if iteration fails to converge.
CentralityScores eigenvector_centrality(const WeightedGraph& g);

/// Deterministic two-phase Louvain: nodes scanned in stable order, gain ties
/// broken by the smallest candidate community id, phases repeated until no
/// further aggregation. An edgeless graph yields singleton communities.
Partition louvain(const WeightedGraph& g, double resolution = 1.0);

/// Weighted Newman modularity of a full partition. Throws when the graph has
/// no edge weight.
double modularity(const WeightedGraph& g, const Partition& partition);

/// Average of the per-metric fractional ranks from exactly three scorings of
/// the same node set.
AverageRanking average_rank(const std::vector<CentralityScores>& scores);

/// Raw betweenness per snapshot; keeps nodes whose maximum over years reaches
/// raw_threshold and emits one point per year in which the node exists.
std::vector<SeriesPoint> betweenness_series(const SnapshotSeries& series,
                                            double raw_threshold = 400.0);

/// Normalized-betweenness variant: keeps the top_n nodes by their maximum
/// over years.
std::vector<SeriesPoint> betweenness_series_top(const SnapshotSeries& series,
                                                int top_n = 10);

/// Community flows between consecutive snapshots: flow(c1 -> c2) counts the
/// nodes shared by community c1 of one year and c2 of the next. Requires at
/// least two snapshots with per-year partitions aligned to them.
AlluvialData alluvial_flows(const SnapshotSeries& series,
                            const std::map<int, Partition>& partitions);

}  // namespace topicnet

#endif  // TOPICNET_GRAPHALG_HPP
