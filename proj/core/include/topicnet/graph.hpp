#ifndef TOPICNET_GRAPH_HPP
#define TOPICNET_GRAPH_HPP

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace topicnet {

/// Undirected labeled graph with strictly positive edge weights. Node order
/// is insertion order and fixed; self-loops and duplicate edges are rejected
/// (repeated add_edge calls accumulate onto one edge).
class WeightedGraph {
public:
    /// Adds a node (no-op if the label exists) and returns its id.
    int add_node(const std::string& label);

    std::optional<int> node_id(const std::string& label) const;

    /// Accumulates weight onto the undirected edge {u, v}.
    void add_edge(int u, int v, double weight);
    void add_edge(const std::string& u, const std::string& v, double weight);

    int num_nodes() const { return static_cast<int>(labels_.size()); }
    std::size_t num_edges() const { return num_edges_; }

    const std::string& label(int v) const { return labels_.at(v); }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Neighbors of v with edge weights, ordered by neighbor id.
    const std::map<int, double>& neighbors(int v) const { return adjacency_.at(v); }

    int degree(int v) const { return static_cast<int>(adjacency_.at(v).size()); }
    /// Weighted degree (sum of incident edge weights).
    double strength(int v) const;

    bool has_edge(int u, int v) const;
    double edge_weight(int u, int v) const;

    /// Sum of all edge weights.
    double total_weight() const { return total_weight_; }

    /// Edges as (u, v, weight) with u < v, ordered by (u, v).
    std::vector<std::tuple<int, int, double>> edges() const;

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::map<int, double>> adjacency_;
    std::size_t num_edges_ = 0;
    double total_weight_ = 0.0;
};

}  // namespace topicnet

#endif  // TOPICNET_GRAPH_HPP
