#include "topicnet/graph.hpp"

#include <stdexcept>

namespace topicnet {

int WeightedGraph::add_node(const std::string& label) {
    auto it = index_.find(label);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(labels_.size());
    index_.emplace(label, id);
    labels_.push_back(label);
    adjacency_.emplace_back();
    return id;
}

std::optional<int> WeightedGraph::node_id(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void WeightedGraph::add_edge(int u, int v, double weight) {
    if (u == v) throw std::invalid_argument("graph: self-loops are not allowed");
    if (weight <= 0.0)
        throw std::invalid_argument("graph: edge weights must be positive");
    if (u < 0 || v < 0 || u >= num_nodes() || v >= num_nodes())
        throw std::out_of_range("graph: edge endpoint out of range");
    auto [it, inserted] = adjacency_[u].try_emplace(v, 0.0);
    it->second += weight;
    adjacency_[v][u] = it->second;
    if (inserted) ++num_edges_;
    total_weight_ += weight;
}

void WeightedGraph::add_edge(const std::string& u, const std::string& v,
                             double weight) {
    int u_id = add_node(u);  // sequenced: node order is left-to-right
    int v_id = add_node(v);
    add_edge(u_id, v_id, weight);
}

double WeightedGraph::strength(int v) const {
    double sum = 0.0;
    for (const auto& [u, w] : adjacency_.at(v)) sum += w;
    return sum;
}

bool WeightedGraph::has_edge(int u, int v) const {
    return adjacency_.at(u).count(v) > 0;
}

double WeightedGraph::edge_weight(int u, int v) const {
    auto it = adjacency_.at(u).find(v);
    return it == adjacency_.at(u).end() ? 0.0 : it->second;
}

std::vector<std::tuple<int, int, double>> WeightedGraph::edges() const {
    std::vector<std::tuple<int, int, double>> out;
    out.reserve(num_edges_);
    for (int u = 0; u < num_nodes(); ++u)
        for (const auto& [v, w] : adjacency_[u])
            if (u < v) out.emplace_back(u, v, w);
    return out;
}

}  // namespace topicnet
