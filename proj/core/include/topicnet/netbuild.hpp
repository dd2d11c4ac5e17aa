#ifndef TOPICNET_NETBUILD_HPP
#define TOPICNET_NETBUILD_HPP

#include <Eigen/Dense>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "topicnet/graph.hpp"
#include "topicnet/textprep.hpp"

namespace topicnet {

/// Year-indexed sequence of co-occurrence graphs sharing one node labeling.
struct SnapshotSeries {
    std::map<int, WeightedGraph> by_year;
    std::vector<std::string> node_universe;
};

/// Topic co-occurrence network: a document selects S(d) = {k : theta[d,k] >=
/// tau}; every unordered topic pair within S(d) gains weight 1. All
/// non-excluded topics appear as nodes, isolated if never co-selected. An
/// optional mask restricts the contributing documents (1 = keep).
WeightedGraph topic_network(const Eigen::MatrixXd& theta, double tau,
                            const std::set<int>& excluded_topics = {},
                            const std::vector<char>* doc_mask = nullptr);

/// Keyword co-occurrence network: per paper, every unordered pair of its
/// distinct canonical keywords gains weight 1; papers with fewer than two
/// keywords contribute nodes only. Node order is lexicographic.
WeightedGraph keyword_network(const std::vector<ProcessedDocument>& docs,
                              const std::vector<char>* doc_mask = nullptr);

/// One topic network per publication year; years without papers get no entry.
SnapshotSeries topic_snapshots(const Eigen::MatrixXd& theta, double tau,
                               const std::set<int>& excluded_topics,
                               const std::vector<int>& doc_years);

/// One keyword network per publication year.
SnapshotSeries keyword_snapshots(const std::vector<ProcessedDocument>& docs,
                                 const std::vector<int>& doc_years);

/// Copy of g without degree-0 nodes (for visualization exports).
WeightedGraph drop_isolates(const WeightedGraph& g);

}  // namespace topicnet

#endif  // TOPICNET_NETBUILD_HPP
