#include "topicnet/netbuild.hpp"

#include <algorithm>
#include <stdexcept>

namespace topicnet {
namespace {

std::vector<char> year_mask(const std::vector<int>& doc_years, int year) {
    std::vector<char> mask(doc_years.size(), 0);
    for (std::size_t d = 0; d < doc_years.size(); ++d)
        if (doc_years[d] == year) mask[d] = 1;
    return mask;
}

}  // namespace

WeightedGraph topic_network(const Eigen::MatrixXd& theta, double tau,
                            const std::set<int>& excluded_topics,
                            const std::vector<char>* doc_mask) {
    if (tau <= 0.0) throw std::invalid_argument("netbuild: tau must be positive");
    if (doc_mask && doc_mask->size() != static_cast<std::size_t>(theta.rows()))
        throw std::invalid_argument("netbuild: document mask does not align with theta");

    const int k = static_cast<int>(theta.cols());
    WeightedGraph g;
    std::vector<int> node_of(k, -1);
    for (int j = 0; j < k; ++j)
        if (!excluded_topics.count(j)) node_of[j] = g.add_node(std::to_string(j));

    std::vector<int> selected;
    for (Eigen::Index d = 0; d < theta.rows(); ++d) {
        if (doc_mask && !(*doc_mask)[d]) continue;
        selected.clear();
        for (int j = 0; j < k; ++j)
            if (node_of[j] >= 0 && theta(d, j) >= tau) selected.push_back(node_of[j]);
        for (std::size_t a = 0; a < selected.size(); ++a)
            for (std::size_t b = a + 1; b < selected.size(); ++b)
                g.add_edge(selected[a], selected[b], 1.0);
    }
    return g;
}

WeightedGraph keyword_network(const std::vector<ProcessedDocument>& docs,
                              const std::vector<char>* doc_mask) {
    if (doc_mask && doc_mask->size() != docs.size())
        throw std::invalid_argument("netbuild: document mask does not align with corpus");

    std::set<std::string> universe;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        if (doc_mask && !(*doc_mask)[d]) continue;
        universe.insert(docs[d].canonical_keywords.begin(),
                        docs[d].canonical_keywords.end());
    }

    WeightedGraph g;
    for (const auto& kw : universe) g.add_node(kw);

    for (std::size_t d = 0; d < docs.size(); ++d) {
        if (doc_mask && !(*doc_mask)[d]) continue;
        const auto& kws = docs[d].canonical_keywords;
        for (auto a = kws.begin(); a != kws.end(); ++a) {
            auto b = a;
            for (++b; b != kws.end(); ++b) g.add_edge(*a, *b, 1.0);
        }
    }
    return g;
}

SnapshotSeries topic_snapshots(const Eigen::MatrixXd& theta, double tau,
                               const std::set<int>& excluded_topics,
                               const std::vector<int>& doc_years) {
    if (doc_years.size() != static_cast<std::size_t>(theta.rows()))
        throw std::invalid_argument("netbuild: doc_years does not align with theta");
    std::set<int> years(doc_years.begin(), doc_years.end());

    SnapshotSeries series;
    for (int year : years) {
        auto mask = year_mask(doc_years, year);
        series.by_year.emplace(year,
                               topic_network(theta, tau, excluded_topics, &mask));
    }
    std::set<std::string> universe;
    for (const auto& [year, g] : series.by_year)
        universe.insert(g.labels().begin(), g.labels().end());
    series.node_universe.assign(universe.begin(), universe.end());
    return series;
}

SnapshotSeries keyword_snapshots(const std::vector<ProcessedDocument>& docs,
                                 const std::vector<int>& doc_years) {
    if (doc_years.size() != docs.size())
        throw std::invalid_argument("netbuild: doc_years does not align with corpus");
    std::set<int> years(doc_years.begin(), doc_years.end());

    SnapshotSeries series;
    for (int year : years) {
        auto mask = year_mask(doc_years, year);
        series.by_year.emplace(year, keyword_network(docs, &mask));
    }
    std::set<std::string> universe;
    for (const auto& [year, g] : series.by_year)
        universe.insert(g.labels().begin(), g.labels().end());
    series.node_universe.assign(universe.begin(), universe.end());
    return series;
}

WeightedGraph drop_isolates(const WeightedGraph& g) {
    WeightedGraph out;
    for (int v = 0; v < g.num_nodes(); ++v)
        if (g.degree(v) > 0) out.add_node(g.label(v));
    for (const auto& [u, v, w] : g.edges())
        out.add_edge(g.label(u), g.label(v), w);
    return out;
}

}  // namespace topicnet
