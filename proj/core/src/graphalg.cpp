#include "topicnet/graphalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

namespace topicnet {

int Partition::num_communities() const {
    int max_id = -1;
    for (int c : community) max_id = std::max(max_id, c);
    return max_id + 1;
}

DegreeStats degree_stats(const WeightedGraph& g) {
    const int n = g.num_nodes();
    if (n == 0)
        throw std::runtime_error("graphalg: average degree of an empty graph is undefined");
    DegreeStats stats;
    stats.degree.resize(n);
    long long total = 0;
    for (int v = 0; v < n; ++v) {
        stats.degree[v] = g.degree(v);
        total += stats.degree[v];
    }
    stats.average = static_cast<double>(total) / n;
    return stats;
}

ClusteringStats clustering(const WeightedGraph& g) {
    const int n = g.num_nodes();
    ClusteringStats stats;
    stats.local.assign(n, 0.0);
    if (n == 0) return stats;
    double sum = 0.0;
    for (int v = 0; v < n; ++v) {
        const auto& nv = g.neighbors(v);
        const auto deg = nv.size();
        if (deg < 2) continue;
        long long triangles = 0;
        for (auto a = nv.begin(); a != nv.end(); ++a) {
            auto b = a;
            for (++b; b != nv.end(); ++b)
                if (g.has_edge(a->first, b->first)) ++triangles;
        }
        stats.local[v] =
            2.0 * triangles / (static_cast<double>(deg) * (deg - 1));
        sum += stats.local[v];
    }
    stats.average = sum / n;
    return stats;
}

namespace {

// Hop distances from source; unreachable nodes get -1.
std::vector<int> bfs_distances(const WeightedGraph& g, int source) {
    std::vector<int> dist(g.num_nodes(), -1);
    std::queue<int> queue;
    dist[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop();
        for (const auto& [u, w] : g.neighbors(v)) {
            if (dist[u] >= 0) continue;
            dist[u] = dist[v] + 1;
            queue.push(u);
        }
    }
    return dist;
}

}  // namespace

double avg_path_length(const WeightedGraph& g) {
    const int n = g.num_nodes();
    long long pairs = 0;
    long long total = 0;
    for (int s = 0; s < n; ++s) {
        auto dist = bfs_distances(g, s);
        for (int t = s + 1; t < n; ++t) {
            if (dist[t] < 0) continue;
            ++pairs;
            total += dist[t];
        }
    }
    if (pairs == 0)
        throw std::runtime_error("graphalg: no connected pair; average path length undefined");
    return static_cast<double>(total) / pairs;
}

ComponentInfo components(const WeightedGraph& g) {
    const int n = g.num_nodes();
    ComponentInfo info;
    info.component.assign(n, -1);
    for (int s = 0; s < n; ++s) {
        if (info.component[s] >= 0) continue;
        int id = info.n_components++;
        info.sizes.push_back(0);
        std::queue<int> queue;
        info.component[s] = id;
        queue.push(s);
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop();
            ++info.sizes[id];
            for (const auto& [u, w] : g.neighbors(v)) {
                if (info.component[u] >= 0) continue;
                info.component[u] = id;
                queue.push(u);
            }
        }
    }
    for (int c = 0; c < info.n_components; ++c)
        if (info.giant < 0 || info.sizes[c] > info.sizes[info.giant]) info.giant = c;
    if (n > 0 && info.giant >= 0)
        info.giant_fraction = static_cast<double>(info.sizes[info.giant]) / n;
    return info;
}

CentralityScores betweenness(const WeightedGraph& g, bool normalized) {
    const int n = g.num_nodes();
    CentralityScores out;
    out.metric = "betweenness";
    out.normalized = normalized;
    out.scores.assign(n, 0.0);

    std::vector<int> order;
    order.reserve(n);
    std::vector<std::vector<int>> predecessors(n);
    std::vector<long long> sigma(n);
    std::vector<int> dist(n);
    std::vector<double> delta(n);

    for (int s = 0; s < n; ++s) {
        order.clear();
        for (int v = 0; v < n; ++v) {
            predecessors[v].clear();
            sigma[v] = 0;
            dist[v] = -1;
            delta[v] = 0.0;
        }
        sigma[s] = 1;
        dist[s] = 0;
        std::queue<int> queue;
        queue.push(s);
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop();
            order.push_back(v);
            for (const auto& [u, w] : g.neighbors(v)) {
                if (dist[u] < 0) {
                    dist[u] = dist[v] + 1;
                    queue.push(u);
                }
                if (dist[u] == dist[v] + 1) {
                    sigma[u] += sigma[v];
                    predecessors[u].push_back(v);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int v = *it;
            for (int p : predecessors[v])
                delta[p] += static_cast<double>(sigma[p]) / sigma[v] * (1.0 + delta[v]);
            if (v != s) out.scores[v] += delta[v];
        }
    }

    for (double& score : out.scores) score *= 0.5;  // undirected: pairs counted twice
    if (normalized) {
        const double denom = static_cast<double>(n - 1) * (n - 2) / 2.0;
        for (double& score : out.scores) score = denom > 0.0 ? score / denom : 0.0;
    }
    return out;
}

CentralityScores eigenvector_centrality(const WeightedGraph& g) {
    constexpr double kTol = 1e-9;
    constexpr int kMaxIter = 1000;

    ComponentInfo info = components(g);
    const int n = g.num_nodes();
    if (info.giant < 0 || info.sizes[info.giant] < 2)
        throw std::runtime_error(
            "graphalg: eigenvector centrality needs a giant component of at least 2 nodes");

    std::vector<int> member;
    for (int v = 0; v < n; ++v)
        if (info.component[v] == info.giant) member.push_back(v);
    std::vector<int> local(n, -1);
    for (std::size_t i = 0; i < member.size(); ++i) local[member[i]] = static_cast<int>(i);

    // (A + I) iteration: same principal eigenvector as A, immune to the
    // period-2 oscillation of bipartite graphs.
    std::vector<double> x(member.size(), 1.0), next(member.size());
    double residual = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < kMaxIter; ++iter) {
        for (std::size_t i = 0; i < member.size(); ++i) {
            double sum = x[i];
            for (const auto& [u, w] : g.neighbors(member[i])) sum += w * x[local[u]];
            next[i] = sum;
        }
        double max_val = *std::max_element(next.begin(), next.end());
        residual = 0.0;
        for (std::size_t i = 0; i < member.size(); ++i) {
            next[i] /= max_val;
            residual = std::max(residual, std::abs(next[i] - x[i]));
        }
        x.swap(next);
        if (residual < kTol) {
            CentralityScores out;
            out.metric = "eigenvector";
            out.scores.assign(n, 0.0);
            for (std::size_t i = 0; i < member.size(); ++i) out.scores[member[i]] = x[i];
            return out;
        }
    }
    throw std::runtime_error(
        "graphalg: eigenvector centrality did not converge within 1000 iterations "
        "(residual " + std::to_string(residual) + ")");
}

double modularity(const WeightedGraph& g, const Partition& partition) {
    if (partition.community.size() != static_cast<std::size_t>(g.num_nodes()))
        throw std::invalid_argument("graphalg: partition does not cover the node set");
    const double m = g.total_weight();
    if (m <= 0.0)
        throw std::runtime_error("graphalg: modularity of an edgeless graph is undefined");

    const int n_comm = partition.num_communities();
    std::vector<double> sigma_in(n_comm, 0.0);   // 2 * internal weight
    std::vector<double> sigma_tot(n_comm, 0.0);  // sum of member strengths
    for (int v = 0; v < g.num_nodes(); ++v)
        sigma_tot[partition.community[v]] += g.strength(v);
    for (const auto& [u, v, w] : g.edges())
        if (partition.community[u] == partition.community[v])
            sigma_in[partition.community[u]] += 2.0 * w;

    double q = 0.0;
    for (int c = 0; c < n_comm; ++c) {
        double tot = sigma_tot[c] / (2.0 * m);
        q += sigma_in[c] / (2.0 * m) - tot * tot;
    }
    return q;
}

namespace {

// Fractional ranks (1 = best) of scores sorted descending; tied scores share
// the mean of their positions.
std::vector<double> fractional_ranks(const std::vector<double>& scores) {
    const int n = static_cast<int>(scores.size());
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    std::vector<double> ranks(n, 0.0);
    int i = 0;
    while (i < n) {
        int j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        double shared = (static_cast<double>(i + 1) + (j + 1)) / 2.0;
        for (int p = i; p <= j; ++p) ranks[order[p]] = shared;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

AverageRanking average_rank(const std::vector<CentralityScores>& scores) {
    if (scores.size() != 3)
        throw std::invalid_argument("graphalg: average_rank expects exactly three scorings");
    const std::size_t n = scores[0].scores.size();
    for (const auto& s : scores)
        if (s.scores.size() != n)
            throw std::invalid_argument("graphalg: centrality scorings cover different node sets");

    AverageRanking out;
    std::array<std::vector<double>, 3> ranks;
    for (int i = 0; i < 3; ++i) {
        out.metrics[i] = scores[i].metric;
        ranks[i] = fractional_ranks(scores[i].scores);
    }
    out.entries.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
        AverageRanking::Entry entry;
        entry.node = static_cast<int>(v);
        entry.ranks = {ranks[0][v], ranks[1][v], ranks[2][v]};
        entry.average = (entry.ranks[0] + entry.ranks[1] + entry.ranks[2]) / 3.0;
        out.entries.push_back(entry);
    }
    std::sort(out.entries.begin(), out.entries.end(), [](const auto& a, const auto& b) {
        if (a.average != b.average) return a.average < b.average;
        return a.node < b.node;
    });
    return out;
}

namespace {

std::vector<SeriesPoint> betweenness_points(
    const SnapshotSeries& series, bool normalized,
    const std::function<bool(double)>& keep_by_max, int top_n) {
    // label -> year -> value
    std::map<std::string, std::map<int, double>> values;
    for (const auto& [year, g] : series.by_year) {
        CentralityScores scores = betweenness(g, normalized);
        for (int v = 0; v < g.num_nodes(); ++v)
            values[g.label(v)][year] = scores.scores[v];
    }

    std::vector<std::pair<std::string, double>> max_by_node;
    for (const auto& [label, by_year] : values) {
        double peak = 0.0;
        for (const auto& [year, value] : by_year) peak = std::max(peak, value);
        max_by_node.emplace_back(label, peak);
    }

    std::vector<std::string> kept;
    if (top_n > 0) {
        std::sort(max_by_node.begin(), max_by_node.end(),
                  [](const auto& a, const auto& b) {
                      if (a.second != b.second) return a.second > b.second;
                      return a.first < b.first;
                  });
        for (std::size_t i = 0; i < max_by_node.size() && i < static_cast<std::size_t>(top_n); ++i)
            kept.push_back(max_by_node[i].first);
        std::sort(kept.begin(), kept.end());
    } else {
        for (const auto& [label, peak] : max_by_node)
            if (keep_by_max(peak)) kept.push_back(label);
    }

    std::vector<SeriesPoint> points;
    for (const auto& label : kept)
        for (const auto& [year, value] : values.at(label))
            points.push_back({label, year, value});
    return points;
}

}  // namespace

std::vector<SeriesPoint> betweenness_series(const SnapshotSeries& series,
                                            double raw_threshold) {
    return betweenness_points(
        series, /*normalized=*/false,
        [raw_threshold](double peak) { return peak >= raw_threshold; },
        /*top_n=*/0);
}

std::vector<SeriesPoint> betweenness_series_top(const SnapshotSeries& series,
                                                int top_n) {
    return betweenness_points(
        series, /*normalized=*/true, [](double) { return true; }, top_n);
}

AlluvialData alluvial_flows(const SnapshotSeries& series,
                            const std::map<int, Partition>& partitions) {
    if (series.by_year.size() < 2)
        throw std::runtime_error("graphalg: alluvial flows need at least two snapshots");

    AlluvialData out;
    for (const auto& [year, g] : series.by_year) {
        const Partition& part = partitions.at(year);
        if (part.community.size() != static_cast<std::size_t>(g.num_nodes()))
            throw std::invalid_argument("graphalg: partition does not match snapshot " +
                                        std::to_string(year));
        std::map<int, int> sizes;
        for (int c : part.community) ++sizes[c];
        std::vector<AlluvialBlock> blocks;
        for (const auto& [c, size] : sizes) blocks.push_back({year, c, size});
        std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) {
            if (a.size != b.size) return a.size > b.size;
            return a.community < b.community;
        });
        out.blocks.insert(out.blocks.end(), blocks.begin(), blocks.end());
    }

    auto it = series.by_year.begin();
    auto next = std::next(it);
    for (; next != series.by_year.end(); ++it, ++next) {
        const auto& [year_a, graph_a] = *it;
        const auto& [year_b, graph_b] = *next;
        const Partition& part_a = partitions.at(year_a);
        const Partition& part_b = partitions.at(year_b);
        std::map<std::pair<int, int>, int> flows;
        for (int v = 0; v < graph_a.num_nodes(); ++v) {
            auto in_b = graph_b.node_id(graph_a.label(v));
            if (!in_b) continue;  // node left the network: documented loss
            ++flows[{part_a.community[v], part_b.community[*in_b]}];
        }
        for (const auto& [pair, count] : flows)
            out.flows.push_back({year_a, pair.first, pair.second, count});
    }
    return out;
}

}  // namespace topicnet
