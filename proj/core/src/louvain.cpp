// Two-phase Louvain modularity optimization, made deterministic: nodes are
// scanned in index order, a node moves only on a strictly positive gain over
// staying, and gain ties between candidate communities go to the smallest id.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "topicnet/graphalg.hpp"

namespace topicnet {
namespace {

// Aggregated working graph: allows self-loops (internal community weight).
struct LevelGraph {
    int n = 0;
    std::vector<std::vector<std::pair<int, double>>> adjacency;  // excl. self-loops
    std::vector<double> self_loop;
    std::vector<double> strength;  // weighted degree incl. 2 * self-loop
    double total_weight = 0.0;     // m, counting each edge once
};

LevelGraph from_graph(const WeightedGraph& g) {
    LevelGraph lg;
    lg.n = g.num_nodes();
    lg.adjacency.resize(lg.n);
    lg.self_loop.assign(lg.n, 0.0);
    lg.strength.assign(lg.n, 0.0);
    for (int v = 0; v < lg.n; ++v) {
        for (const auto& [u, w] : g.neighbors(v)) lg.adjacency[v].emplace_back(u, w);
        lg.strength[v] = g.strength(v);
    }
    lg.total_weight = g.total_weight();
    return lg;
}

// One pass of local moves until no node improves; returns true if anything moved.
bool local_phase(const LevelGraph& lg, std::vector<int>& community,
                 double resolution) {
    const double m = lg.total_weight;
    std::vector<double> sigma_tot(lg.n, 0.0);
    for (int v = 0; v < lg.n; ++v) sigma_tot[community[v]] += lg.strength[v];

    bool any_move = false;
    bool improved = true;
    while (improved) {
        improved = false;
        for (int v = 0; v < lg.n; ++v) {
            const int old_comm = community[v];
            std::map<int, double> weight_to;  // community -> k_{v,c}
            weight_to[old_comm];              // staying is always a candidate
            for (const auto& [u, w] : lg.adjacency[v]) weight_to[community[u]] += w;

            sigma_tot[old_comm] -= lg.strength[v];

            // gain(c) = k_{v,c}/m - resolution * Sigma_tot(c) * k_v / (2 m^2)
            const double k_v = lg.strength[v];
            auto gain = [&](int c, double k_vc) {
                return k_vc / m - resolution * sigma_tot[c] * k_v / (2.0 * m * m);
            };
            // Moves need a strictly positive gain over staying; ascending map
            // order makes the smallest community id win ties.
            int best_comm = old_comm;
            double best_gain = gain(old_comm, weight_to[old_comm]);
            for (const auto& [c, k_vc] : weight_to) {
                if (c == old_comm) continue;
                double g = gain(c, k_vc);
                if (g > best_gain) {
                    best_gain = g;
                    best_comm = c;
                }
            }

            sigma_tot[best_comm] += lg.strength[v];
            if (best_comm != old_comm) {
                community[v] = best_comm;
                improved = true;
                any_move = true;
            }
        }
    }
    return any_move;
}

// Renumber communities densely, ordered by smallest member id.
std::vector<int> renumber(const std::vector<int>& community) {
    std::map<int, int> remap;
    std::vector<int> out(community.size());
    for (std::size_t v = 0; v < community.size(); ++v) {
        auto [it, inserted] = remap.try_emplace(community[v], static_cast<int>(remap.size()));
        out[v] = it->second;
    }
    return out;
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<int>& community,
                     int n_communities) {
    LevelGraph next;
    next.n = n_communities;
    next.adjacency.resize(next.n);
    next.self_loop.assign(next.n, 0.0);
    next.strength.assign(next.n, 0.0);
    next.total_weight = lg.total_weight;

    std::vector<std::map<int, double>> edges(next.n);
    for (int v = 0; v < lg.n; ++v) {
        const int cv = community[v];
        next.self_loop[cv] += lg.self_loop[v];
        for (const auto& [u, w] : lg.adjacency[v]) {
            const int cu = community[u];
            if (cu == cv) {
                if (u > v) next.self_loop[cv] += w;
            } else {
                edges[cv][cu] += w;
            }
        }
    }
    for (int c = 0; c < next.n; ++c) {
        next.adjacency[c].assign(edges[c].begin(), edges[c].end());
        double s = 2.0 * next.self_loop[c];
        for (const auto& [u, w] : next.adjacency[c]) s += w;
        next.strength[c] = s;
    }
    return next;
}

}  // namespace

Partition louvain(const WeightedGraph& g, double resolution) {
    Partition partition;
    partition.community.resize(g.num_nodes());
    for (int v = 0; v < g.num_nodes(); ++v) partition.community[v] = v;
    if (g.num_nodes() == 0) return partition;
    if (g.total_weight() <= 0.0) return partition;  // edgeless: singletons

    LevelGraph level = from_graph(g);
    std::vector<int> flat(g.num_nodes());
    for (int v = 0; v < g.num_nodes(); ++v) flat[v] = v;

    while (true) {
        std::vector<int> community(level.n);
        for (int v = 0; v < level.n; ++v) community[v] = v;
        bool moved = local_phase(level, community, resolution);
        if (!moved) break;

        community = renumber(community);
        int n_comm = *std::max_element(community.begin(), community.end()) + 1;
        for (int v = 0; v < g.num_nodes(); ++v) flat[v] = community[flat[v]];
        if (n_comm == level.n) break;
        level = aggregate(level, community, n_comm);
    }

    partition.community = renumber(flat);
    return partition;
}

}  // namespace topicnet
