#pragma once

#include <random>
#include <vector>

#include "hypertraffic/graph.hpp"
#include "oracles.hpp"

namespace testing {

inline hypertraffic::Graph to_graph(const oracle::SimpleGraph& s) {
    std::vector<hypertraffic::Edge> edges;
    for (hypertraffic::NodeId v = 0; v < s.n; ++v)
        for (hypertraffic::NodeId w : s.adj[v])
            if (v < w) edges.push_back({v, w});
    return hypertraffic::Graph::build(edges, s.root, s.n);
}

// Connected random graph: a random spanning tree plus `extra` chords.
inline oracle::SimpleGraph random_connected(std::mt19937& rng, std::size_t n, std::size_t extra) {
    std::vector<hypertraffic::Edge> edges;
    std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
    for (hypertraffic::NodeId v = 1; v < n; ++v) {
        auto u = static_cast<hypertraffic::NodeId>(std::uniform_int_distribution<std::size_t>(0, v - 1)(rng));
        edges.push_back({u, v});
        used[u][v] = used[v][u] = true;
    }
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t i = 0; i < extra && n > 2; ++i) {
        auto a = static_cast<hypertraffic::NodeId>(pick(rng));
        auto b = static_cast<hypertraffic::NodeId>(pick(rng));
        if (a == b || used[a][b]) continue;
        used[a][b] = used[b][a] = true;
        edges.push_back({a, b});
    }
    auto root = static_cast<hypertraffic::NodeId>(pick(rng));
    return oracle::from_edges(n, edges, root);
}

inline double rel_err(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace testing
