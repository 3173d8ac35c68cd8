#include "hypertraffic/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "hypertraffic/errors.hpp"

namespace hypertraffic {
namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

}  // namespace

Graph Graph::build(std::span<const Edge> edges, NodeId root, std::optional<std::size_t> node_count) {
    std::size_t n = 0;
    if (node_count) {
        n = *node_count;
    } else {
        for (const auto& e : edges) n = std::max<std::size_t>(n, std::max(e.u, e.v) + std::size_t{1});
        n = std::max<std::size_t>(n, std::size_t{root} + 1);
    }
    if (n == 0) throw InvalidArgument("graph must contain at least one node");
    if (root >= n) throw IndexOutOfRange("root " + std::to_string(root) + " out of range");
    if (n > std::numeric_limits<NodeId>::max() - 1) throw GraphTooLarge("node count exceeds 32-bit ids");

    std::vector<std::size_t> degree(n, 0);
    for (const auto& e : edges) {
        if (e.u >= n || e.v >= n)
            throw MalformedEdge("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                ") references a node outside [0," + std::to_string(n) + ")");
        if (e.u == e.v) throw MalformedEdge("self-loop at node " + std::to_string(e.u));
        ++degree[e.u];
        ++degree[e.v];
    }

    Graph g;
    g.root_ = root;
    g.offsets_.assign(n + 1, 0);
    std::partial_sum(degree.begin(), degree.end(), g.offsets_.begin() + 1);
    g.adjacency_.resize(g.offsets_[n]);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& e : edges) {
        g.adjacency_[cursor[e.u]++] = e.v;
        g.adjacency_[cursor[e.v]++] = e.u;
    }
    for (std::size_t v = 0; v < n; ++v) {
        auto first = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
        auto last = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
        std::sort(first, last);
        if (auto dup = std::adjacent_find(first, last); dup != last)
            throw MalformedEdge("duplicate edge (" + std::to_string(v) + "," + std::to_string(*dup) + ")");
    }

    g.depth_.assign(n, kUnreached);
    std::vector<NodeId> order;
    order.reserve(n);
    order.push_back(root);
    g.depth_[root] = 0;
    for (std::size_t head = 0; head < order.size(); ++head) {
        const NodeId u = order[head];
        for (NodeId w : g.neighbors(u)) {
            if (g.depth_[w] == kUnreached) {
                g.depth_[w] = g.depth_[u] + 1;
                order.push_back(w);
            }
        }
    }
    if (order.size() != n) {
        const auto missing = std::find(g.depth_.begin(), g.depth_.end(), kUnreached) - g.depth_.begin();
        throw DisconnectedGraph("node " + std::to_string(missing) + " is unreachable from root " +
                                std::to_string(root));
    }

    const std::uint32_t max_depth = g.depth_[order.back()];
    std::vector<std::size_t> layer_size(max_depth + 1, 0);
    for (auto d : g.depth_) ++layer_size[d];
    g.layer_offsets_.assign(max_depth + 2, 0);
    std::partial_sum(layer_size.begin(), layer_size.end(), g.layer_offsets_.begin() + 1);
    g.layered_.resize(n);
    std::vector<std::size_t> fill(g.layer_offsets_.begin(), g.layer_offsets_.end() - 1);
    for (NodeId v = 0; v < n; ++v) g.layered_[fill[g.depth_[v]]++] = v;
    return g;
}

std::vector<std::size_t> Graph::sphere_sizes() const {
    std::vector<std::size_t> sizes(layer_count());
    for (std::size_t t = 0; t < sizes.size(); ++t) sizes[t] = layer_offsets_[t + 1] - layer_offsets_[t];
    return sizes;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (NodeId u = 0; u < node_count(); ++u)
        for (NodeId v : neighbors(u))
            if (u < v) out.push_back({u, v});
    return out;
}

Graph canonical_relabel(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<NodeId> new_id(n, kUnreached);
    std::vector<NodeId> order;
    order.reserve(n);
    order.push_back(g.root());
    new_id[g.root()] = 0;
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (NodeId w : g.neighbors(order[head])) {
            if (new_id[w] == kUnreached) {
                new_id[w] = static_cast<NodeId>(order.size());
                order.push_back(w);
            }
        }
    }
    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (const auto& e : g.edges()) {
        const NodeId a = new_id[e.u], b = new_id[e.v];
        edges.push_back({std::min(a, b), std::max(a, b)});
    }
    std::sort(edges.begin(), edges.end());
    return Graph::build(edges, 0, n);
}

Graph truncate_ball(const Graph& g, std::uint32_t n, std::vector<NodeId>* kept) {
    std::vector<NodeId> new_id(g.node_count(), kUnreached);
    std::vector<NodeId> keep;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (g.depth(v) <= n) {
            new_id[v] = static_cast<NodeId>(keep.size());
            keep.push_back(v);
        }
    }
    std::vector<Edge> edges;
    for (const auto& e : g.edges())
        if (new_id[e.u] != kUnreached && new_id[e.v] != kUnreached) edges.push_back({new_id[e.u], new_id[e.v]});
    Graph out = Graph::build(edges, new_id[g.root()], keep.size());
    if (kept) *kept = std::move(keep);
    return out;
}

}  // namespace hypertraffic
