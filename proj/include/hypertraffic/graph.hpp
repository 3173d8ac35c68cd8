#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hypertraffic {

using NodeId = std::uint32_t;

struct Edge {
    NodeId u;
    NodeId v;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable, connected, simple undirected graph with a distinguished root.
///
/// Adjacency is stored in CSR form with every neighbor list sorted ascending,
/// so all iteration is deterministic. BFS depths from the root and the sphere
/// decomposition (layers) are computed once at construction; the ball X_n is
/// layers 0..n and its boundary is layer n.
class Graph {
public:
    /// Validates and builds. `node_count` defaults to one more than the
    /// largest index mentioned (1 for an empty edge list).
    /// Throws MalformedEdge, IndexOutOfRange or DisconnectedGraph.
    static Graph build(std::span<const Edge> edges, NodeId root,
                       std::optional<std::size_t> node_count = std::nullopt);

    std::size_t node_count() const noexcept { return depth_.size(); }
    std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }
    NodeId root() const noexcept { return root_; }

    std::span<const NodeId> neighbors(NodeId v) const noexcept {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

    std::uint32_t depth(NodeId v) const noexcept { return depth_[v]; }
    std::span<const std::uint32_t> depths() const noexcept { return depth_; }
    std::uint32_t max_depth() const noexcept {
        return static_cast<std::uint32_t>(layer_offsets_.size() - 2);
    }

    /// Sphere {x : d(root, x) = t}, nodes ascending.
    std::span<const NodeId> layer(std::uint32_t t) const noexcept {
        return {layered_.data() + layer_offsets_[t], layered_.data() + layer_offsets_[t + 1]};
    }
    std::size_t layer_count() const noexcept { return layer_offsets_.size() - 1; }
    std::vector<std::size_t> sphere_sizes() const;

    /// Canonical edge list: u < v, sorted lexicographically.
    std::vector<Edge> edges() const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.root_ == b.root_ && a.offsets_ == b.offsets_ && a.adjacency_ == b.adjacency_;
    }

private:
    Graph() = default;

    NodeId root_ = 0;
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> adjacency_;
    std::vector<std::uint32_t> depth_;
    std::vector<NodeId> layered_;
    std::vector<std::size_t> layer_offsets_;
};

/// Renumbers nodes in BFS order from the root, scanning neighbors in ascending
/// index order. The root becomes node 0.
Graph canonical_relabel(const Graph& g);

/// Induced subgraph on {v : depth(v) <= n}. Relative node order is kept;
/// `kept` (if given) receives the original index of every new node.
Graph truncate_ball(const Graph& g, std::uint32_t n, std::vector<NodeId>* kept = nullptr);

}  // namespace hypertraffic
