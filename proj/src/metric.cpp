#include "hypertraffic/metric.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>

#include "hypertraffic/errors.hpp"

namespace hypertraffic {
namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

void check_node(const Graph& g, NodeId v) {
    if (v >= g.node_count())
        throw IndexOutOfRange("node " + std::to_string(v) + " out of range [0," +
                              std::to_string(g.node_count()) + ")");
}

void bfs_into(const Graph& g, NodeId source, std::uint32_t* dist, std::vector<NodeId>& queue) {
    std::fill(dist, dist + g.node_count(), kUnreached);
    queue.clear();
    queue.push_back(source);
    dist[source] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId u = queue[head];
        for (NodeId w : g.neighbors(u)) {
            if (dist[w] == kUnreached) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
}

}  // namespace

DistanceRow distances_from(const Graph& g, NodeId source) {
    check_node(g, source);
    DistanceRow row{source, std::vector<std::uint32_t>(g.node_count())};
    std::vector<NodeId> queue;
    queue.reserve(g.node_count());
    bfs_into(g, source, row.dist.data(), queue);
    return row;
}

DistanceTable::DistanceTable(const Graph& g) : n_(g.node_count()), d_(n_ * n_) {
#pragma omp parallel
    {
        std::vector<NodeId> queue;
        queue.reserve(n_);
#pragma omp for schedule(static)
        for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(n_); ++s)
            bfs_into(g, static_cast<NodeId>(s), d_.data() + static_cast<std::size_t>(s) * n_, queue);
    }
}

HalfInteger gromov_product(const DistanceTable& d, NodeId y, NodeId z, NodeId base) {
    const std::uint64_t twice = std::uint64_t{d(base, y)} + d(base, z) - d(y, z);
    return HalfInteger::from_twice(twice);
}

HalfInteger gromov_product(const Graph& g, NodeId y, NodeId z, NodeId base) {
    check_node(g, y);
    check_node(g, z);
    const auto from_base = distances_from(g, base);
    const auto from_y = distances_from(g, y);
    return HalfInteger::from_twice(std::uint64_t{from_base.dist[y]} + from_base.dist[z] - from_y.dist[z]);
}

HalfInteger four_point_delta(const Graph& g, std::size_t cap) {
    const std::size_t n = g.node_count();
    if (n > cap)
        throw GraphTooLarge("four-point delta needs <= " + std::to_string(cap) + " nodes, graph has " +
                            std::to_string(n));
    const DistanceTable d(g);
    std::uint64_t best = 0;
    const auto ni = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic) reduction(max : best)
    for (std::ptrdiff_t xi = 0; xi < ni; ++xi) {
        const auto x = static_cast<NodeId>(xi);
        for (NodeId y = x + 1; y < n; ++y)
            for (NodeId z = y + 1; z < n; ++z)
                for (NodeId w = z + 1; w < n; ++w) {
                    std::array<std::uint64_t, 3> s{std::uint64_t{d(x, y)} + d(z, w),
                                                   std::uint64_t{d(x, z)} + d(y, w),
                                                   std::uint64_t{d(x, w)} + d(y, z)};
                    std::sort(s.begin(), s.end());
                    best = std::max(best, s[2] - s[1]);
                }
    }
    // (largest - second largest) / 2, kept as a half-integer.
    return HalfInteger::from_twice(best);
}

double slim_delta_exact(const Graph& g, std::size_t cap) {
    const std::size_t n = g.node_count();
    if (n > cap)
        throw GraphTooLarge("slim delta needs <= " + std::to_string(cap) + " nodes, graph has " +
                            std::to_string(n));
    const DistanceTable d(g);
    const std::vector<Edge> edges = g.edges();
    // Points of a side that can be farthest from the other two sides: the
    // vertices and the edge midpoints. Points 0..n-1 are vertices, n+e is the
    // midpoint of edges[e]. All lengths below are doubled.
    const std::size_t points = n + edges.size();
    auto twice_dist = [&](std::size_t p, NodeId w) -> std::uint32_t {
        if (p < n) return 2 * d(static_cast<NodeId>(p), w);
        const Edge& e = edges[p - n];
        return 2 * std::min(d(e.u, w), d(e.v, w)) + 1;
    };

    std::vector<NodeId> by_dist(n * n);
    for (NodeId a = 0; a < n; ++a) {
        auto* row = by_dist.data() + std::size_t{a} * n;
        for (NodeId v = 0; v < n; ++v) row[v] = v;
        std::stable_sort(row, row + n, [&](NodeId l, NodeId r) { return d(a, l) < d(a, r); });
    }

    // far[(p*n + a)*n + u]: over all geodesics a->u, the largest possible
    // distance from point p to the geodesic. A geodesic through the edge
    // holding a midpoint p contains p. Geodesic choices for distinct triangle
    // sides are independent, so the worst triangle combines maxima.
    std::vector<std::uint32_t> far(points * n * n);
    const auto np = static_cast<std::ptrdiff_t>(points);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t pi = 0; pi < np; ++pi) {
        const auto p = static_cast<std::size_t>(pi);
        const bool midpoint = p >= n;
        for (NodeId a = 0; a < n; ++a) {
            auto* best = far.data() + (p * n + a) * n;
            const auto* order = by_dist.data() + std::size_t{a} * n;
            for (std::size_t i = 0; i < n; ++i) {
                const NodeId u = order[i];
                if (u == a) {
                    best[u] = twice_dist(p, a);
                    continue;
                }
                std::uint32_t via = 0;
                for (NodeId w : g.neighbors(u)) {
                    if (d(a, w) + 1 != d(a, u)) continue;
                    const bool crosses = midpoint && Edge{std::min(u, w), std::max(u, w)} == edges[p - n];
                    via = std::max(via, crosses ? 0u : best[w]);
                }
                best[u] = std::min(twice_dist(p, u), via);
            }
        }
    }

    auto on_side = [&](std::size_t p, NodeId x, NodeId y) {
        if (p < n) return d(x, static_cast<NodeId>(p)) + d(static_cast<NodeId>(p), y) == d(x, y);
        const Edge& e = edges[p - n];
        return d(x, e.u) + 1 + d(e.v, y) == d(x, y) || d(x, e.v) + 1 + d(e.u, y) == d(x, y);
    };

    std::uint32_t delta = 0;
    const auto ni = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic) reduction(max : delta)
    for (std::ptrdiff_t xi = 0; xi < ni; ++xi) {
        const auto x = static_cast<NodeId>(xi);
        for (NodeId y = 0; y < n; ++y) {
            for (std::size_t p = 0; p < points; ++p) {
                if (!on_side(p, x, y)) continue;
                const auto* from_y = far.data() + (p * n + y) * n;
                const auto* from_x = far.data() + (p * n + x) * n;
                for (NodeId z = 0; z < n; ++z) delta = std::max(delta, std::min(from_y[z], from_x[z]));
            }
        }
    }
    return static_cast<double>(delta) / 2.0;
}

}  // namespace hypertraffic
