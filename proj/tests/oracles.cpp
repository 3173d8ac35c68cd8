#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <queue>

namespace oracle {

SimpleGraph from_edges(std::size_t n, const std::vector<Edge>& edges, NodeId root) {
    SimpleGraph g{n, root, std::vector<std::vector<NodeId>>(n)};
    for (const auto& e : edges) {
        g.adj[e.u].push_back(e.v);
        g.adj[e.v].push_back(e.u);
    }
    return g;
}

SimpleGraph from_graph(const hypertraffic::Graph& g) {
    return from_edges(g.node_count(), g.edges(), g.root());
}

std::vector<std::vector<std::uint32_t>> floyd_warshall(const SimpleGraph& g) {
    std::vector<std::vector<std::uint32_t>> d(g.n, std::vector<std::uint32_t>(g.n, kInf));
    for (std::size_t v = 0; v < g.n; ++v) {
        d[v][v] = 0;
        for (NodeId w : g.adj[v]) d[v][w] = 1;
    }
    for (std::size_t k = 0; k < g.n; ++k)
        for (std::size_t i = 0; i < g.n; ++i)
            for (std::size_t j = 0; j < g.n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

SimpleGraph induced_ball(const SimpleGraph& g, std::uint32_t n, std::vector<NodeId>& kept) {
    const auto d = floyd_warshall(g);
    kept.clear();
    std::vector<NodeId> index(g.n, kInf);
    for (NodeId v = 0; v < g.n; ++v)
        if (d[g.root][v] <= n) {
            index[v] = static_cast<NodeId>(kept.size());
            kept.push_back(v);
        }
    SimpleGraph b{kept.size(), index[g.root], std::vector<std::vector<NodeId>>(kept.size())};
    for (NodeId v : kept)
        for (NodeId w : g.adj[v])
            if (index[w] != kInf) b.adj[index[v]].push_back(index[w]);
    return b;
}

namespace {

void extend(const SimpleGraph& g, const std::vector<std::vector<std::uint32_t>>& d, NodeId y,
            std::vector<NodeId>& path, std::vector<std::vector<NodeId>>& out) {
    const NodeId v = path.back();
    if (v == y) {
        out.push_back(path);
        return;
    }
    for (NodeId w : g.adj[v])
        if (d[w][y] + 1 == d[v][y]) {
            path.push_back(w);
            extend(g, d, y, path, out);
            path.pop_back();
        }
}

}  // namespace

std::vector<std::vector<NodeId>> all_geodesics(const SimpleGraph& g,
                                               const std::vector<std::vector<std::uint32_t>>& d, NodeId x,
                                               NodeId y) {
    std::vector<std::vector<NodeId>> out;
    if (d[x][y] >= kInf) return out;
    std::vector<NodeId> path{x};
    extend(g, d, y, path, out);
    return out;
}

TrafficOracle exhaustive_traffic(const SimpleGraph& g, const hypertraffic::RateFunction& f, std::uint32_t n,
                                 bool include_endpoints) {
    const SimpleGraph& b = g;
    const auto d = floyd_warshall(b);
    std::vector<NodeId> boundary;
    for (NodeId v = 0; v < b.n; ++v)
        if (d[b.root][v] == n) boundary.push_back(v);

    TrafficOracle out;
    out.ball.assign(n + 1, 0.0);
    out.loads.assign(g.n, 0.0);
    std::vector<long double> ball(n + 1, 0.0L);
    long double total = 0.0L;
    std::vector<long double> loads(b.n, 0.0L);
    for (NodeId x : boundary)
        for (NodeId y : boundary) {
            const auto paths = all_geodesics(b, d, x, y);
            const long double rate = f(d[x][y]);
            std::uint32_t h = kInf;
            for (const auto& path : paths) {
                for (NodeId w : path) h = std::min(h, d[b.root][w]);
                for (std::size_t i = 1; i + 1 < path.size(); ++i)
                    loads[path[i]] += rate / static_cast<long double>(paths.size());
            }
            if (include_endpoints && x != y) {
                loads[x] += rate;
                loads[y] += rate;
            }
            total += rate;
            for (std::uint32_t r = h; r <= n; ++r) ball[r] += rate;
        }
    out.total = static_cast<double>(total);
    for (std::uint32_t r = 0; r <= n; ++r) out.ball[r] = static_cast<double>(ball[r]);
    for (NodeId v = 0; v < b.n; ++v) out.loads[v] = static_cast<double>(loads[v]);
    return out;
}

double slim_delta(const SimpleGraph& g) {
    // Subdivide every edge; paths between original vertices keep their shape
    // and every point at half-integer position becomes a vertex.
    std::vector<Edge> sub_edges;
    std::map<std::pair<NodeId, NodeId>, NodeId> midpoint;
    NodeId next = static_cast<NodeId>(g.n);
    for (NodeId v = 0; v < g.n; ++v)
        for (NodeId w : g.adj[v])
            if (v < w) {
                midpoint[{v, w}] = next;
                sub_edges.push_back({v, next});
                sub_edges.push_back({w, next});
                ++next;
            }
    const SimpleGraph sub = from_edges(next, sub_edges, 0);
    const auto sd = floyd_warshall(sub);
    const auto d = floyd_warshall(g);

    auto expand = [&](const std::vector<NodeId>& path) {
        std::vector<NodeId> pts{path.front()};
        for (std::size_t i = 1; i < path.size(); ++i) {
            pts.push_back(midpoint.at({std::min(path[i - 1], path[i]), std::max(path[i - 1], path[i])}));
            pts.push_back(path[i]);
        }
        return pts;
    };
    std::vector<std::vector<std::vector<std::vector<NodeId>>>> geo(g.n, std::vector<std::vector<std::vector<NodeId>>>(g.n));
    for (NodeId a = 0; a < g.n; ++a)
        for (NodeId c = 0; c < g.n; ++c)
            for (const auto& path : all_geodesics(g, d, a, c)) geo[a][c].push_back(expand(path));

    std::uint32_t delta = 0;  // in half units
    for (NodeId x = 0; x < g.n; ++x)
        for (NodeId y = 0; y < g.n; ++y)
            for (NodeId z = 0; z < g.n; ++z)
                for (const auto& xy : geo[x][y])
                    for (const auto& yz : geo[y][z])
                        for (const auto& zx : geo[z][x])
                            for (NodeId p : xy) {
                                std::uint32_t best = kInf;
                                for (NodeId w : yz) best = std::min(best, sd[p][w]);
                                for (NodeId w : zx) best = std::min(best, sd[p][w]);
                                delta = std::max(delta, best);
                            }
    return delta / 2.0;
}

std::uint64_t four_point_twice(const SimpleGraph& g) {
    const auto d = floyd_warshall(g);
    std::uint64_t best = 0;
    for (NodeId x = 0; x < g.n; ++x)
        for (NodeId y = 0; y < g.n; ++y)
            for (NodeId z = 0; z < g.n; ++z)
                for (NodeId w = 0; w < g.n; ++w) {
                    std::uint64_t s[3] = {d[x][y] + d[z][w], d[x][z] + d[y][w], d[x][w] + d[y][z]};
                    std::sort(s, s + 3);
                    best = std::max(best, s[2] - s[1]);
                }
    return best;
}

std::vector<std::size_t> disk_sphere_sizes(std::uint32_t p, std::uint32_t q, std::uint32_t depth) {
    using C = std::complex<double>;
    struct Mobius {
        C a, b, c, d;
        Mobius operator*(const Mobius& o) const {
            return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
        }
        C at_origin() const { return b / d; }
    };
    const double pi = std::numbers::pi;
    const double half_edge = std::acosh(std::cos(pi / p) / std::sin(pi / q));
    const double m = std::tanh(half_edge / 2.0);
    auto translate = [](C a) { return Mobius{1.0, a, std::conj(a), 1.0}; };
    auto rotate = [](double t) { return Mobius{std::polar(1.0, t / 2), 0.0, 0.0, std::polar(1.0, -t / 2)}; };
    // Half-turn about the midpoint of the edge leaving the origin along the real axis.
    const Mobius half_turn = translate(m) * rotate(pi) * translate(-m);

    auto key = [](C z) { return std::pair{std::llround(z.real() * 1e7), std::llround(z.imag() * 1e7)}; };
    std::map<std::pair<long long, long long>, bool> seen{{key(0.0), true}};
    std::vector<Mobius> maps{Mobius{1.0, 0.0, 0.0, 1.0}};
    std::vector<std::uint32_t> level{0};
    std::vector<std::size_t> sizes(depth + 1, 0);
    for (std::size_t head = 0; head < maps.size(); ++head) {
        ++sizes[level[head]];
        if (level[head] == depth) continue;
        for (std::uint32_t j = 0; j < q; ++j) {
            const Mobius next = maps[head] * rotate(2.0 * pi * j / q) * half_turn;
            if (!seen.emplace(key(next.at_origin()), true).second) continue;
            maps.push_back(next);
            level.push_back(level[head] + 1);
        }
    }
    return sizes;
}

TreeOracle tree_pairs(std::uint32_t k, double beta, std::uint32_t n) {
    // Leaf x fixed (all leaves are equivalent); the partner y shares exactly the
    // first j ancestors of x below the root, so d = 2(n - j).
    TreeOracle out;
    long double per_leaf = 0.0L, root_per_leaf = 0.0L;
    for (std::uint32_t j = 0; j <= n; ++j) {
        long double partners;
        if (j == n) {
            partners = 1.0L;
        } else {
            partners = static_cast<long double>(k - 1) * std::pow(static_cast<long double>(k), n - j - 1);
        }
        const long double rate = std::pow(static_cast<long double>(beta), -2.0L * (n - j));
        per_leaf += partners * rate;
        if (j == 0 && n > 0) root_per_leaf += partners * rate;
    }
    const long double leaves = std::pow(static_cast<long double>(k), n);
    out.total = static_cast<double>(leaves * per_leaf);
    out.root_load = static_cast<double>(leaves * root_per_leaf);
    return out;
}

SimpleGraph cycle(std::size_t len) {
    std::vector<Edge> edges;
    for (NodeId i = 0; i < len; ++i) edges.push_back({i, static_cast<NodeId>((i + 1) % len)});
    return from_edges(len, edges, 0);
}

SimpleGraph diamond() {
    return from_edges(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, 0);
}

SimpleGraph kite() {
    return from_edges(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 2}}, 0);
}

}  // namespace oracle
