#include "hypertraffic/tessellation.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "hypertraffic/errors.hpp"

namespace hypertraffic {
namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

std::uint64_t key(NodeId a, NodeId b) { return (std::uint64_t{a} << 32) | b; }

// Boundary-driven face expansion. The patch is always a disk whose rim is a
// counter-clockwise cycle (next_/prev_). A rim vertex of degree d carries d-1
// faces, so it still misses q-d+1 faces, all of them in its outer gap. A rim
// vertex with degree q has exactly one face left, which must contain both of
// its rim edges; face walks therefore run along the rim through such vertices.
class Grower {
public:
    Grower(std::uint32_t p, std::uint32_t q, std::size_t cap) : p_(p), q_(q), cap_(cap) {
        for (std::uint32_t i = 0; i < p_; ++i) new_vertex();
        for (NodeId i = 0; i < p_; ++i) {
            const NodeId j = (i + 1) % p_;
            add_edge(i, j);
            next_[i] = j;
            prev_[j] = i;
        }
        std::vector<NodeId> first(p_);
        for (NodeId i = 0; i < p_; ++i) first[i] = i;
        faces_.push_back(std::move(first));
    }

    // Layer by layer: close every rim vertex at patch distance t (lowest
    // index first), re-measuring after each pass since closing faces can
    // shorten distances, until no rim vertex lies within distance t.
    void grow_until_ball(std::uint32_t depth) {
        for (std::uint32_t t = 0; t < depth; ++t) {
            for (;;) {
                const auto dist = distances();
                std::vector<NodeId> layer;
                for (NodeId v = 0; v < dist.size(); ++v)
                    if (on_rim_[v] && dist[v] <= t) layer.push_back(v);
                if (layer.empty()) break;
                for (NodeId v : layer)
                    if (on_rim_[v]) close_vertex(v);
            }
        }
    }

    TessellationPatch finish() && {
        TessellationPatch out;
        out.p = p_;
        out.q = q_;
        out.vertex_count = deg_.size();
        out.faces = std::move(faces_);
        NodeId start = 0;
        while (!on_rim_[start]) ++start;
        NodeId v = start;
        do {
            out.boundary.push_back(v);
            v = next_[v];
        } while (v != start);
        out.saturated.resize(deg_.size());
        for (std::size_t i = 0; i < deg_.size(); ++i) out.saturated[i] = !on_rim_[i];
        return out;
    }

private:
    NodeId new_vertex() {
        if (deg_.size() >= cap_)
            throw SizeOverflow("tessellation patch exceeds node cap " + std::to_string(cap_));
        deg_.push_back(0);
        on_rim_.push_back(true);
        next_.push_back(0);
        prev_.push_back(0);
        adj_.emplace_back();
        return static_cast<NodeId>(deg_.size() - 1);
    }

    void add_edge(NodeId a, NodeId b) {
        if (std::find(adj_[a].begin(), adj_[a].end(), b) != adj_[a].end())
            throw InvariantViolation("face expansion tried to duplicate edge (" + std::to_string(a) + "," +
                                     std::to_string(b) + ")");
        adj_[a].push_back(b);
        adj_[b].push_back(a);
        ++deg_[a];
        ++deg_[b];
        if (deg_[a] > q_ || deg_[b] > q_) throw InvariantViolation("face expansion exceeded vertex degree q");
    }

    // Walks from `from` along the rim in direction `step` while the vertices
    // have a single face left. Returns the swallowed vertices followed by the
    // stopping vertex.
    template <typename Step>
    std::vector<NodeId> rim_walk(NodeId origin, NodeId from, Step step) const {
        std::vector<NodeId> path{from};
        while (deg_[path.back()] == q_) {
            const NodeId u = step(path.back());
            if (u == origin) throw InvariantViolation("face walk wrapped around the whole rim");
            path.push_back(u);
        }
        return path;
    }

    // Attaches a chain of m fresh vertices from a to b (in rim order) and
    // returns them.
    std::vector<NodeId> bridge(NodeId a, NodeId b, std::ptrdiff_t m) {
        if (m < 0) throw InvariantViolation("face walk longer than p");
        std::vector<NodeId> fresh;
        NodeId last = a;
        for (std::ptrdiff_t i = 0; i < m; ++i) {
            const NodeId c = new_vertex();
            add_edge(last, c);
            next_[last] = c;
            prev_[c] = last;
            fresh.push_back(c);
            last = c;
        }
        add_edge(last, b);
        next_[last] = b;
        prev_[b] = last;
        return fresh;
    }

    void close_vertex(NodeId v) {
        while (on_rim_[v]) {
            if (deg_[v] < q_) {
                // Face on the prev side of v; v gains an edge.
                const auto back = rim_walk(v, prev_[v], [&](NodeId u) { return prev_[u]; });
                const NodeId w = back.back();
                const auto m = static_cast<std::ptrdiff_t>(p_) - static_cast<std::ptrdiff_t>(back.size()) - 1;
                for (std::size_t i = 0; i + 1 < back.size(); ++i) on_rim_[back[i]] = false;
                const auto fresh = bridge(w, v, m);
                std::vector<NodeId> face{v};
                face.insert(face.end(), back.begin(), back.end());
                face.insert(face.end(), fresh.begin(), fresh.end());
                faces_.push_back(std::move(face));
            } else {
                // Last face at v: uses both rim edges.
                const auto back = rim_walk(v, prev_[v], [&](NodeId u) { return prev_[u]; });
                const auto fwd = rim_walk(v, next_[v], [&](NodeId u) { return next_[u]; });
                const NodeId w1 = back.back();
                const NodeId w2 = fwd.back();
                if (w1 == w2 || std::find(back.begin(), back.end(), fwd.back()) != back.end())
                    throw InvariantViolation("final face at a vertex closes the whole patch");
                const auto m = static_cast<std::ptrdiff_t>(p_) -
                               static_cast<std::ptrdiff_t>(back.size() + fwd.size()) - 1;
                on_rim_[v] = false;
                for (std::size_t i = 0; i + 1 < back.size(); ++i) on_rim_[back[i]] = false;
                for (std::size_t i = 0; i + 1 < fwd.size(); ++i) on_rim_[fwd[i]] = false;
                const auto fresh = bridge(w1, w2, m);
                std::vector<NodeId> face(fwd.rbegin(), fwd.rend());
                face.push_back(v);
                face.insert(face.end(), back.begin(), back.end());
                face.insert(face.end(), fresh.begin(), fresh.end());
                faces_.push_back(std::move(face));
            }
        }
    }

    std::vector<std::uint32_t> distances() const {
        std::vector<std::uint32_t> dist(deg_.size(), kUnreached);
        std::vector<NodeId> queue{0};
        dist[0] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const NodeId u = queue[head];
            for (NodeId w : adj_[u]) {
                if (dist[w] == kUnreached) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        return dist;
    }

    std::uint32_t p_;
    std::uint32_t q_;
    std::size_t cap_;
    std::vector<std::uint32_t> deg_;
    std::vector<bool> on_rim_;
    std::vector<NodeId> next_;
    std::vector<NodeId> prev_;
    std::vector<std::vector<NodeId>> adj_;
    std::vector<std::vector<NodeId>> faces_;
};

}  // namespace

TessellationPatch grow_tessellation(std::uint32_t p, std::uint32_t q, std::uint32_t depth, std::size_t cap) {
    if (p < 3 || q < 3 || (p - 2) * (q - 2) <= 4)
        throw NotHyperbolic("{" + std::to_string(p) + "," + std::to_string(q) +
                            "} is not hyperbolic: need (p-2)(q-2) > 4");
    Grower grower(p, q, cap);
    grower.grow_until_ball(depth);
    return std::move(grower).finish();
}

std::vector<Edge> TessellationPatch::edges() const {
    std::vector<Edge> out;
    for (const auto& f : faces)
        for (std::size_t i = 0; i < f.size(); ++i) {
            const NodeId a = f[i], b = f[(i + 1) % f.size()];
            out.push_back({std::min(a, b), std::max(a, b)});
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

TessellationMap TessellationPatch::half_edge_map() const {
    TessellationMap map;
    auto push_cycle = [&](const std::vector<NodeId>& cycle, std::int64_t face_id) {
        const std::size_t base = map.origin.size();
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            map.origin.push_back(cycle[i]);
            map.next.push_back(base + (i + 1) % cycle.size());
            map.face.push_back(face_id);
        }
    };
    for (std::size_t f = 0; f < faces.size(); ++f) {
        push_cycle(faces[f], static_cast<std::int64_t>(f));
        map.face_closed.push_back(true);
    }
    std::vector<NodeId> outer(boundary.rbegin(), boundary.rend());
    push_cycle(outer, TessellationMap::kOuterFace);

    std::unordered_map<std::uint64_t, std::size_t> by_key;
    by_key.reserve(map.origin.size());
    for (std::size_t h = 0; h < map.origin.size(); ++h) {
        const NodeId a = map.origin[h], b = map.origin[map.next[h]];
        if (!by_key.emplace(key(a, b), h).second)
            throw InvariantViolation("half-edge (" + std::to_string(a) + "," + std::to_string(b) +
                                     ") appears twice");
    }
    map.twin.resize(map.origin.size());
    for (std::size_t h = 0; h < map.origin.size(); ++h) {
        const NodeId a = map.origin[h], b = map.origin[map.next[h]];
        auto it = by_key.find(key(b, a));
        if (it == by_key.end())
            throw InvariantViolation("half-edge (" + std::to_string(a) + "," + std::to_string(b) +
                                     ") has no twin");
        map.twin[h] = it->second;
    }
    map.degree.assign(vertex_count, 0);
    for (NodeId o : map.origin) ++map.degree[o];
    return map;
}

std::vector<std::string> TessellationPatch::audit() const {
    std::vector<std::string> problems;
    TessellationMap map;
    try {
        map = half_edge_map();
    } catch (const Error& e) {
        problems.emplace_back(e.what());
        return problems;
    }
    for (std::size_t h = 0; h < map.twin.size(); ++h)
        if (map.twin[map.twin[h]] != h) problems.push_back("twin is not an involution at " + std::to_string(h));
    for (std::size_t f = 0; f < faces.size(); ++f)
        if (faces[f].size() != p)
            problems.push_back("face " + std::to_string(f) + " has " + std::to_string(faces[f].size()) + " sides");
    for (std::size_t h = 0; h < map.next.size(); ++h) {
        if (map.face[h] == TessellationMap::kOuterFace) continue;
        std::size_t g = h, steps = 0;
        do {
            g = map.next[g];
            ++steps;
        } while (g != h && steps <= p);
        if (steps > p) problems.push_back("next cycle longer than p at half-edge " + std::to_string(h));
    }

    std::vector<std::uint32_t> face_count(vertex_count, 0);
    for (const auto& f : faces)
        for (NodeId v : f) ++face_count[v];
    for (NodeId v = 0; v < vertex_count; ++v) {
        const auto d = map.degree[v];
        if (d > q) problems.push_back("vertex " + std::to_string(v) + " has degree " + std::to_string(d));
        if (saturated[v] && (d != q || face_count[v] != q))
            problems.push_back("interior vertex " + std::to_string(v) + " is not saturated");
        if (!saturated[v] && face_count[v] + 1 != d)
            problems.push_back("rim vertex " + std::to_string(v) + " has inconsistent face count");
    }

    const auto e = static_cast<std::int64_t>(map.origin.size() / 2);
    const auto chi = static_cast<std::int64_t>(vertex_count) - e + static_cast<std::int64_t>(faces.size());
    if (chi != 1) problems.push_back("Euler characteristic " + std::to_string(chi) + ", disk needs 1");
    return problems;
}

}  // namespace hypertraffic
