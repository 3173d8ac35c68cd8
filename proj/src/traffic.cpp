#include "hypertraffic/traffic.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "hypertraffic/errors.hpp"
#include "hypertraffic/summation.hpp"

namespace hypertraffic {
namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

// Sources per block in the parallel kernels. Blocks are reduced in ascending
// order, so results depend on this constant but never on the thread count.
constexpr std::size_t kBlock = 32;
constexpr std::size_t kBlocksPerWave = 16;

using BigCount = boost::multiprecision::cpp_int;

inline void accumulate(std::uint64_t& into, const std::uint64_t& add, bool& overflow) {
    if (into > std::numeric_limits<std::uint64_t>::max() - add) {
        into = std::numeric_limits<std::uint64_t>::max();
        overflow = true;
    } else {
        into += add;
    }
}
inline void accumulate(BigCount& into, const BigCount& add, bool&) { into += add; }

inline double to_double(std::uint64_t c) { return static_cast<double>(c); }
inline double to_double(const BigCount& c) { return c.convert_to<double>(); }

// Reusable BFS state for one source.
template <typename Count>
struct Workspace {
    std::vector<std::uint32_t> dist;
    std::vector<std::uint32_t> mindepth;
    std::vector<Count> sigma;
    std::vector<NodeId> order;
    std::vector<double> delta;
    bool overflow = false;

    explicit Workspace(std::size_t n) : dist(n, kUnreached), mindepth(n, 0) { order.reserve(n); }

    // BFS from s; nodes farther than `limit` are left unexplored.
    void run(const Graph& g, NodeId s, bool with_sigma, std::uint32_t limit = kUnreached) {
        for (NodeId v : order) dist[v] = kUnreached;
        order.clear();
        if (with_sigma && sigma.size() != dist.size()) sigma.assign(dist.size(), Count{0});
        overflow = false;

        dist[s] = 0;
        mindepth[s] = g.depth(s);
        if (with_sigma) sigma[s] = 1;
        order.push_back(s);
        for (std::size_t head = 0; head < order.size(); ++head) {
            const NodeId u = order[head];
            if (dist[u] >= limit) continue;
            for (NodeId w : g.neighbors(u)) {
                if (dist[w] == kUnreached) {
                    dist[w] = dist[u] + 1;
                    mindepth[w] = g.depth(w);
                    if (with_sigma) sigma[w] = 0;
                    order.push_back(w);
                }
                if (dist[w] == dist[u] + 1) {
                    mindepth[w] = std::min(mindepth[w], mindepth[u]);
                    if (with_sigma) accumulate(sigma[w], sigma[u], overflow);
                }
            }
        }
    }

    // Brandes-style dependency of every node on source s, where a target v
    // on the boundary layer n (v != s) carries weight rates[d(s,v)].
    void dependencies(const Graph& g, std::uint32_t n, const std::vector<double>& rates) {
        if (delta.size() != dist.size()) delta.assign(dist.size(), 0.0);
        for (NodeId v : order) delta[v] = 0.0;
        const NodeId s = order.front();
        for (std::size_t i = order.size(); i-- > 1;) {
            const NodeId v = order[i];
            const double weight = (g.depth(v) == n && v != s) ? rates[dist[v]] : 0.0;
            const double per_path = (weight + delta[v]) / to_double(sigma[v]);
            for (NodeId u : g.neighbors(v))
                if (dist[u] + 1 == dist[v]) delta[u] += to_double(sigma[u]) * per_path;
        }
    }
};

// Geodesics run in the whole graph; boundary pairs are at most 2n apart,
// so every source's search stops there.
void require_boundary(const Graph& g, std::uint32_t n) {
    if (g.node_count() == 0 || n > g.max_depth())
        throw EmptyBoundary("boundary layer " + std::to_string(n) + " is empty (graph depth " +
                            std::to_string(g.max_depth()) + ")");
}

int thread_count(const EngineOptions& opts) { return opts.threads > 0 ? opts.threads : omp_get_max_threads(); }

PairProfile empty_profile(std::uint32_t n, std::size_t boundary) {
    PairProfile p;
    p.n = n;
    p.max_distance = 2 * n;
    p.boundary_size = boundary;
    p.counts.assign(std::size_t{n + 1} * (p.max_distance + 1), 0);
    return p;
}

void census(const Graph& g, std::uint32_t n, const Workspace<std::uint64_t>& ws, PairProfile& into) {
    const auto stride = std::size_t{into.max_distance} + 1;
    for (NodeId y : g.layer(n)) ++into.counts[std::size_t{ws.mindepth[y]} * stride + ws.dist[y]];
}

// Adds one source's contribution to per-node accumulators.
template <typename Count, typename Acc>
void add_source_loads(const Graph& g, std::uint32_t n, const std::vector<double>& rates, Workspace<Count>& ws,
                      bool include_endpoints, Acc& acc) {
    const NodeId s = ws.order.front();
    ws.dependencies(g, n, rates);
    for (NodeId v : ws.order)
        if (v != s) acc[v].add(ws.delta[v]);
    if (include_endpoints) {
        CompensatedSum outgoing;
        for (NodeId y : g.layer(n)) {
            if (y == s) continue;
            const double rate = rates[ws.dist[y]];
            outgoing.add(rate);
            acc[y].add(rate);
        }
        acc[s].add(outgoing.value());
    }
}

template <typename Count>
std::vector<double> parallel_loads(const Graph& g, std::uint32_t n, const std::vector<double>& rates,
                                   const EngineOptions& opts) {
    const auto sources = g.layer(n);
    const std::size_t nodes = g.node_count();
    const std::size_t blocks = (sources.size() + kBlock - 1) / kBlock;
    std::vector<CompensatedSum> total(nodes);
    std::vector<std::vector<CompensatedSum>> partial(std::min(blocks, kBlocksPerWave));
    std::atomic<bool> overflow{false};

    for (std::size_t wave = 0; wave < blocks; wave += kBlocksPerWave) {
        const auto wave_blocks = static_cast<std::ptrdiff_t>(std::min(kBlocksPerWave, blocks - wave));
#pragma omp parallel num_threads(thread_count(opts))
        {
            Workspace<Count> ws(nodes);
#pragma omp for schedule(dynamic)
            for (std::ptrdiff_t b = 0; b < wave_blocks; ++b) {
                auto& acc = partial[static_cast<std::size_t>(b)];
                acc.assign(nodes, CompensatedSum{});
                const std::size_t first = (wave + static_cast<std::size_t>(b)) * kBlock;
                const std::size_t last = std::min(first + kBlock, sources.size());
                for (std::size_t i = first; i < last; ++i) {
                    ws.run(g, sources[i], true, 2 * n);
                    if (ws.overflow) overflow = true;
                    add_source_loads(g, n, rates, ws, opts.include_endpoints, acc);
                }
            }
        }
        for (std::ptrdiff_t b = 0; b < wave_blocks; ++b)
            for (std::size_t v = 0; v < nodes; ++v) total[v].add(partial[static_cast<std::size_t>(b)][v].value());
    }
    if (overflow)
        throw SigmaOverflow("geodesic counts exceed 64 bits; rerun with exact (big-integer) sigma");
    std::vector<double> out(nodes);
    for (std::size_t v = 0; v < nodes; ++v) out[v] = total[v].value();
    return out;
}

template <typename Count>
std::vector<double> serial_loads(const Graph& g, std::uint32_t n, const std::vector<double>& rates,
                                 const EngineOptions& opts) {
    const std::size_t nodes = g.node_count();
    std::vector<CompensatedSum> total(nodes);
    Workspace<Count> ws(nodes);
    for (NodeId s : g.layer(n)) {
        ws.run(g, s, true, 2 * n);
        if (ws.overflow)
            throw SigmaOverflow("geodesic counts exceed 64 bits; rerun with exact (big-integer) sigma");
        add_source_loads(g, n, rates, ws, opts.include_endpoints, total);
    }
    std::vector<double> out(nodes);
    for (std::size_t v = 0; v < nodes; ++v) out[v] = total[v].value();
    return out;
}

}  // namespace

GeodesicField geodesic_field(const Graph& g, NodeId source) {
    if (source >= g.node_count()) throw IndexOutOfRange("source " + std::to_string(source) + " out of range");
    Workspace<std::uint64_t> ws(g.node_count());
    ws.run(g, source, true);
    GeodesicField field;
    field.source = source;
    field.dist = DistanceRow{source, std::move(ws.dist)};
    field.sigma = std::move(ws.sigma);
    field.sigma_overflow = ws.overflow;
    field.mindepth = std::move(ws.mindepth);
    field.order = std::move(ws.order);
    return field;
}

std::uint32_t pair_h(const GeodesicField& field, NodeId y) {
    if (y >= field.mindepth.size()) throw IndexOutOfRange("node " + std::to_string(y) + " out of range");
    return field.mindepth[y];
}

PairProfile pair_profile(const Graph& g, std::uint32_t n, const EngineOptions& opts) {
    require_boundary(g, n);
        const auto sources = g.layer(n);
    const std::size_t blocks = (sources.size() + kBlock - 1) / kBlock;
    std::vector<PairProfile> partial(blocks, empty_profile(n, sources.size()));

#pragma omp parallel num_threads(thread_count(opts))
    {
        Workspace<std::uint64_t> ws(g.node_count());
#pragma omp for schedule(dynamic)
        for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(blocks); ++k) {
            const std::size_t first = static_cast<std::size_t>(k) * kBlock;
            const std::size_t last = std::min(first + kBlock, sources.size());
            for (std::size_t i = first; i < last; ++i) {
                ws.run(g, sources[i], false, 2 * n);
                census(g, n, ws, partial[static_cast<std::size_t>(k)]);
            }
        }
    }
    PairProfile out = empty_profile(n, sources.size());
    for (const auto& p : partial)
        for (std::size_t i = 0; i < out.counts.size(); ++i) out.counts[i] += p.counts[i];
    return out;
}

TrafficReport evaluate(const PairProfile& profile, const RateFunction& f) {
    const auto rates = f.lookup(profile.max_distance);
    TrafficReport report;
    report.n = profile.n;
    report.rate = f;
    report.h_histogram.resize(std::size_t{profile.n} + 1);
    report.ball.resize(std::size_t{profile.n} + 1);

    CompensatedSum running;
    double previous = 0.0;
    for (std::uint32_t h = 0; h <= profile.n; ++h) {
        CompensatedSum mass;
        std::uint64_t pairs = 0;
        for (std::uint32_t d = 0; d <= profile.max_distance; ++d) {
            const auto c = profile.count(h, d);
            pairs += c;
            if (c != 0) mass.add(static_cast<double>(c) * rates[d]);
        }
        report.h_histogram[h] = {pairs, mass.value()};
        running.add(mass.value());
        // Masses are non-negative; the max only guards rounding in the
        // carry term so that T_r stays non-decreasing.
        previous = std::max(previous, running.value());
        report.ball[h] = previous;
    }
    report.total = report.ball.back();
    return report;
}

TrafficReport traffic_totals(const Graph& g, const RateFunction& f, std::uint32_t n, const EngineOptions& opts) {
    return evaluate(pair_profile(g, n, opts), f);
}

std::vector<double> node_loads(const Graph& g, const RateFunction& f, std::uint32_t n, const EngineOptions& opts) {
    require_boundary(g, n);
    const auto rates = f.lookup(2 * n);
    return opts.exact_sigma ? parallel_loads<BigCount>(g, n, rates, opts)
                            : parallel_loads<std::uint64_t>(g, n, rates, opts);
}

std::uint32_t core_radius(const TrafficReport& report, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("epsilon must lie in (0,1)");
    if (report.total <= 0.0) return 0;
    for (std::uint32_t r = 0; r < report.ball.size(); ++r)
        if (report.ball[r] / report.total >= 1.0 - epsilon) return r;
    return report.n;
}

namespace serial {

PairProfile pair_profile(const Graph& g, std::uint32_t n, const EngineOptions&) {
    require_boundary(g, n);
        PairProfile out = empty_profile(n, g.layer(n).size());
    Workspace<std::uint64_t> ws(g.node_count());
    for (NodeId s : g.layer(n)) {
        ws.run(g, s, false, 2 * n);
        census(g, n, ws, out);
    }
    return out;
}

std::vector<double> node_loads(const Graph& g, const RateFunction& f, std::uint32_t n, const EngineOptions& opts) {
    require_boundary(g, n);
    const auto rates = f.lookup(2 * n);
    return opts.exact_sigma ? serial_loads<BigCount>(g, n, rates, opts)
                            : serial_loads<std::uint64_t>(g, n, rates, opts);
}

}  // namespace serial
}  // namespace hypertraffic
