#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "hypertraffic/graph.hpp"
#include "hypertraffic/metric.hpp"
#include "hypertraffic/rate.hpp"

namespace hypertraffic {

/// Single-source shortest-path data: distances, geodesic counts and, for
/// every node v, the smallest root depth visited by any geodesic source->v.
struct GeodesicField {
    NodeId source = 0;
    DistanceRow dist;
    std::vector<std::uint64_t> sigma;  ///< saturates at UINT64_MAX
    bool sigma_overflow = false;
    std::vector<std::uint32_t> mindepth;
    std::vector<NodeId> order;  ///< nodes in non-decreasing distance order
};

GeodesicField geodesic_field(const Graph& g, NodeId source);

/// h(source, y): distance from the root to the closest geodesic joining them.
std::uint32_t pair_h(const GeodesicField& field, NodeId y);

/// Integer census of ordered boundary pairs (diagonal included) of the ball
/// X_n, binned by (h, d). Everything rate-dependent is derived from it.
struct PairProfile {
    std::uint32_t n = 0;
    std::uint32_t max_distance = 0;  ///< 2n
    std::size_t boundary_size = 0;
    std::vector<std::uint64_t> counts;  ///< (n+1) x (max_distance+1), row = h

    std::uint64_t count(std::uint32_t h, std::uint32_t d) const noexcept {
        return counts[std::size_t{h} * (max_distance + 1) + d];
    }
    friend bool operator==(const PairProfile&, const PairProfile&) = default;
};

struct HBin {
    std::uint64_t pairs = 0;
    double mass = 0.0;
};

struct TrafficReport {
    std::uint32_t n = 0;
    RateFunction rate = RateFunction::exponential(2.0);
    double total = 0.0;               ///< T(n)
    std::vector<double> ball;         ///< T_r(n), r = 0..n
    std::vector<HBin> h_histogram;    ///< index = h
    std::vector<double> node_loads;   ///< empty unless requested
    std::map<double, std::uint32_t> core_radius_for;

    double ratio(std::uint32_t r) const { return total > 0.0 ? ball.at(r) / total : 0.0; }
};

struct EngineOptions {
    int threads = 0;                 ///< 0: OpenMP default
    bool include_endpoints = false;  ///< add each pair's rate to its endpoints
    bool exact_sigma = false;        ///< big-integer geodesic counts
};

/// Census over the ball of radius n (nodes deeper than n are ignored).
/// Throws EmptyBoundary if n exceeds the graph's depth.
PairProfile pair_profile(const Graph& g, std::uint32_t n, const EngineOptions& opts = {});

/// T, T_r and the h histogram for rate f.
TrafficReport evaluate(const PairProfile& profile, const RateFunction& f);

TrafficReport traffic_totals(const Graph& g, const RateFunction& f, std::uint32_t n,
                             const EngineOptions& opts = {});

/// Relay load per node with equal splitting over geodesics; indexed like g,
/// zero outside the ball. Throws SigmaOverflow if 64-bit geodesic counts
/// saturate and exact_sigma is off.
std::vector<double> node_loads(const Graph& g, const RateFunction& f, std::uint32_t n,
                               const EngineOptions& opts = {});

/// Smallest r with T_r / T >= 1 - epsilon.
std::uint32_t core_radius(const TrafficReport& report, double epsilon);

/// Single-threaded reference implementations, kept for testing and the
/// benchmark. Same contracts as the parallel versions.
namespace serial {
PairProfile pair_profile(const Graph& g, std::uint32_t n, const EngineOptions& opts = {});
std::vector<double> node_loads(const Graph& g, const RateFunction& f, std::uint32_t n,
                               const EngineOptions& opts = {});
}  // namespace serial

}  // namespace hypertraffic
