#pragma once

#include <cstdint>
#include <vector>

#include "hypertraffic/graph.hpp"

namespace hypertraffic {

struct DistanceRow {
    NodeId source = 0;
    std::vector<std::uint32_t> dist;
};

/// Exact half-integer, stored as twice its value.
struct HalfInteger {
    std::uint64_t twice_value = 0;

    static constexpr HalfInteger from_twice(std::uint64_t t) { return {t}; }
    static constexpr HalfInteger whole(std::uint64_t v) { return {2 * v}; }
    constexpr double value() const { return static_cast<double>(twice_value) / 2.0; }

    friend constexpr bool operator==(HalfInteger, HalfInteger) = default;
    friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;
};

DistanceRow distances_from(const Graph& g, NodeId source);

/// All-pairs BFS distances, row-major n x n.
class DistanceTable {
public:
    explicit DistanceTable(const Graph& g);
    std::uint32_t operator()(NodeId a, NodeId b) const noexcept { return d_[a * n_ + b]; }
    std::size_t size() const noexcept { return n_; }

private:
    std::size_t n_;
    std::vector<std::uint32_t> d_;
};

/// (y,z)_base = (d(base,y) + d(base,z) - d(y,z)) / 2.
HalfInteger gromov_product(const Graph& g, NodeId y, NodeId z, NodeId base);
HalfInteger gromov_product(const DistanceTable& d, NodeId y, NodeId z, NodeId base);

inline constexpr std::size_t kDefaultFourPointCap = 300;
inline constexpr std::size_t kDefaultSlimCap = 64;

/// Four-point hyperbolicity constant. O(n^4); throws GraphTooLarge above `cap`.
HalfInteger four_point_delta(const Graph& g, std::size_t cap = kDefaultFourPointCap);

/// Smallest delta such that every geodesic triangle (all vertex triples, all
/// choices of geodesic sides) is delta-slim in the metric graph, where edges
/// are unit segments; the result is a multiple of 1/2.
/// Throws GraphTooLarge above `cap`.
double slim_delta_exact(const Graph& g, std::size_t cap = kDefaultSlimCap);

}  // namespace hypertraffic
