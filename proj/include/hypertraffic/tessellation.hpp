#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypertraffic/graph.hpp"

namespace hypertraffic {

/// Half-edge combinatorial map of a planar disk patch. Half-edge h runs from
/// origin[h] to origin[twin[h]]; next[h] continues around the face on its
/// left, whose index is face[h] (kOuterFace for the unbounded face).
struct TessellationMap {
    static constexpr std::int64_t kOuterFace = -1;

    std::vector<NodeId> origin;
    std::vector<std::size_t> twin;
    std::vector<std::size_t> next;
    std::vector<std::int64_t> face;
    std::vector<bool> face_closed;
    std::vector<std::uint32_t> degree;
};

/// Patch of the {p,q} tessellation grown by face expansion around vertex 0.
struct TessellationPatch {
    std::uint32_t p = 0;
    std::uint32_t q = 0;
    std::size_t vertex_count = 0;
    std::vector<std::vector<NodeId>> faces;  ///< counter-clockwise vertex cycles
    std::vector<NodeId> boundary;            ///< counter-clockwise rim cycle
    std::vector<bool> saturated;             ///< all q faces present

    std::vector<Edge> edges() const;
    TessellationMap half_edge_map() const;

    /// Structural problems: twin involution, face sizes, degree bounds,
    /// interior saturation, Euler characteristic of a disk. Empty when sound.
    std::vector<std::string> audit() const;
};

/// Grows the patch until every vertex within distance `depth - 1` of vertex 0
/// is saturated, so the patch contains the full ball of radius `depth`.
TessellationPatch grow_tessellation(std::uint32_t p, std::uint32_t q, std::uint32_t depth, std::size_t cap);

}  // namespace hypertraffic
