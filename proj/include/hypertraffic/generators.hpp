#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <variant>

#include "hypertraffic/graph.hpp"

namespace hypertraffic {

struct KAryTree {
    std::uint32_t k = 2;
    std::uint32_t root_degree = 2;
};

struct Tessellation {
    std::uint32_t p = 5;
    std::uint32_t q = 4;
};

struct Grid {
    std::uint32_t side = 1;
};

struct EdgeListFile {
    std::string path;
};

/// A graph family plus truncation radius n.
struct FamilySpec {
    std::variant<KAryTree, Tessellation, Grid, EdgeListFile> variant;
    std::uint32_t depth = 0;
};

inline constexpr std::size_t kDefaultNodeCap = std::size_t{1} << 24;

/// Generator node cap: HYPERTRAFFIC_NODE_CAP if set and valid, else 2^24.
std::size_t node_cap_from_env();

/// Rooted tree: the root has `root_degree` children, every other internal
/// node has k. Canonical BFS numbering. Throws SizeOverflow above `cap`.
Graph gen_kary_tree(std::uint32_t k, std::uint32_t depth, std::uint32_t root_degree,
                    std::size_t cap = node_cap_from_env());

/// Ball of radius `depth` around a vertex of the {p,q} tessellation.
/// Throws NotHyperbolic unless (p-2)(q-2) > 4.
Graph gen_tessellation(std::uint32_t p, std::uint32_t q, std::uint32_t depth,
                       std::size_t cap = node_cap_from_env());

/// side x side lattice, 4-neighbor, rooted at the center. `side` must be odd.
Graph gen_grid(std::uint32_t side, std::size_t cap = node_cap_from_env());

/// Whitespace-separated "u v" pairs, one per line; '#' starts a comment;
/// "# root R" selects the root (default 0). Throws ParseError with the line
/// number, or whatever Graph::build throws.
Graph load_edge_list(std::istream& in);
Graph load_edge_list(std::string_view text);

/// Builds the family's graph truncated to the ball of radius spec.depth.
Graph generate(const FamilySpec& spec, std::size_t cap = node_cap_from_env());

}  // namespace hypertraffic
