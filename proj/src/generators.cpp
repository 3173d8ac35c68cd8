#include "hypertraffic/generators.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hypertraffic/errors.hpp"
#include "hypertraffic/tessellation.hpp"

namespace hypertraffic {
namespace {

void check_cap(std::size_t nodes, std::size_t cap, const char* what) {
    if (nodes > cap)
        throw SizeOverflow(std::string(what) + " needs " + std::to_string(nodes) + " nodes, cap is " +
                           std::to_string(cap));
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

}  // namespace

std::size_t node_cap_from_env() {
    const char* raw = std::getenv("HYPERTRAFFIC_NODE_CAP");
    if (raw == nullptr) return kDefaultNodeCap;
    const std::string_view text(raw);
    std::size_t cap = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
    if (ec != std::errc{} || ptr != text.data() + text.size() || cap == 0) return kDefaultNodeCap;
    return cap;
}

Graph gen_kary_tree(std::uint32_t k, std::uint32_t depth, std::uint32_t root_degree, std::size_t cap) {
    if (k < 2) throw InvalidArgument("tree branching k must be >= 2");
    if (root_degree < 1) throw InvalidArgument("tree root degree must be >= 1");

    // Count first; sizes overflow quickly.
    std::size_t total = 1, level = 1;
    for (std::uint32_t t = 1; t <= depth; ++t) {
        const std::size_t fan = t == 1 ? root_degree : k;
        if (level > cap / fan) throw SizeOverflow("tree exceeds node cap " + std::to_string(cap));
        level *= fan;
        total += level;
        check_cap(total, cap, "tree");
    }

    std::vector<Edge> edges;
    edges.reserve(total - 1);
    NodeId next_id = 1, level_begin = 0, level_end = 1;
    for (std::uint32_t t = 1; t <= depth; ++t) {
        const std::uint32_t fan = t == 1 ? root_degree : k;
        for (NodeId parent = level_begin; parent < level_end; ++parent)
            for (std::uint32_t c = 0; c < fan; ++c) edges.push_back({parent, next_id++});
        level_begin = level_end;
        level_end = next_id;
    }
    return Graph::build(edges, 0, total);
}

Graph gen_tessellation(std::uint32_t p, std::uint32_t q, std::uint32_t depth, std::size_t cap) {
    const auto patch = grow_tessellation(p, q, depth, cap);
    const auto edges = patch.edges();
    const Graph full = Graph::build(edges, 0, patch.vertex_count);
    return canonical_relabel(truncate_ball(full, depth));
}

Graph gen_grid(std::uint32_t side, std::size_t cap) {
    if (side == 0) throw InvalidArgument("grid side must be >= 1");
    if (side % 2 == 0) throw EvenSide("grid side " + std::to_string(side) + " is even; no center vertex");
    const std::size_t n = std::size_t{side} * side;
    check_cap(n, cap, "grid");
    std::vector<Edge> edges;
    auto id = [side](std::uint32_t row, std::uint32_t col) { return static_cast<NodeId>(row * side + col); };
    for (std::uint32_t r = 0; r < side; ++r)
        for (std::uint32_t c = 0; c < side; ++c) {
            if (c + 1 < side) edges.push_back({id(r, c), id(r, c + 1)});
            if (r + 1 < side) edges.push_back({id(r, c), id(r + 1, c)});
        }
    return canonical_relabel(Graph::build(edges, id(side / 2, side / 2), n));
}

Graph load_edge_list(std::istream& in) {
    std::vector<Edge> edges;
    NodeId root = 0;
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& why) {
        throw ParseError("line " + std::to_string(line_no) + ": " + why);
    };
    auto parse_index = [&](const std::string& token) {
        NodeId value = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size()) fail("'" + token + "' is not a node index");
        return value;
    };

    while (std::getline(in, line)) {
        ++line_no;
        std::string_view body(line);
        if (const auto hash = body.find('#'); hash != std::string_view::npos) {
            std::istringstream comment(trim(body.substr(hash + 1)));
            std::string word, value, extra;
            if (comment >> word && word == "root") {
                if (!(comment >> value) || comment >> extra) fail("expected '# root R'");
                root = parse_index(value);
            }
            body = body.substr(0, hash);
        }
        std::istringstream fields{std::string(body)};
        std::string a, b, extra;
        if (!(fields >> a)) continue;
        if (!(fields >> b) || fields >> extra) fail("expected exactly two node indices");
        edges.push_back({parse_index(a), parse_index(b)});
    }
    return Graph::build(edges, root);
}

Graph load_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    return load_edge_list(in);
}

Graph generate(const FamilySpec& spec, std::size_t cap) {
    struct Visitor {
        std::uint32_t depth;
        std::size_t cap;

        Graph operator()(const KAryTree& t) const { return gen_kary_tree(t.k, depth, t.root_degree, cap); }
        Graph operator()(const Tessellation& t) const { return gen_tessellation(t.p, t.q, depth, cap); }
        Graph operator()(const Grid& g) const {
            Graph full = gen_grid(g.side, cap);
            return depth >= full.max_depth() ? full : truncate_ball(full, depth);
        }
        Graph operator()(const EdgeListFile& f) const {
            std::ifstream in(f.path);
            if (!in) throw ParseError("cannot open edge list '" + f.path + "'");
            Graph full = load_edge_list(in);
            return depth >= full.max_depth() ? full : truncate_ball(full, depth);
        }
    };
    return std::visit(Visitor{spec.depth, cap}, spec.variant);
}

}  // namespace hypertraffic
