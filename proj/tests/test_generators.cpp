#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "hypertraffic/errors.hpp"
#include "hypertraffic/generators.hpp"
#include "hypertraffic/io.hpp"
#include "hypertraffic/tessellation.hpp"
#include "oracles.hpp"

using namespace hypertraffic;

TEST_CASE("k-ary tree sizes") {
    const Graph t = gen_kary_tree(2, 2, 2);
    CHECK(t.node_count() == 7);
    CHECK(t.layer(2).size() == 4);
    const Graph t4 = gen_kary_tree(3, 2, 4);
    CHECK(t4.node_count() == 17);
    CHECK(t4.layer(2).size() == 12);
    CHECK(gen_kary_tree(2, 0, 2).node_count() == 1);
    CHECK(gen_kary_tree(3, 6, 3).node_count() == 1093);
    for (std::uint32_t k = 2; k <= 4; ++k)
        for (std::uint32_t rd = 1; rd <= k + 1; ++rd) {
            const auto s = gen_kary_tree(k, 4, rd).sphere_sizes();
            for (std::uint32_t t = 1; t <= 4; ++t)
                CHECK(s[t] == rd * static_cast<std::size_t>(std::pow(k, t - 1)));
        }
}

TEST_CASE("tree generator errors") {
    CHECK_THROWS_AS(gen_kary_tree(1, 3, 1), InvalidArgument);
    CHECK_THROWS_AS(gen_kary_tree(2, 3, 0), InvalidArgument);
    CHECK_THROWS_AS(gen_kary_tree(2, 10, 2, 100), SizeOverflow);
    CHECK_THROWS_AS(gen_kary_tree(10, 40, 10), SizeOverflow);
    CHECK_NOTHROW(gen_kary_tree(2, 5, 2, 63));
}

TEST_CASE("tessellation small cases") {
    const Graph t = gen_tessellation(5, 4, 1);
    CHECK(t.node_count() == 5);
    CHECK(t.degree(t.root()) == 4);
    CHECK_THROWS_AS(gen_tessellation(3, 3, 2), NotHyperbolic);
    CHECK_THROWS_AS(gen_tessellation(4, 4, 2), NotHyperbolic);
    CHECK_THROWS_AS(gen_tessellation(6, 3, 2), NotHyperbolic);
    CHECK_THROWS_AS(gen_tessellation(5, 4, 12, 1000), SizeOverflow);
}

TEST_CASE("tessellation spheres match the Poincare disk construction") {
    struct Case {
        std::uint32_t p, q, depth;
    };
    for (const Case c : {Case{5, 4, 7}, Case{4, 5, 6}, Case{7, 3, 9}, Case{3, 7, 5}, Case{4, 6, 5}, Case{6, 4, 5},
                         Case{5, 5, 5}, Case{8, 3, 8}, Case{3, 8, 4}}) {
        CAPTURE(c.p);
        CAPTURE(c.q);
        CHECK(gen_tessellation(c.p, c.q, c.depth).sphere_sizes() == oracle::disk_sphere_sizes(c.p, c.q, c.depth));
    }
}

TEST_CASE("tessellation {4,5} growth approaches the golden-ratio square") {
    const auto s = gen_tessellation(4, 5, 8).sphere_sizes();
    const double ratio = static_cast<double>(s[8]) / static_cast<double>(s[7]);
    CHECK(ratio == doctest::Approx((3.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-3));
}

TEST_CASE("tessellation patches pass the structural audit") {
    for (auto [p, q] : {std::pair{5u, 4u}, {4u, 5u}, {7u, 3u}, {3u, 7u}, {5u, 5u}}) {
        for (std::uint32_t depth = 1; depth <= 6; ++depth) {
            const auto patch = grow_tessellation(p, q, depth, kDefaultNodeCap);
            CAPTURE(p);
            CAPTURE(q);
            CAPTURE(depth);
            CHECK(patch.audit().empty());
            for (const auto& f : patch.faces) CHECK(f.size() == p);
        }
    }
}

TEST_CASE("tessellation interior vertices have degree q") {
    for (auto [p, q] : {std::pair{5u, 4u}, {4u, 5u}, {7u, 3u}}) {
        const std::uint32_t depth = 7;
        const Graph g = gen_tessellation(p, q, depth);
        for (NodeId v = 0; v < g.node_count(); ++v)
            if (g.depth(v) + 2 <= depth) CHECK(g.degree(v) == q);
    }
}

TEST_CASE("generators are deterministic") {
    CHECK(io::graph_to_json(gen_tessellation(5, 4, 6)) == io::graph_to_json(gen_tessellation(5, 4, 6)));
    CHECK(gen_kary_tree(3, 4, 4) == gen_kary_tree(3, 4, 4));
    CHECK(gen_grid(9) == gen_grid(9));
}

TEST_CASE("grid generator") {
    CHECK(gen_grid(1).node_count() == 1);
    const Graph g3 = gen_grid(3);
    CHECK(g3.node_count() == 9);
    CHECK(g3.degree(g3.root()) == 4);
    CHECK(gen_grid(5).sphere_sizes() == std::vector<std::size_t>{1, 4, 8, 8, 4});
    CHECK_THROWS_AS(gen_grid(4), EvenSide);
    CHECK_THROWS_AS(gen_grid(0), InvalidArgument);
    const auto s = gen_grid(51).sphere_sizes();
    for (std::size_t t = 1; t <= 25; ++t) CHECK(s[t] == 4 * t);
}

TEST_CASE("edge list parsing") {
    const Graph a = load_edge_list("0 1\n1 2");
    CHECK(a.root() == 0);
    CHECK(a.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
    const Graph b = load_edge_list("# root 2\n0 1\n1 2\n");
    CHECK(b.root() == 2);
    CHECK(b.max_depth() == 2);
    CHECK(load_edge_list("# a comment\n\n0 1   # trailing\n").edge_count() == 1);
    CHECK_THROWS_AS(load_edge_list("0 0"), MalformedEdge);
    CHECK_THROWS_AS(load_edge_list("0 1\n2 3"), DisconnectedGraph);
    CHECK_THROWS_AS(load_edge_list("0 x"), ParseError);
    CHECK_THROWS_AS(load_edge_list("0 1 2"), ParseError);
    CHECK_THROWS_AS(load_edge_list("0 -1"), ParseError);
    try {
        load_edge_list("0 1\nbad\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("generate dispatches and truncates") {
    CHECK(generate(FamilySpec{KAryTree{2, 2}, 3}).node_count() == 15);
    CHECK(generate(FamilySpec{Tessellation{5, 4}, 3}).sphere_sizes() == std::vector<std::size_t>{1, 4, 12, 28});
    CHECK(generate(FamilySpec{Grid{9}, 2}).sphere_sizes() == std::vector<std::size_t>{1, 4, 8});
    CHECK(generate(FamilySpec{Grid{9}, 100}).max_depth() == 8);

    const auto path = std::filesystem::temp_directory_path() / "hypertraffic_edges_test.txt";
    {
        std::ofstream out(path);
        out << "# root 1\n0 1\n1 2\n2 3\n";
    }
    const Graph g = generate(FamilySpec{EdgeListFile{path.string()}, 1});
    CHECK(g.node_count() == 3);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(generate(FamilySpec{EdgeListFile{"/nonexistent/x.txt"}, 1}), ParseError);
}

TEST_CASE("node cap comes from the environment") {
    setenv("HYPERTRAFFIC_NODE_CAP", "50", 1);
    CHECK(node_cap_from_env() == 50);
    CHECK_THROWS_AS(gen_kary_tree(2, 6, 2, node_cap_from_env()), SizeOverflow);
    unsetenv("HYPERTRAFFIC_NODE_CAP");
    CHECK(node_cap_from_env() == kDefaultNodeCap);
}
