#include <doctest.h>

#include <cmath>

#include "hypertraffic/analysis.hpp"
#include "hypertraffic/errors.hpp"
#include "hypertraffic/generators.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace hypertraffic;

TEST_CASE("growth exponent examples") {
    const std::vector<std::size_t> binary{1, 2, 4, 8, 16};
    CHECK(growth_exponent(binary, 4).e_ratio == std::log(2.0));
    CHECK(growth_exponent(std::vector<std::size_t>{5, 5, 5, 5}, 4).e_ratio == 0.0);
    CHECK(growth_exponent(std::vector<std::size_t>{5, 5, 5, 5}, 4).e_slope >= 0.0);
    const auto grid = growth_exponent(gen_grid(51).sphere_sizes(), 4);
    CHECK(grid.e_ratio <= 0.05);
    CHECK(grid.e_ratio >= 0.0);
    CHECK(grid.window == 4);
    CHECK_THROWS_AS(growth_exponent(binary, 6), WindowTooLarge);
    CHECK_THROWS_AS(growth_exponent(binary, 1), WindowTooLarge);
    CHECK_THROWS_AS(growth_exponent(std::vector<std::size_t>{1, 3, 0, 2}, 3), EmptySphere);
}

TEST_CASE("default window covers the trailing half") {
    CHECK(default_growth_window(9) >= 2);
    CHECK(default_growth_window(2) == 2);
    const auto g = growth_exponent(std::vector<std::size_t>{1, 3, 9, 27, 81, 243});
    CHECK(g.window == default_growth_window(6));
    CHECK(beta_c(g.e_ratio) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
}

TEST_CASE("beta_c examples") {
    CHECK(beta_c(std::log(9.0)) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(beta_c(0.0) == 1.0);
    CHECK(beta_c(std::log((3.0 + std::sqrt(5.0)) / 2.0)) == doctest::Approx(1.6180339887).epsilon(1e-9));
    CHECK_THROWS_AS(beta_c(-0.1), InvalidArgument);
}

TEST_CASE("tree beta_c from exact powers is sqrt(k)") {
    for (std::uint32_t k = 2; k <= 5; ++k) {
        const auto g = growth_exponent(gen_kary_tree(k, 6, k).sphere_sizes());
        CHECK(beta_c(g.e_ratio) == doctest::Approx(std::sqrt(static_cast<double>(k))).epsilon(1e-14));
    }
}

TEST_CASE("tree distance counts") {
    CHECK(tree_distance_counts(2, 2, 0) == 1);
    CHECK(tree_distance_counts(2, 2, 2) == 1);
    CHECK(tree_distance_counts(2, 2, 4) == 2);
    CHECK(tree_distance_counts(3, 4, 3) == 0);
    CHECK(tree_distance_counts(3, 4, 10) == 0);
    for (std::uint32_t k = 2; k <= 4; ++k)
        for (std::uint32_t n = 1; n <= 6; ++n) {
            std::uint64_t sum = 0;
            for (std::uint32_t p = 0; p <= 2 * n + 2; ++p) sum += tree_distance_counts(k, n, p);
            CHECK(sum == static_cast<std::uint64_t>(std::pow(k, n)));
        }
    // Leaf enumeration on an actual tree.
    const Graph t = gen_kary_tree(3, 3, 3);
    const NodeId leaf = t.layer(3)[0];
    const auto d = distances_from(t, leaf).dist;
    for (std::uint32_t p = 0; p <= 6; ++p) {
        std::uint64_t count = 0;
        for (NodeId y : t.layer(3)) count += d[y] == p;
        CHECK(count == tree_distance_counts(3, 3, p));
    }
}

TEST_CASE("tree closed forms") {
    const auto c = tree_closed_forms(2, 2.0, 2);
    CHECK(c.total == doctest::Approx(5.5).epsilon(1e-15));
    CHECK(c.root_share == doctest::Approx(1.0 / 11.0).epsilon(1e-14));
    for (std::uint32_t k : {2u, 3u, 4u})
        for (double beta : {1.1, 1.5, std::sqrt(static_cast<double>(k)), 2.5})
            for (std::uint32_t n = 1; n <= 9; ++n) {
                const auto cf = tree_closed_forms(k, beta, n);
                const auto o = oracle::tree_pairs(k, beta, n);
                CHECK(testing::rel_err(cf.total, o.total) < 1e-12);
                CHECK(testing::rel_err(cf.root_share, o.root_load / o.total) < 1e-12);
                CHECK(cf.root_share > 0.0);
                CHECK(cf.root_share < 1.0);
            }
    CHECK_THROWS_AS(tree_closed_forms(1, 2.0, 2), InvalidArgument);
    CHECK_THROWS_AS(tree_closed_forms(2, 1.0, 2), InvalidRate);
    CHECK_THROWS_AS(tree_closed_forms(2, 2.0, 0), InvalidArgument);
}

TEST_CASE("tree root limit") {
    CHECK(tree_root_limit(4, 1.5) == doctest::Approx(0.4375).epsilon(1e-15));
    CHECK(tree_root_limit(4, 2.0) == 0.0);
    CHECK(tree_root_limit(9, 3.5) == 0.0);
    CHECK(std::abs(tree_closed_forms(4, 1.5, 60).root_share - 0.4375) < 1e-6);
}

TEST_CASE("classify_transition rule") {
    CHECK(classify_transition(std::vector<double>{0.30, 0.38, 0.41, 0.43}) == Regime::Global);
    CHECK(classify_transition(std::vector<double>{0.20, 0.08, 0.03, 0.01}) == Regime::Local);
    CHECK(classify_transition(std::vector<double>{0.20, 0.22, 0.18, 0.19}) == Regime::Undecided);
    CHECK_THROWS_AS(classify_transition(std::vector<double>{0.5, 0.6}), TooFewDepths);
    // A rising tail below tau_g is undecided.
    CHECK(classify_transition(std::vector<double>{0.10, 0.11, 0.12}) == Regime::Undecided);
    // A falling tail above tau_l is undecided unless the extrapolated limit settles above tau_g.
    ClassifyOptions strict;
    strict.extrapolate = false;
    const std::vector<double> settling{0.80, 0.70, 0.65, 0.625};
    CHECK(classify_transition(settling, strict) == Regime::Undecided);
    CHECK(classify_transition(settling) == Regime::Global);
    const std::vector<double> draining{0.50, 0.35, 0.22, 0.12};
    CHECK(classify_transition(draining) == Regime::Undecided);
    CHECK(to_string(Regime::Global) == "GLOBAL");
    CHECK(to_string(Regime::Local) == "LOCAL");
    CHECK(to_string(Regime::Undecided) == "UNDECIDED");
}

TEST_CASE("tree sweep") {
    SweepConfig cfg;
    cfg.family = FamilySpec{KAryTree{4, 4}, 0};
    cfg.betas = {1.5, 2.5};
    cfg.depths = {4, 5, 6, 7, 8};
    cfg.r = 0;
    const auto rep = sweep(cfg);
    REQUIRE(rep.cells.size() == 10);
    CHECK(rep.beta_c_pred == doctest::Approx(2.0).epsilon(1e-14));
    for (std::size_t j = 0; j < 5; ++j) {
        const auto& low = rep.cell(0, j);
        const auto& high = rep.cell(1, j);
        CHECK(low.ratio == doctest::Approx(tree_closed_forms(4, 1.5, low.n).root_share).epsilon(1e-12));
        CHECK(high.ratio < low.ratio);
        if (j > 0) {
            CHECK(high.ratio < rep.cell(1, j - 1).ratio);
            CHECK(low.ratio < rep.cell(0, j - 1).ratio);  // decreases toward the limit from above
            CHECK(low.ratio > 0.4375);
        }
    }
    CHECK(std::abs(rep.cell(0, 4).ratio - 0.4375) < 0.02);
    CHECK(rep.labels[0] == Regime::Global);
}

TEST_CASE("sweep validation and error cells") {
    SweepConfig cfg;
    cfg.family = FamilySpec{Grid{9}, 0};
    cfg.betas = {1.5, 2.0};
    cfg.depths = {2, 3};
    cfg.r = 1;
    CHECK_NOTHROW(sweep(cfg));
    auto bad = cfg;
    bad.betas = {2.0, 1.5};
    CHECK_THROWS_AS(sweep(bad), InvalidArgument);
    bad = cfg;
    bad.betas = {1.0};
    CHECK_THROWS_AS(sweep(bad), InvalidArgument);
    bad = cfg;
    bad.depths = {1, 2};
    CHECK_THROWS_AS(sweep(bad), InvalidArgument);
    bad = cfg;
    bad.depths = {3, 2};
    CHECK_THROWS_AS(sweep(bad), InvalidArgument);

    // Depth 9 exceeds the side-9 grid radius of 8: the cell fails, the grid survives.
    auto partial = cfg;
    partial.depths = {2, 3, 9};
    const auto rep = sweep(partial);
    CHECK_FALSE(rep.cell(0, 0).error.has_value());
    CHECK(rep.cell(0, 2).error.has_value());
    // Fewer depths than the classification tail.
    CHECK(sweep(cfg).labels[0] == Regime::Undecided);
}

TEST_CASE("tessellation sweep labels flip across the predicted threshold") {
    SweepConfig cfg;
    cfg.family = FamilySpec{Tessellation{5, 4}, 0};
    for (int i = 0; i <= 12; ++i) cfg.betas.push_back(1.1 + 0.1 * i);
    cfg.depths = {5, 6, 7, 8};
    cfg.r = 2;
    const auto rep = sweep(cfg);
    CHECK(rep.labels.front() == Regime::Global);
    CHECK(rep.labels.back() == Regime::Local);
    REQUIRE(rep.beta_c_emp.has_value());
    for (std::size_t i = 1; i < rep.labels.size(); ++i) {
        if (rep.labels[i] == Regime::Global) CHECK(rep.labels[i - 1] == Regime::Global);
    }
    for (const auto& c : rep.cells) {
        CHECK(c.ratio >= 0.0);
        CHECK(c.ratio <= 1.0);
    }
}
