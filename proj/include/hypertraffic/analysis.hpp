#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypertraffic/generators.hpp"
#include "hypertraffic/traffic.hpp"

namespace hypertraffic {

struct GrowthEstimate {
    std::vector<std::size_t> sphere_sizes;
    double e_slope = 0.0;  ///< least-squares slope of ln|B(R)| over the window
    double e_ratio = 0.0;  ///< mean of ln(|S_t| / |S_{t-1}|) over the window; the reported e(X)
    std::size_t window = 0;
};

/// Trailing half of the radii, at least 2.
std::size_t default_growth_window(std::size_t radii);

/// Both estimators over the last `window` spheres, clamped at 0 (the growth
/// exponent is non-negative). Throws WindowTooLarge or EmptySphere.
GrowthEstimate growth_exponent(std::span<const std::size_t> sphere_sizes, std::size_t window);
GrowthEstimate growth_exponent(std::span<const std::size_t> sphere_sizes);

/// Critical decay base exp(e/2).
double beta_c(double growth);

/// Number of leaves at distance p from a fixed leaf in the rooted k-ary tree
/// of depth n (root degree k).
std::uint64_t tree_distance_counts(std::uint32_t k, std::uint32_t n, std::uint32_t p);

struct TreeClosedForm {
    double total = 0.0;      ///< T(n), ordered leaf pairs including the diagonal
    double root_share = 0.0; ///< P(n), share of T(n) relayed by the root
};

/// Closed forms for the rooted k-ary tree with rate beta^{-d}. Falls back to
/// the direct n-term sum when beta^2 is (numerically) k.
TreeClosedForm tree_closed_forms(std::uint32_t k, double beta, std::uint32_t n);

/// lim P(n): 1 - beta^2/k below sqrt(k), 0 from sqrt(k) on.
double tree_root_limit(std::uint32_t k, double beta);

enum class Regime { Global, Local, Undecided };
std::string to_string(Regime r);

struct ClassifyOptions {
    std::size_t tail = 3;
    double tau_global = 0.25;
    double tau_local = 0.05;
    double tolerance = 1e-9;
    /// Also accept a falling, contracting tail as GLOBAL when its geometric
    /// extrapolation stays at or above tau_global.
    bool extrapolate = true;
};

/// GLOBAL: the last `tail` ratios are non-decreasing and the final one is at
/// least tau_global. LOCAL: non-increasing and at most tau_local.
///
/// In the global regime finite-depth ratios typically approach their positive
/// limit from above (the rooted-tree root share does so exactly), so with
/// `extrapolate` a non-increasing tail whose last two steps contract by
/// rho = d2/d1 < 1 is also GLOBAL if final + d2 * rho / (1 - rho) >= tau_global.
/// Throws TooFewDepths if fewer than `tail` ratios are given.
Regime classify_transition(std::span<const double> ratios, const ClassifyOptions& opts = {});

enum class SweepRate { Exponential, Polynomial };

struct SweepConfig {
    FamilySpec family;  ///< depth is ignored; each grid depth is generated
    std::vector<double> betas;
    std::vector<std::uint32_t> depths;
    std::uint32_t r = 0;
    SweepRate rate = SweepRate::Exponential;
    ClassifyOptions classify;
    EngineOptions engine;
    std::size_t node_cap = node_cap_from_env();
};

struct SweepCell {
    double beta = 0.0;
    std::uint32_t n = 0;
    double total = 0.0;
    double ball = 0.0;
    double ratio = 0.0;
    std::optional<std::string> error;
};

struct TransitionReport {
    SweepConfig config;
    std::vector<SweepCell> cells;  ///< beta-major: cells[i * depths + j]
    std::vector<Regime> labels;    ///< per beta
    GrowthEstimate growth;         ///< of the deepest graph
    double beta_c_pred = 1.0;
    std::optional<double> beta_c_emp;

    const SweepCell& cell(std::size_t beta_index, std::size_t depth_index) const {
        return cells[beta_index * config.depths.size() + depth_index];
    }
};

/// Runs the (beta, n) grid. Generator or engine failures are recorded per
/// cell; invalid grids throw InvalidArgument.
TransitionReport sweep(const SweepConfig& config);

}  // namespace hypertraffic
