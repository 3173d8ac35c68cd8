#include "hypertraffic/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hypertraffic/errors.hpp"

namespace hypertraffic {

std::size_t default_growth_window(std::size_t radii) { return std::max<std::size_t>(2, (radii + 1) / 2); }

GrowthEstimate growth_exponent(std::span<const std::size_t> sphere_sizes, std::size_t window) {
    if (window < 2) throw WindowTooLarge("growth window must be at least 2");
    if (window > sphere_sizes.size())
        throw WindowTooLarge("growth window " + std::to_string(window) + " exceeds " +
                             std::to_string(sphere_sizes.size()) + " spheres");
    const std::size_t first = sphere_sizes.size() - window;
    for (std::size_t t = first; t < sphere_sizes.size(); ++t)
        if (sphere_sizes[t] == 0) throw EmptySphere("sphere " + std::to_string(t) + " is empty");

    GrowthEstimate est;
    est.sphere_sizes.assign(sphere_sizes.begin(), sphere_sizes.end());
    est.window = window;

    // Mean of successive log-ratios telescopes to the end-point ratio.
    const double span_ratio =
        std::log(static_cast<double>(sphere_sizes.back()) / static_cast<double>(sphere_sizes[first]));
    est.e_ratio = std::max(0.0, span_ratio / static_cast<double>(window - 1));

    std::vector<double> ball(sphere_sizes.size());
    double cumulative = 0.0;
    for (std::size_t t = 0; t < sphere_sizes.size(); ++t) {
        cumulative += static_cast<double>(sphere_sizes[t]);
        ball[t] = std::log(cumulative);
    }
    double mean_r = 0.0, mean_y = 0.0;
    for (std::size_t t = first; t < ball.size(); ++t) {
        mean_r += static_cast<double>(t);
        mean_y += ball[t];
    }
    mean_r /= static_cast<double>(window);
    mean_y /= static_cast<double>(window);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t t = first; t < ball.size(); ++t) {
        const double dx = static_cast<double>(t) - mean_r;
        sxy += dx * (ball[t] - mean_y);
        sxx += dx * dx;
    }
    est.e_slope = std::max(0.0, sxy / sxx);
    return est;
}

GrowthEstimate growth_exponent(std::span<const std::size_t> sphere_sizes) {
    return growth_exponent(sphere_sizes, default_growth_window(sphere_sizes.size()));
}

double beta_c(double growth) {
    if (!(growth >= 0.0) || !std::isfinite(growth)) throw InvalidArgument("growth exponent must be finite and >= 0");
    return std::exp(growth / 2.0);
}

std::uint64_t tree_distance_counts(std::uint32_t k, std::uint32_t n, std::uint32_t p) {
    if (p == 0) return 1;
    if (p % 2 != 0 || p / 2 > n) return 0;
    std::uint64_t count = k - 1;
    for (std::uint32_t i = 1; i < p / 2; ++i) count *= k;
    return count;
}

TreeClosedForm tree_closed_forms(std::uint32_t k, double beta, std::uint32_t n) {
    if (k < 2) throw InvalidArgument("tree closed forms need k >= 2");
    if (!(beta > 1.0)) throw InvalidRate("tree closed forms need beta > 1");
    if (n < 1) throw InvalidArgument("tree closed forms need n >= 1");

    const double kd = static_cast<double>(k);
    const double inv_b2 = 1.0 / (beta * beta);
    const double x = kd * inv_b2;
    const double nd = static_cast<double>(n);

    // sum_{i=0}^{n-1} k^i beta^{-2(i+1)}
    double geometric = 0.0;
    if (std::abs(x - 1.0) < 1e-9) {
        double term = inv_b2;
        for (std::uint32_t i = 0; i < n; ++i, term *= x) geometric += term;
    } else {
        geometric = inv_b2 * (std::pow(x, nd) - 1.0) / (x - 1.0);
    }
    const double per_leaf = 1.0 + (kd - 1.0) * geometric;
    TreeClosedForm out;
    out.total = std::pow(kd, nd) * per_leaf;
    out.root_share = (kd - 1.0) * std::pow(kd, nd - 1.0) * std::pow(inv_b2, nd) / per_leaf;
    return out;
}

double tree_root_limit(std::uint32_t k, double beta) {
    if (k < 2) throw InvalidArgument("tree root limit needs k >= 2");
    if (!(beta > 1.0)) throw InvalidRate("tree root limit needs beta > 1");
    const double b2 = beta * beta;
    return b2 < static_cast<double>(k) ? 1.0 - b2 / static_cast<double>(k) : 0.0;
}

std::string to_string(Regime r) {
    switch (r) {
        case Regime::Global: return "GLOBAL";
        case Regime::Local: return "LOCAL";
        case Regime::Undecided: return "UNDECIDED";
    }
    return "UNDECIDED";
}

Regime classify_transition(std::span<const double> ratios, const ClassifyOptions& opts) {
    if (opts.tail < 1 || ratios.size() < opts.tail)
        throw TooFewDepths("classification needs " + std::to_string(opts.tail) + " ratios, got " +
                           std::to_string(ratios.size()));
    const auto tail = ratios.subspan(ratios.size() - opts.tail);
    bool rising = true, falling = true;
    for (std::size_t i = 1; i < tail.size(); ++i) {
        if (tail[i] < tail[i - 1] - opts.tolerance) rising = false;
        if (tail[i] > tail[i - 1] + opts.tolerance) falling = false;
    }
    if (rising && tail.back() >= opts.tau_global) return Regime::Global;
    if (falling && tail.back() <= opts.tau_local) return Regime::Local;
    if (opts.extrapolate && falling && tail.size() >= 3) {
        const double d1 = tail[tail.size() - 2] - tail[tail.size() - 3];
        const double d2 = tail.back() - tail[tail.size() - 2];
        if (d1 < 0.0 && std::abs(d2) < std::abs(d1)) {
            const double rho = d2 / d1;
            if (tail.back() + d2 * rho / (1.0 - rho) >= opts.tau_global) return Regime::Global;
        }
    }
    return Regime::Undecided;
}

TransitionReport sweep(const SweepConfig& config) {
    if (config.betas.empty() || config.depths.empty()) throw InvalidArgument("sweep grid is empty");
    const double floor = config.rate == SweepRate::Exponential ? 1.0 : 0.0;
    for (std::size_t i = 0; i < config.betas.size(); ++i) {
        if (!(config.betas[i] > floor)) throw InvalidArgument("sweep rate parameters must exceed " + std::to_string(floor));
        if (i > 0 && !(config.betas[i] > config.betas[i - 1])) throw InvalidArgument("sweep betas must ascend");
    }
    for (std::size_t j = 0; j < config.depths.size(); ++j) {
        if (config.depths[j] <= config.r) throw InvalidArgument("every sweep depth must exceed r");
        if (j > 0 && config.depths[j] <= config.depths[j - 1]) throw InvalidArgument("sweep depths must ascend");
    }

    TransitionReport report;
    report.config = config;
    const std::size_t nb = config.betas.size(), nd = config.depths.size();
    report.cells.resize(nb * nd);
    std::optional<std::vector<std::size_t>> deepest_spheres;

    for (std::size_t j = 0; j < nd; ++j) {
        const std::uint32_t n = config.depths[j];
        std::optional<PairProfile> profile;
        std::optional<std::string> failure;
        try {
            FamilySpec spec = config.family;
            spec.depth = n;
            const Graph g = generate(spec, config.node_cap);
            profile = pair_profile(g, n, config.engine);
            deepest_spheres = g.sphere_sizes();
        } catch (const Error& e) {
            failure = e.kind() + ": " + e.what();
        }
        for (std::size_t i = 0; i < nb; ++i) {
            SweepCell& cell = report.cells[i * nd + j];
            cell.beta = config.betas[i];
            cell.n = n;
            if (failure) {
                cell.error = failure;
                continue;
            }
            try {
                const auto f = config.rate == SweepRate::Exponential ? RateFunction::exponential(cell.beta)
                                                                     : RateFunction::polynomial(cell.beta);
                const auto t = evaluate(*profile, f);
                cell.total = t.total;
                cell.ball = t.ball.at(config.r);
                cell.ratio = t.ratio(config.r);
            } catch (const Error& e) {
                cell.error = e.kind() + ": " + e.what();
            }
        }
    }

    if (deepest_spheres) {
        report.growth = growth_exponent(*deepest_spheres);
        report.beta_c_pred = beta_c(report.growth.e_ratio);
    }

    report.labels.assign(nb, Regime::Undecided);
    for (std::size_t i = 0; i < nb; ++i) {
        std::vector<double> ratios;
        bool complete = true;
        for (std::size_t j = 0; j < nd; ++j) {
            const auto& cell = report.cells[i * nd + j];
            if (cell.error) complete = false;
            ratios.push_back(cell.ratio);
        }
        if (!complete || ratios.size() < config.classify.tail) continue;
        // The critical point itself is left undecided.
        if (config.rate == SweepRate::Exponential &&
            std::abs(config.betas[i] - report.beta_c_pred) <= 1e-12 * report.beta_c_pred)
            continue;
        report.labels[i] = classify_transition(ratios, config.classify);
    }

    const auto first_local = std::find(report.labels.begin(), report.labels.end(), Regime::Local);
    if (first_local != report.labels.end()) {
        const auto last_global = std::find(std::make_reverse_iterator(first_local), report.labels.rend(),
                                           Regime::Global);
        if (last_global != report.labels.rend()) {
            const auto ig = static_cast<std::size_t>(std::distance(report.labels.begin(), last_global.base()) - 1);
            const auto il = static_cast<std::size_t>(std::distance(report.labels.begin(), first_local));
            report.beta_c_emp = 0.5 * (config.betas[ig] + config.betas[il]);
        }
    }
    return report;
}

}  // namespace hypertraffic
