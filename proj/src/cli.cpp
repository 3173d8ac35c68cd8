#include "hypertraffic/cli.hpp"

#include <omp.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hypertraffic/analysis.hpp"
#include "hypertraffic/errors.hpp"
#include "hypertraffic/generators.hpp"
#include "hypertraffic/io.hpp"
#include "hypertraffic/metric.hpp"
#include "hypertraffic/traffic.hpp"

namespace hypertraffic {
namespace {

constexpr std::uint32_t kFullDepth = std::numeric_limits<std::uint32_t>::max();

struct FamilyFlags {
    std::string family;
    std::uint32_t k = 2;
    std::uint32_t root_degree = 0;  // 0: same as k
    std::uint32_t p = 5;
    std::uint32_t q = 4;
    std::uint32_t side = 0;
    std::string input;

    void attach(CLI::App& app) {
        app.add_option("--family", family, "tree | tess | grid | edges")->required();
        app.add_option("--k", k, "tree branching factor");
        app.add_option("--root-degree", root_degree, "tree root degree (default k)");
        app.add_option("--p", p, "tessellation face size");
        app.add_option("--q", q, "tessellation vertex degree");
        app.add_option("--side", side, "grid side (odd)");
        app.add_option("--input", input, "edge-list file for --family edges");
    }

    FamilySpec spec(std::uint32_t depth) const {
        FamilySpec s;
        s.depth = depth;
        if (family == "tree") {
            s.variant = KAryTree{k, root_degree == 0 ? k : root_degree};
        } else if (family == "tess" || family == "tessellation") {
            s.variant = Tessellation{p, q};
        } else if (family == "grid") {
            if (side == 0) throw InvalidArgument("--family grid needs --side");
            s.variant = Grid{side};
        } else if (family == "edges" || family == "edge-list") {
            if (input.empty()) throw InvalidArgument("--family edges needs --input");
            s.variant = EdgeListFile{input};
        } else {
            throw InvalidArgument("unknown family '" + family + "'");
        }
        return s;
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write '" + path + "'");
    out << content;
    if (!out) throw InvalidArgument("failed writing '" + path + "'");
}

std::string sibling_path(const std::string& out, const std::string& suffix) {
    std::filesystem::path p(out);
    p.replace_extension();
    return p.string() + suffix;
}

std::vector<std::uint32_t> parse_depths(const std::string& text) {
    std::vector<std::uint32_t> depths;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size() || v > kFullDepth - 1)
            throw InvalidArgument("--depths entry '" + item + "' is not a depth");
        depths.push_back(static_cast<std::uint32_t>(v));
    }
    if (depths.empty()) throw InvalidArgument("--depths is empty");
    return depths;
}

std::vector<double> parse_table(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw InvalidArgument("--rate-table entry '" + item + "' is not a number");
        values.push_back(v);
    }
    return values;
}

void apply_threads(int threads) {
    if (threads < 0) throw InvalidArgument("--threads must be >= 0");
    if (threads > 0) omp_set_num_threads(threads);
}

// Post-conditions every traffic report must satisfy.
void audit_traffic(const TrafficReport& report, const std::vector<double>& loads) {
    if (report.ball.empty() || report.ball.back() != report.total)
        throw InvariantViolation("T_n(n) must equal T(n)");
    for (std::size_t r = 0; r < report.ball.size(); ++r) {
        if (r > 0 && report.ball[r] < report.ball[r - 1]) throw InvariantViolation("T_r must be non-decreasing in r");
        if (report.ball[r] < 0.0 || report.ball[r] > report.total) throw InvariantViolation("0 <= T_r <= T");
    }
    for (double l : loads)
        if (!(l >= 0.0)) throw InvariantViolation("node loads must be non-negative");
}

int exit_code_for(const Error& e) {
    static const std::vector<std::string> usage_kinds{"ParseError",    "InvalidArgument", "InvalidRate",
                                                      "NotHyperbolic", "EvenSide",        "WindowTooLarge",
                                                      "TooFewDepths",  "IndexOutOfRange"};
    return std::find(usage_kinds.begin(), usage_kinds.end(), e.kind()) != usage_kinds.end() ? 2 : 3;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Traffic flow on Gromov-hyperbolic graphs with distance-decaying rates", "hypertraffic"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "write a family's graph as hypertraffic-graph-v1 JSON");
    FamilyFlags gen_family;
    gen_family.attach(*gen);
    std::uint32_t gen_depth = kFullDepth;
    std::string gen_out;
    gen->add_option("--depth", gen_depth, "truncation radius (required for tree and tess)");
    gen->add_option("--out", gen_out, "output JSON path")->required();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "sphere sizes, growth exponent, predicted beta_c, four-point delta");
    std::string an_graph, an_out;
    std::size_t an_window = 0, an_delta_cap = kDefaultFourPointCap;
    analyze->add_option("--graph", an_graph, "graph JSON")->required();
    analyze->add_option("--out", an_out, "output JSON path")->required();
    analyze->add_option("--window", an_window, "growth window (default: trailing half of radii)");
    analyze->add_option("--delta-cap", an_delta_cap, "largest graph for the four-point delta");

    // traffic
    auto* traffic = app.add_subcommand("traffic", "boundary traffic, ball traffic T_r and relay loads");
    std::string tr_graph, tr_out, tr_loads_out, tr_table;
    double tr_beta = 0.0, tr_alpha = 0.0, tr_epsilon = 0.1;
    std::uint32_t tr_n = kFullDepth, tr_r = kFullDepth;
    bool tr_endpoints = false, tr_exact = false;
    int tr_threads = 0;
    traffic->add_option("--graph", tr_graph, "graph JSON")->required();
    auto* beta_opt = traffic->add_option("--beta", tr_beta, "exponential rate beta^-d");
    auto* alpha_opt = traffic->add_option("--alpha", tr_alpha, "polynomial rate (1+d)^-alpha");
    auto* table_opt = traffic->add_option("--rate-table", tr_table, "comma-separated rate per distance");
    beta_opt->excludes(alpha_opt)->excludes(table_opt);
    alpha_opt->excludes(table_opt);
    traffic->add_option("--n", tr_n, "boundary depth (default: graph depth)");
    traffic->add_option("--r", tr_r, "also report T_r/T at this radius");
    traffic->add_option("--epsilon", tr_epsilon, "core radius threshold, in (0,1)");
    traffic->add_option("--out", tr_out, "report JSON path")->required();
    traffic->add_option("--loads-out", tr_loads_out, "node-load CSV path (default: <out>.loads.csv)");
    traffic->add_flag("--include-endpoints", tr_endpoints, "count each pair's rate at its endpoints too");
    traffic->add_flag("--exact-sigma", tr_exact, "big-integer geodesic counts");
    traffic->add_option("--threads", tr_threads, "worker threads (0: all)");

    // sweep
    auto* sw = app.add_subcommand("sweep", "T_r/T over a (beta, depth) grid with regime labels");
    FamilyFlags sw_family;
    sw_family.attach(*sw);
    double sw_min = 0.0, sw_max = 0.0;
    std::size_t sw_steps = 0;
    std::string sw_depths, sw_out, sw_summary, sw_rate = "exp";
    std::uint32_t sw_r = 0;
    ClassifyOptions sw_classify;
    bool sw_no_extrapolate = false;
    int sw_threads = 0;
    sw->add_option("--beta-min", sw_min)->required();
    sw->add_option("--beta-max", sw_max)->required();
    sw->add_option("--steps", sw_steps)->required();
    sw->add_option("--depths", sw_depths, "comma-separated ascending depths")->required();
    sw->add_option("--r", sw_r, "ball radius")->required();
    sw->add_option("--rate", sw_rate, "exp (beta^-d) or poly ((1+d)^-beta)");
    sw->add_option("--tail", sw_classify.tail);
    sw->add_option("--tau-g", sw_classify.tau_global);
    sw->add_option("--tau-l", sw_classify.tau_local);
    sw->add_flag("--no-extrapolate", sw_no_extrapolate, "only rising tails can be GLOBAL");
    sw->add_option("--out", sw_out, "sweep CSV path")->required();
    sw->add_option("--summary-out", sw_summary, "summary JSON path (default: <out>.summary.json)");
    sw->add_option("--threads", sw_threads, "worker threads (0: all)");

    // tree-oracle
    auto* oracle = app.add_subcommand("tree-oracle", "rooted k-ary tree: closed forms against the engine");
    std::uint32_t or_k = 2, or_n_max = 1;
    double or_beta = 0.0;
    std::string or_out;
    int or_threads = 0;
    oracle->add_option("--k", or_k)->required();
    oracle->add_option("--beta", or_beta)->required();
    oracle->add_option("--n-max", or_n_max)->required();
    oracle->add_option("--out", or_out, "CSV path")->required();
    oracle->add_option("--threads", or_threads, "worker threads (0: all)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "hypertraffic: " << e.what() << "\n";
        return 2;
    }

    try {
        if (gen->parsed()) {
            FamilySpec spec = gen_family.spec(gen_depth);
            if (gen_depth == kFullDepth && (std::holds_alternative<KAryTree>(spec.variant) ||
                                            std::holds_alternative<Tessellation>(spec.variant)))
                throw InvalidArgument("--depth is required for tree and tess families");
            const Graph g = generate(spec);
            spec.depth = g.max_depth();
            write_file(gen_out, io::graph_to_json(g, io::family_descriptor(spec)));
        } else if (analyze->parsed()) {
            const auto doc = io::graph_from_json(read_file(an_graph));
            const auto spheres = doc.graph.sphere_sizes();
            const auto growth = an_window == 0 ? growth_exponent(spheres) : growth_exponent(spheres, an_window);
            std::optional<HalfInteger> delta;
            if (doc.graph.node_count() <= an_delta_cap) delta = four_point_delta(doc.graph, an_delta_cap);
            write_file(an_out, io::analysis_json(growth, delta));
        } else if (traffic->parsed()) {
            apply_threads(tr_threads);
            const auto doc = io::graph_from_json(read_file(tr_graph));
            const Graph& g = doc.graph;
            const std::uint32_t n = tr_n == kFullDepth ? g.max_depth() : tr_n;
            if (tr_r != kFullDepth && tr_r > n) throw InvalidArgument("--r must not exceed n");
            const RateFunction f = *alpha_opt   ? RateFunction::polynomial(tr_alpha)
                                   : *table_opt ? RateFunction::table(parse_table(tr_table))
                                   : *beta_opt  ? RateFunction::exponential(tr_beta)
                                                : throw InvalidArgument("one of --beta, --alpha, --rate-table is required");
            EngineOptions opts;
            opts.threads = tr_threads;
            opts.include_endpoints = tr_endpoints;
            opts.exact_sigma = tr_exact;
            const auto report = traffic_totals(g, f, n, opts);
            const auto loads = node_loads(g, f, n, opts);
            audit_traffic(report, loads);
            const io::CoreSpec core{tr_epsilon, core_radius(report, tr_epsilon)};
            const auto ratio_r = tr_r == kFullDepth ? std::nullopt : std::optional<std::uint32_t>(tr_r);
            write_file(tr_out, io::traffic_report_json(report, core, ratio_r));
            write_file(tr_loads_out.empty() ? sibling_path(tr_out, ".loads.csv") : tr_loads_out,
                       io::node_loads_csv(g, loads));
        } else if (sw->parsed()) {
            apply_threads(sw_threads);
            if (sw_steps < 1) throw InvalidArgument("--steps must be >= 1");
            if (sw_steps > 1 && !(sw_max > sw_min)) throw InvalidArgument("--beta-max must exceed --beta-min");
            if (sw_rate != "exp" && sw_rate != "poly") throw InvalidArgument("--rate must be exp or poly");
            SweepConfig cfg;
            cfg.family = sw_family.spec(0);
            for (std::size_t i = 0; i < sw_steps; ++i) {
                const double t = sw_steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(sw_steps - 1);
                cfg.betas.push_back(sw_min + t * (sw_max - sw_min));
            }
            cfg.depths = parse_depths(sw_depths);
            cfg.r = sw_r;
            cfg.rate = sw_rate == "exp" ? SweepRate::Exponential : SweepRate::Polynomial;
            cfg.classify = sw_classify;
            cfg.classify.extrapolate = !sw_no_extrapolate;
            cfg.engine.threads = sw_threads;
            const auto report = sweep(cfg);
            write_file(sw_out, io::sweep_csv(report));
            write_file(sw_summary.empty() ? sibling_path(sw_out, ".summary.json") : sw_summary,
                       io::sweep_summary_json(report));
        } else if (oracle->parsed()) {
            apply_threads(or_threads);
            if (or_n_max < 1) throw InvalidArgument("--n-max must be >= 1");
            const auto f = RateFunction::exponential(or_beta);
            EngineOptions opts;
            opts.threads = or_threads;
            std::string csv = "n,T_closed,T_engine,T_rel_err,P_closed,P_engine,P_rel_err\n";
            for (std::uint32_t n = 1; n <= or_n_max; ++n) {
                const Graph tree = gen_kary_tree(or_k, n, or_k);
                const auto closed = tree_closed_forms(or_k, or_beta, n);
                const auto report = traffic_totals(tree, f, n, opts);
                const auto loads = node_loads(tree, f, n, opts);
                const double share = loads[tree.root()] / report.total;
                csv += fmt::format("{},{},{},{},{},{},{}\n", n, io::format_double(closed.total),
                                   io::format_double(report.total),
                                   io::format_double(std::abs(report.total - closed.total) / closed.total),
                                   io::format_double(closed.root_share), io::format_double(share),
                                   io::format_double(std::abs(share - closed.root_share) / closed.root_share));
            }
            write_file(or_out, csv);
        }
    } catch (const Error& e) {
        err << "hypertraffic: " << e.kind() << ": " << e.what() << "\n";
        return exit_code_for(e);
    }
    return 0;
}

}  // namespace hypertraffic
