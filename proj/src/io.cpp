#include "hypertraffic/io.hpp"

#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "hypertraffic/errors.hpp"

namespace hypertraffic::io {
namespace {

bool is_scalar_array(const Json& j) {
    for (const auto& e : j)
        if (e.is_structured()) return false;
    return true;
}

void dump_into(const Json& j, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case Json::value_t::number_float:
            out += std::isfinite(j.get<double>()) ? format_double(j.get<double>()) : "null";
            return;
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) out += ",\n";
                first = false;
                out += inner + Json(key).dump() + ": ";
                dump_into(value, out, indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            if (is_scalar_array(j)) {
                out += "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) out += ", ";
                    dump_into(j[i], out, indent + 1);
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                out += inner;
                dump_into(j[i], out, indent + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        default:
            out += j.dump();
    }
}

std::string family_name(const FamilySpec& spec) {
    struct Visitor {
        std::string operator()(const KAryTree&) const { return "tree"; }
        std::string operator()(const Tessellation&) const { return "tessellation"; }
        std::string operator()(const Grid&) const { return "grid"; }
        std::string operator()(const EdgeListFile&) const { return "edge_list"; }
    };
    return std::visit(Visitor{}, spec.variant);
}

std::pair<std::string, std::string> family_params(const FamilySpec& spec) {
    struct Visitor {
        std::pair<std::string, std::string> operator()(const KAryTree& t) const {
            return {std::to_string(t.k), std::to_string(t.root_degree)};
        }
        std::pair<std::string, std::string> operator()(const Tessellation& t) const {
            return {std::to_string(t.p), std::to_string(t.q)};
        }
        std::pair<std::string, std::string> operator()(const Grid& g) const { return {std::to_string(g.side), ""}; }
        std::pair<std::string, std::string> operator()(const EdgeListFile&) const { return {"", ""}; }
    };
    return std::visit(Visitor{}, spec.variant);
}

template <typename T>
T require(const Json& doc, const char* field) {
    if (!doc.contains(field)) throw ParseError(std::string("graph document lacks '") + field + "'");
    try {
        return doc.at(field).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ParseError(std::string("graph document field '") + field + "' has the wrong type");
    }
}

}  // namespace

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

std::string dump(const Json& j) {
    std::string out;
    dump_into(j, out, 0);
    out += "\n";
    return out;
}

Json family_descriptor(const FamilySpec& spec) {
    Json j;
    j["variant"] = family_name(spec);
    struct Visitor {
        Json& j;
        void operator()(const KAryTree& t) const {
            j["k"] = t.k;
            j["root_degree"] = t.root_degree;
        }
        void operator()(const Tessellation& t) const {
            j["p"] = t.p;
            j["q"] = t.q;
        }
        void operator()(const Grid& g) const { j["side"] = g.side; }
        void operator()(const EdgeListFile& f) const { j["source"] = f.path; }
    };
    std::visit(Visitor{j}, spec.variant);
    j["depth"] = spec.depth;
    return j;
}

Json rate_descriptor(const RateFunction& f) {
    Json j;
    j["kind"] = f.kind_name();
    switch (f.kind()) {
        case RateFunction::Kind::Exponential: j["beta"] = f.parameter(); break;
        case RateFunction::Kind::Polynomial: j["alpha"] = f.parameter(); break;
        case RateFunction::Kind::Table: j["values"] = f.values(); break;
    }
    return j;
}

std::string graph_to_json(const Graph& g, const std::optional<Json>& family) {
    Json j;
    j["format"] = kGraphFormat;
    j["root"] = g.root();
    j["node_count"] = g.node_count();
    Json edges = Json::array();
    for (const auto& e : g.edges()) edges.push_back(Json::array({e.u, e.v}));
    j["edges"] = std::move(edges);
    if (family) j["family"] = *family;
    return dump(j);
}

GraphDocument graph_from_json(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("graph document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("graph document must be a JSON object");
    if (require<std::string>(doc, "format") != kGraphFormat)
        throw ParseError("unsupported graph format '" + doc["format"].get<std::string>() + "'");
    const auto root = require<NodeId>(doc, "root");
    const auto node_count = require<std::size_t>(doc, "node_count");
    if (!doc.contains("edges") || !doc["edges"].is_array()) throw ParseError("graph document lacks an 'edges' array");
    std::vector<Edge> edges;
    edges.reserve(doc["edges"].size());
    for (const auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
            throw ParseError("every edge must be a pair of non-negative integers");
        edges.push_back({e[0].get<NodeId>(), e[1].get<NodeId>()});
    }
    std::optional<Json> family;
    if (doc.contains("family")) family = doc["family"];
    return {Graph::build(edges, root, node_count), std::move(family)};
}

std::string traffic_report_json(const TrafficReport& report, const std::optional<CoreSpec>& core,
                                std::optional<std::uint32_t> ratio_r) {
    Json j;
    j["n"] = report.n;
    j["rate"] = rate_descriptor(report.rate);
    j["T"] = report.total;
    j["T_r"] = report.ball;
    if (ratio_r) {
        j["r"] = *ratio_r;
        j["ratio"] = report.ratio(*ratio_r);
    }
    if (core) j["core"] = Json{{"epsilon", core->epsilon}, {"r", core->r}};
    Json hist = Json::array();
    for (std::size_t h = 0; h < report.h_histogram.size(); ++h)
        hist.push_back(Json{{"h", h}, {"pairs", report.h_histogram[h].pairs}, {"mass", report.h_histogram[h].mass}});
    j["h_histogram"] = std::move(hist);
    return dump(j);
}

std::string node_loads_csv(const Graph& g, std::span<const double> loads) {
    std::string out = "node,depth,load\n";
    for (NodeId v = 0; v < g.node_count(); ++v)
        out += fmt::format("{},{},{}\n", v, g.depth(v), format_double(loads[v]));
    return out;
}

std::string analysis_json(const GrowthEstimate& growth, std::optional<HalfInteger> delta_four_point) {
    Json j;
    j["spheres"] = growth.sphere_sizes;
    j["window"] = growth.window;
    j["e_ratio"] = growth.e_ratio;
    j["e_slope"] = growth.e_slope;
    j["beta_c_pred"] = beta_c(growth.e_ratio);
    if (delta_four_point)
        j["delta_four_point"] = delta_four_point->value();
    else
        j["delta_four_point"] = nullptr;
    return dump(j);
}

std::string sweep_csv(const TransitionReport& report) {
    const auto& cfg = report.config;
    const auto family = family_name(cfg.family);
    const auto [pk, q] = family_params(cfg.family);
    std::string out = "family,p_or_k,q,beta,n,r,T,T_r,ratio,label\n";
    for (std::size_t i = 0; i < cfg.betas.size(); ++i)
        for (std::size_t j = 0; j < cfg.depths.size(); ++j) {
            const auto& c = report.cell(i, j);
            if (c.error) {
                out += fmt::format("{},{},{},{},{},{},,,,ERROR\n", family, pk, q, format_double(c.beta), c.n, cfg.r);
                continue;
            }
            out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", family, pk, q, format_double(c.beta), c.n, cfg.r,
                               format_double(c.total), format_double(c.ball), format_double(c.ratio),
                               to_string(report.labels[i]));
        }
    return out;
}

std::string sweep_summary_json(const TransitionReport& report) {
    const auto& cfg = report.config;
    Json j;
    j["family"] = family_descriptor(cfg.family);
    j["family"].erase("depth");
    j["rate"] = cfg.rate == SweepRate::Exponential ? "exponential" : "polynomial";
    j["r"] = cfg.r;
    j["betas"] = cfg.betas;
    j["depths"] = cfg.depths;
    j["spheres"] = report.growth.sphere_sizes;
    j["window"] = report.growth.window;
    j["e_ratio"] = report.growth.e_ratio;
    j["e_slope"] = report.growth.e_slope;
    j["beta_c_pred"] = report.beta_c_pred;
    if (report.beta_c_emp)
        j["beta_c_emp"] = *report.beta_c_emp;
    else
        j["beta_c_emp"] = nullptr;
    j["classification"] = Json{{"tail", cfg.classify.tail},
                               {"tau_g", cfg.classify.tau_global},
                               {"tau_l", cfg.classify.tau_local},
                               {"tolerance", cfg.classify.tolerance}};
    Json labels = Json::array();
    for (std::size_t i = 0; i < cfg.betas.size(); ++i)
        labels.push_back(Json{{"beta", cfg.betas[i]}, {"label", to_string(report.labels[i])}});
    j["labels"] = std::move(labels);
    Json errors = Json::array();
    for (const auto& c : report.cells)
        if (c.error) errors.push_back(Json{{"beta", c.beta}, {"n", c.n}, {"error", *c.error}});
    j["errors"] = std::move(errors);
    return dump(j);
}

}  // namespace hypertraffic::io
