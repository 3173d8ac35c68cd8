#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "hypertraffic/analysis.hpp"
#include "hypertraffic/generators.hpp"
#include "hypertraffic/metric.hpp"
#include "hypertraffic/traffic.hpp"

namespace hypertraffic::io {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kGraphFormat = "hypertraffic-graph-v1";

/// 17 significant digits, so every double round-trips and output is byte-stable.
std::string format_double(double x);

/// Pretty-printed JSON (2-space indent, scalar arrays on one line) with
/// floats in format_double form. Ends with a newline.
std::string dump(const Json& j);

Json family_descriptor(const FamilySpec& spec);
Json rate_descriptor(const RateFunction& f);

struct GraphDocument {
    Graph graph;
    std::optional<Json> family;
};

std::string graph_to_json(const Graph& g, const std::optional<Json>& family = std::nullopt);

/// Parses "hypertraffic-graph-v1". Depths and layers are rebuilt from the
/// edge list. Throws ParseError on malformed documents; graph errors
/// propagate from Graph::build.
GraphDocument graph_from_json(std::string_view text);

struct CoreSpec {
    double epsilon;
    std::uint32_t r;
};

std::string traffic_report_json(const TrafficReport& report, const std::optional<CoreSpec>& core,
                                std::optional<std::uint32_t> ratio_r = std::nullopt);

/// "node,depth,load" with nodes ascending.
std::string node_loads_csv(const Graph& g, std::span<const double> loads);

std::string analysis_json(const GrowthEstimate& growth, std::optional<HalfInteger> delta_four_point);

/// "family,p_or_k,q,beta,n,r,T,T_r,ratio,label", beta-major.
std::string sweep_csv(const TransitionReport& report);
std::string sweep_summary_json(const TransitionReport& report);

}  // namespace hypertraffic::io
