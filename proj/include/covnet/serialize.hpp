#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "covnet/dismantling.hpp"
#include "covnet/metrics.hpp"
#include "covnet/synthesis.hpp"

namespace covnet {

using Json = nlohmann::ordered_json;

/// Flat object, snake_case keys; percentages stay fractions.
Json to_json(const MetricsReport& r);

Json to_json(const StrategySpec& s);

/// {"strategy": ..., "initial_node_count": ..., "initial_metrics": ..., "steps": [...]}
Json to_json(const DismantlingTrace& t);

inline constexpr const char* kTraceCsvHeader =
    "step,removed_node,node_cost,cumulative_cost,lcc_size,lcc_fraction,density,fragmentation,"
    "mean_betweenness";

/// One row per removal; lcc_fraction is relative to the initial node count.
void write_trace_csv(std::ostream& out, const DismantlingTrace& t);

/// Reads the `hard` / `soft` / `schedule` document (plus optional `roster`
/// and `uncomputable_penalty`). Missing schedule keys keep their defaults.
/// Throws ParseError on malformed JSON or wrong types.
SynthesisTarget parse_target(const Json& doc);
SynthesisTarget parse_target_text(const std::string& text);
Json to_json(const SynthesisTarget& t);

/// Fixed 17-significant-digit formatting used for every numeric CSV field so
/// reruns are byte-identical.
std::string format_real(double x);

}  // namespace covnet
