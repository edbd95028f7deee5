#include "covnet/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "covnet/errors.hpp"

namespace covnet {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json to_json(const MetricsReport& r) {
  Json j;
  j["node_count"] = r.node_count;
  j["edge_count"] = r.edge_count;
  j["density"] = r.density;
  j["fragmentation"] = r.fragmentation;
  j["diameter_lcc"] = r.diameter_lcc;
  j["average_degree"] = r.average_degree;
  j["average_clustering"] = r.average_clustering;
  j["mean_betweenness"] = r.mean_betweenness;
  j["degree_centralization"] = r.degree_centralization;
  Json ev = Json::object();
  for (const auto& [label, score] : r.eigenvector_centrality) ev[label] = score;
  j["eigenvector_centrality"] = std::move(ev);
  return j;
}

Json to_json(const StrategySpec& s) {
  Json j;
  j["kind"] = std::string(to_string(s.kind));
  j["target_lcc_fraction"] = s.target_lcc_fraction;
  j["rng_seed"] = s.rng_seed ? Json(*s.rng_seed) : Json(nullptr);
  j["cost_model"] = std::string(to_string(s.cost_model));
  return j;
}

Json to_json(const DismantlingTrace& t) {
  Json j;
  j["strategy"] = to_json(t.strategy);
  j["initial_node_count"] = t.initial_node_count;
  j["initial_lcc_size"] = t.initial_lcc_size;
  j["initial_metrics"] = t.initial_metrics ? to_json(*t.initial_metrics) : Json(nullptr);
  Json steps = Json::array();
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& s = t.steps[i];
    steps.push_back({{"step", i + 1},
                     {"removed_node", s.node},
                     {"node_cost", s.cost},
                     {"cumulative_cost", s.cumulative_cost},
                     {"lcc_size", s.lcc_size_after},
                     {"density", s.density_after},
                     {"fragmentation", s.fragmentation_after},
                     {"mean_betweenness", s.mean_betweenness_after}});
  }
  j["steps"] = std::move(steps);
  return j;
}

void write_trace_csv(std::ostream& out, const DismantlingTrace& t) {
  out << kTraceCsvHeader << '\n';
  const double n0 = static_cast<double>(t.initial_node_count);
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& s = t.steps[i];
    out << (i + 1) << ',' << s.node << ',' << s.cost << ',' << s.cumulative_cost << ','
        << s.lcc_size_after << ',' << format_real(static_cast<double>(s.lcc_size_after) / n0) << ','
        << format_real(s.density_after) << ',' << format_real(s.fragmentation_after) << ','
        << format_real(s.mean_betweenness_after) << '\n';
  }
}

namespace {

template <typename T>
T get_or(const Json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  return obj.at(key).get<T>();
}

}  // namespace

SynthesisTarget parse_target(const Json& doc) {
  try {
    if (!doc.is_object()) throw ParseError("target document must be a JSON object");
    SynthesisTarget t;
    if (doc.contains("roster")) {
      for (const auto& r : doc.at("roster")) {
        RosterEntry e;
        e.label = r.at("label").get<std::string>();
        if (r.contains("role") && !r.at("role").is_null()) e.role = parse_role(r.at("role").get<std::string>());
        t.roster.push_back(std::move(e));
      }
    }
    const auto& hard = doc.at("hard");
    t.hard.node_count = hard.at("node_count").get<std::size_t>();
    t.hard.edge_count = hard.at("edge_count").get<std::size_t>();
    t.hard.connected = get_or(hard, "connected", false);
    if (hard.contains("degree")) {
      for (const auto& d : hard.at("degree")) {
        t.hard.degrees.push_back({d.at("node").get<std::string>(), d.at("value").get<std::size_t>()});
      }
    }
    if (hard.contains("adjacent")) {
      for (const auto& a : hard.at("adjacent")) {
        if (!a.is_array() || a.size() != 2) throw ParseError("'adjacent' entries must be label pairs");
        t.hard.adjacencies.emplace_back(a[0].get<std::string>(), a[1].get<std::string>());
      }
    }
    if (hard.contains("pair_degree_union")) {
      for (const auto& u : hard.at("pair_degree_union")) {
        const auto& nodes = u.at("nodes");
        if (!nodes.is_array() || nodes.size() != 2) throw ParseError("'pair_degree_union' needs two nodes");
        t.hard.pair_unions.push_back(
            {nodes[0].get<std::string>(), nodes[1].get<std::string>(), u.at("value").get<std::size_t>()});
      }
    }
    if (hard.contains("top_degree")) t.hard.top_degree = hard.at("top_degree").get<std::vector<std::string>>();

    for (const auto& s : doc.at("soft")) {
      SoftTarget st;
      st.metric = s.at("metric").get<std::string>();
      st.value = get_or(s, "value", 0.0);
      st.weight = get_or(s, "weight", 1.0);
      if (s.contains("nodes")) st.nodes = s.at("nodes").get<std::vector<std::string>>();
      t.soft.push_back(std::move(st));
    }
    if (doc.contains("schedule")) {
      const auto& sc = doc.at("schedule");
      auto& out = t.schedule;
      out.initial_temperature = get_or(sc, "initial_temperature", out.initial_temperature);
      out.cooling_factor = get_or(sc, "cooling_factor", out.cooling_factor);
      out.iterations = get_or(sc, "iterations", out.iterations);
      out.rng_seed = get_or(sc, "rng_seed", out.rng_seed);
      out.restarts = get_or(sc, "restarts", out.restarts);
      if (sc.contains("acceptance_bound") && !sc.at("acceptance_bound").is_null()) {
        out.acceptance_bound = sc.at("acceptance_bound").get<double>();
      }
    }
    t.uncomputable_penalty = get_or(doc, "uncomputable_penalty", t.uncomputable_penalty);
    return t;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("synthesis target: ") + e.what());
  }
}

SynthesisTarget parse_target_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("synthesis target: ") + e.what());
  }
  return parse_target(doc);
}

Json to_json(const SynthesisTarget& t) {
  Json j;
  if (!t.roster.empty()) {
    Json roster = Json::array();
    for (const auto& r : t.roster) {
      roster.push_back({{"label", r.label},
                        {"role", r.role ? Json(std::string(to_string(*r.role))) : Json(nullptr)}});
    }
    j["roster"] = std::move(roster);
  }
  Json hard;
  hard["node_count"] = t.hard.node_count;
  hard["edge_count"] = t.hard.edge_count;
  hard["connected"] = t.hard.connected;
  hard["degree"] = Json::array();
  for (const auto& d : t.hard.degrees) hard["degree"].push_back({{"node", d.node}, {"value", d.degree}});
  hard["adjacent"] = Json::array();
  for (const auto& [a, b] : t.hard.adjacencies) hard["adjacent"].push_back({a, b});
  hard["pair_degree_union"] = Json::array();
  for (const auto& u : t.hard.pair_unions) {
    hard["pair_degree_union"].push_back({{"nodes", {u.a, u.b}}, {"value", u.value}});
  }
  hard["top_degree"] = t.hard.top_degree;
  j["hard"] = std::move(hard);
  j["soft"] = Json::array();
  for (const auto& s : t.soft) {
    Json e{{"metric", s.metric}, {"value", s.value}, {"weight", s.weight}};
    if (!s.nodes.empty()) e["nodes"] = s.nodes;
    j["soft"].push_back(std::move(e));
  }
  const auto& sc = t.schedule;
  j["schedule"] = {{"initial_temperature", sc.initial_temperature},
                   {"cooling_factor", sc.cooling_factor},
                   {"iterations", sc.iterations},
                   {"rng_seed", sc.rng_seed},
                   {"restarts", sc.restarts},
                   {"acceptance_bound", std::isfinite(sc.acceptance_bound) ? Json(sc.acceptance_bound)
                                                                           : Json(nullptr)}};
  j["uncomputable_penalty"] = t.uncomputable_penalty;
  return j;
}

}  // namespace covnet
