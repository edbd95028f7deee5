#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "covnet/dismantling.hpp"
#include "covnet/errors.hpp"
#include "covnet/graph.hpp"
#include "covnet/metrics.hpp"
#include "covnet/sampling.hpp"
#include "covnet/serialize.hpp"
#include "covnet/synthesis.hpp"

namespace covnet::cli {

namespace {

constexpr double kThresholds[] = {0.2, 0.5, 0.8};

struct GraphArgs {
  std::string input;
  std::string roles;
};

LabeledGraph load_graph(const GraphArgs& a) {
  auto g = load_edge_list_file(a.input);
  if (!a.roles.empty()) {
    std::ifstream in(a.roles);
    if (!in) throw ParseError("cannot open '" + a.roles + "'");
    g = load_roles(in, g);
  }
  return g;
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot write '" + path + "'");
  f << text;
}

std::string threshold_key(double p) {
  std::ostringstream s;
  s << p;
  return s.str();
}

std::string metrics_table(const MetricsReport& r) {
  std::ostringstream s;
  s << std::left << std::setprecision(6);
  auto row = [&](const char* name, auto value) { s << std::setw(26) << name << value << '\n'; };
  row("nodes", r.node_count);
  row("edges", r.edge_count);
  row("density", r.density);
  row("fragmentation", r.fragmentation);
  row("diameter (LCC)", r.diameter_lcc);
  row("average degree", r.average_degree);
  row("average clustering", r.average_clustering);
  row("mean betweenness", r.mean_betweenness);
  row("degree centralization", r.degree_centralization);
  std::vector<std::pair<std::string, double>> ev(r.eigenvector_centrality.begin(),
                                                 r.eigenvector_centrality.end());
  std::stable_sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  s << "eigenvector centrality (top 5)\n";
  for (std::size_t i = 0; i < std::min<std::size_t>(5, ev.size()); ++i) {
    s << "  " << std::setw(24) << ev[i].first << ev[i].second << '\n';
  }
  return s.str();
}

// --- metrics -----------------------------------------------------------------

int cmd_metrics(const GraphArgs& ga, const std::string& format, const std::string& output,
                std::ostream& out) {
  const auto g = load_graph(ga);
  const auto r = report(g);
  const std::string text = format == "table" ? metrics_table(r) : to_json(r).dump(2) + "\n";
  write_text(output, text, out);
  return kOk;
}

// --- dismantle -----------------------------------------------------------------

void print_thresholds(const DismantlingTrace& t, std::ostream& s) {
  for (double p : kThresholds) {
    s << "dismantling " << threshold_key(p) << ": ";
    try {
      s << "cost " << threshold_cost(t, p) << '\n';
    } catch (const PreconditionError&) {
      s << "not reached\n";
    }
  }
}

int cmd_dismantle(const GraphArgs& ga, const StrategySpec& spec, const std::string& format,
                  const std::string& output, std::ostream& out, std::ostream& err) {
  const auto g = load_graph(ga);
  const auto trace = dismantle(g, spec);
  std::ostringstream doc;
  if (format == "json") {
    doc << to_json(trace).dump(2) << '\n';
  } else {
    write_trace_csv(doc, trace);
  }
  write_text(output, doc.str(), out);
  print_thresholds(trace, output.empty() ? err : out);
  return kOk;
}

// --- compare -------------------------------------------------------------------

Json curves(const DismantlingTrace& t) {
  const double n0 = static_cast<double>(t.initial_node_count);
  Json lcc = Json::array(), cost = Json::array(), dens = Json::array(), btw = Json::array(),
       nodes = Json::array();
  if (t.initial_metrics) {
    lcc.push_back(static_cast<double>(t.initial_lcc_size) / n0);
    cost.push_back(0);
    dens.push_back(t.initial_metrics->density);
    btw.push_back(t.initial_metrics->mean_betweenness);
    nodes.push_back(nullptr);
  }
  for (const auto& s : t.steps) {
    lcc.push_back(static_cast<double>(s.lcc_size_after) / n0);
    cost.push_back(s.cumulative_cost);
    dens.push_back(s.density_after);
    btw.push_back(s.mean_betweenness_after);
    nodes.push_back(s.node);
  }
  return {{"lcc_fraction", lcc},
          {"removed_node", nodes},
          {"cost_curve", cost},
          {"density_curve", dens},
          {"betweenness_curve", btw}};
}

Json threshold_json(const DismantlingTrace& t) {
  Json j;
  for (double p : kThresholds) j[threshold_key(p)] = threshold_cost(t, p);
  return j;
}

// Random replicates fan out over a small worker pool; results land in seed
// order so the output does not depend on scheduling.
std::vector<DismantlingTrace> random_replicates(const LabeledGraph& g, StrategySpec spec,
                                                std::uint64_t base_seed, std::size_t runs) {
  std::vector<DismantlingTrace> traces(runs);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(runs, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w, spec]() mutable {
      for (std::size_t r = w; r < runs; r += workers) {
        spec.rng_seed = base_seed + r;
        traces[r] = random_strategy(g, spec);
      }
    }));
  }
  for (auto& j : jobs) j.get();
  return traces;
}

int cmd_compare(const GraphArgs& ga, double target, std::size_t runs, std::uint64_t seed,
                CostModel model, const std::string& format, const std::string& output,
                std::ostream& out, std::ostream& err) {
  if (runs < 1) throw PreconditionError("--runs must be at least 1");
  const auto g = load_graph(ga);

  StrategySpec hub{StrategyKind::Hub, target, std::nullopt, model};
  StrategySpec nd{StrategyKind::GND, target, std::nullopt, model};
  StrategySpec rnd{StrategyKind::Random, target, seed, model};
  auto hub_future = std::async(std::launch::async, [&] { return hub_strategy(g, hub); });
  auto gnd_future = std::async(std::launch::async, [&] { return gnd(g, nd); });
  const auto replicates = random_replicates(g, rnd, seed, runs);
  const auto hub_trace = hub_future.get();
  const auto gnd_trace = gnd_future.get();
  const auto& random_trace = replicates.front();

  Json mean, stddev;
  for (double p : kThresholds) {
    std::vector<double> costs;
    for (const auto& t : replicates) costs.push_back(static_cast<double>(threshold_cost(t, p)));
    double mu = 0.0;
    for (double c : costs) mu += c;
    mu /= static_cast<double>(costs.size());
    double var = 0.0;
    for (double c : costs) var += (c - mu) * (c - mu);
    var = costs.size() > 1 ? var / static_cast<double>(costs.size() - 1) : 0.0;
    mean[threshold_key(p)] = mu;
    stddev[threshold_key(p)] = std::sqrt(var);
  }

  Json report;
  report["input_node_count"] = g.node_count();
  report["target_lcc_fraction"] = target;
  report["cost_model"] = std::string(to_string(model));
  Json strategies;
  auto strategy_entry = [&](const DismantlingTrace& t) {
    Json e;
    e["strategy"] = to_json(t.strategy);
    e["total_cost"] = t.total_cost();
    e["threshold_costs"] = threshold_json(t);
    e["curves"] = curves(t);
    return e;
  };
  strategies["random"] = strategy_entry(random_trace);
  strategies["hub"] = strategy_entry(hub_trace);
  strategies["gnd"] = strategy_entry(gnd_trace);
  report["strategies"] = std::move(strategies);
  report["random_baseline"] = {{"runs", runs}, {"first_seed", seed}, {"mean", mean}, {"stddev", stddev}};
  Json table = Json::array();
  auto table_row = [&](const char* name, const Json& costs) {
    Json row{{"strategy", name}};
    for (double p : kThresholds) row[threshold_key(p)] = costs[threshold_key(p)];
    table.push_back(std::move(row));
  };
  table_row("random", mean);
  table_row("hub", threshold_json(hub_trace));
  table_row("gnd", threshold_json(gnd_trace));
  report["threshold_table"] = table;

  std::ostringstream doc;
  if (format == "csv") {
    doc << "strategy," << kTraceCsvHeader << '\n';
    for (auto [name, t] : {std::pair{"random", &random_trace}, {"hub", &hub_trace}, {"gnd", &gnd_trace}}) {
      std::ostringstream rows;
      write_trace_csv(rows, *t);
      std::istringstream lines(rows.str());
      std::string line;
      std::getline(lines, line);  // header
      while (std::getline(lines, line)) doc << name << ',' << line << '\n';
    }
  } else if (format == "table") {
    doc << std::left << std::setw(10) << "strategy";
    for (double p : kThresholds) doc << std::setw(14) << ("cost@" + threshold_key(p));
    doc << '\n';
    for (const auto& row : table) {
      doc << std::setw(10) << row["strategy"].get<std::string>();
      for (double p : kThresholds) {
        std::ostringstream cell;
        cell << std::setprecision(6) << row[threshold_key(p)].get<double>();
        doc << std::setw(14) << cell.str();
      }
      doc << '\n';
    }
  } else {
    doc << report.dump(2) << '\n';
  }
  write_text(output, doc.str(), out);
  (void)err;
  return kOk;
}

// --- sample --------------------------------------------------------------------

int cmd_sample(const GraphArgs& ga, const SamplingConfig& cfg, const std::string& output,
               std::ostream& out, std::ostream& err) {
  const auto g = load_graph(ga);
  const auto res = snowball_with_stats(g, cfg);
  std::ostringstream doc;
  write_edge_list(doc, res.sample);
  write_text(output, doc.str(), out);
  auto& log = output.empty() ? err : out;
  for (const auto& w : res.waves) {
    log << "wave " << w.wave << ": interviewed " << w.interviewed << ", nodes " << w.nodes_total
        << ", edges " << w.edges_total << '\n';
  }
  return kOk;
}

// --- synthesize ----------------------------------------------------------------

Json synthesis_report(const SynthesisTarget& target, const SynthesisResult& res) {
  Json j;
  j["objective"] = res.objective;
  j["within_bound"] = res.within_bound;
  j["restart"] = res.restart;
  j["hard_violations"] = hard_violations(res.graph, target.hard);
  Json soft = Json::array();
  for (const auto& s : target.soft) {
    Json e{{"metric", s.metric}, {"target", s.value}, {"weight", s.weight}};
    if (!s.nodes.empty()) e["nodes"] = s.nodes;
    try {
      e["achieved"] = soft_metric(res.graph, s);
    } catch (const std::exception&) {
      e["achieved"] = nullptr;
    }
    soft.push_back(std::move(e));
  }
  j["soft"] = std::move(soft);
  try {
    j["metrics"] = to_json(report(res.graph));
  } catch (const PreconditionError&) {
    j["metrics"] = nullptr;
  }
  return j;
}

struct SynthArgs {
  std::string target_path;
  std::string output;
  std::string roles_output;
  std::string report_output;
  std::optional<std::size_t> iterations;
  std::optional<std::uint64_t> rng_seed;
  std::optional<std::size_t> restarts;
  bool print_target = false;
};

int cmd_synthesize(const SynthArgs& a, std::ostream& out, std::ostream& err) {
  SynthesisTarget target = chiapas_target();
  if (!a.target_path.empty()) {
    std::ifstream in(a.target_path);
    if (!in) throw ParseError("cannot open '" + a.target_path + "'");
    std::stringstream text;
    text << in.rdbuf();
    target = parse_target_text(text.str());
  }
  if (a.iterations) target.schedule.iterations = *a.iterations;
  if (a.rng_seed) target.schedule.rng_seed = *a.rng_seed;
  if (a.restarts) target.schedule.restarts = *a.restarts;
  if (a.print_target) {
    write_text(a.output, to_json(target).dump(2) + "\n", out);
    return kOk;
  }

  const auto res = synthesize_reference(target);
  std::ostringstream edges, roles;
  write_edge_list(edges, res.graph);
  write_roles(roles, res.graph);
  write_text(a.output, edges.str(), out);
  std::string roles_path = a.roles_output;
  std::string report_path = a.report_output;
  if (!a.output.empty()) {
    if (roles_path.empty()) roles_path = a.output + ".roles.csv";
    if (report_path.empty()) report_path = a.output + ".report.json";
  }
  if (!roles_path.empty()) write_text(roles_path, roles.str(), out);
  const auto rep = synthesis_report(target, res).dump(2) + "\n";
  if (report_path.empty()) {
    err << rep;
  } else {
    write_text(report_path, rep, out);
  }
  if (!res.within_bound) {
    err << "synthesis objective " << res.objective << " is above the acceptance bound "
        << target.schedule.acceptance_bound << '\n';
    return kInfeasible;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Covert network analysis and dismantling toolkit", "covnet"};
  app.require_subcommand(1);

  GraphArgs ga;
  std::string output, format;
  double target_lcc = 0.2;
  std::uint64_t seed = 1;
  std::string strategy, cost_model = "residual";
  std::size_t runs = 100;
  SamplingConfig sampling;
  bool no_mutual = false;
  SynthArgs synth;

  auto add_graph = [&](CLI::App* sub) {
    sub->add_option("--input", ga.input, "Edge-list file")->required();
    sub->add_option("--roles", ga.roles, "label,role CSV");
  };
  const auto strategies = std::vector<std::string>{"random", "hub", "gnd"};
  const auto models = std::vector<std::string>{"residual", "original"};

  auto* metrics = app.add_subcommand("metrics", "Topology and centrality report");
  add_graph(metrics);
  metrics->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));
  metrics->add_option("--output", output);

  auto* dis = app.add_subcommand("dismantle", "Run one removal strategy and write its trace");
  add_graph(dis);
  dis->add_option("--strategy", strategy)->required()->check(CLI::IsMember(strategies));
  dis->add_option("--target-lcc", target_lcc, "Stop once LCC <= fraction of n");
  dis->add_option("--seed", seed, "RNG seed (random strategy)");
  dis->add_option("--cost-model", cost_model)->check(CLI::IsMember(models));
  dis->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  dis->add_option("--output", output);

  auto* cmp = app.add_subcommand("compare", "Compare random, hub and GND strategies");
  add_graph(cmp);
  cmp->add_option("--runs", runs, "Random replicates");
  cmp->add_option("--seed", seed, "First random seed");
  cmp->add_option("--target-lcc", target_lcc);
  cmp->add_option("--cost-model", cost_model)->check(CLI::IsMember(models));
  cmp->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "table"}));
  cmp->add_option("--output", output);

  auto* smp = app.add_subcommand("sample", "Snowball-sample a ground-truth network");
  add_graph(smp);
  smp->add_option("--seeds", sampling.seed_count, "Initial seeds");
  smp->add_option("--k", sampling.names_per_interview, "Names per interview");
  smp->add_option("--waves", sampling.waves, "Expansion waves");
  smp->add_option("--rng-seed,--seed", sampling.rng_seed);
  smp->add_flag("--no-mutual", no_mutual, "Keep edges named by only one side");
  smp->add_option("--output", output);

  auto* syn = app.add_subcommand("synthesize", "Anneal a graph matching a target statistic set");
  syn->add_option("--target", synth.target_path, "Target JSON (default: built-in reference target)");
  syn->add_option("--output", synth.output, "Edge-list output");
  syn->add_option("--roles", synth.roles_output, "Roles CSV output (default: OUTPUT.roles.csv)");
  syn->add_option("--report", synth.report_output, "Report JSON (default: OUTPUT.report.json)");
  syn->add_option("--iterations", synth.iterations);
  syn->add_option("--rng-seed,--seed", synth.rng_seed);
  syn->add_option("--restarts", synth.restarts);
  syn->add_flag("--print-target", synth.print_target, "Write the target JSON and exit");

  std::vector<const char*> argv{"covnet"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kPrecondition;
  }

  try {
    if (*metrics) return cmd_metrics(ga, format.empty() ? "json" : format, output, out);
    if (*dis) {
      StrategySpec spec;
      spec.kind = parse_strategy(strategy);
      spec.target_lcc_fraction = target_lcc;
      spec.cost_model = parse_cost_model(cost_model);
      if (spec.kind == StrategyKind::Random) spec.rng_seed = seed;
      if (format.empty()) format = "csv";
      return cmd_dismantle(ga, spec, format, output, out, err);
    }
    if (*cmp) {
      return cmd_compare(ga, target_lcc, runs, seed, parse_cost_model(cost_model),
                         format.empty() ? "json" : format, output, out, err);
    }
    if (*smp) {
      sampling.mutual_confirmation = !no_mutual;
      return cmd_sample(ga, sampling, output, out, err);
    }
    if (*syn) return cmd_synthesize(synth, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kIoOrParse;
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  }
  return kPrecondition;
}

}  // namespace covnet::cli
