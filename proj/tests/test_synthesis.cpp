#include <doctest.h>

#include <numeric>

#include "covnet/errors.hpp"
#include "covnet/metrics.hpp"
#include "covnet/serialize.hpp"
#include "covnet/synthesis.hpp"
#include "oracles.hpp"
#include "test_data.hpp"

using namespace covnet;
using doctest::Approx;

namespace {

LabeledGraph complete(int n) {
  oracle::Edges e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return oracle::make_graph(n, e);
}

SynthesisTarget small_target(std::size_t n, std::size_t m) {
  SynthesisTarget t;
  t.hard.node_count = n;
  t.hard.edge_count = m;
  return t;
}

}  // namespace

TEST_CASE("objective examples") {
  auto k4 = complete(4);
  auto t = small_target(4, 6);
  t.soft = {{"density", 0.5, 1.0, {}}};
  CHECK(objective(k4, t) == 0.25);

  t.soft = {{"density", 0.5, 1.0, {}}, {"average_clustering", 0.2, 3.0, {}}, {"diameter", 2.0, 0.5, {}}};
  const double base = objective(k4, t);
  for (auto& s : t.soft) s.weight *= 2;
  CHECK(objective(k4, t) == Approx(2 * base).epsilon(1e-15));

  auto tri = complete(3);
  auto tt = small_target(3, 3);
  tt.soft = {{"density", 1.0, 1.0, {}}};
  CHECK(objective(tri, tt) == 0.0);
}

TEST_CASE("uncomputable metric costs the configured penalty") {
  auto g = oracle::make_graph(4, {});
  auto t = small_target(4, 0);
  t.soft = {{"diameter", 2.0, 3.0, {}}};
  t.uncomputable_penalty = 7.0;
  CHECK(objective(g, t) == 21.0);
}

TEST_CASE("objective ignores node labels for unlabeled targets") {
  Rng rng(6);
  auto t = small_target(12, 0);
  t.soft = {{"average_clustering", 0.3, 1.0, {}},
            {"mean_betweenness", 0.1, 2.0, {}},
            {"degree_centralization", 0.2, 1.0, {}}};
  for (int trial = 0; trial < 20; ++trial) {
    auto e = oracle::gnp_edges(12, 0.4, rng);
    std::vector<int> perm(12);
    std::iota(perm.begin(), perm.end(), 0);
    rng.partial_shuffle(perm, perm.size());
    oracle::Edges pe;
    for (auto [u, v] : e) pe.emplace_back(perm[u], perm[v]);
    CHECK(objective(oracle::make_graph(12, e), t) ==
          Approx(objective(oracle::make_graph(12, pe), t)).epsilon(1e-12));
  }
}

TEST_CASE("list metrics") {
  // star: center n00 dominates eigenvector centrality
  auto g = oracle::make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}});
  SoftTarget top{"eigenvector_top", 0.0, 1.0, {"n00", "n01"}};
  CHECK(soft_metric(g, top) == 0.0);
  top.nodes = {"n00", "n04"};
  CHECK(soft_metric(g, top) == 1.0);

  auto barbell = oracle::make_graph(6, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}});
  SoftTarget prefix{"gnd_prefix", 0.0, 1.0, {"n02"}};
  CHECK(soft_metric(barbell, prefix) == 0.0);
  prefix.nodes = {"n00", "n02"};
  CHECK(soft_metric(barbell, prefix) == 2.0);
}

TEST_CASE("feasibility checks") {
  CHECK_THROWS_AS(check_feasibility(small_target(3, 4)), InfeasibleError);
  auto t = small_target(5, 4);
  t.hard.degrees = {{"v1", 5}};
  CHECK_THROWS_AS(check_feasibility(t), InfeasibleError);
  t.hard.degrees = {{"v1", 4}, {"v2", 4}};
  CHECK_THROWS_AS(check_feasibility(t), InfeasibleError);  // needs more than 4 edges
  auto c = small_target(5, 3);
  c.hard.connected = true;
  CHECK_THROWS_AS(check_feasibility(c), InfeasibleError);
  CHECK_NOTHROW(check_feasibility(small_target(5, 4)));
  CHECK_THROWS_AS(synthesize_reference(small_target(3, 4)), InfeasibleError);
}

TEST_CASE("target validation") {
  auto t = small_target(4, 3);
  t.soft = {{"density", 0.5, 0.0, {}}};
  CHECK_THROWS_AS(t.validate(), PreconditionError);
  t.soft = {{"wobble", 0.5, 1.0, {}}};
  CHECK_THROWS_AS(t.validate(), PreconditionError);
  t.soft = {{"eigenvector_top", 0.0, 1.0, {"v9"}}};
  CHECK_THROWS_AS(t.validate(), PreconditionError);
  t.soft.clear();
  t.schedule.cooling_factor = 1.0;
  CHECK_THROWS_AS(t.validate(), PreconditionError);
  CHECK(small_target(12, 0).labels().front() == "v01");
}

TEST_CASE("an initial graph already at the target comes back unchanged") {
  auto t = small_target(3, 3);
  t.soft = {{"density", 1.0, 1.0, {}}};
  std::vector<std::string> labels{"v1", "v2", "v3"};
  auto init = LabeledGraph::from_edges(labels, std::vector<std::pair<std::string, std::string>>{
                                                   {"v1", "v2"}, {"v2", "v3"}, {"v1", "v3"}});
  auto res = synthesize_reference(t, init);
  CHECK(res.objective == 0.0);
  CHECK(res.graph == init);
}

TEST_CASE("toy target is met exactly and hard constraints always hold") {
  SynthesisTarget t = small_target(8, 12);
  t.hard.connected = true;
  t.hard.degrees = {{"v1", 5}};
  t.hard.adjacencies = {{"v1", "v2"}};
  t.hard.top_degree = {"v1"};
  t.soft = {{"diameter", 2.0, 1.0, {}}};
  t.schedule.iterations = 5000;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    t.schedule.rng_seed = seed;
    auto res = synthesize_reference(t);
    CHECK(hard_violations(res.graph, t.hard).empty());
    CHECK(res.objective == 0.0);
    CHECK(diameter_lcc(res.graph) == 2);
  }
}

TEST_CASE("same seed, same graph; restarts keep the best chain") {
  SynthesisTarget t = small_target(10, 15);
  t.hard.connected = true;
  t.soft = {{"average_clustering", 0.4, 1.0, {}}, {"mean_betweenness", 0.1, 1.0, {}}};
  t.schedule.iterations = 3000;
  t.schedule.rng_seed = 17;
  auto a = synthesize_reference(t);
  auto b = synthesize_reference(t);
  CHECK(a.graph == b.graph);
  CHECK(a.objective == b.objective);

  t.schedule.restarts = 3;
  auto best = synthesize_reference(t);
  CHECK(best.objective <= a.objective);
  for (std::size_t r = 0; r < 3; ++r) {
    auto single = t;
    single.schedule.restarts = 1;
    single.schedule.rng_seed = 17 + r;
    CHECK(best.objective <= synthesize_reference(single).objective);
  }
}

TEST_CASE("acceptance bound is reported") {
  SynthesisTarget t = small_target(6, 5);
  t.soft = {{"density", 0.9, 1.0, {}}};
  t.schedule.iterations = 100;
  t.schedule.acceptance_bound = 0.01;
  auto res = synthesize_reference(t);
  CHECK_FALSE(res.within_bound);
}

TEST_CASE("default Chiapas target") {
  auto t = chiapas_target();
  CHECK_NOTHROW(t.validate());
  CHECK_NOTHROW(check_feasibility(t));
  CHECK(t.hard.node_count == 34);
  CHECK(t.hard.edge_count == 225);
  CHECK(t.roster.size() == 34);

  auto g = load_edge_list_file(test_data::reference_edges());
  g = load_roles_text(test_data::slurp(test_data::reference_roles()), g);
  CHECK(hard_violations(g, t.hard).empty());
  CHECK(g.degree("Ex1") + g.degree("P1") - (g.has_edge("Ex1", "P1") ? 1 : 0) == 53);
  CHECK(density(g) == Approx(0.40107).epsilon(1e-4));
  CHECK(*g.role("Rv1") == Role::RecruiterVictim);
  CHECK(objective(g, t) < 1e-6);
}

TEST_CASE("target JSON round trip") {
  auto t = chiapas_target();
  auto back = parse_target(to_json(t));
  CHECK(to_json(back).dump() == to_json(t).dump());
  CHECK(to_json(parse_target_text(test_data::slurp(test_data::chiapas_target()))).dump() ==
        to_json(t).dump());
  CHECK_THROWS_AS(parse_target_text("{ not json"), ParseError);
  CHECK_THROWS_AS(parse_target_text(R"({"hard": {"node_count": "ten"}})"), ParseError);
}
