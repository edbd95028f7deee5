#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "covnet/errors.hpp"
#include "covnet/metrics.hpp"
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

LabeledGraph cycle(int n) {
  oracle::Edges e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return oracle::make_graph(n, e);
}

LabeledGraph star(int leaves) {
  oracle::Edges e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return oracle::make_graph(leaves + 1, e);
}

LabeledGraph path(int n) {
  oracle::Edges e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return oracle::make_graph(n, e);
}

}  // namespace

TEST_CASE("density") {
  CHECK(density(complete(4)) == 1.0);
  CHECK(density(oracle::make_graph(5, {})) == 0.0);
  Rng rng(3);
  auto g = oracle::make_graph(34, oracle::gnm_edges(34, 225, rng));
  CHECK(density(g) == Approx(225.0 / 561.0).epsilon(1e-15));
  CHECK(std::abs(density(g) - 0.40107) < 1e-5);
  CHECK_THROWS_AS(density(oracle::make_graph(1, {})), PreconditionError);
}

TEST_CASE("fragmentation") {
  CHECK(fragmentation(complete(6)) == 0.0);
  CHECK(fragmentation(oracle::make_graph(6, {})) == 1.0);
  CHECK(fragmentation(path(3)) == Approx(1.0 - 4.0 / 6.0));
}

TEST_CASE("fragmentation plus density is one") {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_index(49));
    auto g = oracle::make_graph(n, oracle::gnp_edges(n, rng.uniform_real(), rng));
    CHECK(std::abs(fragmentation(g) + density(g) - 1.0) <= 1e-12);
  }
}

TEST_CASE("average_degree") {
  Rng rng(9);
  auto g = oracle::make_graph(34, oracle::gnm_edges(34, 225, rng));
  CHECK(std::abs(average_degree(g) - 13.2353) < 1e-4);
  CHECK(average_degree(cycle(5)) == 2.0);
  CHECK(average_degree(star(3)) == 1.5);
}

TEST_CASE("diameter_lcc") {
  CHECK(diameter_lcc(complete(5)) == 1);
  CHECK(diameter_lcc(path(4)) == 3);
  // the long path is off the largest component
  auto g = oracle::make_graph(9, {{0, 1}, {1, 2}, {3, 4}, {3, 5}, {3, 6}, {4, 5}, {7, 8}});
  CHECK(diameter_lcc(g) == 2);
  CHECK_THROWS_AS(diameter_lcc(oracle::make_graph(3, {})), PreconditionError);
}

TEST_CASE("local and average clustering") {
  auto tri = complete(3);
  CHECK(local_clustering(tri, "n00") == 1.0);
  CHECK(local_clustering(star(4), "n00") == 0.0);
  CHECK(local_clustering(star(4), "n01") == 0.0);
  CHECK(average_clustering(complete(6)) == 1.0);
  CHECK(average_clustering(path(7)) == 0.0);
  CHECK(average_clustering(star(5)) == 0.0);
  // kite: triangle abc plus pendant d on c
  auto kite = oracle::make_graph(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  CHECK(local_clustering(kite, "n02") == Approx(1.0 / 3.0));
  CHECK(average_clustering(kite) == Approx((1.0 + 1.0 + 1.0 / 3.0) / 4.0));
}

TEST_CASE("betweenness small cases") {
  auto b = betweenness(path(3));
  CHECK(b[1] == 1.0);
  CHECK(b[0] == 0.0);
  auto k4 = betweenness(complete(4));
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(k4[i] == 0.0);
  auto s = betweenness(star(5));
  CHECK(s[0] == Approx(1.0));
  CHECK_THROWS_AS(betweenness(path(2)), PreconditionError);
}

TEST_CASE("betweenness matches path enumeration on every connected graph up to 6 nodes") {
  for (int n = 3; n <= 6; ++n) {
    for (const auto& e : oracle::connected_graph_classes(n)) {
      auto got = betweenness(oracle::make_graph(n, e));
      auto want = oracle::brute_betweenness(n, e);
      for (int i = 0; i < n; ++i) REQUIRE(got[i] == Approx(want[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("betweenness on disconnected graphs only counts reachable pairs") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(rng.uniform_index(5));
    auto e = oracle::gnp_edges(n, 0.3, rng);
    auto got = betweenness(oracle::make_graph(n, e));
    auto want = oracle::brute_betweenness(n, e);
    for (int i = 0; i < n; ++i) REQUIRE(got[i] == Approx(want[i]).epsilon(1e-12));
  }
}

TEST_CASE("eigenvector centrality") {
  SUBCASE("star: center 1, leaves equal") {
    auto s = eigenvector_centrality(star(6));
    CHECK(s[0] == 1.0);
    for (int i = 2; i <= 6; ++i) CHECK(s[i] == Approx(s[1]).epsilon(1e-9));
    CHECK(s[1] == Approx(1.0 / std::sqrt(6.0)).epsilon(1e-7));
  }
  SUBCASE("cycle: all ones") {
    auto s = eigenvector_centrality(cycle(7));
    for (int i = 0; i < 7; ++i) CHECK(s[i] == Approx(1.0));
  }
  SUBCASE("even cycle is bipartite and still converges") {
    auto s = eigenvector_centrality(cycle(8));
    for (int i = 0; i < 8; ++i) CHECK(s[i] == Approx(1.0));
  }
  SUBCASE("nodes off the largest component score zero") {
    auto g = oracle::make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}});
    auto s = eigenvector_centrality(g);
    CHECK(s[3] == 0.0);
    CHECK(s[5] == 0.0);
  }
  SUBCASE("empty graph") { CHECK_THROWS_AS(eigenvector_centrality(LabeledGraph{}), PreconditionError); }
  SUBCASE("iteration cap") {
    CHECK_THROWS_AS(eigenvector_centrality(path(9), 1e-15, 2), ConvergenceError);
  }
}

TEST_CASE("eigenvector centrality residual is within 10 tol on random connected graphs") {
  Rng rng(23);
  int checked = 0;
  while (checked < 60) {
    const int n = 3 + static_cast<int>(rng.uniform_index(30));
    auto e = oracle::gnp_edges(n, 0.1 + 0.8 * rng.uniform_real(), rng);
    if (!oracle::connected(n, e)) continue;
    ++checked;
    auto g = oracle::make_graph(n, e);
    Eigen::VectorXd x = eigenvector_centrality(g);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (auto [u, v] : e) a(u, v) = a(v, u) = 1.0;
    Eigen::VectorXd ax = a * x;
    const double lambda = x.dot(ax) / x.dot(x);
    CHECK((ax - lambda * x).lpNorm<Eigen::Infinity>() < 10 * kEigenTolerance);
    CHECK(x.maxCoeff() == 1.0);
    CHECK(x.minCoeff() > 0.0);
  }
}

TEST_CASE("degree centralization") {
  CHECK(degree_centralization(star(7)) == 1.0);
  CHECK(degree_centralization(cycle(9)) == 0.0);
  CHECK(degree_centralization(complete(5)) == 0.0);
  // path P4: dmax 2, sum (2-1)*2 = 2, over 3*2
  CHECK(degree_centralization(path(4)) == Approx(2.0 / 6.0));
}

TEST_CASE("report on K4") {
  auto r = report(complete(4));
  CHECK(r.node_count == 4);
  CHECK(r.edge_count == 6);
  CHECK(r.density == 1.0);
  CHECK(r.fragmentation == 0.0);
  CHECK(r.diameter_lcc == 1);
  CHECK(r.average_clustering == 1.0);
  CHECK(r.mean_betweenness == 0.0);
  CHECK(r.eigenvector_centrality.size() == 4);
}

TEST_CASE("report on the reference network") {
  auto g = load_edge_list_file(test_data::reference_edges());
  auto r = report(g);
  CHECK(std::abs(r.density - 0.40107) < 1e-5);
  CHECK(std::abs(r.average_degree - 13.2353) < 1e-4);
  CHECK(r.diameter_lcc == 3);
  CHECK(std::abs(r.average_clustering - 0.647) <= 0.02);
  CHECK(std::abs(r.degree_centralization - 0.4432) <= 0.01);
  std::vector<std::pair<double, std::string>> ranked;
  for (const auto& [k, v] : r.eigenvector_centrality) ranked.emplace_back(-v, k);
  std::sort(ranked.begin(), ranked.end());
  NodeSet top{ranked[0].second, ranked[1].second, ranked[2].second};
  CHECK(top == NodeSet{"Ex1", "P1", "Rv1"});

  auto after = report(remove_nodes(g, {"Ex1", "P1"}));
  CHECK(std::abs(after.density - 0.347) <= 0.002);
  CHECK(std::abs(after.fragmentation - 0.653) <= 0.002);
}

TEST_CASE("metrics do not depend on node labels") {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(rng.uniform_index(15));
    auto e = oracle::gnp_edges(n, 0.5, rng);
    if (e.empty()) continue;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    rng.partial_shuffle(perm, perm.size());
    oracle::Edges pe;
    for (auto [u, v] : e) pe.emplace_back(perm[u], perm[v]);
    auto a = report(oracle::make_graph(n, e));
    auto b = report(oracle::make_graph(n, pe));
    CHECK(a.density == b.density);
    CHECK(a.diameter_lcc == b.diameter_lcc);
    CHECK(a.average_clustering == Approx(b.average_clustering).epsilon(1e-12));
    CHECK(a.mean_betweenness == Approx(b.mean_betweenness).epsilon(1e-12));
    CHECK(a.degree_centralization == b.degree_centralization);
    // a tie between equal largest components may resolve differently
    if (!oracle::connected(n, e)) continue;
    for (int i = 0; i < n; ++i) {
      CHECK(a.eigenvector_centrality.at(oracle::node_name(i)) ==
            Approx(b.eigenvector_centrality.at(oracle::node_name(perm[i]))).epsilon(1e-7));
    }
  }
}
