#include "covnet/sampling.hpp"

#include <algorithm>

#include "covnet/errors.hpp"
#include "covnet/rng.hpp"

namespace covnet {

SnowballResult snowball_with_stats(const LabeledGraph& ground_truth, const SamplingConfig& cfg) {
  const auto n = ground_truth.node_count();
  if (cfg.seed_count == 0) throw PreconditionError("snowball: need at least one seed");
  if (cfg.seed_count > n) {
    throw PreconditionError("snowball: " + std::to_string(cfg.seed_count) +
                            " seeds requested from a population of " + std::to_string(n));
  }
  Rng rng(cfg.rng_seed);

  std::vector<std::size_t> population(n);
  for (std::size_t i = 0; i < n; ++i) population[i] = i;
  rng.partial_shuffle(population, cfg.seed_count);
  std::vector<std::size_t> wave(population.begin(),
                                population.begin() + static_cast<std::ptrdiff_t>(cfg.seed_count));

  std::vector<bool> interviewed(n, false), queued(n, false);
  // named[x][y]: x named y; vouched[x][y]: x named or confirmed y
  std::vector<std::vector<bool>> named(n, std::vector<bool>(n, false));
  std::vector<std::vector<bool>> vouched = named;
  for (auto s : wave) queued[s] = true;

  auto accepted = [&](std::size_t x, std::size_t y) {
    if (!interviewed[x] || !interviewed[y]) return false;
    if (cfg.mutual_confirmation) return vouched[x][y] && vouched[y][x];
    return named[x][y] || named[y][x];
  };
  auto count_edges = [&] {
    std::size_t m = 0;
    for (auto [x, y] : ground_truth.edges()) m += accepted(x, y) ? 1 : 0;
    return m;
  };

  SnowballResult result;
  std::size_t total = 0;
  for (std::size_t w = 0; w <= cfg.waves && !wave.empty(); ++w) {
    std::vector<std::size_t> next;
    for (auto x : wave) {
      interviewed[x] = true;
      ++total;
      for (auto y : ground_truth.neighbors(x)) {
        if (named[y][x]) vouched[x][y] = true;
      }
      std::vector<std::size_t> contacts(ground_truth.neighbors(x).begin(),
                                        ground_truth.neighbors(x).end());
      const auto k = std::min(cfg.names_per_interview, contacts.size());
      rng.partial_shuffle(contacts, k);
      for (std::size_t c = 0; c < k; ++c) {
        const auto y = contacts[c];
        named[x][y] = true;
        vouched[x][y] = true;
        if (!queued[y]) {
          queued[y] = true;
          next.push_back(y);
        }
      }
    }
    result.waves.push_back({w, wave.size(), total, count_edges()});
    wave = std::move(next);
  }

  std::vector<std::string> labels;
  std::vector<std::size_t> remap(n, SIZE_MAX);
  for (std::size_t i = 0; i < n; ++i) {
    if (interviewed[i]) {
      remap[i] = labels.size();
      labels.push_back(ground_truth.label(i));
    }
  }
  std::vector<IndexEdge> edges;
  for (auto [x, y] : ground_truth.edges()) {
    if (accepted(x, y)) edges.emplace_back(remap[x], remap[y]);
  }
  result.sample = LabeledGraph::from_index_edges(std::move(labels), edges);
  const auto roles = ground_truth.roles();
  if (!roles.empty()) {
    RoleMap kept;
    for (const auto& [label, role] : roles) {
      if (result.sample.contains(label)) kept.emplace(label, role);
    }
    result.sample = result.sample.with_roles(kept);
  }
  return result;
}

LabeledGraph snowball(const LabeledGraph& ground_truth, const SamplingConfig& cfg) {
  return snowball_with_stats(ground_truth, cfg).sample;
}

}  // namespace covnet
