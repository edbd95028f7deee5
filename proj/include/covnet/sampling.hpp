#pragma once

#include <cstdint>
#include <vector>

#include "covnet/graph.hpp"

namespace covnet {

struct SamplingConfig {
  std::size_t seed_count = 1;
  std::size_t names_per_interview = 3;  // k
  std::size_t waves = 2;
  std::uint64_t rng_seed = 1;
  bool mutual_confirmation = true;
};

struct WaveStats {
  std::size_t wave = 0;
  std::size_t interviewed = 0;      // nodes interviewed in this wave
  std::size_t nodes_total = 0;      // interviewed so far
  std::size_t edges_total = 0;      // accepted edges among them so far
};

struct SnowballResult {
  LabeledGraph sample;
  std::vector<WaveStats> waves;
};

/**
 * Chain-referral discovery on a known ground truth.
 *
 * Wave 0 interviews `seed_count` uniformly drawn seeds, in draw order. Every
 * interviewee x is first asked about the people who named x earlier (x
 * confirms them), then names min(k, degree) of its neighbors drawn without
 * replacement. Named nodes not yet interviewed are interviewed in the next
 * wave, in order of first mention. After `waves` expansion waves the sample
 * holds every interviewed node; nodes only named in the final wave stay out.
 *
 * A ground-truth edge {x, y} between interviewed nodes is kept when someone
 * named the other. With mutual confirmation on, both ends must have vouched
 * for it: each one either named the other or confirmed being named. A name
 * given after the other endpoint's interview is never confirmed.
 *
 * The random draws do not depend on `mutual_confirmation`, so the same seed
 * with confirmation off yields a superset of the edges.
 *
 * Throws PreconditionError when seed_count exceeds the population or is 0.
 */
SnowballResult snowball_with_stats(const LabeledGraph& ground_truth, const SamplingConfig& cfg);

LabeledGraph snowball(const LabeledGraph& ground_truth, const SamplingConfig& cfg);

}  // namespace covnet
