#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "jury/juror.h"
#include "jury/solver.h"

namespace jury {

/// Generator used everywhere randomness is seeded. Pinned so that fixtures
/// stay reproducible.
using Rng = std::mt19937_64;

/// Normal pools for the synthetic experiments. The spreads are standard
/// deviations, not variances.
struct SynthConfig {
  std::size_t pool_size = 1000;
  double epsilon_mean = 0.2;
  double epsilon_stddev = 0.1;
  double requirement_mean = 0.0;
  double requirement_stddev = 0.0;
  std::uint64_t seed = 1;

  void Validate() const;
};

/// Draws pool_size (epsilon, requirement) pairs, then clamps epsilon into the
/// admissible range and requirements at zero. Ids are "j000000", "j000001",
/// ... Deterministic per config.
CandidatePool GenPool(const SynthConfig& config);

struct VoteOutcome {
  std::vector<int> votes;  // 0/1 per juror
  int decision = 0;        // majority of votes
  std::size_t wrong_count = 0;
};

/// Each juror votes the ground truth with probability 1 - epsilon.
VoteOutcome SimulateVote(const Jury& jury, int ground_truth, Rng& rng);
VoteOutcome SimulateVote(const Jury& jury, int ground_truth, std::uint64_t seed);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
};

/// Fraction of simulated votes whose majority is wrong, with its binomial
/// standard error sqrt(p(1-p)/trials). Throws kInvalidConfig on zero trials.
MonteCarloEstimate MonteCarloJer(const Jury& jury, std::size_t trials,
                                 std::uint64_t seed);

}  // namespace jury
