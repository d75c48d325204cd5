#include "jury/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "jury/error.h"

namespace jury {

void SynthConfig::Validate() const {
  if (pool_size < 1) throw Error(ErrorCode::kInvalidConfig, "pool_size must be >= 1");
  if (!(epsilon_stddev >= 0.0) || !(requirement_stddev >= 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "standard deviations must be >= 0");
  }
  if (!std::isfinite(epsilon_mean) || !std::isfinite(requirement_mean)) {
    throw Error(ErrorCode::kInvalidConfig, "means must be finite");
  }
}

namespace {

double Draw(Rng& rng, double mean, double stddev) {
  if (stddev == 0.0) return mean;
  return std::normal_distribution<double>(mean, stddev)(rng);
}

std::string PoolId(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "j%06zu", i);
  return buf;
}

}  // namespace

CandidatePool GenPool(const SynthConfig& config) {
  config.Validate();
  Rng rng(config.seed);
  std::vector<Juror> jurors;
  jurors.reserve(config.pool_size);
  for (std::size_t i = 0; i < config.pool_size; ++i) {
    const double e = Draw(rng, config.epsilon_mean, config.epsilon_stddev);
    const double r = Draw(rng, config.requirement_mean, config.requirement_stddev);
    jurors.push_back(MakeJuror(PoolId(i), e, std::max(0.0, r)));
  }
  return CandidatePool(std::move(jurors));
}

VoteOutcome SimulateVote(const Jury& jury, int ground_truth, Rng& rng) {
  const int truth = ground_truth != 0 ? 1 : 0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  VoteOutcome out;
  out.votes.reserve(jury.size());
  std::size_t for_one = 0;
  for (double e : jury.error_rates()) {
    const bool wrong = unit(rng) < e;
    const int vote = wrong ? 1 - truth : truth;
    out.votes.push_back(vote);
    for_one += static_cast<std::size_t>(vote);
    out.wrong_count += wrong ? 1 : 0;
  }
  out.decision = for_one >= MajorityThreshold(jury.size()) ? 1 : 0;
  return out;
}

VoteOutcome SimulateVote(const Jury& jury, int ground_truth, std::uint64_t seed) {
  Rng rng(seed);
  return SimulateVote(jury, ground_truth, rng);
}

MonteCarloEstimate MonteCarloJer(const Jury& jury, std::size_t trials,
                                 std::uint64_t seed) {
  if (trials == 0) throw Error(ErrorCode::kInvalidConfig, "trials must be >= 1");
  Rng rng(seed);
  std::size_t failures = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    if (SimulateVote(jury, 1, rng).decision != 1) ++failures;
  }
  MonteCarloEstimate out;
  out.trials = trials;
  out.estimate = static_cast<double>(failures) / static_cast<double>(trials);
  out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) /
                            static_cast<double>(trials));
  return out;
}

}  // namespace jury
