#pragma once

// Jury selection. Under the altruistic model (AltrM) every candidate is free
// and the exact optimum is the best odd prefix of the candidates sorted by
// error rate. Under the pay-as-you-go model (PayM) the jury's total
// requirement must fit a budget; that problem is NP-hard, so a greedy
// heuristic is offered next to an exhaustive oracle for small pools.

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "jury/jer.h"
#include "jury/juror.h"

namespace jury {

/// Candidate set S. Non-empty, distinct ids, every juror admitted through
/// MakeJuror.
class CandidatePool {
 public:
  explicit CandidatePool(std::vector<Juror> candidates);

  std::size_t size() const { return candidates_.size(); }
  const std::vector<Juror>& candidates() const { return candidates_; }
  const Juror& operator[](std::size_t i) const { return candidates_[i]; }

 private:
  std::vector<Juror> candidates_;
};

class Budget {
 public:
  /// Throws kInvalidBudget on negative or NaN amounts. Infinity is allowed.
  explicit Budget(double amount);
  static Budget Unlimited() {
    return Budget(std::numeric_limits<double>::infinity());
  }
  double amount() const { return amount_; }

 private:
  double amount_;
};

struct SolveResult {
  Jury jury;
  double jer = 1.0;
  double total_cost = 0.0;
  std::size_t juries_evaluated = 0;  // full JER computations
  std::size_t juries_pruned = 0;     // skipped by the lower bound
  double log_jer = 0.0;              // natural log; finite even when jer underflows to 0
};

struct AltrmOptions {
  bool use_pruning = true;
  /// Evaluator for each prefix. The DP keeps relative accuracy for tails far
  /// below 1e-16, which the FFT path of CBA cannot.
  JerAlgorithm algorithm = JerAlgorithm::kDp;
};

/// Exact AltrM solver. Candidates are ordered by (epsilon, id); every odd
/// prefix is a candidate jury and the first one reaching the minimum JER is
/// returned. Requirements are ignored (total_cost still reports their sum).
SolveResult SolveAltrm(const CandidatePool& pool, const AltrmOptions& options = {});

/// Greedy PayM heuristic. Candidates are ordered by (epsilon * requirement,
/// epsilon, id); the first affordable one seeds the jury and later ones are
/// admitted two at a time when the pair fits the remaining budget and does
/// not raise the JER. Throws kNoAffordableJuror if no single candidate fits.
SolveResult SolvePaymGreedy(const CandidatePool& pool, Budget budget);

inline constexpr std::size_t kOracleMaxPoolSize = 22;

/// Exhaustive PayM optimum over all odd subsets within budget. Ties on JER
/// go to lower cost, then fewer members, then the lexicographically smaller
/// sorted id list. Throws kSizeLimitExceeded above kOracleMaxPoolSize and
/// kNoAffordableJuror when nothing fits.
SolveResult SolveOracle(const CandidatePool& pool, Budget budget);

struct ResultComparison {
  double precision = 0.0;
  double recall = 0.0;
  double jer_gap = 0.0;   // test.jer - truth.jer
  double cost_gap = 0.0;  // test.total_cost - truth.total_cost
};

/// Set overlap of member ids plus objective and cost differences.
ResultComparison CompareResults(const SolveResult& test, const SolveResult& truth);

}  // namespace jury
