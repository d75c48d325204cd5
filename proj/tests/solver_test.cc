#include "jury/solver.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "jury/error.h"
#include "oracle.h"

namespace jury {
namespace {

CandidatePool SevenJurorPool() {
  return CandidatePool({MakeJuror("A", 0.1), MakeJuror("B", 0.2), MakeJuror("C", 0.2),
                        MakeJuror("D", 0.3), MakeJuror("E", 0.3), MakeJuror("F", 0.4),
                        MakeJuror("G", 0.4)});
}

CandidatePool PaymPool() {
  return CandidatePool({MakeJuror("A", 0.1, 0.8), MakeJuror("B", 0.2, 0.1),
                        MakeJuror("C", 0.2, 0.1), MakeJuror("D", 0.3, 0.1),
                        MakeJuror("E", 0.3, 0.1)});
}

std::vector<std::string> SortedIds(const SolveResult& r) {
  auto ids = r.jury.ids();
  std::sort(ids.begin(), ids.end());
  return ids;
}

CandidatePool RandomPool(std::mt19937_64& rng, std::size_t n, double max_req) {
  std::uniform_real_distribution<double> eps(0.01, 0.99);
  std::uniform_real_distribution<double> req(0.0, max_req);
  std::vector<Juror> jurors;
  for (std::size_t i = 0; i < n; ++i) {
    jurors.push_back(MakeJuror("c" + std::to_string(i), eps(rng), req(rng)));
  }
  return CandidatePool(std::move(jurors));
}

TEST(PoolTest, Validation) {
  EXPECT_THROW(CandidatePool(std::vector<Juror>{}), Error);
  EXPECT_THROW(CandidatePool({MakeJuror("a", 0.1), MakeJuror("a", 0.2)}), Error);
  EXPECT_THROW(Budget(-0.1), Error);
  EXPECT_NO_THROW(Budget::Unlimited());
}

TEST(AltrmTest, SevenJurorPoolPicksFiveBest) {
  for (bool pruning : {false, true}) {
    const auto r = SolveAltrm(SevenJurorPool(), {pruning, JerAlgorithm::kDp});
    EXPECT_EQ(r.jury.ids(), (std::vector<std::string>{"A", "B", "C", "D", "E"}));
    EXPECT_NEAR(r.jer, 0.07036, 1e-12);
    EXPECT_EQ(r.juries_evaluated + r.juries_pruned, 4u);
  }
}

TEST(AltrmTest, SingleCandidate) {
  const auto r = SolveAltrm(CandidatePool({MakeJuror("x", 0.3)}));
  EXPECT_EQ(r.jury.size(), 1u);
  EXPECT_DOUBLE_EQ(r.jer, 0.3);
}

TEST(AltrmTest, ErrorPronePoolShrinksToOne) {
  std::vector<Juror> jurors;
  for (int i = 0; i < 9; ++i) jurors.push_back(MakeJuror("p" + std::to_string(i), 0.6));
  const auto r = SolveAltrm(CandidatePool(std::move(jurors)));
  EXPECT_EQ(r.jury.size(), 1u);
  EXPECT_DOUBLE_EQ(r.jer, 0.6);
}

TEST(AltrmTest, EvenPoolUsesLargestOddPrefix) {
  const auto r = SolveAltrm(CandidatePool({MakeJuror("a", 0.1), MakeJuror("b", 0.1),
                                           MakeJuror("c", 0.1), MakeJuror("d", 0.1)}),
                            {false, JerAlgorithm::kDp});
  EXPECT_EQ(r.jury.size(), 3u);
  EXPECT_EQ(r.juries_evaluated, 2u);
}

TEST(AltrmTest, TiesBrokenById) {
  const auto r = SolveAltrm(CandidatePool({MakeJuror("z", 0.2), MakeJuror("y", 0.2),
                                           MakeJuror("x", 0.9)}));
  EXPECT_EQ(r.jury.ids(), (std::vector<std::string>{"y"}));
}

TEST(AltrmTest, AllAlgorithmsAgree) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const auto pool = RandomPool(rng, 1 + trial % 21, 0.0);
    const auto dp = SolveAltrm(pool, {true, JerAlgorithm::kDp});
    const auto cba = SolveAltrm(pool, {true, JerAlgorithm::kCba});
    const auto naive = SolveAltrm(pool, {false, JerAlgorithm::kNaive});
    EXPECT_EQ(dp.jury.ids(), cba.jury.ids());
    EXPECT_EQ(dp.jury.ids(), naive.jury.ids());
    EXPECT_NEAR(dp.jer, naive.jer, 1e-12);
  }
}

TEST(AltrmTest, MatchesOracleAndPruningIsInert) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const auto pool = RandomPool(rng, 1 + trial % 13, 0.0);
    const auto pruned = SolveAltrm(pool, {true, JerAlgorithm::kDp});
    const auto full = SolveAltrm(pool, {false, JerAlgorithm::kDp});
    const auto truth = SolveOracle(pool, Budget::Unlimited());
    EXPECT_NEAR(full.jer, truth.jer, 1e-9);
    EXPECT_EQ(SortedIds(pruned), SortedIds(full));
    EXPECT_EQ(full.juries_pruned, 0u);
  }
}

TEST(AltrmTest, KeepsOrderingBelowDoubleRange) {
  // Every prefix from 205 on underflows in double; the true JER still falls
  // with each added pair, so the whole pool wins.
  std::vector<Juror> jurors;
  for (int i = 0; i < 401; ++i) jurors.push_back(MakeJuror("f" + std::to_string(1000 + i), 0.0));
  const CandidatePool pool(std::move(jurors));
  for (bool prune : {true, false}) {
    const auto r = SolveAltrm(pool, {prune, JerAlgorithm::kDp});
    EXPECT_EQ(r.jury.size(), 401u);
    EXPECT_EQ(r.jer, 0.0);
    EXPECT_NEAR(r.log_jer, LogJerDp(r.jury), 1e-9);
    EXPECT_LT(r.log_jer, -2000.0);
  }
}

TEST(GreedyTest, KeepsOrderingBelowDoubleRange) {
  std::vector<Juror> jurors;
  for (int i = 0; i < 301; ++i) jurors.push_back(MakeJuror("f" + std::to_string(1000 + i), 0.0, 0.0));
  const auto r = SolvePaymGreedy(CandidatePool(std::move(jurors)), Budget(1.0));
  EXPECT_EQ(r.jury.size(), 301u);
  EXPECT_TRUE(std::isfinite(r.log_jer));
}

TEST(AltrmTest, PruningSkipsWhenBoundExceedsBest) {
  // Best is the first juror (0.05). Prefix 3 has gamma > 1 and is computed;
  // from prefix 5 on gamma < 1 and every bound exceeds 0.05.
  std::vector<Juror> jurors{MakeJuror("best", 0.05)};
  for (int i = 0; i < 20; ++i) jurors.push_back(MakeJuror("w" + std::to_string(i), 0.95));
  const auto r = SolveAltrm(CandidatePool(std::move(jurors)), {true, JerAlgorithm::kDp});
  EXPECT_EQ(r.jury.ids(), (std::vector<std::string>{"best"}));
  EXPECT_EQ(r.juries_evaluated, 2u);
  EXPECT_EQ(r.juries_pruned, 9u);
}

TEST(GreedyTest, HandTrace) {
  const auto r = SolvePaymGreedy(PaymPool(), Budget(0.5));
  EXPECT_EQ(r.jury.ids(), (std::vector<std::string>{"B", "C", "D"}));
  EXPECT_NEAR(r.jer, 0.136, 1e-12);
  EXPECT_NEAR(r.total_cost, 0.3, 1e-12);
}

TEST(GreedyTest, SingleAffordableAndInfeasible) {
  const CandidatePool pool({MakeJuror("x", 0.2, 0.5)});
  const auto r = SolvePaymGreedy(pool, Budget(1.0));
  EXPECT_EQ(r.jury.size(), 1u);
  EXPECT_DOUBLE_EQ(r.jer, 0.2);
  EXPECT_DOUBLE_EQ(r.total_cost, 0.5);
  try {
    SolvePaymGreedy(pool, Budget(0.1));
    FAIL() << "expected NoAffordableJuror";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoAffordableJuror);
  }
}

TEST(GreedyTest, PendingPairIsDiscardedAtEnd) {
  // B seeds, C becomes the pending pair, D is too expensive: jury stays {B}.
  const CandidatePool pool({MakeJuror("B", 0.2, 0.1), MakeJuror("C", 0.2, 0.1),
                            MakeJuror("D", 0.3, 5.0)});
  const auto r = SolvePaymGreedy(pool, Budget(1.0));
  EXPECT_EQ(r.jury.ids(), (std::vector<std::string>{"B"}));
}

TEST(GreedyTest, RejectsPairThatRaisesJer) {
  const CandidatePool pool({MakeJuror("good", 0.05, 0.0), MakeJuror("bad1", 0.9, 0.1),
                            MakeJuror("bad2", 0.9, 0.1)});
  const auto r = SolvePaymGreedy(pool, Budget(10.0));
  EXPECT_EQ(r.jury.ids(), (std::vector<std::string>{"good"}));
  EXPECT_EQ(r.juries_evaluated, 2u);
}

TEST(GreedyTest, FeasibleAndNeverBeatsOracle) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> frac(0.05, 1.0);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + trial % 14;
    const auto pool = RandomPool(rng, n, 1.0);
    double cheapest = pool[0].requirement;
    for (const auto& c : pool.candidates()) cheapest = std::min(cheapest, c.requirement);
    const Budget budget(cheapest + frac(rng) * static_cast<double>(n) * 0.5);
    const auto greedy = SolvePaymGreedy(pool, budget);
    const auto truth = SolveOracle(pool, budget);
    EXPECT_EQ(greedy.jury.size() % 2, 1u);
    EXPECT_LE(greedy.total_cost, budget.amount());
    EXPECT_LE(truth.total_cost, budget.amount());
    EXPECT_GE(CompareResults(greedy, truth).jer_gap, -1e-9);
  }
}

TEST(OracleTest, PaymHandExample) {
  const auto r = SolveOracle(PaymPool(), Budget(0.5));
  EXPECT_EQ(r.jury.ids(), (std::vector<std::string>{"B", "C", "D"}));
  EXPECT_NEAR(r.jer, 0.136, 1e-12);
}

TEST(OracleTest, UnboundedBudgetMatchesAltrm) {
  const auto r = SolveOracle(SevenJurorPool(), Budget(0.0));
  EXPECT_EQ(SortedIds(r), (std::vector<std::string>{"A", "B", "C", "D", "E"}));
  EXPECT_NEAR(r.jer, 0.07036, 1e-12);
}

TEST(OracleTest, LimitsAndInfeasible) {
  std::mt19937_64 rng(1);
  EXPECT_THROW(SolveOracle(RandomPool(rng, 23, 0.0), Budget::Unlimited()), Error);
  const CandidatePool pricey({MakeJuror("a", 0.1, 1.0), MakeJuror("b", 0.1, 2.0)});
  try {
    SolveOracle(pricey, Budget(0.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoAffordableJuror);
  }
  const auto one = SolveOracle(CandidatePool({MakeJuror("solo", 0.4, 0.2)}), Budget(0.2));
  EXPECT_EQ(one.jury.ids(), (std::vector<std::string>{"solo"}));
}

TEST(OracleTest, TieBreaksOnCostThenSizeThenIds) {
  // Equal JER 0.2 for {a} and {b}; b is cheaper.
  const auto by_cost = SolveOracle(
      CandidatePool({MakeJuror("a", 0.2, 0.5), MakeJuror("b", 0.2, 0.1)}), Budget(1.0));
  EXPECT_EQ(by_cost.jury.ids(), (std::vector<std::string>{"b"}));
  const auto by_id = SolveOracle(
      CandidatePool({MakeJuror("q", 0.2, 0.1), MakeJuror("p", 0.2, 0.1)}), Budget(1.0));
  EXPECT_EQ(by_id.jury.ids(), (std::vector<std::string>{"p"}));
}

TEST(OracleTest, MatchesBruteForceOverSubsets) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 1 + trial % 10;
    const auto pool = RandomPool(rng, n, 1.0);
    const double budget = 1.5;
    double best = 2.0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      if (__builtin_popcountll(mask) % 2 == 0) continue;
      std::vector<double> eps;
      double cost = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1U) {
          eps.push_back(pool[i].epsilon);
          cost += pool[i].requirement;
        }
      }
      if (cost <= budget) best = std::min(best, static_cast<double>(testing::BitmaskJer(eps)));
    }
    if (best > 1.5) continue;
    EXPECT_NEAR(SolveOracle(pool, Budget(budget)).jer, best, 1e-12);
  }
}

TEST(CompareTest, SetArithmetic) {
  const auto make = [](std::vector<std::string> ids, double jer, double cost) {
    std::vector<Juror> m;
    for (auto& id : ids) m.push_back(MakeJuror(id, 0.1, 0.0));
    return SolveResult{Jury(std::move(m)), jer, cost, 0, 0};
  };
  const auto same = CompareResults(make({"a", "b", "c"}, 0.1, 1.0), make({"c", "b", "a"}, 0.1, 1.0));
  EXPECT_DOUBLE_EQ(same.precision, 1.0);
  EXPECT_DOUBLE_EQ(same.recall, 1.0);
  EXPECT_DOUBLE_EQ(same.jer_gap, 0.0);
  EXPECT_DOUBLE_EQ(same.cost_gap, 0.0);
  const auto partial = CompareResults(make({"a", "b", "c"}, 0.3, 2.0), make({"a", "d", "e"}, 0.1, 1.0));
  EXPECT_DOUBLE_EQ(partial.precision, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(partial.recall, 1.0 / 3.0);
  EXPECT_NEAR(partial.jer_gap, 0.2, 1e-15);
  EXPECT_DOUBLE_EQ(partial.cost_gap, 1.0);
  const auto greedy_vs_truth =
      CompareResults(SolvePaymGreedy(PaymPool(), Budget(0.5)), SolveOracle(PaymPool(), Budget(0.5)));
  EXPECT_DOUBLE_EQ(greedy_vs_truth.precision, 1.0);
  EXPECT_DOUBLE_EQ(greedy_vs_truth.recall, 1.0);
  EXPECT_NEAR(greedy_vs_truth.jer_gap, 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(greedy_vs_truth.cost_gap, 0.0);
}

}  // namespace
}  // namespace jury
