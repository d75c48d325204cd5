#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <vector>

#include "jury/error.h"
#include "jury/jer.h"

namespace jury {
namespace {

std::vector<double> RandomPmf(std::mt19937_64& rng, std::size_t len) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(len);
  for (double& x : v) x = u(rng);
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= total;
  return v;
}

void ExpectMassNear(std::span<const double> a, std::span<const double> b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], tol) << "index " << i;
}

TEST(ConvolveTest, HandExpandedProduct) {
  const auto c = Convolve(WrongCountDistribution({0.7, 0.3}), WrongCountDistribution({0.4, 0.6}));
  const std::vector<double> expected{0.28, 0.54, 0.18};
  ExpectMassNear(c.mass(), expected, 1e-15);
}

TEST(ConvolveTest, IdentityAndFairCoins) {
  const WrongCountDistribution d({0.1, 0.2, 0.3, 0.4});
  ExpectMassNear(Convolve(WrongCountDistribution({1.0}), d).mass(), d.mass(), 0.0);
  const auto coins = Convolve(WrongCountDistribution({0.5, 0.5}), WrongCountDistribution({0.5, 0.5}));
  const std::vector<double> expected{0.25, 0.5, 0.25};
  ExpectMassNear(coins.mass(), expected, 0.0);
}

TEST(ConvolveTest, DirectAndFftPathsAgree) {
  std::mt19937_64 rng(17);
  for (std::size_t la : {2u, 7u, 65u, 300u, 1025u}) {
    for (std::size_t lb : {1u, 64u, 129u, 700u}) {
      const auto a = RandomPmf(rng, la);
      const auto b = RandomPmf(rng, lb);
      const auto direct = ConvolveMass(a, b, SIZE_MAX);
      const auto fft = ConvolveMass(a, b, 0);
      ASSERT_EQ(direct.size(), la + lb - 1);
      ExpectMassNear(direct, fft, 1e-9);
    }
  }
}

TEST(ConvolveTest, CommutativeAndAssociative) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<std::size_t> len(1, 12);
    const WrongCountDistribution a(RandomPmf(rng, len(rng)));
    const WrongCountDistribution b(RandomPmf(rng, len(rng)));
    const WrongCountDistribution c(RandomPmf(rng, len(rng)));
    const std::size_t threshold = trial % 2 ? 0 : kDirectConvolutionThreshold;
    ExpectMassNear(Convolve(a, b, threshold).mass(), Convolve(b, a, threshold).mass(), 1e-9);
    ExpectMassNear(Convolve(Convolve(a, b, threshold), c, threshold).mass(),
                   Convolve(a, Convolve(b, c, threshold), threshold).mass(), 1e-9);
  }
}

TEST(ConvolveTest, FftResidueIsNeverNegative) {
  // Sharply peaked operands produce round-off around zero in the FFT path.
  std::vector<double> spike(200, 0.0);
  spike[0] = 1.0 - 1e-12;
  spike[199] = 1e-12;
  const auto out = ConvolveMass(spike, spike, 0);
  for (double v : out) EXPECT_GE(v, 0.0);
  EXPECT_NEAR(out[0], (1.0 - 1e-12) * (1.0 - 1e-12), 1e-12);
}

TEST(ConvolveTest, RejectsEmptyOperand) {
  EXPECT_THROW(ConvolveMass(std::vector<double>{}, std::vector<double>{1.0}), Error);
}

}  // namespace
}  // namespace jury
