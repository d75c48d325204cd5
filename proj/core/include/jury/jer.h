#pragma once

// Jury Error Rate (JER): the probability that at least (n+1)/2 of n
// independent jurors vote wrongly, i.e. the upper tail of a Poisson-Binomial
// distribution. Three interchangeable evaluators are provided: exhaustive
// enumeration (an oracle for small juries), an O(n^2) dynamic program, and a
// divide-and-conquer convolution of per-juror wrong-count distributions.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "jury/juror.h"

namespace jury {

/// Enumeration is exponential; larger juries are refused.
inline constexpr std::size_t kNaiveMaxJurySize = 25;

/// Convolutions whose shorter operand has at most this many entries use the
/// direct product; longer ones go through the FFT.
inline constexpr std::size_t kDirectConvolutionThreshold = 64;

/// Negative entries produced by floating-point round-off are zeroed when no
/// lower than this; anything more negative is treated as a bug.
inline constexpr double kNegativeMassTolerance = 1e-9;
inline constexpr double kMassSumTolerance = 1e-6;

/// Probability mass function of the number of wrong jurors C, indexed
/// k = 0..n.
class WrongCountDistribution {
 public:
  /// Validates (and round-off clamps) a raw mass vector. Throws
  /// kInvalidDistribution when empty, non-finite, too negative, above one,
  /// or not summing to one within kMassSumTolerance.
  explicit WrongCountDistribution(std::vector<double> mass);

  /// Single juror: [1 - epsilon, epsilon].
  static WrongCountDistribution ForJuror(double epsilon);

  std::size_t jury_size() const { return mass_.size() - 1; }
  std::span<const double> mass() const { return mass_; }
  double operator[](std::size_t k) const { return mass_[k]; }

 private:
  std::vector<double> mass_;
};

/// Polynomial product of two mass vectors, direct below the threshold and
/// FFT-based above it. Round-off negatives are clamped per
/// kNegativeMassTolerance.
std::vector<double> ConvolveMass(std::span<const double> a,
                                 std::span<const double> b,
                                 std::size_t direct_threshold =
                                     kDirectConvolutionThreshold);

/// Distribution of the sum of two independent wrong counts.
WrongCountDistribution Convolve(const WrongCountDistribution& a,
                                const WrongCountDistribution& b,
                                std::size_t direct_threshold =
                                    kDirectConvolutionThreshold);

/// Divide-and-conquer wrong-count distribution (CBA). Accepts any non-empty
/// set of error rates, odd or even.
WrongCountDistribution WrongCounts(std::span<const double> error_rates,
                                   std::size_t direct_threshold =
                                       kDirectConvolutionThreshold);
WrongCountDistribution WrongCounts(const Jury& jury);

/// Tail mass from (n+1)/2 to n. Throws kEvenSize when n is even.
double JerFromDistribution(const WrongCountDistribution& distribution);

/// Sums every outcome with a wrong majority. Throws kSizeLimitExceeded above
/// kNaiveMaxJurySize members.
double JerNaive(const Jury& jury);
double JerNaive(std::span<const double> error_rates);

/// Rolling-row recurrence
///   Pr(C >= L | J_m) = Pr(C >= L-1 | J_{m-1}) e_m + Pr(C >= L | J_{m-1}) (1 - e_m)
/// restricted to the band of L values that can still reach the threshold.
double JerDp(const Jury& jury);
double JerDp(std::span<const double> error_rates);

/// Natural log of the JER from the same recurrence carried in the log
/// domain. Stays finite where JerDp underflows to 0 (around 1e-308).
double LogJerDp(const Jury& jury);
double LogJerDp(std::span<const double> error_rates);

/// CBA followed by the tail sum.
double JerCba(const Jury& jury);
double JerCba(std::span<const double> error_rates);

enum class JerAlgorithm { kNaive, kDp, kCba };

std::string_view JerAlgorithmName(JerAlgorithm algorithm);
/// Accepts "naive", "dp", "cba". Throws kParseError otherwise.
JerAlgorithm ParseJerAlgorithm(std::string_view name);

double ComputeJer(std::span<const double> error_rates, JerAlgorithm algorithm);
double ComputeJer(const Jury& jury, JerAlgorithm algorithm);

/// Paley-Zygmund style lower bound on the JER.
struct BoundDiagnostics {
  double mu = 0.0;        // sum of error rates, E[C]
  double sigma_sq = 0.0;  // sum of e(1-e), Var[C]
  double gamma = 0.0;     // ((n+1)/2) / mu
  /// Present only when gamma lies in (0, 1).
  std::optional<double> bound;
};

BoundDiagnostics JerLowerBound(const Jury& jury);
/// Same quantities from precomputed moments of an odd-sized jury of n.
BoundDiagnostics JerLowerBoundFromMoments(std::size_t n, double mu,
                                          double sigma_sq);

}  // namespace jury
