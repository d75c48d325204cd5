#include "jury/jer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "jury/error.h"

namespace jury {
namespace {

void RequireOddNonEmpty(std::span<const double> error_rates) {
  if (error_rates.empty()) throw Error(ErrorCode::kInvalidJury, "empty jury");
  if (error_rates.size() % 2 == 0) {
    throw Error(ErrorCode::kInvalidJury,
                "jury size " + std::to_string(error_rates.size()) + " is even");
  }
}

// Sums Pr(outcome) over every wrong/right assignment with at least
// `threshold` wrong votes. Branches that can no longer reach the threshold
// are skipped; every qualifying outcome is visited individually.
double EnumerateTail(std::span<const double> e, std::size_t i,
                     std::size_t wrong, std::size_t threshold, double prob) {
  if (wrong + (e.size() - i) < threshold) return 0.0;
  if (i == e.size()) return prob;
  return EnumerateTail(e, i + 1, wrong + 1, threshold, prob * e[i]) +
         EnumerateTail(e, i + 1, wrong, threshold, prob * (1.0 - e[i]));
}

std::vector<double> WrongCountsRecursive(std::span<const double> e,
                                         std::size_t direct_threshold) {
  if (e.size() == 1) return {1.0 - e[0], e[0]};
  const std::size_t half = e.size() / 2;
  std::vector<double> left = WrongCountsRecursive(e.first(half), direct_threshold);
  std::vector<double> right =
      WrongCountsRecursive(e.subspan(half), direct_threshold);
  return ConvolveMass(left, right, direct_threshold);
}

std::vector<double> Clamped(std::span<const double> error_rates) {
  std::vector<double> out(error_rates.begin(), error_rates.end());
  for (double& e : out) e = ClampErrorRate(e);
  return out;
}

}  // namespace

WrongCountDistribution::WrongCountDistribution(std::vector<double> mass)
    : mass_(std::move(mass)) {
  if (mass_.empty()) {
    throw Error(ErrorCode::kInvalidDistribution, "empty mass vector");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < mass_.size(); ++k) {
    double& v = mass_[k];
    if (!std::isfinite(v) || v < -kNegativeMassTolerance ||
        v > 1.0 + kNegativeMassTolerance) {
      throw Error(ErrorCode::kInvalidDistribution,
                  "mass " + std::to_string(v) + " at index " +
                      std::to_string(k) + " is outside [0, 1]");
    }
    v = std::clamp(v, 0.0, 1.0);
    sum += v;
  }
  if (std::abs(sum - 1.0) > kMassSumTolerance) {
    throw Error(ErrorCode::kInvalidDistribution,
                "mass sums to " + std::to_string(sum));
  }
}

WrongCountDistribution WrongCountDistribution::ForJuror(double epsilon) {
  const double e = ClampErrorRate(epsilon);
  return WrongCountDistribution({1.0 - e, e});
}

WrongCountDistribution WrongCounts(std::span<const double> error_rates,
                                   std::size_t direct_threshold) {
  if (error_rates.empty()) throw Error(ErrorCode::kInvalidJury, "empty jury");
  const std::vector<double> e = Clamped(error_rates);
  return WrongCountDistribution(WrongCountsRecursive(e, direct_threshold));
}

WrongCountDistribution WrongCounts(const Jury& jury) {
  return WrongCounts(jury.error_rates());
}

double JerFromDistribution(const WrongCountDistribution& distribution) {
  const std::size_t n = distribution.jury_size();
  if (n % 2 == 0) {
    throw Error(ErrorCode::kEvenSize,
                "majority threshold undefined for jury size " +
                    std::to_string(n));
  }
  const auto mass = distribution.mass();
  double tail = 0.0;
  for (std::size_t k = n + 1; k-- > MajorityThreshold(n);) tail += mass[k];
  return std::clamp(tail, 0.0, 1.0);
}

double JerNaive(std::span<const double> error_rates) {
  RequireOddNonEmpty(error_rates);
  if (error_rates.size() > kNaiveMaxJurySize) {
    throw Error(ErrorCode::kSizeLimitExceeded,
                "enumeration refused for " +
                    std::to_string(error_rates.size()) + " jurors (max " +
                    std::to_string(kNaiveMaxJurySize) + ")");
  }
  const std::vector<double> e = Clamped(error_rates);
  const double tail = EnumerateTail(e, 0, 0, MajorityThreshold(e.size()), 1.0);
  return std::clamp(tail, 0.0, 1.0);
}

double JerNaive(const Jury& jury) { return JerNaive(jury.error_rates()); }

double JerDp(std::span<const double> error_rates) {
  RequireOddNonEmpty(error_rates);
  const std::size_t n = error_rates.size();
  const std::size_t target = MajorityThreshold(n);
  // at_least[L] = Pr(C >= L | first m jurors); at_least[0] is always 1.
  std::vector<double> at_least(target + 1, 0.0);
  at_least[0] = 1.0;
  for (std::size_t m = 1; m <= n; ++m) {
    const double e = ClampErrorRate(error_rates[m - 1]);
    const std::size_t remaining = n - m;
    const std::size_t lo = target > remaining ? std::max<std::size_t>(1, target - remaining) : 1;
    const std::size_t hi = std::min(m, target);
    // Descending L so at_least[L - 1] still holds the previous row.
    for (std::size_t l = hi; l >= lo; --l) {
      at_least[l] = at_least[l - 1] * e + at_least[l] * (1.0 - e);
      if (l == 1) break;
    }
  }
  return std::clamp(at_least[target], 0.0, 1.0);
}

double JerDp(const Jury& jury) { return JerDp(jury.error_rates()); }

namespace {

double LogAddExp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

}  // namespace

double LogJerDp(std::span<const double> error_rates) {
  RequireOddNonEmpty(error_rates);
  const std::size_t n = error_rates.size();
  const std::size_t target = MajorityThreshold(n);
  std::vector<double> log_at_least(target + 1, -std::numeric_limits<double>::infinity());
  log_at_least[0] = 0.0;
  for (std::size_t m = 1; m <= n; ++m) {
    const double e = ClampErrorRate(error_rates[m - 1]);
    const double log_e = std::log(e);
    const double log_keep = std::log1p(-e);
    const std::size_t remaining = n - m;
    const std::size_t lo = target > remaining ? std::max<std::size_t>(1, target - remaining) : 1;
    const std::size_t hi = std::min(m, target);
    for (std::size_t l = hi; l >= lo; --l) {
      log_at_least[l] = LogAddExp(log_at_least[l - 1] + log_e, log_at_least[l] + log_keep);
      if (l == 1) break;
    }
  }
  return std::min(log_at_least[target], 0.0);
}

double LogJerDp(const Jury& jury) { return LogJerDp(jury.error_rates()); }

double JerCba(std::span<const double> error_rates) {
  RequireOddNonEmpty(error_rates);
  return JerFromDistribution(WrongCounts(error_rates));
}

double JerCba(const Jury& jury) { return JerCba(jury.error_rates()); }

std::string_view JerAlgorithmName(JerAlgorithm algorithm) {
  switch (algorithm) {
    case JerAlgorithm::kNaive: return "naive";
    case JerAlgorithm::kDp: return "dp";
    case JerAlgorithm::kCba: return "cba";
  }
  return "unknown";
}

JerAlgorithm ParseJerAlgorithm(std::string_view name) {
  if (name == "naive") return JerAlgorithm::kNaive;
  if (name == "dp") return JerAlgorithm::kDp;
  if (name == "cba") return JerAlgorithm::kCba;
  throw Error(ErrorCode::kParseError,
              "unknown JER algorithm '" + std::string(name) + "'");
}

double ComputeJer(std::span<const double> error_rates, JerAlgorithm algorithm) {
  switch (algorithm) {
    case JerAlgorithm::kNaive: return JerNaive(error_rates);
    case JerAlgorithm::kDp: return JerDp(error_rates);
    case JerAlgorithm::kCba: return JerCba(error_rates);
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown JER algorithm");
}

double ComputeJer(const Jury& jury, JerAlgorithm algorithm) {
  return ComputeJer(jury.error_rates(), algorithm);
}

BoundDiagnostics JerLowerBoundFromMoments(std::size_t n, double mu,
                                          double sigma_sq) {
  BoundDiagnostics d;
  d.mu = mu;
  d.sigma_sq = sigma_sq;
  d.gamma = static_cast<double>(MajorityThreshold(n)) / mu;
  if (d.gamma > 0.0 && d.gamma < 1.0) {
    const double shifted = (1.0 - d.gamma) * mu;
    const double num = shifted * shifted;
    d.bound = std::clamp(num / (num + sigma_sq), 0.0, 1.0);
  }
  return d;
}

BoundDiagnostics JerLowerBound(const Jury& jury) {
  double mu = 0.0;
  double sigma_sq = 0.0;
  for (double e : jury.error_rates()) {
    mu += e;
    sigma_sq += e * (1.0 - e);
  }
  return JerLowerBoundFromMoments(jury.size(), mu, sigma_sq);
}

}  // namespace jury
