#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace jury {

/// Admissible error rates live in the closed range [kMinErrorRate,
/// kMaxErrorRate]; anything outside is clamped on admission.
inline constexpr double kMinErrorRate = 1e-6;
inline constexpr double kMaxErrorRate = 1.0 - 1e-6;

/// Clamps into [kMinErrorRate, kMaxErrorRate]. Throws kInvalidJuror on NaN.
double ClampErrorRate(double epsilon);

/// One candidate worker: the probability of voting wrongly on a binary task
/// and the payment asked for taking part (zero for altruistic jurors).
struct Juror {
  std::string id;
  double epsilon = 0.5;
  double requirement = 0.0;
};

/// Validates and normalizes a juror: clamps epsilon, rejects negative or
/// non-finite requirements and empty ids.
Juror MakeJuror(std::string id, double epsilon, double requirement = 0.0);

/// Number of wrong votes that flips a majority decision for a jury of n.
constexpr std::size_t MajorityThreshold(std::size_t n) { return (n + 1) / 2; }

/// An odd-sized group of jurors with distinct ids, aggregated by majority
/// voting. Immutable after construction.
class Jury {
 public:
  /// Throws kInvalidJury if empty, even-sized, or ids repeat.
  explicit Jury(std::vector<Juror> members);

  std::size_t size() const { return members_.size(); }
  const std::vector<Juror>& members() const { return members_; }
  std::span<const double> error_rates() const { return error_rates_; }
  double total_requirement() const;
  std::vector<std::string> ids() const;

 private:
  std::vector<Juror> members_;
  std::vector<double> error_rates_;
};

}  // namespace jury
