#include "jury/juror.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "jury/error.h"

namespace jury {

double ClampErrorRate(double epsilon) {
  if (std::isnan(epsilon)) {
    throw Error(ErrorCode::kInvalidJuror, "error rate is NaN");
  }
  return std::clamp(epsilon, kMinErrorRate, kMaxErrorRate);
}

Juror MakeJuror(std::string id, double epsilon, double requirement) {
  if (id.empty()) throw Error(ErrorCode::kInvalidJuror, "empty juror id");
  if (!std::isfinite(requirement) || requirement < 0.0) {
    throw Error(ErrorCode::kInvalidJuror,
                "juror '" + id + "' has invalid requirement");
  }
  double clamped = ClampErrorRate(epsilon);
  return Juror{std::move(id), clamped, requirement};
}

Jury::Jury(std::vector<Juror> members) : members_(std::move(members)) {
  if (members_.empty()) throw Error(ErrorCode::kInvalidJury, "empty jury");
  if (members_.size() % 2 == 0) {
    throw Error(ErrorCode::kInvalidJury,
                "jury size " + std::to_string(members_.size()) + " is even");
  }
  std::unordered_set<std::string> seen;
  error_rates_.reserve(members_.size());
  for (auto& m : members_) {
    if (!seen.insert(m.id).second) {
      throw Error(ErrorCode::kInvalidJury, "duplicate juror id '" + m.id + "'");
    }
    m = MakeJuror(std::move(m.id), m.epsilon, m.requirement);
    error_rates_.push_back(m.epsilon);
  }
}

double Jury::total_requirement() const {
  double total = 0.0;
  for (const auto& m : members_) total += m.requirement;
  return total;
}

std::vector<std::string> Jury::ids() const {
  std::vector<std::string> out;
  out.reserve(members_.size());
  for (const auto& m : members_) out.push_back(m.id);
  return out;
}

}  // namespace jury
