#pragma once

#include <string>
#include <vector>

#include "arcdet/matrix.hpp"

namespace arcdet {

/// Elementary-divisor orders 0 <= lambda_1 <= ... <= lambda_r.
///
/// When only a prefix of the partial sums is determined at the working level
/// the profile is flagged truncated and holds just that prefix.
class LambdaProfile {
 public:
  LambdaProfile() = default;
  explicit LambdaProfile(std::vector<unsigned> parts, bool truncated = false);

  const std::vector<unsigned>& parts() const noexcept { return parts_; }
  std::size_t size() const noexcept { return parts_.size(); }
  unsigned operator[](std::size_t i) const { return parts_.at(i); }
  bool truncated() const noexcept { return truncated_; }
  unsigned weight() const noexcept;  // |lambda|
  unsigned largest() const;          // lambda_r

  std::string to_string() const;

  friend bool operator==(const LambdaProfile&, const LambdaProfile&) = default;
  friend auto operator<=>(const LambdaProfile&, const LambdaProfile&) = default;

 private:
  std::vector<unsigned> parts_;
  bool truncated_ = false;
};

/// All nondecreasing r-tuples with sum `weight` and largest part <= max_part.
std::vector<LambdaProfile> profiles_of_weight(std::size_t r, unsigned weight, unsigned max_part);

struct SnfResult {
  SeriesMatrix p_transform;
  SeriesMatrix q_transform;
  LambdaProfile lambda;
  unsigned valid_to_level;
};

/// P * M * Q == diag(t^{lambda_1}, ..., t^{lambda_r}) mod t^{N+1}.
///
/// Pivoting picks the entry of least t-order (row-major tie-break) and scales
/// its row by the inverse unit. Throws TruncationInsufficient when the profile
/// is not determined at the matrix level (|lambda| > N).
SnfResult smith_normal_form(const SeriesMatrix& m);

}  // namespace arcdet
