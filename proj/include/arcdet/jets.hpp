#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "arcdet/multipoly.hpp"
#include "arcdet/series.hpp"

namespace arcdet {

/// Point of the jet space (A^n)_N: n coordinate series at a common level.
class JetPoint {
 public:
  explicit JetPoint(std::vector<TruncSeries> coords);
  /// coefficient rows: coeffs[i][k] is the t^k coefficient of coordinate i.
  static JetPoint from_coefficients(const std::vector<std::vector<std::int64_t>>& coeffs,
                                    unsigned level, std::uint32_t q);

  std::size_t dimension() const noexcept { return coords_.size(); }
  unsigned level() const noexcept { return level_; }
  const std::vector<TruncSeries>& coords() const noexcept { return coords_; }
  const TruncSeries& operator[](std::size_t i) const { return coords_.at(i); }

 private:
  std::vector<TruncSeries> coords_;
  unsigned level_;
};

/// Generators of an ideal over one variable list. Zero generators are dropped;
/// an empty list is the zero ideal and must be requested explicitly.
class IdealGens {
 public:
  IdealGens(VarListPtr vars, std::vector<MultiPoly> generators, bool allow_zero_ideal = false);

  const VarListPtr& vars() const noexcept { return vars_; }
  std::size_t num_vars() const noexcept { return vars_->size(); }
  const std::vector<MultiPoly>& generators() const noexcept { return gens_; }
  std::size_t size() const noexcept { return gens_.size(); }
  bool is_zero_ideal() const noexcept { return gens_.empty(); }

 private:
  VarListPtr vars_;
  std::vector<MultiPoly> gens_;
};

/// min over generators of ord_t g(gamma(t)); the sentinel iff every pullback vanishes.
SeriesOrder ord_along_ideal(const IdealGens& gens, const JetPoint& jet);

/// Odometer over all q^{n(N+1)} jets; coefficient (i, k) is digit i*(N+1)+k,
/// with the last digit turning fastest.
class JetOdometer {
 public:
  /// Throws BudgetExceeded when q^{n(N+1)} exceeds `budget`.
  JetOdometer(std::size_t n, unsigned level, std::uint32_t q, std::uint64_t budget = 1ULL << 28);

  /// Advances to the next jet; false once the stream is exhausted.
  bool next();
  JetPoint current() const;
  const std::vector<std::uint32_t>& digits() const noexcept { return digits_; }
  std::uint64_t total() const noexcept { return total_; }

 private:
  std::size_t n_;
  unsigned level_;
  std::uint32_t q_;
  std::uint64_t total_;
  std::vector<std::uint32_t> digits_;
  bool started_ = false;
};

}  // namespace arcdet
