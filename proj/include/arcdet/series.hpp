#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arcdet/field.hpp"

namespace arcdet {

/// t-order of a truncated series. Either a finite value in [0, level] or the
/// truncation sentinel meaning "order >= level + 1" (which at this level cannot
/// be told apart from an identically vanishing series).
class SeriesOrder {
 public:
  static SeriesOrder finite(unsigned value, unsigned level) { return SeriesOrder(value, level); }
  static SeriesOrder truncated(unsigned level) { return SeriesOrder(std::nullopt, level); }

  bool is_truncated() const noexcept { return !value_.has_value(); }
  unsigned level() const noexcept { return level_; }
  /// Finite order; throws TruncationInsufficient on the sentinel.
  unsigned value() const;
  /// Lower bound that is always valid: the order, or level + 1.
  unsigned lower_bound() const noexcept { return value_.value_or(level_ + 1); }
  bool at_least(unsigned m) const noexcept { return lower_bound() >= m; }

  std::string to_string() const;

  friend bool operator==(const SeriesOrder&, const SeriesOrder&) = default;

 private:
  SeriesOrder(std::optional<unsigned> value, unsigned level) : value_(value), level_(level) {}
  std::optional<unsigned> value_;
  unsigned level_;
};

/// Minimum of two orders at a common level; the sentinel is absorbing only
/// when both operands are truncated.
SeriesOrder min_order(const SeriesOrder& a, const SeriesOrder& b);

/// Power series in t known modulo t^{level+1}.
class TruncSeries {
 public:
  TruncSeries() = default;
  /// Zero series over the field of `like`.
  TruncSeries(unsigned level, const FieldElem& like = FieldElem());
  TruncSeries(unsigned level, std::vector<FieldElem> coeffs);

  static TruncSeries constant(unsigned level, const FieldElem& c);
  /// c * t^k (zero when k > level).
  static TruncSeries monomial(unsigned level, unsigned k, const FieldElem& c);

  unsigned level() const noexcept { return level_; }
  const std::vector<FieldElem>& coeffs() const noexcept { return coeffs_; }
  const FieldElem& operator[](unsigned k) const { return coeffs_.at(k); }
  FieldElem& operator[](unsigned k) { return coeffs_.at(k); }
  /// Field modulus of the coefficients (0 for Q).
  std::uint32_t modulus() const;

  bool is_zero() const;
  SeriesOrder ord() const;

  TruncSeries operator-() const;
  TruncSeries& operator+=(const TruncSeries& rhs);
  TruncSeries& operator-=(const TruncSeries& rhs);
  TruncSeries& operator*=(const TruncSeries& rhs);
  TruncSeries& operator*=(const FieldElem& scalar);
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(TruncSeries a, const TruncSeries& b) { return a *= b; }
  friend TruncSeries operator*(TruncSeries a, const FieldElem& c) { return a *= c; }
  friend bool operator==(const TruncSeries& a, const TruncSeries& b);

  /// Multiplicative inverse; requires ord() == 0.
  TruncSeries inverse() const;
  /// Multiplies by t^k, dropping coefficients beyond the level.
  TruncSeries shift_up(unsigned k) const;
  /// Divides by t^k where ord >= k; the vacated top coefficients are zero-filled
  /// (they are not determined at this level).
  TruncSeries shift_down(unsigned k) const;
  TruncSeries reduce(std::uint32_t q) const;
  TruncSeries truncate(unsigned new_level) const;

  std::string to_string() const;

 private:
  void require_same_level(const TruncSeries& rhs) const;

  unsigned level_ = 0;
  std::vector<FieldElem> coeffs_{FieldElem()};
};

}  // namespace arcdet
