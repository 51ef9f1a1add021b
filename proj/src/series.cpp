#include "arcdet/series.hpp"

#include <sstream>

#include "arcdet/errors.hpp"

namespace arcdet {

unsigned SeriesOrder::value() const {
  if (!value_) {
    throw TruncationInsufficient("order is >= " + std::to_string(level_ + 1) +
                                 " (not determined at level " + std::to_string(level_) + ")");
  }
  return *value_;
}

std::string SeriesOrder::to_string() const {
  if (value_) return std::to_string(*value_);
  return ">=" + std::to_string(level_ + 1);
}

SeriesOrder min_order(const SeriesOrder& a, const SeriesOrder& b) {
  if (a.level() != b.level()) throw InvalidArgument("orders compared at different levels");
  if (a.is_truncated()) return b;
  if (b.is_truncated()) return a;
  return a.value() <= b.value() ? a : b;
}

TruncSeries::TruncSeries(unsigned level, const FieldElem& like)
    : level_(level), coeffs_(level + 1, FieldElem::zero_like(like)) {}

TruncSeries::TruncSeries(unsigned level, std::vector<FieldElem> coeffs)
    : level_(level), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != level_ + 1) {
    throw InvalidArgument("series at level " + std::to_string(level_) + " needs " +
                          std::to_string(level_ + 1) + " coefficients, got " +
                          std::to_string(coeffs_.size()));
  }
  std::uint32_t q = 0;
  for (const auto& c : coeffs_) {
    if (!c.is_rational()) q = c.modulus();
  }
  if (q != 0) {
    for (auto& c : coeffs_) c = c.reduce(q);
  }
}

TruncSeries TruncSeries::constant(unsigned level, const FieldElem& c) {
  return monomial(level, 0, c);
}

TruncSeries TruncSeries::monomial(unsigned level, unsigned k, const FieldElem& c) {
  TruncSeries s(level, c);
  if (k <= level) s.coeffs_[k] = c;
  return s;
}

std::uint32_t TruncSeries::modulus() const { return coeffs_.front().modulus(); }

bool TruncSeries::is_zero() const {
  for (const auto& c : coeffs_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

SeriesOrder TruncSeries::ord() const {
  for (unsigned k = 0; k <= level_; ++k) {
    if (!coeffs_[k].is_zero()) return SeriesOrder::finite(k, level_);
  }
  return SeriesOrder::truncated(level_);
}

void TruncSeries::require_same_level(const TruncSeries& rhs) const {
  if (level_ != rhs.level_) {
    throw InvalidArgument("series levels differ: " + std::to_string(level_) + " vs " +
                          std::to_string(rhs.level_));
  }
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& rhs) {
  require_same_level(rhs);
  for (unsigned k = 0; k <= level_; ++k) coeffs_[k] += rhs.coeffs_[k];
  if (!rhs.coeffs_.front().is_rational()) {
    for (auto& c : coeffs_) c = c.reduce(rhs.modulus());
  }
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& rhs) { return *this += -rhs; }

TruncSeries& TruncSeries::operator*=(const TruncSeries& rhs) {
  require_same_level(rhs);
  FieldElem zero = FieldElem::zero_like(coeffs_.front());
  if (!rhs.coeffs_.front().is_rational()) zero = zero.reduce(rhs.modulus());
  std::vector<FieldElem> out(level_ + 1, zero);
  for (unsigned i = 0; i <= level_; ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (unsigned j = 0; i + j <= level_; ++j) {
      if (rhs.coeffs_[j].is_zero()) continue;
      out[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
  }
  coeffs_ = std::move(out);
  return *this;
}

TruncSeries& TruncSeries::operator*=(const FieldElem& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  if (!scalar.is_rational()) {
    for (auto& c : coeffs_) c = c.reduce(scalar.modulus());
  }
  return *this;
}

bool operator==(const TruncSeries& a, const TruncSeries& b) {
  if (a.level_ != b.level_) return false;
  for (unsigned k = 0; k <= a.level_; ++k) {
    if (a.coeffs_[k] != b.coeffs_[k]) return false;
  }
  return true;
}

TruncSeries TruncSeries::inverse() const {
  if (coeffs_.front().is_zero()) throw DivisionByZero();
  TruncSeries out(level_, coeffs_.front());
  FieldElem inv0 = coeffs_.front().inverse();
  out.coeffs_[0] = inv0;
  for (unsigned k = 1; k <= level_; ++k) {
    FieldElem acc = FieldElem::zero_like(inv0);
    for (unsigned j = 1; j <= k; ++j) acc += coeffs_[j] * out.coeffs_[k - j];
    out.coeffs_[k] = -(acc * inv0);
  }
  return out;
}

TruncSeries TruncSeries::shift_up(unsigned k) const {
  TruncSeries out(level_, coeffs_.front());
  for (unsigned i = 0; i + k <= level_; ++i) out.coeffs_[i + k] = coeffs_[i];
  return out;
}

TruncSeries TruncSeries::shift_down(unsigned k) const {
  for (unsigned i = 0; i < k && i <= level_; ++i) {
    if (!coeffs_[i].is_zero()) throw InvalidArgument("shift_down by more than the t-order");
  }
  TruncSeries out(level_, coeffs_.front());
  for (unsigned i = k; i <= level_; ++i) out.coeffs_[i - k] = coeffs_[i];
  return out;
}

TruncSeries TruncSeries::reduce(std::uint32_t q) const {
  TruncSeries out = *this;
  for (auto& c : out.coeffs_) c = c.reduce(q);
  return out;
}

TruncSeries TruncSeries::truncate(unsigned new_level) const {
  if (new_level > level_) throw InvalidArgument("cannot raise the level of a truncated series");
  std::vector<FieldElem> c(coeffs_.begin(), coeffs_.begin() + new_level + 1);
  return TruncSeries(new_level, std::move(c));
}

std::string TruncSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (unsigned k = 0; k <= level_; ++k) {
    if (coeffs_[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << coeffs_[k];
    if (k >= 1) os << "*t";
    if (k >= 2) os << "^" << k;
  }
  if (first) os << "0";
  os << " + O(t^" << level_ + 1 << ")";
  return os.str();
}

}  // namespace arcdet
