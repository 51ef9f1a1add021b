#include "arcdet/jets.hpp"

#include "arcdet/errors.hpp"

namespace arcdet {

JetPoint::JetPoint(std::vector<TruncSeries> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InvalidArgument("jet needs at least one coordinate");
  level_ = coords_.front().level();
  for (const auto& c : coords_) {
    if (c.level() != level_) throw InvalidArgument("jet coordinates have different levels");
  }
}

JetPoint JetPoint::from_coefficients(const std::vector<std::vector<std::int64_t>>& coeffs,
                                     unsigned level, std::uint32_t q) {
  std::vector<TruncSeries> coords;
  for (const auto& row : coeffs) {
    if (row.size() > level + 1) throw InvalidArgument("jet coordinate has more than level+1 coefficients");
    std::vector<FieldElem> c;
    for (unsigned k = 0; k <= level; ++k) {
      std::int64_t v = k < row.size() ? row[k] : 0;
      c.push_back(q == 0 ? FieldElem(static_cast<long>(v)) : FieldElem::modular(v, q));
    }
    coords.emplace_back(level, std::move(c));
  }
  return JetPoint(std::move(coords));
}

IdealGens::IdealGens(VarListPtr vars, std::vector<MultiPoly> generators, bool allow_zero_ideal)
    : vars_(std::move(vars)) {
  for (auto& g : generators) {
    if (*g.vars() != *vars_) throw InvalidArgument("ideal generator over a different variable list");
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
  if (gens_.empty() && !allow_zero_ideal) {
    throw InvalidArgument("ideal has no nonzero generator (zero ideal not allowed here)");
  }
}

SeriesOrder ord_along_ideal(const IdealGens& gens, const JetPoint& jet) {
  if (jet.dimension() != gens.num_vars()) {
    throw InvalidArgument("jet dimension " + std::to_string(jet.dimension()) +
                          " does not match " + std::to_string(gens.num_vars()) + " variables");
  }
  SeriesOrder best = SeriesOrder::truncated(jet.level());
  for (const auto& g : gens.generators()) {
    best = min_order(best, substitute_jet(g, jet.coords()).ord());
  }
  return best;
}

JetOdometer::JetOdometer(std::size_t n, unsigned level, std::uint32_t q, std::uint64_t budget)
    : n_(n), level_(level), q_(q), digits_(n * (level + 1), 0) {
  require_prime(q);
  long double size = 1;
  for (std::size_t i = 0; i < digits_.size(); ++i) size *= q;
  if (size > static_cast<long double>(budget)) {
    throw BudgetExceeded("enumerating " + std::to_string(q) + "^" + std::to_string(digits_.size()) +
                         " jets exceeds the budget of " + std::to_string(budget) +
                         "; use sampled mode");
  }
  total_ = static_cast<std::uint64_t>(size);
}

bool JetOdometer::next() {
  if (!started_) {
    started_ = true;
    return true;
  }
  for (std::size_t i = digits_.size(); i-- > 0;) {
    if (++digits_[i] < q_) return true;
    digits_[i] = 0;
  }
  return false;
}

JetPoint JetOdometer::current() const {
  std::vector<TruncSeries> coords;
  coords.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    std::vector<FieldElem> c;
    c.reserve(level_ + 1);
    for (unsigned k = 0; k <= level_; ++k) {
      c.push_back(FieldElem::modular(digits_[i * (level_ + 1) + k], q_));
    }
    coords.emplace_back(level_, std::move(c));
  }
  return JetPoint(std::move(coords));
}

}  // namespace arcdet
