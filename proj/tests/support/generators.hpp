// Hand-rolled random generators for property tests.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "arcdet/matrix.hpp"
#include "arcdet/multipoly.hpp"
#include "arcdet/series.hpp"

namespace gen {

inline constexpr int kTrials = 60;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }
  bool coin() { return between(0, 1) == 1; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Element of F_q, or a small rational when q == 0.
inline arcdet::FieldElem scalar(Rng& rng, std::uint32_t q) {
  if (q) return arcdet::FieldElem::modular(rng.between(0, q - 1), q);
  return arcdet::FieldElem(arcdet::Rational(rng.between(-5, 5), rng.between(1, 3)));
}

inline arcdet::MultiPoly poly(Rng& rng, const arcdet::VarListPtr& vars, std::uint32_t q, int max_terms = 4,
                              unsigned max_deg = 2) {
  arcdet::MultiPoly p(vars);
  const int terms = static_cast<int>(rng.between(0, max_terms));
  for (int t = 0; t < terms; ++t) {
    arcdet::Exponents e(vars->size());
    for (auto& x : e) x = static_cast<unsigned>(rng.between(0, max_deg));
    p.add_term(e, scalar(rng, q));
  }
  return p;
}

inline arcdet::TruncSeries series(Rng& rng, unsigned level, std::uint32_t q, unsigned min_ord = 0) {
  std::vector<arcdet::FieldElem> c;
  for (unsigned k = 0; k <= level; ++k) {
    c.push_back(k < min_ord ? (q ? arcdet::FieldElem::modular(0, q) : arcdet::FieldElem()) : scalar(rng, q));
  }
  return arcdet::TruncSeries(level, std::move(c));
}

inline arcdet::SeriesMatrix series_matrix(Rng& rng, std::size_t rows, std::size_t cols, unsigned level,
                                          std::uint32_t q) {
  arcdet::Matrix<arcdet::TruncSeries> m(rows, cols, arcdet::TruncSeries(level));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = series(rng, level, q);
  }
  return arcdet::SeriesMatrix(level, std::move(m));
}

/// Random matrix whose determinant has a nonzero constant term.
inline arcdet::SeriesMatrix unimodular(Rng& rng, std::size_t n, unsigned level, std::uint32_t q) {
  while (true) {
    auto m = series_matrix(rng, n, n, level, q);
    if (!m.determinant()[0].is_zero()) return m;
  }
}

}  // namespace gen
