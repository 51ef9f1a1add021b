#include "arcdet/matrix.hpp"

namespace arcdet {

std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

PolyMatrix::PolyMatrix(VarListPtr vars, Matrix<MultiPoly> entries)
    : vars_(std::move(vars)), entries_(std::move(entries)) {
  if (entries_.cols() < 1 || entries_.rows() < entries_.cols()) {
    throw InvalidArgument("matrix must be s x r with s >= r >= 1, got " +
                          std::to_string(entries_.rows()) + "x" + std::to_string(entries_.cols()));
  }
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j = 0; j < cols(); ++j) {
      if (*entries_(i, j).vars() != *vars_) {
        throw InvalidArgument("matrix entries must share the matrix variable list");
      }
    }
  }
}

PolyMatrix PolyMatrix::parse(const VarListPtr& vars,
                             const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<MultiPoly>> parsed;
  parsed.reserve(rows.size());
  for (const auto& row : rows) {
    auto& out = parsed.emplace_back();
    for (const auto& text : row) out.push_back(parse_poly(text, vars));
  }
  return PolyMatrix(vars, Matrix<MultiPoly>(std::move(parsed)));
}

MultiPoly PolyMatrix::determinant() const { return det_division_free(entries_, zero(), one()); }

std::vector<MultiPoly> PolyMatrix::minors(std::size_t ell) const {
  return arcdet::minors(entries_, ell, zero(), one());
}

std::vector<std::vector<std::string>> PolyMatrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows());
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j = 0; j < cols(); ++j) out[i].push_back(entries_(i, j).to_string());
  }
  return out;
}

SeriesMatrix::SeriesMatrix(unsigned level, Matrix<TruncSeries> entries)
    : level_(level), entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.cols() == 0) throw InvalidArgument("empty series matrix");
  for (std::size_t i = 0; i < entries_.rows(); ++i) {
    for (std::size_t j = 0; j < entries_.cols(); ++j) {
      if (entries_(i, j).level() != level_) {
        throw InvalidArgument("series matrix entries must share level " + std::to_string(level_));
      }
    }
  }
}

SeriesMatrix SeriesMatrix::identity(std::size_t n, unsigned level, const FieldElem& like) {
  Matrix<TruncSeries> m(n, n, TruncSeries(level, like));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = TruncSeries::constant(level, FieldElem::one_like(like));
  return SeriesMatrix(level, std::move(m));
}

SeriesMatrix SeriesMatrix::diagonal(std::size_t rows, const std::vector<unsigned>& lambda,
                                    unsigned level, const FieldElem& like) {
  if (lambda.size() > rows) throw InvalidArgument("diagonal: more parts than rows");
  Matrix<TruncSeries> m(rows, lambda.size(), TruncSeries(level, like));
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    m(i, i) = TruncSeries::monomial(level, lambda[i], FieldElem::one_like(like));
  }
  return SeriesMatrix(level, std::move(m));
}

TruncSeries SeriesMatrix::determinant() const { return det_division_free(entries_, zero(), one()); }

std::vector<TruncSeries> SeriesMatrix::minors(std::size_t ell) const {
  return arcdet::minors(entries_, ell, zero(), one());
}

SeriesMatrix SeriesMatrix::operator*(const SeriesMatrix& rhs) const {
  if (level_ != rhs.level_) throw InvalidArgument("series matrices at different levels");
  return SeriesMatrix(level_, multiply(entries_, rhs.entries_, zero()));
}

SeriesMatrix SeriesMatrix::reduce(std::uint32_t q) const {
  Matrix<TruncSeries> m = entries_;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = m(i, j).reduce(q);
  }
  return SeriesMatrix(level_, std::move(m));
}

SeriesMatrix pullback(const PolyMatrix& a, const std::vector<TruncSeries>& jet) {
  if (jet.empty()) throw InvalidArgument("pullback needs a jet with at least one coordinate");
  Matrix<TruncSeries> m(a.rows(), a.cols(), TruncSeries(jet.front().level(), jet.front()[0]));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = substitute_jet(a(i, j), jet);
  }
  return SeriesMatrix(jet.front().level(), std::move(m));
}

std::size_t rank_of(Matrix<FieldElem> m) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && m(pivot, col).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != rank) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(rank, j));
    }
    FieldElem inv = m(rank, col).inverse();
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      if (m(i, col).is_zero()) continue;
      FieldElem factor = m(i, col) * inv;
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= factor * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

}  // namespace arcdet
