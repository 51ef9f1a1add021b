#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arcdet/errors.hpp"
#include "arcdet/multipoly.hpp"
#include "arcdet/series.hpp"

namespace arcdet {

/// Dense row-major matrix over a commutative ring carrier T.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  explicit Matrix(std::vector<std::vector<T>> rows) {
    rows_ = rows.size();
    cols_ = rows.empty() ? 0 : rows.front().size();
    data_.reserve(rows_ * cols_);
    for (auto& r : rows) {
      if (r.size() != cols_) throw InvalidArgument("ragged matrix rows");
      for (auto& v : r) data_.push_back(std::move(v));
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const T& at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw InvalidArgument("matrix index out of range");
    return data_[i * cols_ + j];
  }

  Matrix submatrix(const std::vector<std::size_t>& row_idx,
                   const std::vector<std::size_t>& col_idx) const {
    Matrix out;
    out.rows_ = row_idx.size();
    out.cols_ = col_idx.size();
    out.data_.reserve(out.rows_ * out.cols_);
    for (auto i : row_idx) {
      for (auto j : col_idx) out.data_.push_back(at(i, j));
    }
    return out;
  }

  Matrix transpose() const {
    Matrix out;
    out.rows_ = cols_;
    out.cols_ = rows_;
    out.data_.reserve(data_.size());
    for (std::size_t j = 0; j < cols_; ++j) {
      for (std::size_t i = 0; i < rows_; ++i) out.data_.push_back((*this)(i, j));
    }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Product over a ring carrier; `zero` fixes the additive identity of T.
template <typename T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b, const T& zero) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix product: inner dimensions differ");
  Matrix<T> out(a.rows(), b.cols(), zero);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

/// Determinant without ring division: Laplace expansion memoized over column
/// subsets, O(n 2^n) ring operations. Sound over rings with zero divisors.
template <typename T>
T det_division_free(const Matrix<T>& m, const T& zero, const T& one) {
  if (!m.is_square()) {
    throw InvalidArgument("determinant of a non-square " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + " matrix");
  }
  const std::size_t n = m.rows();
  if (n == 0) return one;
  if (n > 20) throw InvalidArgument("determinant size too large for subset expansion");
  // partial[mask] = det of rows 0..|mask|-1 against the columns in mask.
  std::vector<T> partial(std::size_t{1} << n, zero);
  partial[0] = one;
  for (std::size_t mask = 1; mask < partial.size(); ++mask) {
    const std::size_t row = static_cast<std::size_t>(__builtin_popcountll(mask)) - 1;
    T acc = zero;
    unsigned above = 0;  // columns in mask greater than j
    for (std::size_t jj = n; jj-- > 0;) {
      if (!((mask >> jj) & 1U)) continue;
      T term = m(row, jj) * partial[mask & ~(std::size_t{1} << jj)];
      if (above % 2 == 0) {
        acc += term;
      } else {
        acc -= term;
      }
      ++above;
    }
    partial[mask] = std::move(acc);
  }
  return partial.back();
}

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k);

template <typename T>
std::vector<T> minors(const Matrix<T>& m, std::size_t ell, const T& zero, const T& one) {
  if (ell < 1 || ell > std::min(m.rows(), m.cols())) {
    throw InvalidArgument("minor size " + std::to_string(ell) + " out of range for a " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix");
  }
  std::vector<T> out;
  auto row_sets = k_subsets(m.rows(), ell);
  auto col_sets = k_subsets(m.cols(), ell);
  out.reserve(row_sets.size() * col_sets.size());
  for (const auto& rs : row_sets) {
    for (const auto& cs : col_sets) out.push_back(det_division_free(m.submatrix(rs, cs), zero, one));
  }
  return out;
}

/// s x r matrix of polynomials over one variable list (s >= r >= 1).
class PolyMatrix {
 public:
  PolyMatrix(VarListPtr vars, Matrix<MultiPoly> entries);
  /// Parses each entry with parse_poly.
  static PolyMatrix parse(const VarListPtr& vars, const std::vector<std::vector<std::string>>& rows);

  const VarListPtr& vars() const noexcept { return vars_; }
  std::size_t rows() const noexcept { return entries_.rows(); }
  std::size_t cols() const noexcept { return entries_.cols(); }
  const MultiPoly& operator()(std::size_t i, std::size_t j) const { return entries_.at(i, j); }
  const Matrix<MultiPoly>& entries() const noexcept { return entries_; }

  MultiPoly zero() const { return MultiPoly(vars_); }
  MultiPoly one() const { return MultiPoly::constant(vars_, FieldElem(1)); }
  MultiPoly determinant() const;
  std::vector<MultiPoly> minors(std::size_t ell) const;

  std::vector<std::vector<std::string>> to_strings() const;

 private:
  VarListPtr vars_;
  Matrix<MultiPoly> entries_;
};

/// Matrix of truncated series at one common level.
class SeriesMatrix {
 public:
  SeriesMatrix(unsigned level, Matrix<TruncSeries> entries);
  static SeriesMatrix identity(std::size_t n, unsigned level, const FieldElem& like = FieldElem());
  /// s x r matrix with t^{lambda_i} on the diagonal.
  static SeriesMatrix diagonal(std::size_t rows, const std::vector<unsigned>& lambda, unsigned level,
                               const FieldElem& like = FieldElem());

  unsigned level() const noexcept { return level_; }
  std::size_t rows() const noexcept { return entries_.rows(); }
  std::size_t cols() const noexcept { return entries_.cols(); }
  const TruncSeries& operator()(std::size_t i, std::size_t j) const { return entries_.at(i, j); }
  const Matrix<TruncSeries>& entries() const noexcept { return entries_; }
  const FieldElem& like() const { return entries_(0, 0)[0]; }

  TruncSeries zero() const { return TruncSeries(level_, like()); }
  TruncSeries one() const { return TruncSeries::constant(level_, FieldElem::one_like(like())); }
  TruncSeries determinant() const;
  std::vector<TruncSeries> minors(std::size_t ell) const;
  SeriesMatrix operator*(const SeriesMatrix& rhs) const;
  SeriesMatrix reduce(std::uint32_t q) const;
  friend bool operator==(const SeriesMatrix&, const SeriesMatrix&) = default;

 private:
  unsigned level_;
  Matrix<TruncSeries> entries_;
};

/// Pull-back gamma*(A): each entry substituted along the jet.
SeriesMatrix pullback(const PolyMatrix& a, const std::vector<TruncSeries>& jet);

/// Rank over a field by Gaussian elimination.
std::size_t rank_of(Matrix<FieldElem> m);

}  // namespace arcdet
