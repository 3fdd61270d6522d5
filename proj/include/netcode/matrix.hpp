#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "netcode/error.hpp"
#include "netcode/gf2k.hpp"

namespace netcode {

/// Dense row-major matrix over any ring-like value type.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  /// Build from columns (each of equal length).
  static Matrix from_columns(const std::vector<std::vector<T>>& columns, const T& fill) {
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    Matrix m(rows, columns.size(), fill);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c].size() != rows) throw InvalidArgument("ragged column list");
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
    return out;
  }

  Matrix submatrix(const std::vector<std::size_t>& row_ids, const std::vector<std::size_t>& col_ids) const {
    Matrix out;
    out.rows_ = row_ids.size();
    out.cols_ = col_ids.size();
    out.data_.reserve(out.rows_ * out.cols_);
    for (std::size_t r : row_ids) {
      for (std::size_t c : col_ids) out.data_.push_back((*this)(r, c));
    }
    return out;
  }

  template <typename F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    Matrix<U> out;
    out.rows_ = rows_;
    out.cols_ = cols_;
    out.data_.reserve(data_.size());
    for (const T& v : data_) out.data_.push_back(f(v));
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  template <typename U>
  friend class Matrix;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using FieldMatrix = Matrix<FieldElem>;

/// Rank over the field by Gaussian elimination.
inline std::size_t rank(FieldMatrix m) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && m(pivot, c).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != rank) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(rank, j));
    }
    const FieldElem inv = m(rank, c).inverse();
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (m(r, c).is_zero()) continue;
      const FieldElem factor = m(r, c) * inv;
      for (std::size_t j = c; j < m.cols(); ++j) m(r, j) += factor * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

/// Determinant over the field.
inline FieldElem det(FieldMatrix m) {
  if (!m.square()) throw InvalidArgument("determinant of a non-square matrix");
  if (m.rows() == 0) throw InvalidArgument("determinant of an empty matrix needs a field; use a 1x1 or larger matrix");
  FieldElem acc = FieldElem::one(m(0, 0).field());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::size_t pivot = c;
    while (pivot < m.rows() && m(pivot, c).is_zero()) ++pivot;
    if (pivot == m.rows()) return FieldElem::zero(acc.field());
    if (pivot != c) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(c, j));
    }
    acc *= m(c, c);
    const FieldElem inv = m(c, c).inverse();
    for (std::size_t r = c + 1; r < m.rows(); ++r) {
      if (m(r, c).is_zero()) continue;
      const FieldElem factor = m(r, c) * inv;
      for (std::size_t j = c; j < m.cols(); ++j) m(r, j) += factor * m(c, j);
    }
  }
  return acc;
}

struct SubmatrixIndex {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

/// Greedy choice of an invertible r x r submatrix: rows are taken in ascending order whenever they raise the
/// rank, then columns likewise within the chosen rows.
inline SubmatrixIndex find_full_rank_submatrix(const FieldMatrix& m, std::size_t target_rank) {
  SubmatrixIndex out;
  if (target_rank == 0) return out;
  std::vector<std::size_t> all_cols(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) all_cols[c] = c;
  for (std::size_t r = 0; r < m.rows() && out.rows.size() < target_rank; ++r) {
    out.rows.push_back(r);
    if (rank(m.submatrix(out.rows, all_cols)) < out.rows.size()) out.rows.pop_back();
  }
  if (out.rows.size() < target_rank) {
    throw InvalidArgument("matrix is rank deficient: rank " + std::to_string(out.rows.size()) + " < requested " +
                          std::to_string(target_rank));
  }
  for (std::size_t c = 0; c < m.cols() && out.cols.size() < target_rank; ++c) {
    out.cols.push_back(c);
    if (rank(m.submatrix(out.rows, out.cols)) < out.cols.size()) out.cols.pop_back();
  }
  return out;
}

}  // namespace netcode
