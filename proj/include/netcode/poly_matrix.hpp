#pragma once

// Matrices over F_2[X]: lifting from GF(2^k), exact determinants, and the minor-enumeration cost argmax.

#include <cstdint>
#include <vector>

#include "netcode/binpoly.hpp"
#include "netcode/matrix.hpp"

namespace netcode {

using PolyMatrix = Matrix<BinPoly>;

/// Entrywise residue lift.
inline PolyMatrix lift(const FieldMatrix& m) {
  return m.map([](const FieldElem& e) { return e.to_binpoly(); });
}

inline FieldMatrix reduce_into_field(const PolyMatrix& m, const Field& f) {
  return m.map([&f](const BinPoly& p) { return reduce_into_field(p, f); });
}

namespace detail {

inline BinPoly det_cofactor(const PolyMatrix& m, std::vector<std::size_t>& cols, std::size_t row) {
  const std::size_t n = m.rows() - row;
  if (n == 1) return m(row, cols[0]);
  BinPoly acc;
  for (std::size_t i = 0; i < n; ++i) {
    if (m(row, cols[i]).is_zero()) continue;
    std::vector<std::size_t> rest;
    rest.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) rest.push_back(cols[j]);
    }
    acc += m(row, cols[i]) * det_cofactor(m, rest, row + 1);
  }
  return acc;
}

}  // namespace detail

/// Laplace expansion along the first row (signs vanish in characteristic 2).
inline BinPoly det_cofactor(const PolyMatrix& m) {
  if (!m.square()) throw InvalidArgument("determinant of a non-square matrix");
  if (m.rows() == 0) return BinPoly::one();
  std::vector<std::size_t> cols(m.cols());
  for (std::size_t c = 0; c < cols.size(); ++c) cols[c] = c;
  return detail::det_cofactor(m, cols, 0);
}

/// Fraction-free (Bareiss) elimination; every division is exact in F_2[X].
inline BinPoly det_bareiss(PolyMatrix m) {
  if (!m.square()) throw InvalidArgument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return BinPoly::one();
  BinPoly prev = BinPoly::one();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k).is_zero()) ++swap;
      if (swap == n) return {};
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        const BinPoly num = m(k, k) * m(i, j) + m(i, k) * m(k, j);
        m(i, j) = prev.is_one() ? num : num / prev;
      }
      m(i, k) = BinPoly{};
    }
    prev = m(k, k);
  }
  return m(n - 1, n - 1);
}

inline BinPoly det(const PolyMatrix& m) {
  if (!m.square()) throw InvalidArgument("determinant of a non-square matrix");
  return m.rows() <= 4 ? det_cofactor(m) : det_bareiss(m);
}

/// argmax over m in 0..n of C(n,m) * m^3: ceil(n/2)+1 for n >= 2, 1 for n = 1.
inline int argmax_minor_cost(int n) {
  if (n < 1) throw InvalidArgument("argmax_minor_cost requires n >= 1, got " + std::to_string(n));
  if (n == 1) return 1;
  return (n + 1) / 2 + 1;
}

}  // namespace netcode
