#pragma once

// Dense exact linear algebra: row echelon forms, rank and kernel over GF(p)
// and over the rationals.
//
// Elimination is row-incremental: input rows are consumed in order, each is
// reduced against the pivot rows accepted so far, and becomes a new pivot
// row if anything survives. The pivot of a row is its first nonzero column.
// The reduced echelon form, and therefore the normalized kernel basis, only
// depends on the row space, so results are reproducible bit for bit.

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cstddef>
#include <variant>
#include <vector>

#include "halphen/fp.hpp"
#include "halphen/rational.hpp"

namespace halphen {

using Index = Eigen::Index;

template <class T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <class T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using MatrixFp = Matrix<Fp>;
using MatrixQ = Matrix<Rational>;

enum class RowOrder { Forward, Reverse };

template <class T>
struct Echelon {
  Index rank = 0;
  Index cols = 0;
  std::vector<Index> pivot_cols;  // increasing
  Matrix<T> rows;                 // rank x cols, reduced echelon form when `reduced`
  bool reduced = false;
};

template <class T>
struct RankKernel {
  Index rank = 0;
  /// One kernel vector per row. Row k is 1 at the k-th free column, 0 at the
  /// other free columns, so the basis is canonical.
  Matrix<T> kernel;
};

namespace detail {

template <class T>
bool nonzero(const T& a) {
  return !is_zero(a);
}

template <class T>
Echelon<T> echelon_generic(const Matrix<T>& m, bool reduce, RowOrder order) {
  const Index n = m.cols();
  std::vector<Vector<T>> piv_rows;
  std::vector<Index> piv_cols;
  for (Index k = 0; k < m.rows(); ++k) {
    Index i = order == RowOrder::Forward ? k : m.rows() - 1 - k;
    Vector<T> row = m.row(i).transpose();
    for (std::size_t t = 0; t < piv_rows.size(); ++t) {
      T c = row(piv_cols[t]);
      if (!nonzero(c)) continue;
      row -= c * piv_rows[t];
    }
    Index lead = 0;
    while (lead < n && !nonzero(row(lead))) ++lead;
    if (lead == n) continue;
    T inv = T(1) / row(lead);
    row *= inv;
    piv_rows.push_back(std::move(row));
    piv_cols.push_back(lead);
  }
  // Sort by pivot column.
  std::vector<std::size_t> perm(piv_rows.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t a, std::size_t b) { return piv_cols[a] < piv_cols[b]; });
  Echelon<T> e;
  e.rank = static_cast<Index>(piv_rows.size());
  e.cols = n;
  e.rows.resize(e.rank, n);
  for (Index r = 0; r < e.rank; ++r) {
    e.rows.row(r) = piv_rows[perm[r]].transpose();
    e.pivot_cols.push_back(piv_cols[perm[r]]);
  }
  if (reduce) {
    for (Index r = e.rank - 1; r >= 0; --r) {
      const Index c = e.pivot_cols[r];
      for (Index q = 0; q < r; ++q) {
        T f = e.rows(q, c);
        if (nonzero(f)) e.rows.row(q) -= f * e.rows.row(r);
      }
    }
    e.reduced = true;
  }
  return e;
}

}  // namespace detail

/// Exact zero test (Eigen's isZero() is a fuzzy comparison).
template <class Derived>
bool all_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j))) return false;
  return true;
}

/// Row echelon form. With `reduce` the result is the unique reduced row
/// echelon form of the row space.
template <class T>
Echelon<T> row_echelon(const Matrix<T>& m, bool reduce = true,
                       RowOrder order = RowOrder::Forward) {
  return detail::echelon_generic(m, reduce, order);
}

/// GF(p) overload with the cache-blocked elimination kernel.
Echelon<Fp> row_echelon(const MatrixFp& m, bool reduce = true,
                        RowOrder order = RowOrder::Forward);

/// Rank only; skips back-substitution.
template <class T>
Index rank(const Matrix<T>& m) {
  return row_echelon(m, false).rank;
}

template <class T>
Matrix<T> kernel_from_echelon(const Echelon<T>& e) {
  const Index n = e.cols;
  std::vector<bool> is_pivot(n, false);
  for (Index c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Index> free_cols;
  for (Index c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix<T> k = Matrix<T>::Zero(static_cast<Index>(free_cols.size()), n);
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    const Index fc = free_cols[f];
    k(f, fc) = T(1);
    for (Index r = 0; r < e.rank; ++r) {
      k(f, e.pivot_cols[r]) = -e.rows(r, fc);
    }
  }
  return k;
}

template <class T>
RankKernel<T> rank_and_kernel(const Matrix<T>& m) {
  Echelon<T> e = row_echelon(m, true);
  return {e.rank, kernel_from_echelon(e)};
}

/// Tagged scalar used at input boundaries where the field is not yet fixed.
struct PrimeResidue {
  u64 p;
  u64 v;
};
using FieldScalar = std::variant<Rational, PrimeResidue>;

/// Either kind of dense matrix, as produced from tagged scalars.
using AnyMatrix = std::variant<MatrixQ, MatrixFp>;

/// Builds a matrix from row-major tagged entries. Entries over different
/// fields (rational vs prime, or two different primes) are a Usage error.
/// A prime-field result is expressed in the active PrimeScope, which must
/// match the entries' modulus.
AnyMatrix make_dense(Index rows, Index cols, const std::vector<FieldScalar>& entries);

/// Coordinate-wise reduction of a rational point modulo p. Throws BadPrime
/// naming the coordinate whose denominator p divides.
std::array<u64, 2> reduce_rational_point(const std::array<Rational, 2>& pt, u64 p);

}  // namespace halphen
