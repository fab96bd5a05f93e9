#pragma once

// Dense real-matrix helpers: products, the full-rank test and the linear
// solve that recovers A from A X = X'. Storage is Eigen; elimination and
// products are written out so pivot thresholds and summation order are
// fixed.

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "swlearn/errors.hpp"

namespace swlearn {

using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Matrix = MatrixX<double>;

/// Smallest pivot magnitude accepted by elimination.
inline constexpr double kPivotTolerance = 1e-12;
/// Default max-abs tolerance when two recovered labels are compared.
inline constexpr double kLabelTolerance = 1e-6;

template <typename Scalar = double>
MatrixX<Scalar> identity(Index d) {
  if (d < 1) throw DimensionMismatch("identity: dimension must be positive");
  return MatrixX<Scalar>::Identity(d, d);
}

/// Plain product; each entry is accumulated over the inner index in
/// ascending order starting from zero.
template <typename DerivedA, typename DerivedB>
MatrixX<typename DerivedA::Scalar> mat_mul(const Eigen::MatrixBase<DerivedA>& a,
                                           const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                            " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  MatrixX<Scalar> c = MatrixX<Scalar>::Zero(a.rows(), b.cols());
  for (Index j = 0; j < b.cols(); ++j) {
    for (Index k = 0; k < a.cols(); ++k) {
      const Scalar bkj = b(k, j);
      for (Index i = 0; i < a.rows(); ++i) c(i, j) += a(i, k) * bkj;
    }
  }
  return c;
}

namespace detail {

// Gaussian elimination with partial pivoting on a square `lhs`, mirroring
// row operations into `rhs` (which may have zero columns). Returns the first
// column whose best pivot has magnitude <= tol, or -1 when all pivots pass.
template <typename Scalar>
Index forward_eliminate(MatrixX<Scalar>& lhs, MatrixX<Scalar>& rhs, Scalar tol) {
  const Index n = lhs.rows();
  for (Index col = 0; col < n; ++col) {
    Index pivot_row = col;
    Scalar best = std::abs(lhs(col, col));
    for (Index r = col + 1; r < n; ++r) {
      const Scalar v = std::abs(lhs(r, col));
      if (v > best) {
        best = v;
        pivot_row = r;
      }
    }
    if (!(best > tol)) return col;
    if (pivot_row != col) {
      lhs.row(col).swap(lhs.row(pivot_row));
      if (rhs.cols() > 0) rhs.row(col).swap(rhs.row(pivot_row));
    }
    const Scalar pivot = lhs(col, col);
    for (Index r = col + 1; r < n; ++r) {
      const Scalar factor = lhs(r, col) / pivot;
      if (factor == Scalar(0)) continue;
      lhs(r, col) = Scalar(0);
      for (Index c = col + 1; c < n; ++c) lhs(r, c) -= factor * lhs(col, c);
      for (Index c = 0; c < rhs.cols(); ++c) rhs(r, c) -= factor * rhs(col, c);
    }
  }
  return -1;
}

template <typename Scalar>
void back_substitute(const MatrixX<Scalar>& upper, MatrixX<Scalar>& rhs) {
  const Index n = upper.rows();
  for (Index c = 0; c < rhs.cols(); ++c) {
    for (Index r = n - 1; r >= 0; --r) {
      Scalar s = rhs(r, c);
      for (Index k = r + 1; k < n; ++k) s -= upper(r, k) * rhs(k, c);
      rhs(r, c) = s / upper(r, r);
    }
  }
}

}  // namespace detail

/// True iff elimination with partial pivoting finds d pivots larger than tol.
template <typename Derived>
bool is_full_rank(const Eigen::MatrixBase<Derived>& m,
                  typename Derived::Scalar tol = kPivotTolerance) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  MatrixX<Scalar> work = m;
  MatrixX<Scalar> none(m.rows(), 0);
  return detail::forward_eliminate(work, none, tol) < 0;
}

/// Recovers A from A X = X' when the columns of X form a basis.
///
/// Solved as X^T A^T = X'^T so one elimination of X^T serves all d
/// right-hand sides. Throws SingularBasis when a pivot falls to tol or below.
template <typename DerivedX, typename DerivedXp>
MatrixX<typename DerivedX::Scalar> solve_for_A(const Eigen::MatrixBase<DerivedX>& x,
                                               const Eigen::MatrixBase<DerivedXp>& xp,
                                               typename DerivedX::Scalar tol = kPivotTolerance) {
  using Scalar = typename DerivedX::Scalar;
  if (x.rows() != x.cols() || xp.rows() != x.rows() || xp.cols() != x.cols()) {
    throw DimensionMismatch("solve_for_A: X and X' must be square of equal size");
  }
  MatrixX<Scalar> lhs = x.transpose();
  MatrixX<Scalar> rhs = xp.transpose();
  const Index bad = detail::forward_eliminate(lhs, rhs, tol);
  if (bad >= 0) {
    throw SingularBasis("solve_for_A: pivot below tolerance in column " + std::to_string(bad));
  }
  detail::back_substitute(lhs, rhs);
  return rhs.transpose();
}

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar max_abs_diff(const Eigen::MatrixBase<DerivedA>& a,
                                       const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("max_abs_diff: shapes differ");
  }
  if (a.size() == 0) return 0;
  return (a - b).cwiseAbs().maxCoeff();
}

template <typename DerivedA, typename DerivedB>
bool mat_approx_eq(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                   typename DerivedA::Scalar tol = kLabelTolerance) {
  return max_abs_diff(a, b) <= tol;
}

/// How far `a` is from mapping X onto X', measured per column of X and
/// normalised by that column's magnitude:
///   max_c  max|(a X - X')_c| / max|X_c|.
/// For X = I this is max_abs_diff(a, X'). Unlike a recovered matrix, it stays
/// meaningful when X is badly conditioned.
template <typename DerivedA, typename DerivedX, typename DerivedXp>
typename DerivedA::Scalar scaled_residual(const Eigen::MatrixBase<DerivedA>& a,
                                          const Eigen::MatrixBase<DerivedX>& x,
                                          const Eigen::MatrixBase<DerivedXp>& xp) {
  using Scalar = typename DerivedA::Scalar;
  const MatrixX<Scalar> image = mat_mul(a, x);
  if (image.rows() != xp.rows() || image.cols() != xp.cols()) {
    throw DimensionMismatch("scaled_residual: shapes differ");
  }
  Scalar worst = 0;
  for (Index c = 0; c < x.cols(); ++c) {
    const Scalar scale = x.col(c).cwiseAbs().maxCoeff();
    const Scalar err = (image.col(c) - xp.col(c)).cwiseAbs().maxCoeff();
    if (scale == Scalar(0)) {
      if (err > worst) worst = err;
      continue;
    }
    const Scalar r = err / scale;
    if (!(r <= worst)) worst = r;
  }
  return worst;
}

}  // namespace swlearn
