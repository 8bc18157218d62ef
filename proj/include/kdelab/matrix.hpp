#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "kdelab/errors.hpp"
#include "kdelab/numeric.hpp"

namespace kdelab {

// Dense row-major matrix over one arithmetic mode. Immutable in spirit: the
// library never mutates a matrix after it is fully built.
template <class S>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols, const S& fill)
      : rows_(rows), cols_(cols), e_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const S& proto) {
    Matrix m(n, n, num_traits<S>::zero(proto));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = num_traits<S>::one(proto);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  S& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DomainError("Matrix: dimension mismatch in product");
    Matrix r(a.rows(), b.cols(), num_traits<S>::zero(a(0, 0)));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t k = 0; k < a.cols(); ++k)
        for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.e_.size(); ++i)
      if (!(a.e_[i] == b.e_[i])) return false;
    return true;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<S> e_;
};

template <class S>
std::vector<S> mat_vec(const Matrix<S>& m, const std::vector<S>& v) {
  if (m.cols() != v.size()) throw DomainError("Matrix: dimension mismatch in mat_vec");
  std::vector<S> r(m.rows(), num_traits<S>::zero(m(0, 0)));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
  return r;
}

namespace detail {

// Default singularity floor for big-float elimination: pivots below
// max|entry| * 2^-(prec-8) are treated as zero. Exact mode only rejects
// exact zeros.
inline Rational pivot_floor_default(const Matrix<Rational>&) { return Rational(0); }

inline BigFloat pivot_floor_default(const Matrix<BigFloat>& m) {
  BigFloat mx = abs(m(0, 0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      BigFloat a = abs(m(i, j));
      if (a > mx) mx = a;
    }
  long shift = static_cast<long>(mx.prec()) - 8;
  return mx * BigFloat::pow2(-shift, mx.prec());
}

template <class S>
struct Elimination {
  Matrix<S> a;
  S det;
  bool singular = false;

  // Gauss-Jordan with partial pivoting (largest |pivot|, ties to the lowest
  // row index). `rhs` is reduced alongside; on return a == I and rhs holds
  // the solution block.
  Elimination(const Matrix<S>& m, Matrix<S>& rhs, const S& floor)
      : a(m), det(num_traits<S>::one(m(0, 0))) {
    const std::size_t n = a.rows();
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      S best = abs(a(col, col));
      for (std::size_t r = col + 1; r < n; ++r) {
        S cand = abs(a(r, col));
        if (cand > best) {
          best = cand;
          piv = r;
        }
      }
      if (best.is_zero() || best <= floor) {
        if (!best.is_zero())
          throw PivotUnderflowError("pivot magnitude " + pivot_str(best) + " below floor at column " +
                                    std::to_string(col));
        singular = true;
        det = num_traits<S>::zero(det);
        return;
      }
      if (piv != col) {
        swap_rows(a, piv, col);
        swap_rows(rhs, piv, col);
        det = -det;
      }
      S p = a(col, col);
      det *= p;
      for (std::size_t j = 0; j < n; ++j) a(col, j) /= p;
      for (std::size_t j = 0; j < rhs.cols(); ++j) rhs(col, j) /= p;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col) continue;
        S f = a(r, col);
        if (f.is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) a(r, j) -= f * a(col, j);
        for (std::size_t j = 0; j < rhs.cols(); ++j) rhs(r, j) -= f * rhs(col, j);
      }
    }
  }

  static void swap_rows(Matrix<S>& m, std::size_t r1, std::size_t r2) {
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r1, j), m(r2, j));
  }

  static std::string pivot_str(const Rational& r) { return r.str(); }
  static std::string pivot_str(const BigFloat& f) { return f.str(8); }
};

}  // namespace detail

template <class S>
S det(const Matrix<S>& m) {
  if (m.rows() != m.cols()) throw DomainError("det: matrix not square");
  if (m.rows() == 0) throw DomainError("det: empty matrix");
  Matrix<S> rhs(m.rows(), 0, num_traits<S>::zero(m(0, 0)));
  detail::Elimination<S> e(m, rhs, num_traits<S>::zero(m(0, 0)));
  return e.det;
}

// Inverse via Gauss-Jordan. In exact mode the result satisfies
// m * inverse(m) == I identically; in big-float mode a pivot below
// `pivot_floor` (default: scaled 2^-(prec-8)) raises PivotUnderflowError.
template <class S>
Matrix<S> inverse(const Matrix<S>& m, const S* pivot_floor = nullptr) {
  if (m.rows() != m.cols()) throw DomainError("inverse: matrix not square");
  if (m.rows() == 0) throw DomainError("inverse: empty matrix");
  Matrix<S> rhs = Matrix<S>::identity(m.rows(), m(0, 0));
  S floor = pivot_floor ? *pivot_floor : detail::pivot_floor_default(m);
  detail::Elimination<S> e(m, rhs, floor);
  if (e.singular) throw SingularMatrixError("inverse: singular matrix");
  return rhs;
}

// tau(M): the induced inf->inf norm of M^-1 (max absolute row sum), plus the
// coarser relaxation D * max|M^-1[t,s]| used by the closed-form bounds.
template <class S>
struct TauPair {
  S induced;
  S relaxed;
};

template <class S>
TauPair<S> tau_pair(const Matrix<S>& m, const S* pivot_floor = nullptr) {
  Matrix<S> inv = inverse(m, pivot_floor);
  const std::size_t n = inv.rows();
  S max_row = num_traits<S>::zero(inv(0, 0));
  S max_entry = num_traits<S>::zero(inv(0, 0));
  for (std::size_t i = 0; i < n; ++i) {
    S row = num_traits<S>::zero(inv(0, 0));
    for (std::size_t j = 0; j < n; ++j) {
      S a = abs(inv(i, j));
      row += a;
      if (a > max_entry) max_entry = a;
    }
    if (row > max_row) max_row = row;
  }
  return {max_row, num_traits<S>::from_long(static_cast<long>(n), max_entry) * max_entry};
}

template <class S>
S tau(const Matrix<S>& m) {
  return tau_pair(m).induced;
}

}  // namespace kdelab
