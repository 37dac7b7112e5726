#ifndef CHERNFORMS_JET_MATRIX_HPP
#define CHERNFORMS_JET_MATRIX_HPP

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "chernforms/exterior.hpp"
#include "chernforms/jet.hpp"

namespace chernforms {

// Dense matrix of jets (functions, not forms).
class JetMatrix {
 public:
  JetMatrix() = default;
  JetMatrix(int rows, int cols, int n, int order)
      : rows_(rows), cols_(cols), n_(n), entries_(static_cast<std::size_t>(rows) * cols, Jet(n, order)) {}

  static JetMatrix identity(int r, int n, int order) {
    JetMatrix m(r, r, n, order);
    for (int i = 0; i < r; ++i) m(i, i) = Jet::constant(n, order, 1.0);
    return m;
  }

  static JetMatrix diagonal(const std::vector<Jet>& d) {
    if (d.empty()) return {};
    JetMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()), d.front().dim(), d.front().order());
    for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int dim() const { return n_; }

  int order() const {
    int o = kMaxOrder;
    for (const Jet& j : entries_) o = std::min(o, j.order());
    return o;
  }

  Jet& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Jet& operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
  const std::vector<Jet>& entries() const { return entries_; }

  double max_abs() const {
    double m = 0.0;
    for (const Jet& j : entries_) m = std::max(m, j.max_abs());
    return m;
  }

  Eigen::MatrixXcd constant_terms() const {
    Eigen::MatrixXcd m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).constant_term();
    return m;
  }

  JetMatrix truncated(int order) const {
    JetMatrix out = *this;
    for (Jet& j : out.entries_) j = j.truncated(order);
    return out;
  }

  MatrixForm as_forms() const { return scalar_matrix(rows_, cols_, entries_); }

  friend JetMatrix operator*(const JetMatrix& a, const JetMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("jet matrix product: inner sizes differ");
    if (a.n_ != b.n_) throw DimensionMismatch("jet matrix product: dimensions differ");
    int order = std::min(a.order(), b.order());
    JetMatrix out(a.rows_, b.cols_, a.n_, order);
    for (int i = 0; i < a.rows_; ++i) {
      for (int j = 0; j < b.cols_; ++j) {
        std::vector<Jet::Term> raw;
        for (int k = 0; k < a.cols_; ++k) {
          Jet::accumulate_product(a(i, k).terms(), b(k, j).terms(), 1.0, order, raw);
        }
        out(i, j) = Jet(a.n_, order, std::move(raw));
      }
    }
    return out;
  }

  friend JetMatrix operator+(JetMatrix a, const JetMatrix& b) {
    a.check_same_shape(b);
    for (std::size_t i = 0; i < a.entries_.size(); ++i) a.entries_[i] += b.entries_[i];
    return a;
  }
  friend JetMatrix operator-(JetMatrix a, const JetMatrix& b) {
    a.check_same_shape(b);
    for (std::size_t i = 0; i < a.entries_.size(); ++i) a.entries_[i] -= b.entries_[i];
    return a;
  }

 private:
  void check_same_shape(const JetMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || n_ != o.n_) throw DimensionMismatch("jet matrix shapes differ");
  }

  int rows_ = 0;
  int cols_ = 0;
  int n_ = 0;
  std::vector<Jet> entries_;
};

// Entrywise jet conjugate, transposed: the pointwise adjoint of the function.
inline JetMatrix adjoint(const JetMatrix& a) {
  JetMatrix out(a.cols(), a.rows(), a.dim(), a.order());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(j, i) = conj(a(i, j));
  return out;
}

// Gauss-Jordan elimination over jets, pivoting on the largest constant term.
inline JetMatrix inverse(const JetMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of a non-square jet matrix");
  int r = m.rows();
  JetMatrix a = m;
  JetMatrix inv = JetMatrix::identity(r, m.dim(), m.order());
  for (int col = 0; col < r; ++col) {
    int pivot = col;
    for (int i = col + 1; i < r; ++i) {
      if (std::abs(a(i, col).constant_term()) > std::abs(a(pivot, col).constant_term())) pivot = i;
    }
    if (std::abs(a(pivot, col).constant_term()) < 1e-14 * std::max(1.0, m.max_abs())) {
      throw SingularJet("jet matrix is singular at the base point");
    }
    if (pivot != col) {
      for (int j = 0; j < r; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    Jet p = inverse(a(col, col));
    for (int j = 0; j < r; ++j) {
      a(col, j) = a(col, j) * p;
      inv(col, j) = inv(col, j) * p;
    }
    for (int i = 0; i < r; ++i) {
      if (i == col || a(i, col).is_zero()) continue;
      Jet f = a(i, col);
      for (int j = 0; j < r; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

// Determinant by cofactor-free elimination (no pivot inversion needed beyond
// what inverse() already requires).
inline Jet determinant(const JetMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of a non-square jet matrix");
  int r = m.rows();
  JetMatrix a = m;
  Jet det = Jet::constant(m.dim(), m.order(), 1.0);
  for (int col = 0; col < r; ++col) {
    int pivot = col;
    for (int i = col + 1; i < r; ++i) {
      if (std::abs(a(i, col).constant_term()) > std::abs(a(pivot, col).constant_term())) pivot = i;
    }
    if (a(pivot, col).constant_term() == Complex{}) throw SingularJet("determinant: singular at base point");
    if (pivot != col) {
      for (int j = 0; j < r; ++j) std::swap(a(pivot, j), a(col, j));
      det = -det;
    }
    det = det * a(col, col);
    Jet p = inverse(a(col, col));
    for (int i = col + 1; i < r; ++i) {
      Jet f = a(i, col) * p;
      for (int j = col; j < r; ++j) a(i, j) -= f * a(col, j);
    }
  }
  return det;
}

}  // namespace chernforms

#endif  // CHERNFORMS_JET_MATRIX_HPP
