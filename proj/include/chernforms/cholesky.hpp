#ifndef CHERNFORMS_CHOLESKY_HPP
#define CHERNFORMS_CHOLESKY_HPP

// Hermitian jet-valued metrics, the factorization h = b* a b, and the
// connection and curvature forms built from it.

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "chernforms/errors.hpp"
#include "chernforms/exterior.hpp"
#include "chernforms/jet_matrix.hpp"

namespace chernforms {

// Relative tolerance for the coefficient-level Hermitian check.  Metrics built
// by mirroring (file loader, random generator, gauge transform) are exact.
inline constexpr double kHermitianTolerance = 1e-12;

// Max relative deviation of h from its jet adjoint.
inline double hermitian_defect(const JetMatrix& h) {
  double scale = std::max(h.max_abs(), 1e-300);
  double worst = 0.0;
  for (int i = 0; i < h.rows(); ++i)
    for (int j = i; j < h.cols(); ++j) worst = std::max(worst, (h(j, i) - conj(h(i, j))).max_abs());
  return worst / scale;
}

// A Hermitian metric on the trivial rank-r bundle over a polydisk in C^n,
// known through its jets at the base point.
class Metric {
 public:
  Metric() = default;

  // Validates Hermitian symmetry and positivity at the base point.
  explicit Metric(JetMatrix h) : h_(std::move(h)) {
    if (h_.rows() != h_.cols() || h_.rows() == 0) throw DimensionMismatch("metric must be square, rank >= 1");
    if (hermitian_defect(h_) > kHermitianTolerance) throw NotHermitian("metric is not Hermitian as a jet matrix");
    Eigen::LLT<Eigen::MatrixXcd> llt(h_.constant_terms());
    if (llt.info() != Eigen::Success) throw NotPositiveDefinite("metric is not positive definite at the base point");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h_.constant_terms(), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 0.0) throw NotPositiveDefinite("metric is not positive definite at the base point");
  }

  // Builds the lower triangle by conjugating the given upper triangle.
  static Metric from_upper(const JetMatrix& upper) {
    JetMatrix h = upper;
    for (int i = 0; i < h.rows(); ++i) {
      for (int j = 0; j < i; ++j) h(i, j) = conj(upper(j, i));
    }
    return Metric(std::move(h));
  }

  int rank() const { return h_.rows(); }
  int dim() const { return h_.dim(); }
  int order() const { return h_.order(); }
  const JetMatrix& matrix() const { return h_; }
  const Jet& operator()(int i, int j) const { return h_(i, j); }

 private:
  JetMatrix h_;
};

// h = b* a b with b unit upper-triangular and a diagonal; c = b* a.
struct CholeskyFactors {
  std::vector<Jet> a;
  JetMatrix b;
  JetMatrix c;

  JetMatrix a_matrix() const { return JetMatrix::diagonal(a); }
};

// Square-root-free LDL*-type recursion in jet arithmetic, row by row:
//   a_i  = h_ii - sum_{k<i} conj(b_ki) a_k b_ki
//   b_ij = a_i^{-1} (h_ij - sum_{k<i} conj(b_ki) a_k b_kj),   j > i.
inline CholeskyFactors decompose(const Metric& metric) {
  const JetMatrix& h = metric.matrix();
  int r = h.rows(), n = h.dim(), order = h.order();
  CholeskyFactors f;
  f.b = JetMatrix::identity(r, n, order);
  f.a.assign(r, Jet(n, order));
  for (int i = 0; i < r; ++i) {
    Jet pivot = h(i, i);
    for (int k = 0; k < i; ++k) pivot -= conj(f.b(k, i)) * f.a[k] * f.b(k, i);
    if (!(pivot.constant_term().real() > 0.0)) {
      throw NotPositiveDefinite("pivot a_" + std::to_string(i + 1) + " has nonpositive constant term");
    }
    f.a[i] = pivot;
    Jet pivot_inv = inverse(pivot);
    for (int j = i + 1; j < r; ++j) {
      Jet s = h(i, j);
      for (int k = 0; k < i; ++k) s -= conj(f.b(k, i)) * f.a[k] * f.b(k, j);
      f.b(i, j) = pivot_inv * s;
    }
  }
  f.c = adjoint(f.b) * f.a_matrix();
  return f;
}

inline JetMatrix reconstruct(const CholeskyFactors& f) { return f.c * f.b; }

// Connection data of the canonical connection.  Bold quantities of the
// theory are the ones conjugated by b: theta = h^{-1} dh etc.  The plain
// theta1, theta2, theta1_bar, theta2_bar live in the b-frame.
struct ConnectionForms {
  MatrixForm theta;      // h^{-1} del h
  MatrixForm theta_bar;  // h^{-1} delbar h
  MatrixForm curvature;  // delbar theta
  MatrixForm theta1;     // del b . b^{-1}
  MatrixForm theta2;     // c^{-1} del c
  MatrixForm theta1_bar; // delbar b . b^{-1}
  MatrixForm theta2_bar; // c^{-1} delbar c
  MatrixForm b;
  MatrixForm b_inv;
  CholeskyFactors factors;

  int rank() const { return theta.rows(); }
  int dim() const { return theta.dim(); }

  // theta1 + theta2, i.e. b theta b^{-1}.
  MatrixForm frame_theta() const { return theta1 + theta2; }
  MatrixForm frame_theta_bar() const { return theta1_bar + theta2_bar; }

  // b^{-1} x b.
  MatrixForm to_bold(const MatrixForm& x) const { return b_inv * x * b; }
};

inline ConnectionForms connection(const Metric& metric) {
  ConnectionForms conn;
  const JetMatrix& h = metric.matrix();
  MatrixForm hf = h.as_forms();
  MatrixForm h_inv = inverse(h).as_forms();
  conn.theta = h_inv * del(hf);
  conn.theta_bar = h_inv * delbar(hf);
  conn.curvature = delbar(conn.theta);

  conn.factors = decompose(metric);
  MatrixForm b = conn.factors.b.as_forms();
  MatrixForm b_inv = inverse(conn.factors.b).as_forms();
  MatrixForm c = conn.factors.c.as_forms();
  MatrixForm c_inv = inverse(conn.factors.c).as_forms();
  conn.theta1 = del(b) * b_inv;
  conn.theta2 = c_inv * del(c);
  conn.theta1_bar = delbar(b) * b_inv;
  conn.theta2_bar = c_inv * delbar(c);
  conn.b = std::move(b);
  conn.b_inv = std::move(b_inv);
  return conn;
}

// True when no entry has z-bar support.
inline bool is_holomorphic(const JetMatrix& g) {
  int n = g.dim();
  for (const Jet& j : g.entries()) {
    for (const Jet::Term& t : j.terms()) {
      for (int i = 0; i < n; ++i) {
        if (detail::key_exponent(t.key, n + i) != 0) return false;
      }
    }
  }
  return true;
}

inline bool is_upper_triangular(const JetMatrix& g) {
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < i && j < g.cols(); ++j)
      if (!g(i, j).is_zero()) return false;
  return true;
}

inline void check_gauge(const JetMatrix& g, int rank) {
  if (g.rows() != rank || g.cols() != rank) throw DimensionMismatch("gauge matrix rank differs from metric rank");
  if (!is_upper_triangular(g)) throw InvalidGauge("gauge matrix is not upper triangular");
  if (!is_holomorphic(g)) throw InvalidGauge("gauge matrix has z-bar dependence");
  for (int i = 0; i < rank; ++i) {
    if (std::abs(g(i, i).constant_term()) == 0.0) throw InvalidGauge("gauge matrix is singular at the base point");
  }
}

// g* h g for a holomorphic upper-triangular g.
inline Metric gauge_transform(const Metric& h, const JetMatrix& g) {
  check_gauge(g, h.rank());
  JetMatrix full = adjoint(g) * h.matrix() * g;
  return Metric::from_upper(full);
}

}  // namespace chernforms

#endif  // CHERNFORMS_CHOLESKY_HPP
