#ifndef CHERNFORMS_TESTS_FD_ORACLE_HPP
#define CHERNFORMS_TESTS_FD_ORACLE_HPP

// Central finite differences on pointwise-evaluated metrics, independent of
// the jet arithmetic.  Real coordinates are x_i = Re z_i, y_i = Im z_i and
//   d/dz = (d/dx - i d/dy) / 2,   d/dzbar = (d/dx + i d/dy) / 2.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "chernforms/random_metric.hpp"

namespace fd {

using chernforms::Complex;
using chernforms::Coord;
using chernforms::MultiIndex;
using chernforms::Polynomial;
using chernforms::RandomMetric;
using Matrix = Eigen::MatrixXcd;
using Field = std::function<Matrix(const std::vector<Complex>&)>;

inline constexpr double kStep = 1e-4;

// Point z0 displaced by s along real coordinate c (0..2n-1: x1, y1, x2, ...).
inline std::vector<Complex> shift(std::vector<Complex> z, int c, double s) {
  z[c / 2] += (c % 2 == 0) ? Complex(s, 0.0) : Complex(0.0, s);
  return z;
}

// First real partials d f / d coordinate c.
inline Matrix real_first(const Field& f, const std::vector<Complex>& z, int c, double h = kStep) {
  return (f(shift(z, c, h)) - f(shift(z, c, -h))) / (2.0 * h);
}

// Second real partials.
inline Matrix real_second(const Field& f, const std::vector<Complex>& z, int c1, int c2, double h = kStep) {
  if (c1 == c2) return (f(shift(z, c1, h)) - 2.0 * f(z) + f(shift(z, c1, -h))) / (h * h);
  auto p = [&](double s1, double s2) { return f(shift(shift(z, c1, s1), c2, s2)); };
  return (p(h, h) - p(h, -h) - p(-h, h) + p(-h, -h)) / (4.0 * h * h);
}

// Wirtinger weights of d/dx and d/dy for a holomorphic or antiholomorphic derivative.
inline Complex wx() { return 0.5; }
inline Complex wy(Coord kind) { return kind == Coord::holomorphic ? Complex(0.0, -0.5) : Complex(0.0, 0.5); }

inline Matrix wirtinger_first(const Field& f, const std::vector<Complex>& z, int i, Coord kind) {
  return wx() * real_first(f, z, 2 * i) + wy(kind) * real_first(f, z, 2 * i + 1);
}

inline Matrix wirtinger_second(const Field& f, const std::vector<Complex>& z, int i, Coord ki, int j, Coord kj) {
  Complex wi[2] = {wx(), wy(ki)}, wj[2] = {wx(), wy(kj)};
  Matrix out = Matrix::Zero(f(z).rows(), f(z).cols());
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out += wi[a] * wj[b] * real_second(f, z, 2 * i + a, 2 * j + b);
  return out;
}

// Exact derivative of a polynomial in (z, zbar).
inline Polynomial differentiate(const Polynomial& p, int i, Coord kind) {
  Polynomial out;
  out.n = p.n;
  for (const auto& t : p.terms) {
    MultiIndex m = t.m;
    int& e = kind == Coord::holomorphic ? m.alpha[i] : m.beta[i];
    if (e == 0) continue;
    Complex c = t.c * double(e);
    --e;
    out.terms.push_back({c, m});
  }
  return out;
}

// Pointwise theta_i = h^{-1} d h / dz_i for h = L* L + I, with the derivative
// of h taken analytically from the polynomial entries of L.
inline Matrix theta_component(const RandomMetric& rm, const std::vector<Complex>& z, int i) {
  int r = rm.rank;
  Matrix l(r, r), dl(r, r), dlbar(r, r);
  for (int a = 0; a < r; ++a) {
    for (int b = 0; b < r; ++b) {
      const Polynomial& p = rm.l[a * r + b];
      l(a, b) = p(z);
      dl(a, b) = differentiate(p, i, Coord::holomorphic)(z);
      dlbar(a, b) = differentiate(p, i, Coord::antiholomorphic)(z);
    }
  }
  // d/dz_i of L* is the adjoint of d/dzbar_i L.
  Matrix dh = dlbar.adjoint() * l + l.adjoint() * dl;
  Matrix h = l.adjoint() * l + Matrix::Identity(r, r);
  return h.lu().solve(dh);
}

struct CrossCheck {
  double h_first = 0.0;  // norm-wise relative errors
  double h_second = 0.0;
  double theta_first = 0.0;
  double theta_second = 0.0;

  double worst() const { return std::max({h_first, h_second, theta_first, theta_second}); }
};

// Jet partials at the base point 0 of h and of theta = h^{-1} del h against
// finite differences.
inline CrossCheck cross_check(const RandomMetric& rm, int order = 4) {
  using namespace chernforms;
  int n = rm.dim, r = rm.rank;
  Metric m = rm.metric(order);
  ConnectionForms c = connection(m);
  std::vector<Complex> z0(n, Complex{});
  const Coord kinds[2] = {Coord::holomorphic, Coord::antiholomorphic};

  struct Acc {
    double diff = 0.0, scale = 0.0;
    void add(Complex jet, Complex oracle) {
      diff = std::max(diff, std::abs(jet - oracle));
      scale = std::max(scale, std::abs(jet));
    }
    double rel() const { return scale > 0.0 ? diff / scale : diff; }
  };
  Acc h1, h2, t1, t2;

  Field hfield = [&](const std::vector<Complex>& z) { return rm.value(z); };
  for (int i = 0; i < n; ++i) {
    for (Coord ki : kinds) {
      Matrix fd1 = wirtinger_first(hfield, z0, i, ki);
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) h1.add(derive(m(a, b), i + 1, ki).constant_term(), fd1(a, b));
      for (int j = 0; j < n; ++j) {
        for (Coord kj : kinds) {
          Matrix fd2 = wirtinger_second(hfield, z0, i, ki, j, kj);
          for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b)
              h2.add(derive(derive(m(a, b), i + 1, ki), j + 1, kj).constant_term(), fd2(a, b));
        }
      }
    }
  }

  for (int comp = 0; comp < n; ++comp) {
    Field tfield = [&](const std::vector<Complex>& z) { return theta_component(rm, z, comp); };
    std::vector<Jet> tj;
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) tj.push_back(c.theta(a, b).coeff({comp + 1}, {}));
    for (int i = 0; i < n; ++i) {
      for (Coord ki : kinds) {
        Matrix fd1 = wirtinger_first(tfield, z0, i, ki);
        for (int a = 0; a < r; ++a)
          for (int b = 0; b < r; ++b) t1.add(derive(tj[a * r + b], i + 1, ki).constant_term(), fd1(a, b));
        for (int j = 0; j < n; ++j) {
          for (Coord kj : kinds) {
            Matrix fd2 = wirtinger_second(tfield, z0, i, ki, j, kj);
            for (int a = 0; a < r; ++a)
              for (int b = 0; b < r; ++b)
                t2.add(derive(derive(tj[a * r + b], i + 1, ki), j + 1, kj).constant_term(), fd2(a, b));
          }
        }
      }
    }
  }
  return {h1.rel(), h2.rel(), t1.rel(), t2.rel()};
}

}  // namespace fd

#endif  // CHERNFORMS_TESTS_FD_ORACLE_HPP
