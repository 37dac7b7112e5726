#ifndef CHERNFORMS_CHERN_HPP
#define CHERNFORMS_CHERN_HPP

// Chern character forms, the (p,q)-decomposition of the Chern-Simons forms
// by the descent equations, and the explicit Bott-Chern forms bc_2, bc_3 in
// Cholesky coordinates together with the identities that certify them.
//
// Units: everything is computed with sqrt(-1)/(2 pi) set to 1, so
// ch_k = Tr(Theta^k) / k! and delbar del (k! bc_k) = Tr(Theta^k).
// physical_scale() converts on export.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chernforms/cholesky.hpp"
#include "chernforms/residual.hpp"

namespace chernforms {

inline double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// (sqrt(-1) / 2 pi)^m.
inline Complex physical_scale(int m) {
  Complex unit(0.0, 1.0 / (2.0 * std::numbers::pi));
  Complex s(1.0);
  for (int i = 0; i < m; ++i) s *= unit;
  return s;
}

inline Form chern_character(const ConnectionForms& c, int k) {
  if (k < 1) throw Error("chern_character needs k >= 1");
  return trace_product(power(c.curvature, k - 1), c.curvature) * (1.0 / factorial(k));
}

namespace detail {

// Sums Tr(prefix * w) over all words w of length `slots` in {Theta, theta^2},
// grouped by the number of theta^2 letters.
inline void expand_words(const MatrixForm& prefix, int slots, int used, const MatrixForm& curv,
                         const MatrixForm& theta2, std::vector<Form>& out) {
  if (slots == 0) {
    out[used] += trace(prefix);
    return;
  }
  if (slots == 1) {
    out[used] += trace_product(prefix, curv);
    out[used + 1] += trace_product(prefix, theta2);
    return;
  }
  expand_words(prefix * curv, slots - 1, used, curv, theta2, out);
  expand_words(prefix * theta2, slots - 1, used + 1, curv, theta2, out);
}

}  // namespace detail

// Coefficients a_0..a_{k-1} of F_k(t) = Tr{theta (Theta + t theta^2)^{k-1}}.
inline std::vector<Form> f_poly_coeffs(const ConnectionForms& c, int k) {
  if (k < 1) throw Error("f_poly_coeffs needs k >= 1");
  MatrixForm th2 = c.theta * c.theta;
  std::vector<Form> a(k, Form(c.dim(), kMaxOrder));
  detail::expand_words(c.theta, k - 1, 0, c.curvature, th2, a);
  return a;
}

// Coefficients b_0..b_k of G_k(t) = Tr (Theta + t theta^2)^k.
inline std::vector<Form> g_poly_coeffs(const ConnectionForms& c, int k) {
  if (k < 1) throw Error("g_poly_coeffs needs k >= 1");
  MatrixForm th2 = c.theta * c.theta;
  std::vector<Form> b(k + 1, Form(c.dim(), kMaxOrder));
  detail::expand_words(c.curvature, k - 1, 0, c.curvature, th2, b);
  detail::expand_words(th2, k - 1, 1, c.curvature, th2, b);
  return b;
}

// F_k(t) and G_k(t) evaluated directly from the matrix Theta + t theta^2.
struct HomotopyValues {
  Form f;
  Form g;
};

inline HomotopyValues homotopy_at(const ConnectionForms& c, int k, double t) {
  MatrixForm m = c.curvature + t * (c.theta * c.theta);
  MatrixForm mk1 = power(m, k - 1);
  return {trace_product(c.theta, mk1), trace_product(mk1, m)};
}

inline Form f_poly_at(const ConnectionForms& c, int k, double t) {
  MatrixForm m = c.curvature + t * (c.theta * c.theta);
  return trace_product(c.theta, power(m, k - 1));
}
inline Form g_poly_at(const ConnectionForms& c, int k, double t) {
  MatrixForm m = c.curvature + t * (c.theta * c.theta);
  return trace_product(power(m, k - 1), m);
}

// Tr Theta^k.
inline Form curvature_trace(const ConnectionForms& c, int k) {
  if (k == 0) return trace(MatrixForm::identity(c.rank(), c.dim(), kMaxOrder));
  return trace_product(power(c.curvature, k - 1), c.curvature);
}

inline Form poly_at(const std::vector<Form>& coeffs, double t) {
  Form s(coeffs.front().dim(), kMaxOrder);
  double tp = 1.0;
  for (const Form& a : coeffs) {
    s += a * tp;
    tp *= t;
  }
  return s;
}

inline constexpr int kMaxCsDegree = 5;

struct CsDecomposition {
  int k = 0;
  std::vector<Form> a_coeffs;  // a_l, of type (k+l, k-l-1)
  std::vector<Form> omegas;    // omega_{k+l, k-l-1} = k! l! / (k+l)! a_l
  Form cs;                     // (1/k!) sum_l (-1)^l omega_{k+l,k-l-1}

  FormDegree degree(int l) const { return {k + l, k - l - 1}; }
};

inline CsDecomposition cs_decomposition(const ConnectionForms& c, int k) {
  if (k < 1 || k > kMaxCsDegree) {
    throw Error("cs_decomposition supports 1 <= k <= " + std::to_string(kMaxCsDegree));
  }
  CsDecomposition out;
  out.k = k;
  out.a_coeffs = f_poly_coeffs(c, k);
  out.cs = Form(c.dim(), kMaxOrder);
  for (int l = 0; l < k; ++l) {
    double w = factorial(k) * factorial(l) / factorial(k + l);
    out.omegas.push_back(out.a_coeffs[l] * w);
    out.cs += out.omegas.back() * ((l % 2 == 0 ? 1.0 : -1.0) / factorial(k));
  }
  return out;
}

// k!(k-1)!/(2k-1)! Tr theta^{2k-1}.
inline Form holomorphic_cs_component(const ConnectionForms& c, int k) {
  MatrixForm half = power(c.theta, k - 1);
  return trace_product(half * c.theta, half) * (factorial(k) * factorial(k - 1) / factorial(2 * k - 1));
}

// omega_{k+1,k-2} = 1/(k+1) Tr{theta sum_{i=0}^{k-2} Theta^i theta^2 Theta^{k-2-i}}, k >= 2.
inline Form symmetrized_second_component(const ConnectionForms& c, int k) {
  if (k < 2) throw Error("symmetrized_second_component needs k >= 2");
  MatrixForm th2 = c.theta * c.theta;
  MatrixForm sum = MatrixForm::zero(c.rank(), c.dim(), kMaxOrder);
  std::vector<MatrixForm> cu{MatrixForm::identity(c.rank(), c.dim(), kMaxOrder)};
  for (int i = 1; i <= k - 2; ++i) cu.push_back(cu.back() * c.curvature);
  for (int i = 0; i <= k - 2; ++i) sum += cu[i] * th2 * cu[k - 2 - i];
  return trace_product(c.theta, sum) * (1.0 / (k + 1));
}

// log det h = sum_i log a_i.
inline Form log_det(const ConnectionForms& c) {
  Jet s(c.dim(), kMaxOrder);
  for (const Jet& ai : c.factors.a) s += log(ai);
  return Form::scalar(s);
}

namespace detail {
inline std::string w(int p, int q) { return "w(" + std::to_string(p) + "," + std::to_string(q) + ")"; }
inline std::string tstr(double t) {
  std::string s = std::to_string(static_cast<int>(t));
  return "t=" + s;
}
}  // namespace detail

// Residuals of the descent chain for ch_k and the identities behind its
// explicit solution.  Needs metric order >= 3.
inline CheckReport descent_check(const ConnectionForms& c, int k) {
  using detail::w;
  CheckReport rep;
  CsDecomposition cs = cs_decomposition(c, k);
  const auto& om = cs.omegas;
  Form top = curvature_trace(c, k);
  double scale = top.max_abs();
  for (const Form& f : om) scale = std::max(scale, f.max_abs());
  int n = c.dim();
  Form zero(n, kMaxOrder);

  for (int l = 0; l < k; ++l) {
    FormDegree dg = cs.degree(l);
    rep.add("degree " + w(dg.p, dg.q), off_degree(om[l], dg.p, dg.q));
  }
  rep.add("delbar " + w(k, k - 1) + " = " + w(k, k), compare(delbar(om[0]), top, {scale}));
  for (int l = 0; l + 1 < k; ++l) {
    rep.add("del " + w(k + l, k - l - 1) + " = delbar " + w(k + l + 1, k - l - 2),
            compare(del(om[l]), delbar(om[l + 1]), {scale}));
  }
  rep.add("del " + w(2 * k - 1, 0) + " = 0", compare(del(om[k - 1]), zero, {scale}));
  rep.add(w(2 * k - 1, 0) + " = closed form in Tr theta^" + std::to_string(2 * k - 1),
          compare(om[k - 1], holomorphic_cs_component(c, k), {scale}));

  for (double t : {-1.0, 0.0, 1.0, 2.0}) {
    Form series = poly_at(om, t);
    rep.add("(delbar - t del) sum t^l w = " + w(k, k) + " at " + detail::tstr(t),
            compare(delbar(series) - t * del(series), top, {scale}));
    HomotopyValues fg = homotopy_at(c, k, t);
    rep.add("(delbar - t del) F_k = G_k at " + detail::tstr(t),
            compare(delbar(fg.f) - t * del(fg.f), fg.g, {scale, fg.f.max_abs()}));
  }

  const auto& a = cs.a_coeffs;
  for (int l = 1; l < k; ++l) {
    rep.add("delbar a_" + std::to_string(l) + " = (k+l)/l del a_" + std::to_string(l - 1),
            compare(delbar(a[l]), del(a[l - 1]) * (double(k + l) / l), {scale, a[l].max_abs()}));
  }
  std::vector<Form> b = g_poly_coeffs(c, k);
  rep.add("b_0 = Tr Theta^k", compare(b[0], top));
  for (int l = 1; l <= k; ++l) {
    rep.add("l b_" + std::to_string(l) + " = k del a_" + std::to_string(l - 1),
            compare(b[l] * double(l), del(a[l - 1]) * double(k), {scale, b[l].max_abs()}));
  }

  if (k >= 2) {
    Form dtop = del(om[0]);
    Form th2_curv = trace_product(c.theta * c.theta, power(c.curvature, k - 1));
    Form second = symmetrized_second_component(c, k);
    rep.add("del " + w(k, k - 1) + " = Tr(theta^2 Theta^" + std::to_string(k - 1) + ")",
            compare(dtop, th2_curv, {scale}));
    rep.add("Tr(theta^2 Theta^" + std::to_string(k - 1) + ") = delbar (symmetrized " + w(k + 1, k - 2) + ")",
            compare(th2_curv, delbar(second), {scale}));
    rep.add("symmetrized " + w(k + 1, k - 2) + " = " + w(k + 1, k - 2), compare(second, om[1], {scale}));
  } else {
    rep.add("Tr theta = del log det h", compare(om[0], del(log_det(c)), {scale}));
  }

  Form kcs = cs.cs * factorial(k);
  rep.add("d(k! cs_k) = " + w(k, k), compare(d(kcs), top, {scale}));
  Form ch = chern_character(c, k);
  rep.add("d ch_k = 0", compare(d(ch), zero, {ch.max_abs()}));
  // With sqrt(-1)/(2 pi) restored the form is real; literally conj(w) = (-1)^k w.
  rep.add("conj(Tr Theta^k) = (-1)^k Tr Theta^k", compare(conj(top), top * (k % 2 == 0 ? 1.0 : -1.0)));
  return rep;
}

struct BottChernResult {
  int k = 0;
  Form bc;                      // type (k-1, k-1)
  std::vector<std::pair<std::string, Form>> intermediates;

  const Form& intermediate(const std::string& name) const {
    for (const auto& [n, f] : intermediates)
      if (n == name) return f;
    throw Error("no intermediate named " + name);
  }
};

// omega_{1,1} = Tr(2 theta2 theta1_bar + theta2 theta2_bar) = 2 bc_2.
inline Form omega11(const ConnectionForms& c) {
  return trace(2.0 * (c.theta2 * c.theta1_bar) + c.theta2 * c.theta2_bar);
}

// Equivalent expression Tr(theta theta_bar - (theta1_bar theta2 - theta2_bar theta1)).
inline Form omega11_frame(const ConnectionForms& c) {
  MatrixForm th = c.frame_theta(), thb = c.frame_theta_bar();
  return trace(th * thb - (c.theta1_bar * c.theta2 - c.theta2_bar * c.theta1));
}

inline BottChernResult bc2(const ConnectionForms& c) {
  BottChernResult r;
  r.k = 2;
  Form w11 = omega11(c);
  r.bc = w11 * 0.5;
  r.intermediates.push_back({"w(2,0)", trace(c.theta1 * c.theta2)});
  r.intermediates.push_back({"w(1,1)", w11});
  return r;
}

// Frame-level I_1 = th^3 - th th2 th1 - th1 th2 th, I_2 = -th^3 + th th1 th2 + th2 th1 th.
inline MatrixForm frame_i1(const ConnectionForms& c) {
  MatrixForm th = c.frame_theta();
  return th * th * th - th * c.theta2 * c.theta1 - c.theta1 * c.theta2 * th;
}
inline MatrixForm frame_i2(const ConnectionForms& c) {
  MatrixForm th = c.frame_theta();
  return -(th * th * th) + th * c.theta1 * c.theta2 + c.theta2 * c.theta1 * th;
}

// w(4,0) = 1/2 Tr(th1^3 th2 + th1 th2^3 + 1/2 (th1 th2)^2).
inline Form omega40(const ConnectionForms& c) {
  const MatrixForm &t1 = c.theta1, &t2 = c.theta2;
  MatrixForm t12 = t1 * t2;
  return trace(t1 * t1 * t12 + t12 * t2 * t2 + 0.5 * (t12 * t12)) * 0.5;
}

// w(3,1) = 1/2 Tr(th^3 th_bar + I_1 th1_bar + I_2 th2_bar).
inline Form omega31_from_i(const ConnectionForms& c) {
  MatrixForm th = c.frame_theta(), thb = c.frame_theta_bar();
  return trace(th * th * th * thb + frame_i1(c) * c.theta1_bar + frame_i2(c) * c.theta2_bar) * 0.5;
}

// Expanded form of w(3,1).
inline Form omega31(const ConnectionForms& c) {
  const MatrixForm &t1 = c.theta1, &t2 = c.theta2, &t1b = c.theta1_bar, &t2b = c.theta2_bar;
  MatrixForm th = t1 + t2;
  MatrixForm th3 = th * th * th;
  MatrixForm left = t1 * t2 * t2 + 2.0 * (t1 * t2 * t1) + t2 * t2 * t1;
  MatrixForm right = t1 * t1 * t2 + 2.0 * (t2 * t1 * t2) + t2 * t1 * t1;
  return trace(2.0 * (th3 * t1b) - left * t1b + right * t2b) * 0.5;
}

// w(2,2) = 6 bc_3.
inline Form omega22(const ConnectionForms& c) {
  const MatrixForm &t1 = c.theta1, &t2 = c.theta2, &t1b = c.theta1_bar, &t2b = c.theta2_bar;
  const MatrixForm &bth = c.theta, &bthb = c.theta_bar, &bcu = c.curvature;
  MatrixForm th = t1 + t2, thb = t1b + t2b;
  MatrixForm ththb = th * thb;
  MatrixForm t1t2 = t1 * t2, t2t1 = t2 * t1;
  MatrixForm sq = t1 * t1 + t2 * t2;
  MatrixForm t1bt2b = t1b * t2b, t2bt1b = t2b * t1b;
  MatrixForm t1t2b = t1 * t2b, t2t1b = t2 * t1b;

  MatrixForm sum = bth * bcu * bthb - bthb * bcu * bth - 0.5 * (ththb * ththb);
  sum += (sq + t1t2) * t1bt2b;
  sum -= (sq + t2t1) * t2bt1b;
  sum -= (t2t1 - t1t2) * (t1b * t1b + t2b * t2b);
  sum -= t2 * t1b * t2 * t2b;
  sum += t1 * t1b * t1 * t2b;
  sum -= t2 * t1b * t1 * t1b;
  sum += t2 * t2b * t1 * t2b;
  sum += 0.5 * (t1t2b * t1t2b - t2t1b * t2t1b);
  return trace(sum) * 0.5;
}

inline BottChernResult bc3(const ConnectionForms& c) {
  BottChernResult r;
  r.k = 3;
  Form w22 = omega22(c);
  r.bc = w22 * (1.0 / 6.0);
  r.intermediates.push_back({"w(4,0)", omega40(c)});
  r.intermediates.push_back({"w(3,1)", omega31(c)});
  r.intermediates.push_back({"w(2,2)", w22});
  return r;
}

// Ascent chain for k = 2 or 3.  k = 2 needs order >= 2, k = 3 order >= 3
// (the I-identities need one more derivative of theta).
inline CheckReport ascent_check(const ConnectionForms& c, int k) {
  using detail::w;
  CheckReport rep;
  Form zero(c.dim(), kMaxOrder);
  if (k == 2) {
    CsDecomposition cs = cs_decomposition(c, 2);
    Form w20 = trace(c.theta1 * c.theta2);
    Form w11 = omega11(c);
    double scale = std::max({cs.omegas[0].max_abs(), cs.omegas[1].max_abs(), w20.max_abs(), w11.max_abs()});
    rep.add("degree " + w(1, 1), off_degree(w11, 1, 1));
    rep.add(w(3, 0) + " = Tr(th1^2 th2 + th1 th2^2)",
            compare(cs.omegas[1], trace(c.theta1 * c.theta1 * c.theta2 + c.theta1 * c.theta2 * c.theta2), {scale}));
    rep.add(w(3, 0) + " = del " + w(2, 0), compare(cs.omegas[1], del(w20), {scale}));
    rep.add(w(2, 1) + " + delbar " + w(2, 0) + " = del " + w(1, 1),
            compare(cs.omegas[0] + delbar(w20), del(w11), {scale}));
    rep.add(w(1, 1) + " two expressions agree", compare(w11, omega11_frame(c), {scale}));
    return rep;
  }
  if (k == 3) {
    CsDecomposition cs = cs_decomposition(c, 3);
    Form w40 = omega40(c), w31 = omega31(c), w22 = omega22(c);
    double scale = std::max({w40.max_abs(), w31.max_abs(), w22.max_abs()});
    for (const Form& f : cs.omegas) scale = std::max(scale, f.max_abs());
    rep.add("degree " + w(4, 0), off_degree(w40, 4, 0));
    rep.add("degree " + w(3, 1), off_degree(w31, 3, 1));
    rep.add("degree " + w(2, 2), off_degree(w22, 2, 2));
    rep.add(w(5, 0) + " = del " + w(4, 0), compare(cs.omegas[2], del(w40), {scale}));
    rep.add(w(4, 1) + " + delbar " + w(4, 0) + " = del " + w(3, 1),
            compare(cs.omegas[1] + delbar(w40), del(w31), {scale}));
    rep.add(w(3, 2) + " + delbar " + w(3, 1) + " = del " + w(2, 2),
            compare(cs.omegas[0] + delbar(w31), del(w22), {scale}));
    rep.add(w(3, 1) + " two expressions agree", compare(w31, omega31_from_i(c), {scale}));

    MatrixForm th = c.frame_theta();
    MatrixForm th4 = th * th * th * th;
    MatrixForm i1 = frame_i1(c), i2 = frame_i2(c);
    double s_i = std::max({i1.max_abs(), i2.max_abs(), th4.max_abs()});
    rep.add("del I1 - I1 th1 - th1 I1 = -th^4", compare(del(i1) - i1 * c.theta1 - c.theta1 * i1, -th4, {s_i}));
    rep.add("del I2 + I2 th2 + th2 I2 = -th^4", compare(del(i2) + i2 * c.theta2 + c.theta2 * i2, -th4, {s_i}));
    return rep;
  }
  throw Error("ascent_check supports k = 2, 3");
}

// || delbar del (k! bc_k) - k! ch_k ||; k = 1 uses omega_{0,0} = log det h.
inline Residual bottchern_check(const ConnectionForms& c, int k) {
  Form potential;
  switch (k) {
    case 1: potential = log_det(c); break;
    case 2: potential = omega11(c); break;
    case 3: potential = omega22(c); break;
    default: throw Error("bottchern_check supports k = 1, 2, 3");
  }
  return compare(delbar(del(potential)), curvature_trace(c, k));
}

// Coefficient matrix M of w(1,1) = sum M_ab dz_a ^ dzbar_b at the base point.
inline Eigen::MatrixXcd omega11_matrix(const Form& w11) {
  int n = w11.dim();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) m(a - 1, b - 1) = w11.coeff({a}, {b}).constant_term();
  return m;
}

struct PositivityResult {
  double min_eigenvalue = 0.0;
  double hermitian_defect = 0.0;
  Eigen::MatrixXcd matrix;
};

inline constexpr double kPositivityHermitianTolerance = 1e-9;

// sqrt(-1) w(1,1) >= 0 means the Hermitian matrix M above is positive
// semidefinite.  Returns its smallest eigenvalue.
inline PositivityResult positivity_check(const ConnectionForms& c) {
  PositivityResult r;
  r.matrix = omega11_matrix(omega11(c));
  double scale = std::max(r.matrix.cwiseAbs().maxCoeff(), 1e-300);
  r.hermitian_defect = (r.matrix - r.matrix.adjoint()).cwiseAbs().maxCoeff() / scale;
  if (r.matrix.cwiseAbs().maxCoeff() == 0.0) r.hermitian_defect = 0.0;
  if (r.hermitian_defect > kPositivityHermitianTolerance) {
    throw ConventionViolation("w(1,1) coefficient matrix is not Hermitian");
  }
  Eigen::MatrixXcd herm = 0.5 * (r.matrix + r.matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  return r;
}

// Diagonal/unipotent split g = a_g b_g of an upper-triangular gauge matrix.
struct GaugeSplit {
  JetMatrix diagonal;
  JetMatrix unipotent;
};

inline GaugeSplit split_gauge(const JetMatrix& g) {
  int r = g.rows();
  std::vector<Jet> d;
  for (int i = 0; i < r; ++i) d.push_back(g(i, i));
  GaugeSplit s;
  s.diagonal = JetMatrix::diagonal(d);
  s.unipotent = inverse(s.diagonal) * g;
  for (int i = 0; i < r; ++i) s.unipotent(i, i) = Jet::constant(g.dim(), g.order(), 1.0);
  return s;
}

// c = Tr{A ^ conj(A) + A ^ a^{-1} delbar a + a^{-1} del a ^ conj(A)},
// A = a_g^{-1} del a_g, with a the Cholesky diagonal of the first chart.
inline Form transition_correction(const ConnectionForms& c, const JetMatrix& g) {
  GaugeSplit s = split_gauge(g);
  MatrixForm ag = s.diagonal.as_forms();
  MatrixForm ag_inv = inverse(s.diagonal).as_forms();
  MatrixForm a = c.factors.a_matrix().as_forms();
  MatrixForm a_inv = inverse(c.factors.a_matrix()).as_forms();
  MatrixForm big_a = ag_inv * del(ag);
  MatrixForm big_a_bar = conj(big_a);
  return trace(big_a * big_a_bar + big_a * (a_inv * delbar(a)) + (a_inv * del(a)) * big_a_bar);
}

struct CocycleResult {
  Form bc2_before;
  Form bc2_after;
  Form correction;
  Residual bc2_jump;  // bc2(g*hg) - bc2(h) against c
  CheckReport report;  // the identities that hold
};

// Compares bc_2 of h and of g* h g against the transition correction c.
// c is exactly the jump of w(1,1) = 2 bc_2, so bc_2 itself jumps by c/2;
// bc2_jump keeps the comparison of the bc_2 jump with c itself.  Needs
// metric order >= 3.
inline CocycleResult cocycle_check(const Metric& h, const JetMatrix& g) {
  check_gauge(g, h.rank());
  CocycleResult res;
  ConnectionForms ca = connection(h);
  ConnectionForms cb = connection(gauge_transform(h, g));
  res.bc2_before = bc2(ca).bc;
  res.bc2_after = bc2(cb).bc;
  res.correction = transition_correction(ca, g);
  Form jump = res.bc2_after - res.bc2_before;
  double scale = std::max({res.bc2_before.max_abs(), res.bc2_after.max_abs(), res.correction.max_abs()});
  res.bc2_jump = compare(jump, res.correction, {scale});
  res.report.add("w11(g*hg) - w11(h) = c", compare(jump * 2.0, res.correction, {scale}));
  res.report.add("delbar del c = 0", compare(delbar(del(res.correction)), Form(h.dim(), kMaxOrder), {scale}));

  GaugeSplit s = split_gauge(g);
  ConnectionForms cu = connection(gauge_transform(h, s.unipotent));
  res.report.add("bc2 invariant under unipotent part", compare(bc2(cu).bc, res.bc2_before, {scale}));
  return res;
}

}  // namespace chernforms

#endif  // CHERNFORMS_CHERN_HPP
