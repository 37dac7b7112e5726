#ifndef CHERNFORMS_STRUCTURAL_HPP
#define CHERNFORMS_STRUCTURAL_HPP

// Differential identities satisfied by the connection forms of a metric and
// by their Cholesky-frame pieces.  Each helper returns named residuals; all
// of them need a metric jet of order >= 3.

#include <string>

#include "chernforms/cholesky.hpp"
#include "chernforms/residual.hpp"

namespace chernforms {

namespace detail {
inline std::string pow_name(const char* base, int e) {
  return e == 0 ? "" : (e == 1 ? std::string(base) : std::string(base) + "^" + std::to_string(e));
}
}  // namespace detail

// Identities of theta = h^{-1} del h and its curvature.
inline CheckReport curvature_identities(const ConnectionForms& c) {
  CheckReport rep;
  const MatrixForm& th = c.theta;
  const MatrixForm& cu = c.curvature;
  MatrixForm th2 = th * th;
  double s_th = th.max_abs(), s_cu = cu.max_abs();

  rep.add("del theta = -theta^2", compare(del(th), -th2, {s_th}));
  rep.add("delbar theta = Theta", compare(delbar(th), cu));
  rep.add("del Theta = [Theta, theta]", compare(del(cu), commutator(cu, th), {s_cu}));
  rep.add("delbar Theta = 0", compare(delbar(cu), MatrixForm::zero(c.rank(), c.dim(), kMaxOrder), {s_cu}));

  MatrixForm cu_k = cu;
  for (int k = 1; k <= 2; ++k) {
    if (k > 1) cu_k = cu_k * cu;
    std::string ks = std::to_string(k);
    rep.add("del Theta^" + ks + " = [Theta^" + ks + ", theta]",
            compare(del(cu_k), commutator(cu_k, th), {cu_k.max_abs()}));
    MatrixForm th_cu = th * cu_k;
    rep.add("del(theta Theta^" + ks + ") = -theta Theta^" + ks + " theta",
            compare(del(th_cu), -(th_cu * th), {th_cu.max_abs()}));
  }
  rep.add("del theta^2 = 0", compare(del(th2), MatrixForm::zero(c.rank(), c.dim(), kMaxOrder), {th2.max_abs()}));
  rep.add("delbar theta^2 = [Theta, theta]", compare(delbar(th2), commutator(cu, th), {th2.max_abs()}));
  return rep;
}

// Identities of the Cholesky-frame forms theta1, theta2 and their bar analogues.
inline CheckReport frame_identities(const ConnectionForms& c) {
  CheckReport rep;
  const MatrixForm &t1 = c.theta1, &t2 = c.theta2, &t1b = c.theta1_bar, &t2b = c.theta2_bar;
  double s = std::max({t1.max_abs(), t2.max_abs(), t1b.max_abs(), t2b.max_abs()});

  rep.add("del theta1 = theta1^2", compare(del(t1), t1 * t1, {s}));
  rep.add("del theta2 = -theta2^2", compare(del(t2), -(t2 * t2), {s}));
  rep.add("delbar theta1_bar = theta1_bar^2", compare(delbar(t1b), t1b * t1b, {s}));
  rep.add("delbar theta2_bar = -theta2_bar^2", compare(delbar(t2b), -(t2b * t2b), {s}));
  rep.add("delbar theta1 = -del theta1_bar + theta1 theta1_bar + theta1_bar theta1",
          compare(delbar(t1), -del(t1b) + t1 * t1b + t1b * t1, {s}));
  rep.add("delbar theta2 = -del theta2_bar - theta2 theta2_bar - theta2_bar theta2",
          compare(delbar(t2), -del(t2b) - t2 * t2b - t2b * t2, {s}));

  // theta2 = a^{-1} theta1^* a + a^{-1} del a, where theta1^* is the adjoint
  // of the (1,0)-form b*^{-1} del b*, i.e. conj_transpose(theta1_bar).
  MatrixForm a = c.factors.a_matrix().as_forms();
  MatrixForm a_inv = inverse(c.factors.a_matrix()).as_forms();
  rep.add("theta2 = a^-1 theta1^* a + a^-1 del a",
          compare(t2, a_inv * conj_transpose(t1b) * a + a_inv * del(a), {s}));

  rep.add("theta = b^-1 (theta1 + theta2) b", compare(c.theta, c.to_bold(t1 + t2), {s}));
  rep.add("theta_bar = b^-1 (theta1_bar + theta2_bar) b", compare(c.theta_bar, c.to_bold(t1b + t2b), {s}));

  MatrixForm th = t1 + t2;
  rep.add("Theta = b^-1 (delbar th - th1_bar th - th th1_bar) b",
          compare(c.curvature, c.to_bold(delbar(th) - t1b * th - th * t1b), {c.curvature.max_abs()}));

  const MatrixForm& tb = c.theta_bar;
  rep.add("delbar theta_bar = -theta_bar^2", compare(delbar(tb), -(tb * tb), {tb.max_abs()}));
  rep.add("Theta = -del theta_bar - theta theta_bar - theta_bar theta",
          compare(c.curvature, -del(tb) - c.theta * tb - tb * c.theta, {c.curvature.max_abs()}));
  return rep;
}

// Trace vanishing of the nilpotent/triangular frame pieces, for all exponent
// pairs of total degree <= max_total:
//   Tr(theta1^l theta1_bar^m) = 0 for l + m > 0,
//   Tr(theta2^l theta2_bar^m) = 0 for max(l, m) > 1.
// The pair (1,1) for theta2 is excluded because Tr(theta2 theta2_bar) is the
// nonvanishing sum of del log a_i ^ delbar log a_i; trace_pair_exception()
// checks that value instead.
inline CheckReport trace_vanishing(const ConnectionForms& c, int max_total = 5) {
  CheckReport rep;
  int r = c.rank(), n = c.dim();
  auto word = [&](const MatrixForm& x, int l, const MatrixForm& y, int m) {
    MatrixForm w = MatrixForm::identity(r, n, std::min(x.order(), y.order()));
    for (int i = 0; i < l; ++i) w = w * x;
    for (int i = 0; i < m; ++i) w = w * y;
    return w;
  };
  for (int total = 1; total <= max_total; ++total) {
    for (int l = 0; l <= total; ++l) {
      int m = total - l;
      {
        MatrixForm w = word(c.theta1, l, c.theta1_bar, m);
        rep.add("Tr(" + detail::pow_name("theta1", l) + (l && m ? " " : "") + detail::pow_name("theta1_bar", m) + ") = 0",
                compare(trace(w), Form(n, kMaxOrder), {w.max_abs(), c.theta1.max_abs()}));
      }
      if (std::max(l, m) > 1) {
        MatrixForm w = word(c.theta2, l, c.theta2_bar, m);
        rep.add("Tr(" + detail::pow_name("theta2", l) + (l && m ? " " : "") + detail::pow_name("theta2_bar", m) + ") = 0",
                compare(trace(w), Form(n, kMaxOrder), {w.max_abs(), c.theta2.max_abs()}));
      }
    }
  }
  return rep;
}

// Tr(theta2 theta2_bar) = sum_i del log a_i ^ delbar log a_i.
inline Residual trace_pair_exception(const ConnectionForms& c) {
  int n = c.dim();
  Form expected(n, kMaxOrder);
  for (const Jet& ai : c.factors.a) {
    Form la = Form::scalar(log(ai));
    expected += wedge(del(la), delbar(la));
  }
  return compare(trace(c.theta2 * c.theta2_bar), expected);
}

// Literal form of the trace property for the (1,1) pair of theta2; this is
// generally nonzero (see trace_vanishing).
inline Residual trace_pair_literal(const ConnectionForms& c) {
  MatrixForm w = c.theta2 * c.theta2_bar;
  return compare(trace(w), Form(c.dim(), kMaxOrder), {w.max_abs(), c.theta2.max_abs()});
}

inline CheckReport structural_identities(const ConnectionForms& c) {
  CheckReport rep = curvature_identities(c);
  rep.append(frame_identities(c));
  rep.append(trace_vanishing(c));
  rep.add("Tr(theta2 theta2_bar) = sum del log a_i ^ delbar log a_i", trace_pair_exception(c));
  return rep;
}

}  // namespace chernforms

#endif  // CHERNFORMS_STRUCTURAL_HPP
