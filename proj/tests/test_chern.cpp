#include <gtest/gtest.h>

#include <numbers>

#include "chernforms/chern.hpp"
#include "chernforms/random_metric.hpp"
#include "chernforms/structural.hpp"
#include "displayed_forms.hpp"
#include "sigma_f.hpp"

using namespace chernforms;

namespace {

void expect_passes(const CheckReport& rep, double tol, const std::string& label) {
  for (const auto& it : rep.items) {
    EXPECT_TRUE(it.residual.passes(tol)) << label << ": " << it.name << " residual " << it.residual.normalized(tol)
                                         << " (abs " << it.residual.abs << ", scale " << it.residual.scale << ")";
  }
}

ConnectionForms random_connection(std::uint64_t seed, int r, int n, int order) {
  return connection(random_metric(seed, r, n, order));
}

}  // namespace

TEST(Chern, StructuralIdentities) {
  for (std::uint64_t s = 1; s <= 4; ++s) {
    int r = 1 + s % 3, n = 2 + s % 2;
    expect_passes(structural_identities(random_connection(s, r, n, 3)), 1e-10, "seed " + std::to_string(s));
  }
}

TEST(Chern, TraceOfTheta2Theta2BarDoesNotVanish) {
  // The (1,1) pair is the sum of del log a_i ^ delbar log a_i, nonzero here.
  ConnectionForms c = random_connection(2, 2, 2, 3);
  EXPECT_TRUE(trace_pair_exception(c).passes(1e-10));
  EXPECT_GT(trace_pair_literal(c).normalized(1e-10), 0.1);
}

TEST(Chern, DescentK1) { expect_passes(descent_check(random_connection(1, 2, 2, 3), 1), 1e-10, "k=1"); }

TEST(Chern, DescentK2) {
  for (std::uint64_t s = 1; s <= 3; ++s)
    expect_passes(descent_check(random_connection(s, 1 + s % 3, 3, 3), 2), 1e-10, "k=2 seed " + std::to_string(s));
}

TEST(Chern, DescentK3) { expect_passes(descent_check(random_connection(4, 2, 5, 3), 3), 1e-10, "k=3"); }

TEST(Chern, DescentK4) { expect_passes(descent_check(random_connection(5, 2, 7, 3), 4), 1e-9, "k=4"); }

TEST(Chern, DescentComponentsHaveTheirBidegree) {
  ConnectionForms c = random_connection(6, 2, 5, 3);
  CsDecomposition d = cs_decomposition(c, 3);
  ASSERT_EQ(d.omegas.size(), 3u);
  for (int l = 0; l < 3; ++l) {
    auto deg = d.omegas[l].degrees();
    ASSERT_EQ(deg.size(), 1u);
    EXPECT_EQ(deg[0], d.degree(l));
  }
  EXPECT_THROW(cs_decomposition(c, 0), Error);
  EXPECT_THROW(cs_decomposition(c, kMaxCsDegree + 1), Error);
}

TEST(Chern, DisplayedForms) {
  // Tr theta^7 vanishes identically unless n >= 7 and rank >= 4.
  for (std::uint64_t s = 1; s <= 2; ++s) {
    ConnectionForms c = random_connection(s, 4, 7, 3);
    for (const DisplayedForm& f : displayed_forms(c)) {
      Residual r = compare(f.computed, f.expected);
      EXPECT_TRUE(r.passes(1e-12)) << f.name << " abs " << r.abs << " scale " << r.scale;
      EXPECT_GT(f.expected.max_abs(), 1e-6) << f.name;
    }
  }
}

TEST(Chern, GeneratingPolynomialCoefficients) {
  // F_k(t) = sum a_l t^l and G_k(t) = sum b_l t^l, checked against the direct trace at a few t.
  ConnectionForms c = random_connection(7, 2, 3, 3);
  for (int k = 1; k <= 3; ++k) {
    std::vector<Form> a = f_poly_coeffs(c, k), b = g_poly_coeffs(c, k);
    for (double t : {-1.5, 0.5, 3.0}) {
      EXPECT_TRUE(compare(poly_at(a, t), f_poly_at(c, k, t)).passes(1e-12)) << k << " " << t;
      EXPECT_TRUE(compare(poly_at(b, t), g_poly_at(c, k, t)).passes(1e-12)) << k << " " << t;
    }
  }
}

TEST(Chern, ChernCharacterIsClosedAndReal) {
  ConnectionForms c = random_connection(8, 3, 2, 3);
  Form zero(2, kMaxOrder);
  for (int k = 1; k <= 2; ++k) {
    Form ch = chern_character(c, k);
    EXPECT_TRUE(compare(d(ch), zero, {ch.max_abs()}).passes(1e-10));
    // (sqrt(-1))^k Tr Theta^k is a real form.
    Form phys = ch * physical_scale(k);
    EXPECT_TRUE(compare(conj(phys), phys).passes(1e-12)) << k;
  }
  EXPECT_TRUE(compare(chern_character(c, 1), trace(c.curvature)).passes(1e-14));
}

TEST(Chern, PhysicalScale) {
  double pi = std::numbers::pi;
  EXPECT_NEAR(std::abs(physical_scale(0) - 1.0), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(physical_scale(1) - Complex(0.0, 1.0 / (2 * pi))), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(physical_scale(2) - Complex(-1.0 / (4 * pi * pi), 0.0)), 0.0, 1e-16);
}

TEST(Chern, LineBundleCurvature) {
  // h = e^{|z|^2} on C: Theta = delbar del log h = -dz ^ dzbar.
  Jet z = Jet::variable(1, Coord::holomorphic, 0.0, 1, 4);
  JetMatrix h(1, 1, 1, 4);
  h(0, 0) = exp(z * conj(z));
  ConnectionForms c = connection(Metric(h));
  Form expect = Form::monomial(Jet::constant(1, 2, -1.0), {1}, {1});
  EXPECT_TRUE(compare(c.curvature(0, 0), expect).passes(1e-14));
}

TEST(Chern, AscentK2) {
  for (std::uint64_t s = 1; s <= 3; ++s)
    expect_passes(ascent_check(random_connection(s, s, 2, 3), 2), 1e-9, "k=2 seed " + std::to_string(s));
}

TEST(Chern, AscentK3) {
  for (std::uint64_t s = 1; s <= 2; ++s)
    expect_passes(ascent_check(random_connection(s, 1 + s, 3, 4), 3), 1e-8, "k=3 seed " + std::to_string(s));
}

TEST(Chern, BottChern) {
  ConnectionForms c2 = random_connection(11, 2, 2, 3);
  EXPECT_TRUE(bottchern_check(c2, 1).passes(1e-9));
  EXPECT_TRUE(bottchern_check(c2, 2).passes(1e-9));
  ConnectionForms c3 = random_connection(12, 3, 3, 4);
  EXPECT_TRUE(bottchern_check(c3, 3).passes(1e-8));
  EXPECT_THROW(bottchern_check(c2, 4), Error);
}

TEST(Chern, BottChernForms) {
  ConnectionForms c = random_connection(13, 2, 3, 4);
  BottChernResult r2 = bc2(c), r3 = bc3(c);
  EXPECT_TRUE(compare(r2.bc * 2.0, r2.intermediate("w(1,1)")).passes(1e-15));
  EXPECT_EQ(r2.bc.degrees(), (std::vector<FormDegree>{{1, 1}}));
  EXPECT_EQ(r3.bc.degrees(), (std::vector<FormDegree>{{2, 2}}));
  EXPECT_THROW(r3.intermediate("w(9,9)"), Error);
  // delbar del (2 bc_2) = Tr Theta^2 and delbar del (6 bc_3) = Tr Theta^3.
  EXPECT_TRUE(compare(delbar(del(r2.bc * 2.0)), curvature_trace(c, 2)).passes(1e-9));
  EXPECT_TRUE(compare(delbar(del(r3.bc * 6.0)), curvature_trace(c, 3)).passes(1e-8));
}

TEST(Chern, RankOneBottChernVanishesBeyondFirst) {
  // For r = 1, theta1 = 0, so w(1,1) = del log a ^ delbar log a.
  ConnectionForms c = random_connection(14, 1, 2, 3);
  Form la = log_det(c);
  EXPECT_TRUE(compare(omega11(c), wedge(del(la), delbar(la))).passes(1e-12));
}

TEST(Chern, Positivity) {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    PositivityResult p = positivity_check(random_connection(s, 2 + s % 2, 2 + (s / 2) % 2, 2));
    EXPECT_GE(p.min_eigenvalue, -1e-9) << s;
    EXPECT_LT(p.hermitian_defect, 1e-12);
  }
}

TEST(Chern, CocycleOmega11Jump) {
  for (std::uint64_t s = 1; s <= 3; ++s) {
    Metric h = random_metric(s, 2 + s % 2, 2, 3);
    CocycleResult res = cocycle_check(h, random_gauge(s + 100, h.rank(), 2, 3));
    expect_passes(res.report, 1e-10, "seed " + std::to_string(s));
    // bc_2 = w(1,1)/2 jumps by half the correction.
    Form jump = res.bc2_after - res.bc2_before;
    EXPECT_TRUE(compare(jump, res.correction * 0.5).passes(1e-10));
    EXPECT_FALSE(res.bc2_jump.passes(1e-10));
  }
}

TEST(Chern, CocycleUnipotentGauge) {
  Metric h = random_metric(21, 3, 2, 3);
  CocycleResult res = cocycle_check(h, random_gauge(22, 3, 2, 3, true));
  EXPECT_LT(res.correction.max_abs(), 1e-15);
  EXPECT_TRUE(res.bc2_jump.passes(1e-10));
}

TEST(Chern, SplitGauge) {
  JetMatrix g = random_gauge(5, 3, 2, 3);
  GaugeSplit s = split_gauge(g);
  JetMatrix back = s.diagonal * s.unipotent;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_LT(max_abs_difference(back(i, j), g(i, j)), 1e-13);
}

TEST(Chern, SigmaFExample) {
  for (const SigmaFItem& it : sigma_f_example()) {
    EXPECT_LE(it.residual.abs, 1e-10) << it.name;
    EXPECT_GT(it.residual.scale, 1e-3) << it.name;
  }
}
