#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "chernforms/metric_file.hpp"
#include "chernforms/random_metric.hpp"
#include "mdsl_corpus.hpp"

using namespace chernforms;
using namespace chernforms::mdsl;

namespace {

ParseError parse_error(const std::string& src, int max_var = 3) {
  try {
    parse(src, max_var);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for '" << src << "'";
  return ParseError("none", 0, 0);
}

ParseError spec_error(const std::string& text) {
  try {
    parse_metric_spec(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for metric text:\n" << text;
  return ParseError("none", 0, 0);
}

// Direct pointwise evaluation, independent of the jet arithmetic.
Complex direct(const Expr& e, const std::vector<Complex>& z) {
  switch (e.kind) {
    case Kind::literal: return e.value;
    case Kind::variable: return z[e.index - 1];
    case Kind::conj: return std::conj(direct(*e.args[0], z));
    case Kind::neg: return -direct(*e.args[0], z);
    case Kind::add: return direct(*e.args[0], z) + direct(*e.args[1], z);
    case Kind::sub: return direct(*e.args[0], z) - direct(*e.args[1], z);
    case Kind::mul: return direct(*e.args[0], z) * direct(*e.args[1], z);
    case Kind::div: return direct(*e.args[0], z) / direct(*e.args[1], z);
    case Kind::pow: {
      Complex b = direct(*e.args[0], z), p = 1.0;
      for (int i = 0; i < e.index; ++i) p *= b;
      return p;
    }
    case Kind::exp: return std::exp(direct(*e.args[0], z));
    case Kind::log: return std::log(direct(*e.args[0], z));
  }
  return {};
}

// Random expression in z1..zn whose divisions and logs stay away from their
// singular sets near the origin.
ExprPtr random_expr(Rng& rng, int n, int depth) {
  double u = rng.uniform();
  if (depth == 0 || u < 0.2) {
    if (rng.uniform() < 0.4) return literal(rng.unit_disk());
    return variable(1 + static_cast<int>(rng.uniform() * n));
  }
  int pick = static_cast<int>(rng.uniform() * 9);
  auto sub = [&] { return random_expr(rng, n, depth - 1); };
  switch (pick) {
    case 0: return unary(Kind::conj, sub());
    case 1: return unary(Kind::neg, sub());
    case 2: return binary(Kind::add, sub(), sub());
    case 3: return binary(Kind::sub, sub(), sub());
    case 4: return binary(Kind::mul, sub(), sub());
    case 5: return power(sub(), 1 + static_cast<int>(rng.uniform() * 3));
    case 6: return unary(Kind::exp, binary(Kind::mul, literal(0.3), sub()));
    case 7: {
      // 4 + |s|^2 never vanishes and has positive real part.
      ExprPtr s = sub();
      return binary(Kind::div, sub(), binary(Kind::add, literal(4.0), binary(Kind::mul, s, unary(Kind::conj, s))));
    }
    default: {
      ExprPtr s = sub();
      return unary(Kind::log, binary(Kind::add, literal(2.0), binary(Kind::mul, s, unary(Kind::conj, s))));
    }
  }
}

}  // namespace

TEST(Mdsl, CorpusHasThirtyEntries) { EXPECT_GE(mdsl_corpus().size(), 30u); }

TEST(Mdsl, CorpusRoundTrips) {
  for (const std::string& s : mdsl_corpus()) {
    ExprPtr e = parse(s, 3);
    std::string printed = to_string(*e);
    ExprPtr again = parse(printed, 3);
    EXPECT_TRUE(same(*e, *again)) << s << " printed as " << printed;
    EXPECT_EQ(to_string(*again), printed) << s;
  }
}

TEST(Mdsl, RandomAstsRoundTrip) {
  Rng rng(77);
  for (int i = 0; i < 200; ++i) {
    ExprPtr e = random_expr(rng, 3, 4);
    std::string printed = to_string(*e);
    ExprPtr again = parse(printed, 3);
    // Negated literals fold when reparsed, so the second print is the fixed point.
    std::string reprinted = to_string(*again);
    EXPECT_EQ(to_string(*parse(reprinted, 3)), reprinted);
    std::vector<Complex> z = {{0.1, 0.2}, {-0.3, 0.1}, {0.2, -0.2}};
    EXPECT_NEAR(std::abs(direct(*e, z) - direct(*again, z)), 0.0, 1e-12 * std::max(1.0, std::abs(direct(*e, z))));
  }
}

TEST(Mdsl, AstShapes) {
  ExprPtr e = parse("exp(z1*conj(z1))");
  ExprPtr expect = unary(Kind::exp, binary(Kind::mul, variable(1), unary(Kind::conj, variable(1))));
  EXPECT_TRUE(same(*e, *expect));

  ExprPtr f = parse("z1^2 - (3+2i)*conj(z2)");
  ExprPtr expect_f =
      binary(Kind::sub, power(variable(1), 2), binary(Kind::mul, literal({3.0, 2.0}), unary(Kind::conj, variable(2))));
  EXPECT_TRUE(same(*f, *expect_f));
}

TEST(Mdsl, Precedence) {
  EXPECT_TRUE(same(*parse("1 + 2*z1"), *binary(Kind::add, literal(1.0), binary(Kind::mul, literal(2.0), variable(1)))));
  EXPECT_TRUE(same(*parse("z1 - z2 - z3"),
                   *binary(Kind::sub, binary(Kind::sub, variable(1), variable(2)), variable(3))));
  EXPECT_TRUE(same(*parse("2*z1^3"), *binary(Kind::mul, literal(2.0), power(variable(1), 3))));
  // Unary minus binds tighter than '^'.
  EXPECT_TRUE(same(*parse("-z1^2"), *power(unary(Kind::neg, variable(1)), 2)));
  EXPECT_TRUE(same(*parse("z1/z2*z3"), *binary(Kind::mul, binary(Kind::div, variable(1), variable(2)), variable(3))));
}

TEST(Mdsl, PositionedErrors) {
  ParseError e = parse_error("1 + ");
  EXPECT_EQ(e.line(), 1);
  EXPECT_EQ(e.column(), 5);

  e = parse_error("foo(z1)");
  EXPECT_EQ(e.column(), 1);
  EXPECT_NE(e.message().find("unknown identifier"), std::string::npos);

  e = parse_error("exp(z1, z2)");
  EXPECT_EQ(e.column(), 7);
  EXPECT_NE(e.message().find("one argument"), std::string::npos);

  EXPECT_EQ(parse_error("z1^1.5").column(), 4);
  EXPECT_EQ(parse_error("z1^-2").column(), 4);
  EXPECT_EQ(parse_error("z1^65").column(), 4);
  EXPECT_EQ(parse_error("(z1").column(), 4);
  EXPECT_EQ(parse_error("z1 $ 2").column(), 4);
  EXPECT_EQ(parse_error("exp z1").column(), 5);
  EXPECT_EQ(parse_error("z4").column(), 1);
  EXPECT_EQ(parse_error("z1 z2").column(), 4);
  EXPECT_EQ(parse_error("").column(), 1);

  e = parse_error("z1 +\n  * z2");
  EXPECT_EQ(e.line(), 2);
  EXPECT_EQ(e.column(), 3);
  EXPECT_EQ(std::string(e.what()), "2:3: " + e.message());
}

TEST(Mdsl, EvalExamples) {
  std::vector<Complex> base = {0.0};
  Jet a = eval_expr(*parse("z1*conj(z1)"), base, 2);
  EXPECT_EQ(a.coeff({{1}, {1}}), Complex(1.0));
  EXPECT_EQ(a.terms().size(), 1u);

  Jet e = eval_expr(*parse("exp(z1)"), base, 3);
  double f = 1.0;
  for (int k = 0; k <= 3; ++k) {
    if (k) f *= k;
    EXPECT_NEAR(std::abs(e.coeff({{k}, {0}}) - 1.0 / f), 0.0, 1e-15);
  }

  Jet g = eval_expr(*parse("1/(1 - z1)"), base, 2);
  for (int k = 0; k <= 2; ++k) EXPECT_NEAR(std::abs(g.coeff({{k}, {0}}) - 1.0), 0.0, 1e-15);
  EXPECT_EQ(g.terms().size(), 3u);
}

TEST(Mdsl, EvalErrors) {
  std::vector<Complex> base = {0.0, 0.0};
  EXPECT_THROW(eval_expr(*parse("1/z1"), base, 2), SingularJet);
  EXPECT_THROW(eval_expr(*parse("log(z1 - 1)"), base, 2), DomainError);
  EXPECT_THROW(eval_expr(*parse("z3"), base, 2), IndexOutOfRange);
}

TEST(Mdsl, DoubleConjugation) {
  std::vector<Complex> base = {{0.2, -0.1}, {0.4, 0.3}};
  ExprPtr e = parse("exp(z1*conj(z2)) + (1-2i)*z2^2/(3 + z1)");
  Jet a = eval_expr(*e, base, 4);
  Jet b = eval_expr(*unary(Kind::conj, unary(Kind::conj, e)), base, 4);
  EXPECT_LT(max_abs_difference(a, b), 1e-300 + 0.0);
}

TEST(Mdsl, RandomAstsMatchDirectEvaluation) {
  Rng rng(5);
  int n = 2, order = 5;
  for (int i = 0; i < 100; ++i) {
    ExprPtr e = random_expr(rng, n, 4);
    std::vector<Complex> base = {0.5 * rng.unit_disk(), 0.5 * rng.unit_disk()};
    Jet j = eval_expr(*e, base, order);
    double scale = std::max(1.0, std::abs(direct(*e, base)));
    EXPECT_NEAR(std::abs(j.constant_term() - direct(*e, base)), 0.0, 1e-12 * scale) << to_string(*e);
    // Taylor polynomial at a nearby point: the truncation error is O(|dz|^6).
    for (int t = 0; t < 3; ++t) {
      std::vector<Complex> dz = {1e-2 * rng.unit_disk(), 1e-2 * rng.unit_disk()};
      std::vector<Complex> z = {base[0] + dz[0], base[1] + dz[1]};
      EXPECT_NEAR(std::abs(evaluate(j, dz) - direct(*e, z)), 0.0, 1e-9 * scale) << to_string(*e);
    }
  }
}

TEST(MetricFile, LoadsSampleFiles) {
  for (const char* path : {"metrics/sigma_f.metric", "metrics/diagonal.metric", "metrics/line_bundle.metric",
                           "metrics/gauge.metric"}) {
    MetricSpec spec = read_metric_spec(path);
    Metric m = load_metric(spec);
    EXPECT_EQ(m.rank(), spec.r) << path;
    EXPECT_EQ(m.dim(), spec.n) << path;
    EXPECT_EQ(m.order(), spec.order) << path;
  }
  MetricSpec g = read_metric_spec("metrics/gauge.metric");
  ASSERT_TRUE(load_gauge(g).has_value());
  EXPECT_FALSE(load_gauge(read_metric_spec("metrics/diagonal.metric")).has_value());
}

TEST(MetricFile, SigmaFValidates) {
  MetricSpec spec = read_metric_spec("metrics/sigma_f.metric");
  EXPECT_EQ(spec.n, 2);
  EXPECT_EQ(spec.r, 2);
  EXPECT_EQ(spec.order, 4);
  Metric m = load_metric(spec);
  CholeskyFactors f = decompose(m);
  // a_1 = 1, b_12 = conj(f).
  EXPECT_LT(max_abs_difference(f.a[0], Jet::constant(2, 4, 1.0)), 1e-15);
  Jet fj = eval_expr(*parse("z1 + z1*z2 + 0.5*z2^2"), spec.base, 4);
  EXPECT_LT(max_abs_difference(f.b(0, 1), conj(fj)), 1e-14);
}

TEST(MetricFile, BasePointAndHeader) {
  MetricSpec spec = parse_metric_spec(
      "# comment line\n"
      "dim = 2   # trailing comment\n"
      "rank = 1\n"
      "base = (0.5, -1+2i)\n"
      "h[1][1] = 1 + z1*conj(z1) + z2*conj(z2)\n");
  EXPECT_EQ(spec.order, 3);
  ASSERT_EQ(spec.base.size(), 2u);
  EXPECT_EQ(spec.base[1], Complex(-1.0, 2.0));
  Metric m = load_metric(spec);
  EXPECT_NEAR(m(0, 0).constant_term().real(), 1.0 + 0.25 + 5.0, 1e-14);
}

TEST(MetricFile, LineBundleExample) {
  MetricSpec spec = parse_metric_spec("dim = 1\nrank = 1\nh[1][1] = exp(z1*conj(z1))\n");
  Metric m = load_metric(spec);
  EXPECT_EQ(m.rank(), 1);
}

TEST(MetricFile, Errors) {
  ParseError e = spec_error("dim = 1\nrank = 1\nh[1][1] = 1 + \n");
  EXPECT_EQ(e.line(), 3);
  EXPECT_EQ(e.column(), 15);

  e = spec_error("dim = 2\nrank = 2\nh[1][1] = 1\n");
  EXPECT_NE(e.message().find("missing diagonal"), std::string::npos);

  e = spec_error("dim = 1\nrank = 2\nh[1][1] = 1\nh[2][2] = 1\nh[2][1] = z1\n");
  EXPECT_EQ(e.line(), 5);

  e = spec_error("dim = 1\nrank = 1\nh[1][1] = 1\nh[1][1] = 2\n");
  EXPECT_NE(e.message().find("duplicate"), std::string::npos);

  e = spec_error("dim = 1\nrank = 1\nh[1][3] = 1\n");
  EXPECT_NE(e.message().find("outside"), std::string::npos);

  e = spec_error("dim = 2\nrank = 1\nbase = (0)\nh[1][1] = 1\n");
  EXPECT_EQ(e.line(), 3);

  e = spec_error("dim = 1\nrank = 1\ncolour = 3\nh[1][1] = 1\n");
  EXPECT_EQ(e.line(), 3);
  EXPECT_EQ(e.column(), 1);

  e = spec_error("rank = 1\nh[1][1] = 1\n");
  EXPECT_NE(e.message().find("dim"), std::string::npos);

  e = spec_error("dim = 1\nrank = 1\nh[1][1] = z2\n");
  EXPECT_EQ(e.column(), 11);

  e = spec_error("dim = 1\nrank = 1\njust text\n");
  EXPECT_EQ(e.line(), 3);

  EXPECT_THROW(read_metric_spec("metrics/does_not_exist.metric"), Error);
}

TEST(MetricFile, SemanticErrors) {
  // A diagonal entry with a complex value at the base point.
  EXPECT_THROW(load_metric(parse_metric_spec("dim = 1\nrank = 1\nbase = (1i)\nh[1][1] = z1\n")), DomainError);
  EXPECT_THROW(load_metric(parse_metric_spec("dim = 1\nrank = 1\nh[1][1] = -1 + z1*conj(z1)\n")), NotPositiveDefinite);
  EXPECT_THROW(load_metric(parse_metric_spec("dim = 1\nrank = 2\nh[1][1] = 1\nh[1][2] = 2\nh[2][2] = 1\n")),
               NotPositiveDefinite);
  MetricSpec bad = parse_metric_spec("dim = 1\nrank = 1\nh[1][1] = 1\ng[1][1] = conj(z1) + 1\n");
  EXPECT_THROW(load_gauge(bad), InvalidGauge);
}
