#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "chernforms/chernforms.hpp"
#include "json.hpp"

using namespace chernforms;
using nlohmann::json;

namespace {

struct CliResult {
  int code;
  std::string out;  // stdout and stderr
};

CliResult run(const std::string& args) {
  std::string cmd = std::string(CHERNFORMS_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("popen failed");
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("chernforms_test_" + std::to_string(::getpid()) + "_" + name);
}

json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

json without_timing(json j) {
  for (auto& c : j["checks"]) c.erase("millis");
  return j;
}

// Value printed for a basis label by `eval`.
Complex eval_value(const std::string& out, const std::string& label) {
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string name;
    double re = 0.0, im = 0.0;
    if (ls >> name >> re >> im && name == label) return {re, im};
  }
  return {};
}

std::string write_temp(const std::string& name, const std::string& text) {
  auto p = temp_path(name);
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST(Cli, VerifyJsonIsDeterministic) {
  auto a = temp_path("a.json"), b = temp_path("b.json");
  std::string args = "verify --seed 7 --samples 3 --checks structural,positivity,cocycle,bc2 --json ";
  CliResult r1 = run(args + a.string());
  CliResult r2 = run(args + b.string());
  ASSERT_EQ(r1.code, 0) << r1.out;
  ASSERT_EQ(r2.code, 0) << r2.out;
  EXPECT_EQ(without_timing(read_json(a)), without_timing(read_json(b)));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(Cli, ReportSchema) {
  auto p = temp_path("schema.json");
  CliResult r = run("verify --seed 3 --samples 2 --checks bc1,ascent_k2 --tol bc1=1e-300 --json " + p.string());
  EXPECT_EQ(r.code, 1) << r.out;
  json j = read_json(p);
  EXPECT_EQ(j["version"], kToolVersion);
  EXPECT_EQ(j["seed"], 3);
  ASSERT_EQ(j["checks"].size(), 4u);
  int passed = 0, failed = 0;
  for (const auto& c : j["checks"]) {
    for (const char* key : {"name", "params", "residual", "tolerance", "pass", "millis"}) EXPECT_TRUE(c.contains(key)) << key;
    for (const char* key : {"sample", "rank", "dim", "order", "metric_seed", "digest"})
      EXPECT_TRUE(c["params"].contains(key)) << key;
    bool pass = c["pass"];
    EXPECT_EQ(pass, !c["residual"].is_null() && c["residual"].get<double>() <= c["tolerance"].get<double>());
    (pass ? passed : failed)++;
  }
  EXPECT_EQ(j["checks"][0]["name"], "bc1");
  EXPECT_EQ(j["checks"][0]["tolerance"], 1e-300);
  EXPECT_EQ(j["summary"]["passed"], passed);
  EXPECT_EQ(j["summary"]["failed"], failed);
  EXPECT_EQ(failed, 2);
  std::filesystem::remove(p);
}

TEST(Cli, ExitCodes) {
  CliResult ok = run("verify --samples 1 --checks positivity");
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_NE(ok.out.find("passed 1, failed 0"), std::string::npos);

  EXPECT_EQ(run("verify --samples 1 --checks bc1 --tol bc1=1e-300").code, 1);
  EXPECT_EQ(run("verify --checks nonsense").code, 2);
  EXPECT_EQ(run("verify --samples 0").code, 2);
  EXPECT_EQ(run("verify --tol bc1").code, 2);
  EXPECT_EQ(run("eval --metric metrics/does_not_exist.metric --target ch:1").code, 2);
  EXPECT_EQ(run("eval --metric metrics/sigma_f.metric --target xx:1").code, 2);
  EXPECT_NE(run("frobnicate").code, 0);
}

TEST(Cli, ParseErrorsCarryPositions) {
  std::string path = write_temp("bad.metric", "dim = 1\nrank = 1\nh[1][1] = 1 + \n");
  CliResult r = run("decompose --metric " + path);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("parse error at line 3, column 15"), std::string::npos) << r.out;
  std::filesystem::remove(path);
}

TEST(Cli, InsufficientOrderNamesMinimum) {
  std::string path = write_temp("low.metric", "dim = 1\nrank = 1\norder = 1\nh[1][1] = exp(z1*conj(z1))\n");
  CliResult r = run("eval --metric " + path + " --target ch:1");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("configuration error"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("minimal sufficient order: 2"), std::string::npos) << r.out;
  std::filesystem::remove(path);
}

TEST(Cli, EvalSigmaFBottChern) {
  // At z = 0: sigma has no linear part, e^-sigma = 1 and del f = dz1, so
  // bc_2 = (1/2)(del sigma ^ delbar sigma + 2 e^-sigma del f ^ delbar conj f) = dz1 ^ dzbar1.
  CliResult r = run("eval --metric metrics/sigma_f.metric --target bc:2");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NEAR(std::abs(eval_value(r.out, "dz1^dzb1") - 1.0), 0.0, 1e-12) << r.out;
  EXPECT_NEAR(std::abs(eval_value(r.out, "dz2^dzb2")), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(eval_value(r.out, "dz1^dzb2")), 0.0, 1e-12);

  CliResult p = run("eval --metric metrics/sigma_f.metric --target bc:2 --physical");
  ASSERT_EQ(p.code, 0) << p.out;
  EXPECT_NEAR(std::abs(eval_value(p.out, "dz1^dzb1") - Complex(0.0, 0.5 / std::numbers::pi)), 0.0, 1e-12);
}

TEST(Cli, EvalMatchesLibrary) {
  Metric m = load_metric(read_metric_spec("metrics/gauge.metric"));
  ConnectionForms c = connection(m);
  Form ch2 = chern_character(c, 2);
  CliResult r = run("eval --metric metrics/gauge.metric --target ch:2");
  ASSERT_EQ(r.code, 0) << r.out;
  Complex v = ch2.coeff({1, 2}, {1, 2}).constant_term();
  EXPECT_GT(std::abs(v), 1e-6);
  EXPECT_NEAR(std::abs(eval_value(r.out, "dz1^dz2^dzb1^dzb2") - v), 0.0, 1e-12 * std::abs(v));
  EXPECT_EQ(run("eval --metric metrics/gauge.metric --target cs:2").code, 0);
  EXPECT_EQ(run("eval --metric metrics/gauge.metric --target bc:3").code, 0);
}

TEST(Cli, DecomposeDiagonalMetric) {
  CliResult r = run("decompose --metric metrics/diagonal.metric");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("b[1][1] = 1\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("b[1][2] = 0\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("b[2][1] = 0\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("b[2][2] = 1\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("a[2] = "), std::string::npos);
}

TEST(Verify, ThreadCountDoesNotChangeReport) {
  VerifyConfig cfg;
  cfg.seed = 11;
  cfg.samples = 4;
  cfg.checks = {"structural", "bc1", "positivity"};
  cfg.threads = 1;
  std::string one = to_json(run_verify(cfg), false);
  cfg.threads = 4;
  std::string four = to_json(run_verify(cfg), false);
  EXPECT_EQ(one, four);
}

TEST(Verify, ConfigValidation) {
  VerifyConfig cfg;
  cfg.orders["bc3"] = 3;
  try {
    validate(cfg);
    ADD_FAILURE() << "order 3 accepted for bc3";
  } catch (const InsufficientJetOrder& e) {
    EXPECT_EQ(e.required(), 4);
  }
  cfg.orders.clear();
  cfg.tolerances["bc2"] = 0.0;
  EXPECT_THROW(validate(cfg), Error);
  cfg.tolerances.clear();
  cfg.checks = {"descent_k9"};
  EXPECT_THROW(validate(cfg), Error);
}

TEST(Verify, SampleSeedsDifferAcrossChecksAndSamples) {
  EXPECT_NE(detail::sample_seed(42, "bc1", 0), detail::sample_seed(42, "bc2", 0));
  EXPECT_NE(detail::sample_seed(42, "bc1", 0), detail::sample_seed(42, "bc1", 1));
  EXPECT_NE(detail::sample_seed(42, "bc1", 0), detail::sample_seed(43, "bc1", 0));
  EXPECT_EQ(detail::sample_seed(42, "bc1", 0), detail::sample_seed(42, "bc1", 0));
}
