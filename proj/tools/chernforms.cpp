// chernforms: verify identities on seeded random metrics, evaluate
// characteristic forms of a metric file, print Cholesky factors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chernforms/chernforms.hpp"

using namespace chernforms;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Complex number in the metric-file literal syntax.
std::string complex_str(Complex c) {
  if (c.imag() == 0.0) return num(c.real());
  if (c.real() == 0.0) return num(c.imag()) + "i";
  return "(" + num(c.real()) + (std::signbit(c.imag()) ? "-" : "+") + num(std::abs(c.imag())) + "i)";
}

// Jet in the displacement variables w = z - base.
std::string jet_str(const Jet& j) {
  if (j.is_zero()) return "0";
  std::string out;
  int n = j.dim();
  for (const Jet::Term& t : j.terms()) {
    if (!out.empty()) out += " + ";
    out += complex_str(t.value);
    for (int i = 0; i < n; ++i) {
      int a = detail::key_exponent(t.key, i), b = detail::key_exponent(t.key, n + i);
      if (a) out += "*w" + std::to_string(i + 1) + (a > 1 ? "^" + std::to_string(a) : "");
      if (b) out += "*conj(w" + std::to_string(i + 1) + ")" + (b > 1 ? "^" + std::to_string(b) : "");
    }
  }
  return out;
}

std::string basis_str(Form::Key key, int n) {
  std::string out;
  IndexSet hol = detail::key_hol(key), anti = detail::key_anti(key);
  for (int i = 1; i <= n; ++i)
    if (hol & (1u << (i - 1))) out += (out.empty() ? "" : "^") + std::string("dz") + std::to_string(i);
  for (int i = 1; i <= n; ++i)
    if (anti & (1u << (i - 1))) out += (out.empty() ? "" : "^") + std::string("dzb") + std::to_string(i);
  return out.empty() ? "1" : out;
}

// One line per basis element: label, value at the base point.
void print_form(const Form& f, Complex scale) {
  bool any = false;
  for (const auto& t : f.terms()) {
    Complex v = t.coeff.constant_term() * scale;
    if (std::abs(v) == 0.0) continue;
    std::cout << basis_str(t.key, f.dim()) << " " << num(v.real()) << " " << num(v.imag()) << "\n";
    any = true;
  }
  if (!any) std::cout << "0\n";
}

struct Target {
  char kind;  // 'c' ch, 'b' bc, 's' cs
  int k;
};

Target parse_target(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw Error("target must look like ch:K, bc:2, bc:3 or cs:K");
  std::string what = s.substr(0, colon);
  int k = 0;
  try {
    k = std::stoi(s.substr(colon + 1));
  } catch (const std::exception&) {
    throw Error("bad degree in target '" + s + "'");
  }
  if (what == "ch" && k >= 1) return {'c', k};
  if (what == "cs" && k >= 1 && k <= kMaxCsDegree) return {'s', k};
  if (what == "bc" && (k == 2 || k == 3)) return {'b', k};
  throw Error("unsupported target '" + s + "'");
}

int cmd_verify(VerifyConfig cfg, const std::string& checks, const std::vector<std::string>& tols,
               const std::string& json_path) {
  if (!checks.empty()) {
    std::stringstream ss(checks);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) cfg.checks.push_back(item);
    }
  }
  for (const std::string& t : tols) {
    auto eq = t.find('=');
    if (eq == std::string::npos) throw Error("--tol expects NAME=VALUE, got '" + t + "'");
    double v = 0.0;
    try {
      v = std::stod(t.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error("bad tolerance value in '" + t + "'");
    }
    cfg.tolerances[t.substr(0, eq)] = v;
  }
  Report rep = run_verify(cfg);
  for (const CheckRecord& c : rep.checks) {
    std::printf("%-11s #%-3d r=%d n=%d R=%d  residual %-24s tol %-8s %s\n", c.name.c_str(), c.sample, c.shape.rank,
                c.shape.dim, c.shape.order, num(c.residual).c_str(), num(c.tolerance).c_str(),
                c.pass ? "PASS" : ("FAIL  [" + c.worst + "]").c_str());
  }
  std::printf("passed %d, failed %d\n", rep.passed, rep.failed);
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw Error("cannot write '" + json_path + "'");
    out << to_json(rep);
  }
  return rep.all_passed() ? 0 : 1;
}

int cmd_eval(const std::string& path, const std::string& target_str, bool physical) {
  Target target = parse_target(target_str);
  MetricSpec spec = read_metric_spec(path);
  int needed = 2;  // curvature consumes two orders
  if (spec.order < needed) {
    throw InsufficientJetOrder("target " + target_str + " needs metric order >= " + std::to_string(needed), needed);
  }
  Metric m = load_metric(spec);
  ConnectionForms c = connection(m);
  Form f;
  int m_exp = target.k;
  switch (target.kind) {
    case 'c': f = chern_character(c, target.k); break;
    case 's': f = cs_decomposition(c, target.k).cs; break;
    case 'b':
      f = target.k == 2 ? bc2(c).bc : bc3(c).bc;
      m_exp = target.k - 1;
      break;
  }
  Complex scale = physical ? physical_scale(m_exp) : Complex(1.0);
  std::cout << "# " << target_str << (physical ? " (physical units)" : "") << " at base point\n";
  print_form(f, scale);
  return 0;
}

int cmd_decompose(const std::string& path) {
  MetricSpec spec = read_metric_spec(path);
  Metric m = load_metric(spec);
  CholeskyFactors f = decompose(m);
  std::cout << "# h = b* a b, jets in w = z - base\n";
  for (int i = 0; i < m.rank(); ++i) std::cout << "a[" << i + 1 << "] = " << jet_str(f.a[i]) << "\n";
  for (int i = 0; i < m.rank(); ++i)
    for (int j = 0; j < m.rank(); ++j) std::cout << "b[" << i + 1 << "][" << j + 1 << "] = " << jet_str(f.b(i, j)) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chern and Bott-Chern forms of Hermitian metrics"};
  app.require_subcommand(1);

  VerifyConfig cfg;
  std::string checks, json_path;
  std::vector<std::string> tols;
  auto* verify = app.add_subcommand("verify", "check identities on seeded random metrics");
  verify->add_option("--seed", cfg.seed, "random seed")->default_val(42);
  verify->add_option("--samples", cfg.samples, "random metrics per check")->default_val(10);
  verify->add_option("--checks", checks, "comma-separated subset of checks");
  verify->add_option("--tol", tols, "tolerance override NAME=VALUE")->take_all();
  verify->add_option("--json", json_path, "write the report as JSON");

  std::string metric_path, target;
  bool physical = false;
  auto* eval = app.add_subcommand("eval", "evaluate a form of a metric file at its base point");
  eval->add_option("--metric", metric_path, "metric file")->required();
  eval->add_option("--target", target, "ch:K, bc:2, bc:3 or cs:K")->required();
  eval->add_flag("--physical", physical, "multiply by (sqrt(-1)/2pi)^m");

  std::string decompose_path;
  auto* decomp = app.add_subcommand("decompose", "print the factors a and b of h = b* a b");
  decomp->add_option("--metric", decompose_path, "metric file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(cfg, checks, tols, json_path);
    if (eval->parsed()) return cmd_eval(metric_path, target, physical);
    if (decomp->parsed()) return cmd_decompose(decompose_path);
  } catch (const mdsl::ParseError& e) {
    std::cerr << "parse error at line " << e.line() << ", column " << e.column() << ": " << e.message() << "\n";
    return 2;
  } catch (const InsufficientJetOrder& e) {
    std::cerr << "configuration error: " << e.what() << " (minimal sufficient order: " << e.required() << ")\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
