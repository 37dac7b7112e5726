#ifndef CHERNFORMS_VERIFY_HPP
#define CHERNFORMS_VERIFY_HPP

// Seeded verification runs over random metrics and their JSON report.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "chernforms/chern.hpp"
#include "chernforms/random_metric.hpp"
#include "chernforms/structural.hpp"

namespace chernforms {

inline constexpr const char* kToolVersion = "0.1.0";

struct CheckShape {
  int rank;
  int dim;
  int order;
};

struct CheckInfo {
  std::string name;
  int min_order;
  double tolerance;
  CheckShape (*shape)(int sample);
};

inline const std::vector<CheckInfo>& check_catalog() {
  static const std::vector<CheckInfo> catalog = {
      {"structural", 3, 1e-9, [](int s) { return CheckShape{1 + s % 3, 2 + (s / 3) % 2, 3}; }},
      {"descent_k2", 3, 1e-9, [](int s) { return CheckShape{1 + s % 3, 3, 3}; }},
      {"descent_k3", 3, 1e-9, [](int s) { return CheckShape{1 + s % 2, 5, 3}; }},
      {"descent_k4", 3, 1e-9, [](int) { return CheckShape{2, 7, 3}; }},
      {"ascent_k2", 2, 1e-9, [](int s) { return CheckShape{1 + s % 3, 2, 3}; }},
      {"ascent_k3", 3, 1e-9, [](int s) { return CheckShape{2 + s % 2, 3, 4}; }},
      {"bc1", 2, 1e-9, [](int s) { return CheckShape{1 + s % 3, 2, 3}; }},
      {"bc2", 3, 1e-9, [](int s) { return CheckShape{1 + s % 3, 2, 3}; }},
      {"bc3", 4, 1e-8, [](int s) { return CheckShape{2 + s % 2, 3, 4}; }},
      {"positivity", 1, 1e-9, [](int s) { return CheckShape{2 + s % 2, 2 + (s / 2) % 2, 2}; }},
      {"cocycle", 3, 1e-9, [](int s) { return CheckShape{2 + s % 2, 2, 3}; }},
  };
  return catalog;
}

inline const CheckInfo& check_info(const std::string& name) {
  for (const CheckInfo& c : check_catalog())
    if (c.name == name) return c;
  throw Error("unknown check '" + name + "'");
}

struct VerifyConfig {
  std::uint64_t seed = 42;
  int samples = 10;
  std::vector<std::string> checks;               // empty: all, in catalog order
  std::map<std::string, double> tolerances;      // overrides
  std::map<std::string, int> orders;             // overrides
  std::vector<int> ranks;                        // overrides, cycled by sample
  std::vector<int> dims;                         // overrides, cycled by sample
  int threads = 0;                               // 0: CHERN_THREADS or hardware

  std::vector<std::string> selected() const {
    if (!checks.empty()) return checks;
    std::vector<std::string> all;
    for (const CheckInfo& c : check_catalog()) all.push_back(c.name);
    return all;
  }
};

struct CheckRecord {
  std::string name;
  int sample = 0;
  CheckShape shape{};
  std::uint64_t metric_seed = 0;
  std::string digest;
  std::string worst;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double millis = 0.0;
};

struct Report {
  std::string version = kToolVersion;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;
  int passed = 0;
  int failed = 0;

  bool all_passed() const { return failed == 0; }
};

namespace detail {

inline std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t sample_seed(std::uint64_t seed, const std::string& check, int sample) {
  std::uint64_t h = fnv1a(check.data(), check.size());
  return splitmix64(splitmix64(seed ^ h) + static_cast<std::uint64_t>(sample));
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

// Digest of the metric jets: keys and coefficient bits in storage order.
inline std::string metric_digest(const Metric& m) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const Jet& j : m.matrix().entries()) {
    for (const Jet::Term& t : j.terms()) {
      h = fnv1a(&t.key, sizeof t.key, h);
      double re = t.value.real(), im = t.value.imag();
      h = fnv1a(&re, sizeof re, h);
      h = fnv1a(&im, sizeof im, h);
    }
  }
  return hex64(h);
}

// Explicit request, else hardware concurrency capped by CHERN_THREADS.
inline int thread_count(int requested) {
  if (requested > 0) return requested;
  int n = std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("CHERN_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return n;
}

struct CheckOutcome {
  double residual;
  std::string worst;
};

inline CheckOutcome report_outcome(const CheckReport& rep, double tol) {
  auto [v, name] = rep.worst(tol);
  return {v, name};
}

inline CheckOutcome run_check(const std::string& name, const Metric& m, std::uint64_t seed, double tol) {
  if (name == "cocycle") {
    JetMatrix g = random_gauge(seed + 1, m.rank(), m.dim(), m.order());
    CocycleResult res = cocycle_check(m, g);
    return report_outcome(res.report, tol);
  }
  ConnectionForms c = connection(m);
  if (name == "structural") return report_outcome(structural_identities(c), tol);
  if (name == "descent_k2") return report_outcome(descent_check(c, 2), tol);
  if (name == "descent_k3") return report_outcome(descent_check(c, 3), tol);
  if (name == "descent_k4") return report_outcome(descent_check(c, 4), tol);
  if (name == "ascent_k2") return report_outcome(ascent_check(c, 2), tol);
  if (name == "ascent_k3") return report_outcome(ascent_check(c, 3), tol);
  if (name == "bc1" || name == "bc2" || name == "bc3") {
    int k = name[2] - '0';
    return {bottchern_check(c, k).normalized(tol), "delbar del (k! bc_k) = Tr Theta^k"};
  }
  if (name == "positivity") {
    PositivityResult p = positivity_check(c);
    return {std::max(0.0, -p.min_eigenvalue), "min eigenvalue of sqrt(-1) w(1,1)"};
  }
  throw Error("unknown check '" + name + "'");
}

}  // namespace detail

// Validates names, tolerances and orders; throws on a bad configuration.
inline void validate(const VerifyConfig& cfg) {
  if (cfg.samples < 1) throw Error("samples must be >= 1");
  for (const auto& name : cfg.selected()) check_info(name);
  for (const auto& [name, tol] : cfg.tolerances) {
    check_info(name);
    if (!(tol > 0.0)) throw Error("tolerance for " + name + " must be > 0");
  }
  for (const auto& [name, order] : cfg.orders) {
    const CheckInfo& info = check_info(name);
    if (order < info.min_order) {
      throw InsufficientJetOrder("check " + name + " needs jet order >= " + std::to_string(info.min_order),
                                 info.min_order);
    }
    if (order > kMaxOrder) throw Error("jet order for " + name + " exceeds " + std::to_string(kMaxOrder));
  }
  for (int r : cfg.ranks)
    if (r < 1) throw Error("ranks must be >= 1");
  for (int n : cfg.dims)
    if (n < 1 || n > kMaxDim) throw Error("dims must be in 1..9");
}

inline Report run_verify(const VerifyConfig& cfg) {
  validate(cfg);
  std::vector<std::string> names = cfg.selected();
  Report report;
  report.seed = cfg.seed;
  for (const auto& name : names) {
    const CheckInfo& info = check_info(name);
    for (int s = 0; s < cfg.samples; ++s) {
      CheckRecord rec;
      rec.name = name;
      rec.sample = s;
      rec.shape = info.shape(s);
      if (!cfg.ranks.empty()) rec.shape.rank = cfg.ranks[s % cfg.ranks.size()];
      if (!cfg.dims.empty()) rec.shape.dim = cfg.dims[s % cfg.dims.size()];
      if (auto it = cfg.orders.find(name); it != cfg.orders.end()) rec.shape.order = it->second;
      auto tol = cfg.tolerances.find(name);
      rec.tolerance = tol != cfg.tolerances.end() ? tol->second : info.tolerance;
      rec.metric_seed = detail::sample_seed(cfg.seed, name, s);
      report.checks.push_back(std::move(rec));
    }
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::string> errors(report.checks.size());
  auto worker = [&]() {
    for (std::size_t i = next++; i < report.checks.size(); i = next++) {
      CheckRecord& rec = report.checks[i];
      auto t0 = std::chrono::steady_clock::now();
      try {
        Metric m = random_metric(rec.metric_seed, rec.shape.rank, rec.shape.dim, rec.shape.order);
        rec.digest = detail::metric_digest(m);
        detail::CheckOutcome out = detail::run_check(rec.name, m, rec.metric_seed, rec.tolerance);
        rec.residual = out.residual;
        rec.worst = out.worst;
        rec.pass = rec.residual <= rec.tolerance;
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
      rec.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  int nthreads = std::min<int>(detail::thread_count(cfg.threads), static_cast<int>(report.checks.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) {
      CheckRecord& rec = report.checks[i];
      rec.pass = false;
      rec.residual = std::numeric_limits<double>::infinity();
      rec.worst = "error: " + errors[i];
    }
  }
  for (const CheckRecord& rec : report.checks) (rec.pass ? report.passed : report.failed)++;
  return report;
}

namespace detail {

inline std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

}  // namespace detail

// Report as JSON.  With timing = false every millis field is written as 0,
// which makes two runs of the same configuration byte-identical.
inline std::string to_json(const Report& r, bool timing = true) {
  using detail::json_number;
  using detail::json_string;
  std::string out = "{\n";
  out += "  \"version\": " + json_string(r.version) + ",\n";
  out += "  \"seed\": " + std::to_string(r.seed) + ",\n";
  out += "  \"checks\": [";
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    const CheckRecord& c = r.checks[i];
    out += i ? ",\n    {" : "\n    {";
    out += "\"name\": " + json_string(c.name) + ", ";
    out += "\"params\": {\"sample\": " + std::to_string(c.sample) + ", \"rank\": " + std::to_string(c.shape.rank) +
           ", \"dim\": " + std::to_string(c.shape.dim) + ", \"order\": " + std::to_string(c.shape.order) +
           ", \"metric_seed\": " + std::to_string(c.metric_seed) + ", \"digest\": " + json_string(c.digest) +
           ", \"worst\": " + json_string(c.worst) + "}, ";
    out += "\"residual\": " + json_number(c.residual) + ", ";
    out += "\"tolerance\": " + json_number(c.tolerance) + ", ";
    out += std::string("\"pass\": ") + (c.pass ? "true" : "false") + ", ";
    out += "\"millis\": " + json_number(timing ? c.millis : 0.0) + "}";
  }
  out += "\n  ],\n";
  out += "  \"summary\": {\"passed\": " + std::to_string(r.passed) + ", \"failed\": " + std::to_string(r.failed) + "}\n";
  out += "}\n";
  return out;
}

}  // namespace chernforms

#endif  // CHERNFORMS_VERIFY_HPP
