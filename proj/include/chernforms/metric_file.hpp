#ifndef CHERNFORMS_METRIC_FILE_HPP
#define CHERNFORMS_METRIC_FILE_HPP

// Line-oriented metric files:
//
//   # comment
//   dim = 2
//   rank = 2
//   order = 3
//   base = (0, 0.5+1i)
//   h[1][1] = 1
//   h[1][2] = conj(z1)
//   h[2][2] = z1*conj(z1) + exp(z2*conj(z2))
//   g[1][1] = exp(z1)          # optional gauge matrix
//
// Only i <= j entries of h are given; missing off-diagonal entries are 0.

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "chernforms/cholesky.hpp"
#include "chernforms/mdsl.hpp"

namespace chernforms {

struct MetricSpec {
  int n = 0;
  int r = 0;
  int order = 3;
  std::vector<Complex> base;
  std::map<std::pair<int, int>, mdsl::ExprPtr> entries;  // 1-based, i <= j
  std::map<std::pair<int, int>, mdsl::ExprPtr> gauge;    // 1-based

  bool has_gauge() const { return !gauge.empty(); }
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline int parse_positive(const std::string& v, const char* key, int line, int col) {
  std::size_t used = 0;
  int x = 0;
  try {
    x = std::stoi(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || x < 0) throw mdsl::ParseError(std::string(key) + " must be a nonnegative integer", line, col);
  return x;
}

// Splits "(a, b, c)" at top-level commas; returns pieces with their columns.
inline std::vector<std::pair<std::string, int>> split_tuple(const std::string& v, int line, int col) {
  if (v.size() < 2 || v.front() != '(' || v.back() != ')') {
    throw mdsl::ParseError("base must be written as (c1, ..., cn)", line, col);
  }
  std::vector<std::pair<std::string, int>> out;
  int depth = 0;
  std::size_t start = 1;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] == '(') ++depth;
    if (v[i] == ')') --depth;
    if (v[i] == ',' && depth == 0) {
      out.push_back({v.substr(start, i - start), col + static_cast<int>(start)});
      start = i + 1;
    }
  }
  out.push_back({v.substr(start, v.size() - 1 - start), col + static_cast<int>(start)});
  return out;
}

}  // namespace detail

inline MetricSpec parse_metric_spec(const std::string& text) {
  MetricSpec spec;
  bool have_dim = false, have_rank = false;
  struct Pending {
    char which;
    int i, j;
    std::string expr;
    int line, col;
  };
  std::vector<Pending> pending;
  std::vector<std::pair<std::string, int>> base_items;
  int base_line = 0;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    if (detail::trim(line).empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      int col = static_cast<int>(line.find_first_not_of(" \t")) + 1;
      throw mdsl::ParseError("expected 'key = value'", line_no, col);
    }
    std::string key = detail::trim(line.substr(0, eq));
    std::string rest = line.substr(eq + 1);
    std::size_t lead = rest.find_first_not_of(" \t");
    int value_col = static_cast<int>(eq + 2 + (lead == std::string::npos ? 0 : lead));
    std::string value = detail::trim(rest);
    int key_col = static_cast<int>(line.find_first_not_of(" \t")) + 1;
    if (value.empty()) throw mdsl::ParseError("missing value for '" + key + "'", line_no, value_col);

    if (key == "dim") {
      spec.n = detail::parse_positive(value, "dim", line_no, value_col);
      have_dim = true;
    } else if (key == "rank") {
      spec.r = detail::parse_positive(value, "rank", line_no, value_col);
      have_rank = true;
    } else if (key == "order") {
      spec.order = detail::parse_positive(value, "order", line_no, value_col);
    } else if (key == "base") {
      base_items = detail::split_tuple(value, line_no, value_col);
      base_line = line_no;
    } else if ((key[0] == 'h' || key[0] == 'g') && key.size() > 1 && key[1] == '[') {
      int i = 0, j = 0;
      char tail = 0;
      if (std::sscanf(key.c_str() + 1, "[%d][%d]%c", &i, &j, &tail) != 2) {
        throw mdsl::ParseError("malformed entry name '" + key + "'", line_no, key_col);
      }
      pending.push_back({key[0], i, j, rest.substr(lead), line_no, value_col});
    } else {
      throw mdsl::ParseError("unknown key '" + key + "'", line_no, key_col);
    }
  }
  if (!have_dim) throw mdsl::ParseError("missing 'dim'", line_no + 1, 1);
  if (!have_rank) throw mdsl::ParseError("missing 'rank'", line_no + 1, 1);
  if (spec.n < 1 || spec.n > kMaxDim) throw mdsl::ParseError("dim must be in 1..9", 1, 1);
  if (spec.r < 1) throw mdsl::ParseError("rank must be >= 1", 1, 1);
  if (spec.order > kMaxOrder) throw mdsl::ParseError("order must be <= 7", 1, 1);

  if (base_items.empty()) {
    spec.base.assign(spec.n, Complex{});
  } else {
    if (static_cast<int>(base_items.size()) != spec.n) {
      throw mdsl::ParseError("base has " + std::to_string(base_items.size()) + " components, dim is " +
                                 std::to_string(spec.n), base_line, base_items.front().second);
    }
    for (const auto& [s, col] : base_items) {
      mdsl::ExprPtr e = mdsl::parse(s, -1, base_line, col);
      if (e->kind != mdsl::Kind::literal) throw mdsl::ParseError("base components must be numbers", base_line, col);
      spec.base.push_back(e->value);
    }
  }

  for (const Pending& p : pending) {
    if (p.i < 1 || p.j < 1 || p.i > spec.r || p.j > spec.r) {
      throw mdsl::ParseError("entry index outside 1.." + std::to_string(spec.r), p.line, 1);
    }
    if (p.which == 'h' && p.i > p.j) {
      throw mdsl::ParseError("only entries h[i][j] with i <= j may be given", p.line, 1);
    }
    auto& target = p.which == 'h' ? spec.entries : spec.gauge;
    if (target.count({p.i, p.j})) throw mdsl::ParseError("duplicate entry", p.line, 1);
    target[{p.i, p.j}] = mdsl::parse(p.expr, spec.n, p.line, p.col);
  }
  for (int i = 1; i <= spec.r; ++i) {
    if (!spec.entries.count({i, i})) {
      throw mdsl::ParseError("missing diagonal entry h[" + std::to_string(i) + "][" + std::to_string(i) + "]",
                             line_no + 1, 1);
    }
  }
  return spec;
}

inline MetricSpec read_metric_spec(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open metric file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_metric_spec(ss.str());
}

// Relative tolerance for "the diagonal constant term is real".
inline constexpr double kRealDiagonalTolerance = 1e-12;

inline Metric load_metric(const MetricSpec& spec) {
  JetMatrix h(spec.r, spec.r, spec.n, spec.order);
  for (const auto& [ij, e] : spec.entries) {
    h(ij.first - 1, ij.second - 1) = mdsl::eval_expr(*e, spec.base, spec.order);
  }
  for (int i = 0; i < spec.r; ++i) {
    Complex c = h(i, i).constant_term();
    if (std::abs(c.imag()) > kRealDiagonalTolerance * std::max(1.0, std::abs(c))) {
      throw DomainError("diagonal entry h[" + std::to_string(i + 1) + "][" + std::to_string(i + 1) +
                        "] has a non-real value at the base point");
    }
  }
  return Metric::from_upper(h);
}

// Gauge matrix of the file, validated as holomorphic upper-triangular.
inline std::optional<JetMatrix> load_gauge(const MetricSpec& spec) {
  if (!spec.has_gauge()) return std::nullopt;
  JetMatrix g(spec.r, spec.r, spec.n, spec.order);
  for (const auto& [ij, e] : spec.gauge) g(ij.first - 1, ij.second - 1) = mdsl::eval_expr(*e, spec.base, spec.order);
  check_gauge(g, spec.r);
  return g;
}

}  // namespace chernforms

#endif  // CHERNFORMS_METRIC_FILE_HPP
