#ifndef CHERNFORMS_RESIDUAL_HPP
#define CHERNFORMS_RESIDUAL_HPP

#include <algorithm>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "chernforms/exterior.hpp"

namespace chernforms {

// Max-coefficient residual of an identity lhs = rhs.
//
// `scale` is the largest coefficient magnitude among the forms entering the
// identity.  Above kScaleFloor the residual is relative; below it the
// identity is judged absolutely against kAbsoluteThreshold, since degree
// buckets can vanish legitimately.
struct Residual {
  static constexpr double kScaleFloor = 1e-6;
  static constexpr double kAbsoluteThreshold = 1e-12;

  double abs = 0.0;
  double scale = 0.0;

  bool relative() const { return scale >= kScaleFloor; }

  // Residual expressed against `tol`: relative value when relative(),
  // otherwise abs rescaled so that (normalized <= tol) <=> (abs <= 1e-12).
  double normalized(double tol) const {
    return relative() ? abs / scale : abs * (tol / kAbsoluteThreshold);
  }
  bool passes(double tol) const { return normalized(tol) <= tol; }
};

inline Residual compare(const Form& lhs, const Form& rhs, std::initializer_list<double> extra_scales = {}) {
  int order = std::min(lhs.order(), rhs.order());
  Form l = lhs.truncated(order), r = rhs.truncated(order);
  Residual res;
  res.abs = (l - r).max_abs();
  res.scale = std::max(l.max_abs(), r.max_abs());
  for (double s : extra_scales) res.scale = std::max(res.scale, s);
  return res;
}

inline Residual compare(const MatrixForm& lhs, const MatrixForm& rhs,
                        std::initializer_list<double> extra_scales = {}) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) throw DimensionMismatch("compared matrix shapes differ");
  Residual res;
  for (int i = 0; i < lhs.rows(); ++i) {
    for (int j = 0; j < lhs.cols(); ++j) {
      Residual e = compare(lhs(i, j), rhs(i, j));
      res.abs = std::max(res.abs, e.abs);
      res.scale = std::max(res.scale, e.scale);
    }
  }
  for (double s : extra_scales) res.scale = std::max(res.scale, s);
  return res;
}

struct NamedResidual {
  std::string name;
  Residual residual;
};

// Ordered list of identity residuals produced by one check.
struct CheckReport {
  std::vector<NamedResidual> items;

  void add(std::string name, Residual r) { items.push_back({std::move(name), r}); }
  void append(const CheckReport& other) { items.insert(items.end(), other.items.begin(), other.items.end()); }

  // Largest normalized residual against `tol`, and the item it came from.
  std::pair<double, std::string> worst(double tol) const {
    std::pair<double, std::string> w{0.0, ""};
    for (const auto& it : items) {
      double v = it.residual.normalized(tol);
      if (v >= w.first) w = {v, it.name};
    }
    return w;
  }
  bool passes(double tol) const {
    return std::all_of(items.begin(), items.end(), [tol](const NamedResidual& it) { return it.residual.passes(tol); });
  }
};

// Norm of the part of f outside bucket (p, q), relative to f.
inline Residual off_degree(const Form& f, int p, int q) {
  Residual r;
  r.abs = (f - extract_degree(f, p, q)).max_abs();
  r.scale = f.max_abs();
  return r;
}

}  // namespace chernforms

#endif  // CHERNFORMS_RESIDUAL_HPP
