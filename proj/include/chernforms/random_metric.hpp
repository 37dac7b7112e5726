#ifndef CHERNFORMS_RANDOM_METRIC_HPP
#define CHERNFORMS_RANDOM_METRIC_HPP

// Seeded random metrics h = L* L + I, L a matrix of polynomials in (z, zbar)
// around the base point 0.  Only std::mt19937_64 raw output is used, so the
// draws are identical on every platform.

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "chernforms/cholesky.hpp"

namespace chernforms {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform in the closed unit disk, by rejection.
  Complex unit_disk() {
    for (;;) {
      double x = 2.0 * uniform() - 1.0, y = 2.0 * uniform() - 1.0;
      if (x * x + y * y <= 1.0) return {x, y};
    }
  }

  std::uint64_t next() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

// Sum of c * z^alpha * zbar^beta.
struct Polynomial {
  struct Term {
    Complex c;
    MultiIndex m;
  };
  int n = 0;
  std::vector<Term> terms;

  Jet to_jet(int order) const {
    Jet j(n, order);
    for (const Term& t : terms) {
      if (t.m.degree() <= order) j += Jet::from_multi_index(n, order, t.m, t.c);
    }
    return j;
  }

  Complex operator()(const std::vector<Complex>& z) const {
    Complex s{};
    for (const Term& t : terms) {
      Complex v = t.c;
      for (int i = 0; i < n; ++i) {
        for (int e = 0; e < t.m.alpha[i]; ++e) v *= z[i];
        for (int e = 0; e < t.m.beta[i]; ++e) v *= std::conj(z[i]);
      }
      s += v;
    }
    return s;
  }
};

namespace detail {
// All exponent vectors on 2n variables with total degree <= d, in
// lexicographic order of (alpha, beta).
inline void enumerate_multi_indices(int n, int d, std::vector<MultiIndex>& out) {
  std::vector<int> e(2 * n, 0);
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == 2 * n) {
      MultiIndex m;
      m.alpha.assign(e.begin(), e.begin() + n);
      m.beta.assign(e.begin() + n, e.end());
      out.push_back(std::move(m));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[var] = k;
      self(self, var + 1, left - k);
    }
    e[var] = 0;
  };
  rec(rec, 0, d);
}
}  // namespace detail

struct RandomMetric {
  int rank = 0;
  int dim = 0;
  std::vector<Polynomial> l;  // row-major r x r

  // Jet of h at the base point 0.
  Metric metric(int order) const {
    int r = rank;
    JetMatrix lj(r, r, dim, order);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) lj(i, j) = l[i * r + j].to_jet(order);
    JetMatrix h = adjoint(lj) * lj + JetMatrix::identity(r, dim, order);
    return Metric::from_upper(h);
  }

  // Pointwise value of h at z.
  Eigen::MatrixXcd value(const std::vector<Complex>& z) const {
    Eigen::MatrixXcd lv(rank, rank);
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) lv(i, j) = l[i * rank + j](z);
    return lv.adjoint() * lv + Eigen::MatrixXcd::Identity(rank, rank);
  }
};

inline RandomMetric random_metric_data(std::uint64_t seed, int r, int n, int max_degree = 2) {
  if (r < 1 || n < 1 || n > kMaxDim) throw DimensionMismatch("random metric needs r >= 1 and 1 <= n <= 9");
  Rng rng(seed);
  std::vector<MultiIndex> monomials;
  detail::enumerate_multi_indices(n, max_degree, monomials);
  RandomMetric out;
  out.rank = r;
  out.dim = n;
  out.l.resize(static_cast<std::size_t>(r) * r);
  for (Polynomial& p : out.l) {
    p.n = n;
    for (const MultiIndex& m : monomials) p.terms.push_back({rng.unit_disk(), m});
  }
  return out;
}

inline Metric random_metric(std::uint64_t seed, int r, int n, int order, int max_degree = 2) {
  return random_metric_data(seed, r, n, max_degree).metric(order);
}

// Holomorphic upper-triangular gauge g with diagonal exp(p_i(z)) and
// polynomial entries above it (degree <= 2, coefficients in the unit disk).
// With unipotent = true the diagonal is 1.
inline JetMatrix random_gauge(std::uint64_t seed, int r, int n, int order, bool unipotent = false) {
  Rng rng(seed);
  std::vector<MultiIndex> all;
  detail::enumerate_multi_indices(n, 2, all);
  std::vector<MultiIndex> hol;
  for (const MultiIndex& m : all) {
    bool pure = true;
    for (int e : m.beta) pure = pure && e == 0;
    if (pure) hol.push_back(m);
  }
  auto draw = [&]() {
    Polynomial p;
    p.n = n;
    for (const MultiIndex& m : hol) p.terms.push_back({rng.unit_disk(), m});
    return p.to_jet(order);
  };
  JetMatrix g(r, r, n, order);
  for (int i = 0; i < r; ++i) {
    for (int j = i; j < r; ++j) {
      if (i == j) g(i, i) = unipotent ? Jet::constant(n, order, 1.0) : exp(draw());
      else g(i, j) = draw();
    }
  }
  return g;
}

}  // namespace chernforms

#endif  // CHERNFORMS_RANDOM_METRIC_HPP
