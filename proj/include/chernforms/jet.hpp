#ifndef CHERNFORMS_JET_HPP
#define CHERNFORMS_JET_HPP

// Truncated Taylor jets of smooth functions of (z, z-bar) at a base point.
//
// A Jet of dimension n and order R stores the coefficients c_{alpha,beta} of
//
//     f(z) = sum c_{alpha,beta} (z - z0)^alpha (conj(z) - conj(z0))^beta,
//            |alpha| + |beta| <= R,
//
// so that the Wirtinger derivatives d/dz_i and d/dzbar_i act as formal
// derivatives of the truncated series.  Every arithmetic result carries the
// minimum order of its operands; a derivative lowers the order by one.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chernforms/errors.hpp"

namespace chernforms {

using Complex = std::complex<double>;

inline constexpr int kMaxDim = 9;
inline constexpr int kMaxOrder = 7;

enum class Coord { holomorphic, antiholomorphic };

// Exponents of z (alpha) and z-bar (beta).
struct MultiIndex {
  std::vector<int> alpha;
  std::vector<int> beta;

  int degree() const {
    int d = 0;
    for (int e : alpha) d += e;
    for (int e : beta) d += e;
    return d;
  }
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

namespace detail {

// Packed monomial: 3 bits per variable (2n <= 18 variables), total degree in
// bits 56..61.  Degree-major key order, so a sorted term list is graded.
using PackedKey = std::uint64_t;
inline constexpr int kBitsPerVar = 3;
inline constexpr int kDegreeShift = 56;
inline constexpr PackedKey kFieldMask = (PackedKey{1} << kBitsPerVar) - 1;

inline int key_degree(PackedKey k) { return static_cast<int>(k >> kDegreeShift); }

inline int key_exponent(PackedKey k, int var) {
  return static_cast<int>((k >> (kBitsPerVar * var)) & kFieldMask);
}

inline PackedKey var_unit(int var) {
  return (PackedKey{1} << (kBitsPerVar * var)) + (PackedKey{1} << kDegreeShift);
}

// Slot of z_i (i 0-based) or zbar_i among the 2n jet variables.
inline int var_slot(int n, int i, Coord kind) {
  return kind == Coord::holomorphic ? i : n + i;
}

inline PackedKey swap_conjugate(PackedKey k, int n) {
  PackedKey out = k & (PackedKey{0x3f} << kDegreeShift);
  for (int i = 0; i < n; ++i) {
    PackedKey hol = (k >> (kBitsPerVar * i)) & kFieldMask;
    PackedKey anti = (k >> (kBitsPerVar * (n + i))) & kFieldMask;
    out |= anti << (kBitsPerVar * i);
    out |= hol << (kBitsPerVar * (n + i));
  }
  return out;
}

}  // namespace detail

class Jet {
 public:
  using Key = detail::PackedKey;
  struct Term {
    Key key;
    Complex value;
  };

  Jet() = default;

  // Zero jet.
  Jet(int n, int order) : n_(n), order_(order) { check_shape(n, order); }

  // Takes arbitrary (unsorted, possibly duplicated) terms and normalizes them.
  Jet(int n, int order, std::vector<Term> terms) : n_(n), order_(order), terms_(std::move(terms)) {
    check_shape(n, order);
    normalize();
  }

  static Jet constant(int n, int order, Complex c) {
    Jet j(n, order);
    if (std::abs(c) > kPruneThreshold) j.terms_.push_back({0, c});
    return j;
  }

  // Coordinate function z_i (or z-bar_i), i is 1-based.
  static Jet variable(int i, Coord kind, Complex base_value, int n, int order) {
    if (i < 1 || i > n) {
      throw IndexOutOfRange("jet variable index " + std::to_string(i) + " outside 1.." +
                            std::to_string(n));
    }
    if (order < 1) throw InsufficientJetOrder("coordinate jet needs order >= 1", 1);
    std::vector<Term> t;
    t.push_back({0, base_value});
    t.push_back({detail::var_unit(detail::var_slot(n, i - 1, kind)), Complex(1.0)});
    return Jet(n, order, std::move(t));
  }

  static Jet from_multi_index(int n, int order, const MultiIndex& m, Complex c) {
    return Jet(n, order, {{pack(n, m), c}});
  }

  int dim() const { return n_; }
  int order() const { return order_; }
  std::span<const Term> terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Complex constant_term() const {
    return (!terms_.empty() && terms_.front().key == 0) ? terms_.front().value : Complex{};
  }

  Complex coeff(const MultiIndex& m) const {
    if (m.degree() > order_) return {};
    Key k = pack(n_, m);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const Term& t, Key key) { return t.key < key; });
    return (it != terms_.end() && it->key == k) ? it->value : Complex{};
  }

  MultiIndex multi_index(Key k) const {
    MultiIndex m{std::vector<int>(n_), std::vector<int>(n_)};
    for (int i = 0; i < n_; ++i) {
      m.alpha[i] = detail::key_exponent(k, i);
      m.beta[i] = detail::key_exponent(k, n_ + i);
    }
    return m;
  }

  static Key pack(int n, const MultiIndex& m) {
    if (static_cast<int>(m.alpha.size()) != n || static_cast<int>(m.beta.size()) != n) {
      throw DimensionMismatch("multi-index length does not match jet dimension");
    }
    Key k = 0;
    for (int i = 0; i < n; ++i) {
      for (int e = 0; e < m.alpha[i]; ++e) k += detail::var_unit(i);
      for (int e = 0; e < m.beta[i]; ++e) k += detail::var_unit(n + i);
    }
    return k;
  }

  Jet truncated(int order) const {
    if (order >= order_) return *this;
    Jet out(n_, order < 0 ? 0 : order);
    for (const Term& t : terms_) {
      if (detail::key_degree(t.key) > out.order_) break;
      out.terms_.push_back(t);
    }
    return out;
  }

  double max_abs() const {
    double m = 0.0;
    for (const Term& t : terms_) m = std::max(m, std::abs(t.value));
    return m;
  }

  Jet& operator+=(const Jet& o) { return *this = combine(*this, o, 1.0); }
  Jet& operator-=(const Jet& o) { return *this = combine(*this, o, -1.0); }
  Jet& operator*=(Complex s) {
    if (s == Complex{}) {
      terms_.clear();
      return *this;
    }
    for (Term& t : terms_) t.value *= s;
    return *this;
  }

  friend Jet operator+(const Jet& a, const Jet& b) { return combine(a, b, 1.0); }
  friend Jet operator-(const Jet& a, const Jet& b) { return combine(a, b, -1.0); }
  friend Jet operator-(Jet a) { return a *= -1.0; }
  friend Jet operator*(Jet a, Complex s) { return a *= s; }
  friend Jet operator*(Complex s, Jet a) { return a *= s; }
  friend Jet operator*(const Jet& a, const Jet& b) {
    int order = std::min(a.order_, b.order_);
    Jet out(require_same_dim(a, b), order);
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    accumulate_product(a.terms_, b.terms_, Complex(1.0), order, out.terms_);
    out.normalize();
    return out;
  }

  // Appends the truncated product a*b*scale to `out` without normalizing.
  // Both term lists must be sorted (degree-major).
  static void accumulate_product(std::span<const Term> a, std::span<const Term> b, Complex scale,
                                 int order, std::vector<Term>& out) {
    for (const Term& ta : a) {
      int da = detail::key_degree(ta.key);
      if (da > order) break;
      Complex sa = ta.value * scale;
      for (const Term& tb : b) {
        if (da + detail::key_degree(tb.key) > order) break;
        out.push_back({ta.key + tb.key, sa * tb.value});
      }
    }
  }

  // Sorts by key, merges duplicates, drops exact zeros and over-order terms.
  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& x, const Term& y) { return x.key < y.key; });
    std::size_t w = 0;
    for (std::size_t i = 0; i < terms_.size();) {
      Key k = terms_[i].key;
      Complex s = terms_[i].value;
      std::size_t j = i + 1;
      for (; j < terms_.size() && terms_[j].key == k; ++j) s += terms_[j].value;
      if (detail::key_degree(k) <= order_ && std::abs(s) > kPruneThreshold) terms_[w++] = {k, s};
      i = j;
    }
    terms_.resize(w);
  }

  static constexpr double kPruneThreshold = 1e-300;

 private:
  static void check_shape(int n, int order) {
    if (n < 0 || n > kMaxDim) {
      throw DimensionMismatch("jet dimension " + std::to_string(n) + " outside 0.." +
                              std::to_string(kMaxDim));
    }
    if (order < 0 || order > kMaxOrder) {
      throw InsufficientJetOrder("jet order " + std::to_string(order) + " outside 0.." +
                                 std::to_string(kMaxOrder));
    }
  }

  static int require_same_dim(const Jet& a, const Jet& b) {
    if (a.n_ != b.n_) {
      throw DimensionMismatch("jets of dimension " + std::to_string(a.n_) + " and " +
                              std::to_string(b.n_) + " combined");
    }
    return a.n_;
  }

  static Jet combine(const Jet& a, const Jet& b, double sign) {
    int order = std::min(a.order_, b.order_);
    Jet out(require_same_dim(a, b), order);
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto ia = a.terms_.begin(), ea = a.terms_.end();
    auto ib = b.terms_.begin(), eb = b.terms_.end();
    while (ia != ea || ib != eb) {
      Term t;
      if (ib == eb || (ia != ea && ia->key < ib->key)) {
        t = *ia++;
      } else if (ia == ea || ib->key < ia->key) {
        t = {ib->key, sign * ib->value};
        ++ib;
      } else {
        t = {ia->key, ia->value + sign * ib->value};
        ++ia;
        ++ib;
      }
      if (detail::key_degree(t.key) > order) continue;
      if (std::abs(t.value) > kPruneThreshold) out.terms_.push_back(t);
    }
    return out;
  }

  friend Jet derive(const Jet& a, int i, Coord kind);
  friend Jet conj(const Jet& a);

  int n_ = 0;
  int order_ = 0;
  std::vector<Term> terms_;
};

// Formal partial d/dz_i or d/dzbar_i (i is 1-based); the order drops by one.
inline Jet derive(const Jet& a, int i, Coord kind) {
  if (i < 1 || i > a.n_) {
    throw IndexOutOfRange("derivative index " + std::to_string(i) + " outside 1.." +
                          std::to_string(a.n_));
  }
  if (a.order_ < 1) {
    throw InsufficientJetOrder("derivative of an order-0 jet");
  }
  int slot = detail::var_slot(a.n_, i - 1, kind);
  Jet out(a.n_, a.order_ - 1);
  Jet::Key unit = detail::var_unit(slot);
  for (const Jet::Term& t : a.terms_) {
    int e = detail::key_exponent(t.key, slot);
    if (e == 0) continue;
    out.terms_.push_back({t.key - unit, t.value * static_cast<double>(e)});
  }
  out.normalize();
  return out;
}

// Conjugate germ: conj(f) has coefficient conj(c_{beta,alpha}) at (alpha,beta).
inline Jet conj(const Jet& a) {
  Jet out(a.n_, a.order_);
  out.terms_.reserve(a.terms_.size());
  for (const Jet::Term& t : a.terms_) {
    out.terms_.push_back({detail::swap_conjugate(t.key, a.n_), std::conj(t.value)});
  }
  out.normalize();
  return out;
}

namespace detail {

// sum_{m=0}^{order} coeffs[m] * u^m for a jet u with zero constant term.
inline Jet compose_series(const Jet& u, std::span<const Complex> coeffs) {
  Jet result = Jet::constant(u.dim(), u.order(), coeffs[0]);
  Jet power = Jet::constant(u.dim(), u.order(), 1.0);
  for (std::size_t m = 1; m < coeffs.size() && static_cast<int>(m) <= u.order(); ++m) {
    power = power * u;
    if (power.is_zero()) break;
    result += power * coeffs[m];
  }
  return result;
}

inline Jet nilpotent_part(const Jet& a) { return a - Jet::constant(a.dim(), a.order(), a.constant_term()); }

}  // namespace detail

// Multiplicative inverse via the Neumann series in the nilpotent part.
inline Jet inverse(const Jet& a) {
  Complex a0 = a.constant_term();
  if (std::abs(a0) == 0.0) throw SingularJet("inverse of a jet with vanishing constant term");
  Jet u = detail::nilpotent_part(a) * (1.0 / a0);
  std::vector<Complex> c(a.order() + 1);
  for (std::size_t m = 0; m < c.size(); ++m) c[m] = (m % 2 == 0 ? 1.0 : -1.0) / a0;
  return detail::compose_series(u, c);
}

// Principal-branch logarithm; the constant term must have positive real part.
inline Jet log(const Jet& a) {
  Complex a0 = a.constant_term();
  if (!(a0.real() > 0.0)) {
    throw DomainError("log of a jet whose constant term has nonpositive real part");
  }
  Jet u = detail::nilpotent_part(a) * (1.0 / a0);
  std::vector<Complex> c(a.order() + 1);
  c[0] = std::log(a0);
  for (std::size_t m = 1; m < c.size(); ++m) c[m] = (m % 2 == 1 ? 1.0 : -1.0) / static_cast<double>(m);
  return detail::compose_series(u, c);
}

inline Jet exp(const Jet& a) {
  Complex e0 = std::exp(a.constant_term());
  Jet u = detail::nilpotent_part(a);
  std::vector<Complex> c(a.order() + 1);
  double fact = 1.0;
  for (std::size_t m = 0; m < c.size(); ++m) {
    if (m > 0) fact *= static_cast<double>(m);
    c[m] = e0 / fact;
  }
  return detail::compose_series(u, c);
}

inline Jet pow(const Jet& a, unsigned exponent) {
  Jet result = Jet::constant(a.dim(), a.order(), 1.0);
  Jet base = a;
  while (exponent != 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent != 0) base = base * base;
  }
  return result;
}

// Value of the truncated Taylor polynomial at displacement dz = z - z0.
inline Complex evaluate(const Jet& a, std::span<const Complex> dz) {
  if (static_cast<int>(dz.size()) != a.dim()) throw DimensionMismatch("displacement length");
  Complex s{};
  for (const Jet::Term& t : a.terms()) {
    Complex v = t.value;
    for (int i = 0; i < a.dim(); ++i) {
      int ea = detail::key_exponent(t.key, i);
      int eb = detail::key_exponent(t.key, a.dim() + i);
      for (int e = 0; e < ea; ++e) v *= dz[i];
      for (int e = 0; e < eb; ++e) v *= std::conj(dz[i]);
    }
    s += v;
  }
  return s;
}

// Max coefficient magnitude of a - b, compared at the common order.
inline double max_abs_difference(const Jet& a, const Jet& b) {
  return (a - b).max_abs();
}

}  // namespace chernforms

#endif  // CHERNFORMS_JET_HPP
