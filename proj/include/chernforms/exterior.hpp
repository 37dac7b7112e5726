#ifndef CHERNFORMS_EXTERIOR_HPP
#define CHERNFORMS_EXTERIOR_HPP

// (p,q)-forms with jet coefficients and matrices of such forms.
//
// A basis element is dz_I ^ dzbar_J with I, J strictly increasing subsets of
// {1..n}, always written holomorphic factors first.  Every sign in this file
// is the parity of the permutation that restores that canonical order.
// Matrix products are entrywise wedge products: (AB)_ij = sum_k A_ik ^ B_kj.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chernforms/jet.hpp"
#include "chernforms/monomial_table.hpp"

namespace chernforms {

// Bitmask of a strictly increasing index set; bit i-1 stands for index i.
using IndexSet = std::uint16_t;

struct FormDegree {
  int p = 0;
  int q = 0;
  friend bool operator==(const FormDegree&, const FormDegree&) = default;
};

namespace detail {

inline int popcount(IndexSet s) { return std::popcount(static_cast<unsigned>(s)); }

// Parity of merging sorted set `a` followed by sorted set `b` into sorted
// order: number of pairs (x in a, y in b) with x > y.
inline int merge_parity(IndexSet a, IndexSet b) {
  int inversions = 0;
  while (b != 0) {
    int y = std::countr_zero(static_cast<unsigned>(b));
    b &= static_cast<IndexSet>(b - 1);
    inversions += popcount(static_cast<IndexSet>(a >> (y + 1)));
  }
  return inversions & 1;
}

inline std::uint32_t basis_key(IndexSet hol, IndexSet anti) {
  return (static_cast<std::uint32_t>(hol) << 16) | anti;
}
inline IndexSet key_hol(std::uint32_t k) { return static_cast<IndexSet>(k >> 16); }
inline IndexSet key_anti(std::uint32_t k) { return static_cast<IndexSet>(k & 0xffffu); }

// Sign of (dz_I dzbar_J) ^ (dz_K dzbar_L) in canonical order, 0 if it vanishes.
inline int wedge_sign(std::uint32_t left, std::uint32_t right) {
  IndexSet i = key_hol(left), j = key_anti(left), k = key_hol(right), l = key_anti(right);
  if ((i & k) != 0 || (j & l) != 0) return 0;
  int parity = (popcount(j) * popcount(k)) & 1;
  parity ^= merge_parity(i, k);
  parity ^= merge_parity(j, l);
  return parity ? -1 : 1;
}

}  // namespace detail

class Form {
 public:
  using Key = std::uint32_t;
  struct Term {
    Key key;
    Jet coeff;
  };

  Form() = default;
  Form(int n, int order) : n_(n), order_(order) {}

  static Form zero(int n, int order) { return Form(n, order); }

  static Form scalar(const Jet& c) {
    Form f(c.dim(), c.order());
    if (!c.is_zero()) f.terms_.push_back({0, c});
    return f;
  }

  // c dz_I ^ dzbar_J; index lists are 1-based and need not be sorted.
  static Form monomial(const Jet& c, const std::vector<int>& hol, const std::vector<int>& anti) {
    IndexSet i = 0, j = 0;
    int sign = 1;
    auto push = [&](IndexSet& set, int idx) {
      if (idx < 1 || idx > c.dim()) throw IndexOutOfRange("form index out of range");
      IndexSet bit = static_cast<IndexSet>(1u << (idx - 1));
      if (set & bit) {
        sign = 0;
        return;
      }
      if (detail::popcount(static_cast<IndexSet>(set >> idx)) & 1) sign = -sign;
      set |= bit;
    };
    for (int idx : hol) push(i, idx);
    for (int idx : anti) push(j, idx);
    Form f(c.dim(), c.order());
    if (sign != 0 && !c.is_zero()) f.terms_.push_back({detail::basis_key(i, j), c * double(sign)});
    return f;
  }

  static Form dz(int n, int order, int i) {
    return monomial(Jet::constant(n, order, 1.0), {i}, {});
  }
  static Form dzbar(int n, int order, int i) {
    return monomial(Jet::constant(n, order, 1.0), {}, {i});
  }

  int dim() const { return n_; }
  int order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Coefficient of dz_I ^ dzbar_J (canonical order, 1-based sorted lists).
  Jet coeff(const std::vector<int>& hol, const std::vector<int>& anti) const {
    Key k = detail::basis_key(to_set(hol), to_set(anti));
    for (const Term& t : terms_) {
      if (t.key == k) return t.coeff;
    }
    return Jet(n_, order_);
  }

  std::vector<FormDegree> degrees() const {
    std::vector<FormDegree> out;
    for (const Term& t : terms_) {
      FormDegree d{detail::popcount(detail::key_hol(t.key)), detail::popcount(detail::key_anti(t.key))};
      if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
    }
    return out;
  }

  // Total degree if all terms share one, nullopt for mixed or zero forms.
  std::optional<int> homogeneous_degree() const {
    std::optional<int> deg;
    for (const Term& t : terms_) {
      int d = detail::popcount(detail::key_hol(t.key)) + detail::popcount(detail::key_anti(t.key));
      if (deg && *deg != d) return std::nullopt;
      deg = d;
    }
    return deg;
  }

  double max_abs() const {
    double m = 0.0;
    for (const Term& t : terms_) m = std::max(m, t.coeff.max_abs());
    return m;
  }

  Form truncated(int order) const {
    if (order >= order_) return *this;
    Form out(n_, order);
    for (const Term& t : terms_) {
      Jet c = t.coeff.truncated(order);
      if (!c.is_zero()) out.terms_.push_back({t.key, std::move(c)});
    }
    return out;
  }

  Form& operator+=(const Form& o) { return *this = combine(*this, o, 1.0); }
  Form& operator-=(const Form& o) { return *this = combine(*this, o, -1.0); }
  Form& operator*=(Complex s) {
    if (s == Complex{}) {
      terms_.clear();
      return *this;
    }
    for (Term& t : terms_) t.coeff *= s;
    return *this;
  }
  friend Form operator+(const Form& a, const Form& b) { return combine(a, b, 1.0); }
  friend Form operator-(const Form& a, const Form& b) { return combine(a, b, -1.0); }
  friend Form operator-(Form a) { return a *= -1.0; }
  friend Form operator*(Form a, Complex s) { return a *= s; }
  friend Form operator*(Complex s, Form a) { return a *= s; }
  friend Form operator*(Form a, double s) { return a *= Complex(s); }
  friend Form operator*(double s, Form a) { return a *= Complex(s); }

  // Jet with the dense monomial index of each term, for the product loops.
  // Terms above the table order are dropped.
  struct IndexedJet {
    std::span<const Jet::Term> terms;
    std::vector<int> idx;

    IndexedJet(const Jet& j, const detail::MonomialTable* table) {
      std::size_t count = j.terms().size();
      if (table) {
        idx.reserve(count);
        for (const Jet::Term& t : j.terms()) {
          int i = table->index(t.key);
          if (i < 0) break;
          idx.push_back(i);
        }
        count = idx.size();
      }
      terms = j.terms().first(count);
    }
  };

  // Accumulates jet coefficients per basis element.  When the monomial space
  // of (n, order) is small the coefficients are kept as dense arrays,
  // otherwise as raw term lists normalized once in finish().
  class Accumulator {
   public:
    Accumulator(int n, int order) : n_(n), order_(order), table_(detail::MonomialTable::get(n, order)) {}

    const detail::MonomialTable* table() const { return table_; }
    int order() const { return order_; }

    void add(Key k, const Jet& c, Complex scale) {
      if (table_) {
        Complex* acc = dense(k);
        for (const Jet::Term& t : c.terms()) {
          int i = table_->index(t.key);
          if (i < 0) break;
          acc[i] += t.value * scale;
        }
        return;
      }
      auto& b = sparse_[k];
      for (const Jet::Term& t : c.terms()) {
        if (detail::key_degree(t.key) > order_) break;
        b.push_back({t.key, t.value * scale});
      }
    }

    void add_product(Key k, const Jet& a, const Jet& b, Complex scale) {
      if (table_) {
        add_product(k, IndexedJet(a, table_), IndexedJet(b, table_), scale);
        return;
      }
      Jet::accumulate_product(a.terms(), b.terms(), scale, order_, sparse_[k]);
    }

    void add_product(Key k, const IndexedJet& a, const IndexedJet& b, Complex scale) {
      if (!table_) {
        Jet::accumulate_product(a.terms, b.terms, scale, order_, sparse_[k]);
        return;
      }
      Complex* acc = dense(k);
      for (std::size_t p = 0; p < a.idx.size(); ++p) {
        const int* row = table_->product_row(a.idx[p]);
        Complex sa = a.terms[p].value * scale;
        for (std::size_t q = 0; q < b.idx.size(); ++q) {
          int j = row[b.idx[q]];
          if (j < 0) break;
          acc[j] += sa * b.terms[q].value;
        }
      }
    }

    Form finish() {
      Form f(n_, order_);
      if (table_) {
        for (auto& [k, coeffs] : dense_) {
          std::vector<Jet::Term> terms;
          for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (std::abs(coeffs[i]) > Jet::kPruneThreshold) terms.push_back({table_->key(static_cast<int>(i)), coeffs[i]});
          }
          if (!terms.empty()) f.terms_.push_back({k, Jet(n_, order_, std::move(terms))});
        }
        return f;
      }
      for (auto& [k, raw] : sparse_) {
        Jet c(n_, order_, std::move(raw));
        if (!c.is_zero()) f.terms_.push_back({k, std::move(c)});
      }
      return f;
    }

   private:
    Complex* dense(Key k) {
      auto& v = dense_[k];
      if (v.empty()) v.assign(table_->size(), Complex{});
      return v.data();
    }

    int n_;
    int order_;
    const detail::MonomialTable* table_;
    std::map<Key, std::vector<Complex>> dense_;
    std::map<Key, std::vector<Jet::Term>> sparse_;
  };

  static IndexSet to_set(const std::vector<int>& idx) {
    IndexSet s = 0;
    for (int i : idx) {
      if (i < 1 || i > 16) throw IndexOutOfRange("form index out of range");
      s |= static_cast<IndexSet>(1u << (i - 1));
    }
    return s;
  }

 private:
  static Form combine(const Form& a, const Form& b, double sign) {
    if (a.n_ != b.n_) throw DimensionMismatch("forms of different dimension combined");
    int order = std::min(a.order_, b.order_);
    Form out(a.n_, order);
    auto ia = a.terms_.begin(), ea = a.terms_.end();
    auto ib = b.terms_.begin(), eb = b.terms_.end();
    while (ia != ea || ib != eb) {
      Term t;
      if (ib == eb || (ia != ea && ia->key < ib->key)) {
        t = {ia->key, ia->coeff.truncated(order)};
        ++ia;
      } else if (ia == ea || ib->key < ia->key) {
        t = {ib->key, ib->coeff.truncated(order) * Complex(sign)};
        ++ib;
      } else {
        t = {ia->key, sign > 0 ? ia->coeff + ib->coeff : ia->coeff - ib->coeff};
        ++ia;
        ++ib;
      }
      if (!t.coeff.is_zero()) out.terms_.push_back(std::move(t));
    }
    return out;
  }

  int n_ = 0;
  int order_ = 0;
  std::vector<Term> terms_;  // sorted by key
};

// Scalar wedge product.
inline Form wedge(const Form& a, const Form& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("wedge of forms of different dimension");
  Form::Accumulator acc(a.dim(), std::min(a.order(), b.order()));
  std::vector<Form::IndexedJet> ib;
  ib.reserve(b.terms().size());
  for (const auto& tb : b.terms()) ib.emplace_back(tb.coeff, acc.table());
  for (const auto& ta : a.terms()) {
    Form::IndexedJet ia(ta.coeff, acc.table());
    for (std::size_t q = 0; q < b.terms().size(); ++q) {
      int s = detail::wedge_sign(ta.key, b.terms()[q].key);
      if (s == 0) continue;
      acc.add_product(ta.key | b.terms()[q].key, ia, ib[q], Complex(s));
    }
  }
  return acc.finish();
}

namespace detail {

template <Coord Kind>
inline void accumulate_derivative(const Form& f, Form::Accumulator& acc) {
  int n = f.dim();
  for (const auto& t : f.terms()) {
    IndexSet hol = key_hol(t.key), anti = key_anti(t.key);
    for (int i = 1; i <= n; ++i) {
      IndexSet bit = static_cast<IndexSet>(1u << (i - 1));
      int parity;
      std::uint32_t key;
      if constexpr (Kind == Coord::holomorphic) {
        if (hol & bit) continue;
        parity = popcount(static_cast<IndexSet>(hol & (bit - 1))) & 1;
        key = basis_key(static_cast<IndexSet>(hol | bit), anti);
      } else {
        if (anti & bit) continue;
        parity = (popcount(hol) + popcount(static_cast<IndexSet>(anti & (bit - 1)))) & 1;
        key = basis_key(hol, static_cast<IndexSet>(anti | bit));
      }
      Jet d = derive(t.coeff, i, Kind);
      acc.add(key, d, parity ? -1.0 : 1.0);
    }
  }
}

template <Coord Kind>
inline Form derivative(const Form& f) {
  if (f.order() < 1) throw InsufficientJetOrder("exterior derivative of an order-0 form");
  Form::Accumulator acc(f.dim(), f.order() - 1);
  accumulate_derivative<Kind>(f, acc);
  return acc.finish();
}

}  // namespace detail

inline Form del(const Form& f) { return detail::derivative<Coord::holomorphic>(f); }
inline Form delbar(const Form& f) { return detail::derivative<Coord::antiholomorphic>(f); }
inline Form d(const Form& f) { return del(f) + delbar(f); }

inline Form extract_degree(const Form& f, int p, int q) {
  Form::Accumulator acc(f.dim(), f.order());
  for (const auto& t : f.terms()) {
    if (detail::popcount(detail::key_hol(t.key)) == p && detail::popcount(detail::key_anti(t.key)) == q) {
      acc.add(t.key, t.coeff, 1.0);
    }
  }
  return acc.finish();
}

// Part of f of total degree `deg`.
inline Form extract_total_degree(const Form& f, int deg) {
  Form::Accumulator acc(f.dim(), f.order());
  for (const auto& t : f.terms()) {
    if (detail::popcount(detail::key_hol(t.key)) + detail::popcount(detail::key_anti(t.key)) == deg) {
      acc.add(t.key, t.coeff, 1.0);
    }
  }
  return acc.finish();
}

// Complex conjugate form: conj(c dz_I ^ dzbar_J) = (-1)^{pq} conj(c) dz_J ^ dzbar_I.
inline Form conj(const Form& f) {
  Form::Accumulator acc(f.dim(), f.order());
  for (const auto& t : f.terms()) {
    IndexSet hol = detail::key_hol(t.key), anti = detail::key_anti(t.key);
    int pq = detail::popcount(hol) * detail::popcount(anti);
    acc.add(detail::basis_key(anti, hol), conj(t.coeff), (pq & 1) ? -1.0 : 1.0);
  }
  return acc.finish();
}

// r x c matrix of forms.
class MatrixForm {
 public:
  MatrixForm() = default;
  MatrixForm(int rows, int cols, int n, int order)
      : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows) * cols, Form(n, order)) {}

  static MatrixForm zero(int r, int n, int order) { return MatrixForm(r, r, n, order); }

  static MatrixForm identity(int r, int n, int order) {
    MatrixForm m(r, r, n, order);
    for (int i = 0; i < r; ++i) m(i, i) = Form::scalar(Jet::constant(n, order, 1.0));
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int dim() const { return entries_.empty() ? 0 : entries_.front().dim(); }

  int order() const {
    int o = kMaxOrder;
    for (const Form& f : entries_) o = std::min(o, f.order());
    return o;
  }

  Form& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Form& operator()(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
  }

  double max_abs() const {
    double m = 0.0;
    for (const Form& f : entries_) m = std::max(m, f.max_abs());
    return m;
  }

  std::optional<int> homogeneous_degree() const {
    std::optional<int> deg;
    for (const Form& f : entries_) {
      if (f.is_zero()) continue;
      auto d = f.homogeneous_degree();
      if (!d || (deg && *deg != *d)) return std::nullopt;
      deg = d;
    }
    return deg;
  }

  MatrixForm& operator+=(const MatrixForm& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  MatrixForm& operator-=(const MatrixForm& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  MatrixForm& operator*=(Complex s) {
    for (Form& f : entries_) f *= s;
    return *this;
  }
  friend MatrixForm operator+(MatrixForm a, const MatrixForm& b) { return a += b; }
  friend MatrixForm operator-(MatrixForm a, const MatrixForm& b) { return a -= b; }
  friend MatrixForm operator-(MatrixForm a) { return a *= -1.0; }
  friend MatrixForm operator*(MatrixForm a, Complex s) { return a *= s; }
  friend MatrixForm operator*(Complex s, MatrixForm a) { return a *= s; }
  friend MatrixForm operator*(MatrixForm a, double s) { return a *= Complex(s); }
  friend MatrixForm operator*(double s, MatrixForm a) { return a *= Complex(s); }

  template <class F>
  MatrixForm map(F&& fn) const {
    MatrixForm out;
    out.rows_ = rows_;
    out.cols_ = cols_;
    out.entries_.reserve(entries_.size());
    for (const Form& f : entries_) out.entries_.push_back(fn(f));
    return out;
  }

 private:
  void check_same_shape(const MatrixForm& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix form shapes differ");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Form> entries_;
};

namespace detail {
// Per entry, per term: indexed coefficient jets.
inline std::vector<std::vector<Form::IndexedJet>> index_entries(const MatrixForm& m, const MonomialTable* table) {
  std::vector<std::vector<Form::IndexedJet>> out(static_cast<std::size_t>(m.rows()) * m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      auto& v = out[static_cast<std::size_t>(i) * m.cols() + j];
      for (const auto& t : m(i, j).terms()) v.emplace_back(t.coeff, table);
    }
  }
  return out;
}
}  // namespace detail

// Matrix product with entrywise wedge.
inline MatrixForm wedge(const MatrixForm& a, const MatrixForm& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix form product: inner sizes differ");
  if (a.rows() > 0 && b.cols() > 0 && a.dim() != b.dim()) {
    throw DimensionMismatch("matrix form product: dimensions differ");
  }
  int order = std::min(a.order(), b.order());
  MatrixForm out(a.rows(), b.cols(), a.dim(), order);
  const detail::MonomialTable* table = detail::MonomialTable::get(a.dim(), order);
  auto ia = detail::index_entries(a, table);
  auto ib = detail::index_entries(b, table);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) {
      Form::Accumulator acc(a.dim(), order);
      for (int k = 0; k < a.cols(); ++k) {
        const Form& fa = a(i, k);
        const Form& fb = b(k, j);
        const auto& xa = ia[i * a.cols() + k];
        const auto& xb = ib[k * b.cols() + j];
        for (std::size_t p = 0; p < fa.terms().size(); ++p) {
          for (std::size_t q = 0; q < fb.terms().size(); ++q) {
            int s = detail::wedge_sign(fa.terms()[p].key, fb.terms()[q].key);
            if (s == 0) continue;
            acc.add_product(fa.terms()[p].key | fb.terms()[q].key, xa[p], xb[q], Complex(s));
          }
        }
      }
      out(i, j) = acc.finish();
    }
  }
  return out;
}

inline MatrixForm operator*(const MatrixForm& a, const MatrixForm& b) { return wedge(a, b); }

inline MatrixForm power(const MatrixForm& a, int k) {
  if (k < 0) throw Error("negative matrix form power");
  if (k == 0) return MatrixForm::identity(a.rows(), a.dim(), a.order());
  MatrixForm out = a;
  for (int i = 1; i < k; ++i) out = out * a;
  return out;
}

inline MatrixForm del(const MatrixForm& a) { return a.map([](const Form& f) { return del(f); }); }
inline MatrixForm delbar(const MatrixForm& a) { return a.map([](const Form& f) { return delbar(f); }); }
inline MatrixForm d(const MatrixForm& a) { return a.map([](const Form& f) { return d(f); }); }
inline MatrixForm conj(const MatrixForm& a) { return a.map([](const Form& f) { return conj(f); }); }

// Entrywise conjugate, transposed.
inline MatrixForm conj_transpose(const MatrixForm& a) {
  MatrixForm out(a.cols(), a.rows(), a.dim(), a.order());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(j, i) = conj(a(i, j));
  return out;
}

inline Form trace(const MatrixForm& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("trace of a non-square matrix form");
  Form out(a.dim(), a.order());
  for (int i = 0; i < a.rows(); ++i) out += a(i, i);
  return out;
}

// Tr(a b) without forming the off-diagonal entries of the product.
inline Form trace_product(const MatrixForm& a, const MatrixForm& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) throw DimensionMismatch("trace_product: shapes do not match");
  int order = std::min(a.order(), b.order());
  Form::Accumulator acc(a.dim(), order);
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const Form& fa = a(i, k);
      const Form& fb = b(k, i);
      std::vector<Form::IndexedJet> xb;
      xb.reserve(fb.terms().size());
      for (const auto& t : fb.terms()) xb.emplace_back(t.coeff, acc.table());
      for (const auto& ta : fa.terms()) {
        Form::IndexedJet xa(ta.coeff, acc.table());
        for (std::size_t q = 0; q < fb.terms().size(); ++q) {
          int s = detail::wedge_sign(ta.key, fb.terms()[q].key);
          if (s == 0) continue;
          acc.add_product(ta.key | fb.terms()[q].key, xa, xb[q], Complex(s));
        }
      }
    }
  }
  return acc.finish();
}

inline MatrixForm extract_total_degree(const MatrixForm& a, int deg) {
  return a.map([deg](const Form& f) { return extract_total_degree(f, deg); });
}

// Graded commutator AB - (-1)^{|A||B|} BA, extended bilinearly over the
// even and odd parts of mixed-degree arguments.
inline MatrixForm commutator(const MatrixForm& a, const MatrixForm& b) {
  auto parity_part = [](const MatrixForm& m, int parity) {
    return m.map([parity](const Form& f) {
      Form::Accumulator acc(f.dim(), f.order());
      for (const auto& t : f.terms()) {
        int deg = detail::popcount(detail::key_hol(t.key)) + detail::popcount(detail::key_anti(t.key));
        if ((deg & 1) == parity) acc.add(t.key, t.coeff, 1.0);
      }
      return acc.finish();
    });
  };
  MatrixForm out = a * b - b * a;
  // Only the odd-odd part picks up the extra sign: add back 2 * B_odd A_odd.
  MatrixForm a_odd = parity_part(a, 1), b_odd = parity_part(b, 1);
  out += 2.0 * (b_odd * a_odd);
  return out;
}

// Matrix of 0-forms from a matrix of jets given row-major.
inline MatrixForm scalar_matrix(int rows, int cols, const std::vector<Jet>& entries) {
  if (static_cast<int>(entries.size()) != rows * cols) throw DimensionMismatch("entry count");
  if (entries.empty()) return MatrixForm(rows, cols, 0, 0);
  MatrixForm m(rows, cols, entries.front().dim(), entries.front().order());
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Form::scalar(entries[static_cast<std::size_t>(i) * cols + j]);
  return m;
}

}  // namespace chernforms

#endif  // CHERNFORMS_EXTERIOR_HPP
