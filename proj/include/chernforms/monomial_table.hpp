#ifndef CHERNFORMS_MONOMIAL_TABLE_HPP
#define CHERNFORMS_MONOMIAL_TABLE_HPP

// Dense numbering of the monomials of a jet space, with a precomputed
// truncated multiplication table.  Used by form products to accumulate jet
// coefficients into flat arrays.

#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chernforms/jet.hpp"

namespace chernforms::detail {

class MonomialTable {
 public:
  // Tables with more monomials than this are not built (the product table is
  // quadratic in the count).
  static constexpr std::size_t kMaxMonomials = 1200;

  MonomialTable(int n, int order) : n_(n), order_(order) {
    std::vector<int> e(2 * n, 0);
    auto rec = [&](auto&& self, int var, int left, PackedKey key) -> void {
      if (var == 2 * n) {
        keys_.push_back(key);
        return;
      }
      for (int k = 0; k <= left; ++k) self(self, var + 1, left - k, key + k * var_unit(var));
    };
    rec(rec, 0, order, 0);
    std::sort(keys_.begin(), keys_.end());
    for (std::size_t i = 0; i < keys_.size(); ++i) index_.emplace(keys_[i], static_cast<int>(i));
    std::size_t m = keys_.size();
    product_.assign(m * m, -1);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (key_degree(keys_[i]) + key_degree(keys_[j]) <= order) {
          product_[i * m + j] = index_.at(keys_[i] + keys_[j]);
        }
      }
    }
  }

  int dim() const { return n_; }
  int order() const { return order_; }
  std::size_t size() const { return keys_.size(); }
  PackedKey key(int i) const { return keys_[i]; }

  // -1 when the key is above the table order.
  int index(PackedKey k) const {
    auto it = index_.find(k);
    return it == index_.end() ? -1 : it->second;
  }

  // Index of the product monomial, -1 when it exceeds the order.
  int product(int i, int j) const { return product_[static_cast<std::size_t>(i) * keys_.size() + j]; }
  const int* product_row(int i) const { return product_.data() + static_cast<std::size_t>(i) * keys_.size(); }

  static std::size_t count(int n, int order) {
    // binomial(2n + order, order)
    double c = 1.0;
    for (int k = 1; k <= order; ++k) c = c * (2 * n + k) / k;
    return static_cast<std::size_t>(c + 0.5);
  }

  // Shared table for (n, order), or nullptr when it would be too large.
  static const MonomialTable* get(int n, int order) {
    if (count(n, order) > kMaxMonomials) return nullptr;
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<MonomialTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{n, order}];
    if (!slot) slot = std::make_unique<MonomialTable>(n, order);
    return slot.get();
  }

 private:
  int n_;
  int order_;
  std::vector<PackedKey> keys_;
  std::unordered_map<PackedKey, int> index_;
  std::vector<int> product_;
};

}  // namespace chernforms::detail

#endif  // CHERNFORMS_MONOMIAL_TABLE_HPP
