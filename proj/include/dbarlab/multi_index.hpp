#pragma once

#include <algorithm>
#include <compare>
#include <string>
#include <vector>

#include "dbarlab/error.hpp"

namespace dbarlab {

/// Strictly increasing tuple of 1-based indices; labels the component
/// dz̄_J of a (0,q)-form.
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::initializer_list<int> idx) : MultiIndex(std::vector<int>(idx)) {}
  explicit MultiIndex(std::vector<int> idx) : idx_(std::move(idx)) {
    for (std::size_t i = 0; i < idx_.size(); ++i) {
      if (idx_[i] < 1) throw InputError("MultiIndex entries are 1-based");
      if (i > 0 && idx_[i] <= idx_[i - 1])
        throw InputError("MultiIndex must be strictly increasing");
    }
  }

  std::size_t size() const noexcept { return idx_.size(); }
  bool empty() const noexcept { return idx_.empty(); }
  int operator[](std::size_t i) const { return idx_[i]; }
  auto begin() const noexcept { return idx_.begin(); }
  auto end() const noexcept { return idx_.end(); }
  bool contains(int k) const { return std::binary_search(idx_.begin(), idx_.end(), k); }

  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < idx_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(idx_[i]);
    }
    return s + ")";
  }

 private:
  std::vector<int> idx_;
};

/// All increasing multi-indices of length q over {1..n}, lexicographic.
inline std::vector<MultiIndex> multi_indices(int n, int q) {
  if (n < 1 || q < 0 || q > n) throw InputError("multi_indices: need 0 <= q <= n, n >= 1");
  std::vector<MultiIndex> out;
  std::vector<int> cur(q);
  for (int i = 0; i < q; ++i) cur[i] = i + 1;
  while (true) {
    out.emplace_back(cur);
    int i = q - 1;
    while (i >= 0 && cur[i] == n - q + i + 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < q; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

/// Position of J in multi_indices(n, J.size()).
inline std::size_t multi_index_rank(int n, const MultiIndex& J) {
  // combinatorial number system over the lexicographic order
  auto binom = [](int a, int b) -> std::size_t {
    if (b < 0 || a < b) return 0;
    std::size_t r = 1;
    for (int i = 1; i <= b; ++i) r = r * static_cast<std::size_t>(a - b + i) / static_cast<std::size_t>(i);
    return r;
  };
  const int q = static_cast<int>(J.size());
  std::size_t rank = 0;
  int prev = 0;
  for (int i = 0; i < q; ++i) {
    for (int v = prev + 1; v < J[i]; ++v) rank += binom(n - v, q - i - 1);
    prev = J[i];
  }
  return rank;
}

inline std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

struct WedgeResult {
  int sign = 0;  // 0 when k already occurs in J
  MultiIndex index;
};

/// dz̄_k ∧ dz̄_J = sign · dz̄_{J'} with J' the sorted insertion of k.
inline WedgeResult wedge_insert(int n, int k, const MultiIndex& J) {
  if (k < 1 || k > n) throw InputError("wedge_insert: index " + std::to_string(k) + " out of range 1.." + std::to_string(n));
  if (J.contains(k)) return {};
  std::vector<int> idx(J.begin(), J.end());
  auto pos = std::lower_bound(idx.begin(), idx.end(), k);
  const auto before = pos - idx.begin();
  idx.insert(pos, k);
  return {before % 2 == 0 ? 1 : -1, MultiIndex(std::move(idx))};
}

}  // namespace dbarlab
