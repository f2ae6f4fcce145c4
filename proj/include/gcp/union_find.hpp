#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace gcp {

// Disjoint sets over [0, n) with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1), largest_(n > 0 ? 1 : 0) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }

  void reset() {
    std::iota(parent_.begin(), parent_.end(), 0u);
    std::fill(size_.begin(), size_.end(), 1u);
    largest_ = parent_.empty() ? 0 : 1;
  }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    if (size_[a] > largest_) largest_ = size_[a];
    return true;
  }

  std::uint32_t component_size(std::uint32_t x) { return size_[find(x)]; }
  std::uint32_t largest() const { return largest_; }
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::uint32_t largest_;
};

}  // namespace gcp
