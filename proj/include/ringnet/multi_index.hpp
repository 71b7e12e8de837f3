#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace ringnet {

/// Lattice point in N^d: how many times each circle has been traversed.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t dim) : entries_(dim, 0) {}
  explicit MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int e : entries_)
      if (e < 0) throw std::invalid_argument("MultiIndex: negative entry");
  }

  std::size_t dim() const { return entries_.size(); }
  int operator[](std::size_t k) const { return entries_[k]; }
  const std::vector<int>& entries() const { return entries_; }

  long l1() const {
    long s = 0;
    for (int e : entries_) s += e;
    return s;
  }

  MultiIndex plus_unit(std::size_t k) const {
    MultiIndex r = *this;
    ++r.entries_[k];
    return r;
  }

  MultiIndex plus_units(std::size_t k, int count) const {
    MultiIndex r = *this;
    r.entries_[k] += count;
    if (r.entries_[k] < 0) throw std::invalid_argument("MultiIndex: negative entry");
    return r;
  }

  /// Returns n - 1_k; caller must ensure entry k is positive.
  MultiIndex minus_unit(std::size_t k) const {
    if (entries_[k] < 1) throw std::invalid_argument("MultiIndex: entry already zero");
    MultiIndex r = *this;
    --r.entries_[k];
    return r;
  }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.entries_ == b.entries_;
  }

  /// Lexicographic order, used as a deterministic tie-break.
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
    return a.entries_ < b.entries_;
  }

 private:
  std::vector<int> entries_;
};

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& n) const {
    std::uint64_t h = 1469598103934665603ull;
    for (int e : n.entries()) {
      h ^= static_cast<std::uint64_t>(e) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace ringnet
