#pragma once

#include <map>
#include <utility>
#include <vector>

namespace apg {

// Disjoint sets over arbitrary ordered keys; union by size, path halving.
template <typename T>
class UnionFind {
 public:
  void add(const T& x) {
    if (index_.contains(x)) return;
    index_.emplace(x, parent_.size());
    parent_.push_back(parent_.size());
    size_.push_back(1);
    items_.push_back(x);
  }

  const T& find(const T& x) { return items_[root(index_of(x))]; }

  bool unite(const T& a, const T& b) {
    std::size_t ra = root(index_of(a));
    std::size_t rb = root(index_of(b));
    if (ra == rb) return false;
    if (size_[ra] < size_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    size_[ra] += size_[rb];
    return true;
  }

  bool same(const T& a, const T& b) { return root(index_of(a)) == root(index_of(b)); }

 private:
  std::size_t index_of(const T& x) {
    auto it = index_.find(x);
    if (it != index_.end()) return it->second;
    add(x);
    return index_.at(x);
  }

  std::size_t root(std::size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  std::map<T, std::size_t> index_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::vector<T> items_;
};

}  // namespace apg
