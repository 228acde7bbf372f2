#pragma once

#include <numeric>
#include <vector>

namespace evenloop {

class UnionFind {
 public:
  explicit UnionFind(int n = 0) { reset(n); }

  void reset(int n) {
    parent_.resize(static_cast<std::size_t>(n));
    std::iota(parent_.begin(), parent_.end(), 0);
    rank_.assign(static_cast<std::size_t>(n), 0);
    sets_ = n;
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns false when a and b were already joined.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    --sets_;
    return true;
  }

  bool same(int a, int b) { return find(a) == find(b); }
  int sets() const { return sets_; }

 private:
  std::vector<int> parent_;
  std::vector<unsigned char> rank_;
  int sets_ = 0;
};

}  // namespace evenloop
