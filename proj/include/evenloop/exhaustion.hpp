#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "evenloop/graph.hpp"

namespace evenloop {

enum class LabFamily { path, ladder, grid, tree, cylinder };

std::string_view lab_family_name(LabFamily f);
LabFamily parse_lab_family(std::string_view name);

// Nested truncations of an infinite graph. Edge ids and vertex origins are
// global coordinates, so G_n ⊂ G_{n+1} holds as edge-id sets and windows can
// be compared across n.
//
//   path      Z, G_n = [-n, n]
//   ladder    Z x {0,1}, rungs -n..n
//   grid      Z^2, G_n = [-n, n]^2
//   tree      rooted binary tree, depth <= n
//   cylinder  Z x Z_m, columns -n..n
//
// G_n^w glues everything outside G_n into Δ (through G_{n+1}, which already
// holds every edge leaving G_n).
class ExhaustionFamily {
 public:
  explicit ExhaustionFamily(LabFamily kind, int circumference = 4);

  LabFamily kind() const noexcept { return kind_; }
  Graph free_graph(int n) const;
  Graph wired_graph(int n) const;

  // Edge ids with both endpoints within graph distance k of the anchor
  // (the origin, or the root for trees), sorted.
  std::vector<int> window(int k) const;
  std::int64_t anchor_origin() const;

  // Ladder only: the two rail edges between rung i and rung i + 1.
  std::vector<int> rail_pair(int i) const;

 private:
  struct Universe {
    std::vector<std::int64_t> origins;
    std::vector<std::pair<int, int>> endpoints;  // indices into origins
    std::vector<int> ids;
  };
  Universe universe(int n) const;

  LabFamily kind_;
  int circumference_;
};

}  // namespace evenloop
