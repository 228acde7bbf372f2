#include <algorithm>
#include <charconv>
#include <string>

#include "evenloop/errors.hpp"
#include "evenloop/graph.hpp"

namespace evenloop {

namespace {

constexpr std::pair<Family, std::string_view> kFamilyNames[] = {
    {Family::path, "path"},         {Family::cycle, "cycle"},     {Family::ladder, "ladder"},
    {Family::grid, "grid"},         {Family::torus, "torus"},     {Family::complete, "complete"},
    {Family::tree, "tree"},         {Family::cylinder, "cylinder"}, {Family::custom, "custom"},
};

void require_positive(int value, const char* what) {
  if (value <= 0) throw InputError(std::string(what) + ": size must be positive");
}

Graph tagged(int n, const std::vector<std::pair<VertexId, VertexId>>& edges, Family family) {
  return Graph(n, edges, family);
}

int parse_int(std::string_view text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw InputError("family spec: not an integer: '" + std::string(text) + "'");
  return value;
}

}  // namespace

std::string_view family_name(Family family) {
  for (const auto& [f, name] : kFamilyNames)
    if (f == family) return name;
  return "custom";
}

Family parse_family(std::string_view name) {
  for (const auto& [f, n] : kFamilyNames)
    if (n == name) return f;
  throw InputError("unknown family '" + std::string(name) + "'");
}

FamilySpec parse_family_spec(std::string_view text) {
  FamilySpec spec;
  if (text.starts_with("family:")) text.remove_prefix(7);
  if (text.starts_with("wired:")) {
    spec.wired = true;
    text.remove_prefix(6);
  }
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw InputError("family spec needs the form name:size");
  spec.family = parse_family(text.substr(0, colon));
  if (spec.family == Family::custom) throw InputError("family spec: 'custom' is not buildable");
  std::string_view sizes = text.substr(colon + 1);
  while (!sizes.empty()) {
    const auto x = sizes.find('x');
    spec.sizes.push_back(parse_int(sizes.substr(0, x)));
    if (x == std::string_view::npos) break;
    sizes.remove_prefix(x + 1);
  }
  if (spec.sizes.empty()) throw InputError("family spec: missing size");
  return spec;
}

std::string format_family_spec(const FamilySpec& spec) {
  std::string out = spec.wired ? "wired:" : "";
  out += family_name(spec.family);
  for (std::size_t i = 0; i < spec.sizes.size(); ++i) {
    out += i == 0 ? ":" : "x";
    out += std::to_string(spec.sizes[i]);
  }
  return out;
}

Graph path_graph(int n) {
  require_positive(n, "path");
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return tagged(n, edges, Family::path);
}

Graph cycle_graph(int n) {
  require_positive(n, "cycle");
  if (n < 2) throw InputError("cycle: needs at least 2 vertices");
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return tagged(n, edges, Family::cycle);
}

Graph ladder_graph(int n) {
  require_positive(n, "ladder");
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int i = 0; i < n; ++i) {
    edges.emplace_back(2 * i, 2 * i + 1);
    if (i + 1 < n) {
      edges.emplace_back(2 * i, 2 * i + 2);
      edges.emplace_back(2 * i + 1, 2 * i + 3);
    }
  }
  return tagged(2 * n, edges, Family::ladder);
}

Graph grid_graph(int rows, int cols) {
  require_positive(rows, "grid");
  require_positive(cols, "grid");
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const int v = i * cols + j;
      if (j + 1 < cols) edges.emplace_back(v, v + 1);
      if (i + 1 < rows) edges.emplace_back(v, v + cols);
    }
  return tagged(rows * cols, edges, Family::grid);
}

Graph torus_graph(int rows, int cols) {
  if (rows < 2 || cols < 2) throw InputError("torus: both sides must be at least 2");
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const int v = i * cols + j;
      edges.emplace_back(v, i * cols + (j + 1) % cols);
      edges.emplace_back(v, ((i + 1) % rows) * cols + j);
    }
  return tagged(rows * cols, edges, Family::torus);
}

Graph complete_graph(int n) {
  require_positive(n, "complete");
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return tagged(n, edges, Family::complete);
}

Graph binary_tree_graph(int depth) {
  if (depth < 0) throw InputError("tree: depth must be non-negative");
  const int n = (1 << (depth + 1)) - 1;
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back((v - 1) / 2, v);
  return tagged(n, edges, Family::tree);
}

Graph cylinder_graph(int n, int m) {
  require_positive(n, "cylinder");
  if (m < 2) throw InputError("cylinder: circumference must be at least 2");
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      const int v = i * m + j;
      edges.emplace_back(v, i * m + (j + 1) % m);
      if (i + 1 < n) edges.emplace_back(v, v + m);
    }
  return tagged(n * m, edges, Family::cylinder);
}

namespace {

int size_at(const FamilySpec& spec, std::size_t i, int fallback) {
  if (i < spec.sizes.size()) return spec.sizes[i];
  return fallback;
}

}  // namespace

Graph build_graph(const FamilySpec& spec) {
  if (spec.wired) return wired_family(spec);
  if (spec.sizes.empty()) throw InputError("build_graph: missing size");
  for (const int s : spec.sizes) require_positive(s, "build_graph");
  const int a = spec.sizes[0];
  switch (spec.family) {
    case Family::path: return path_graph(a);
    case Family::cycle: return cycle_graph(a);
    case Family::ladder: return ladder_graph(a);
    case Family::grid: return grid_graph(a, size_at(spec, 1, a));
    case Family::torus: return torus_graph(a, size_at(spec, 1, a));
    case Family::complete: return complete_graph(a);
    case Family::tree: return binary_tree_graph(a);
    case Family::cylinder: return cylinder_graph(a, size_at(spec, 1, 4));
    case Family::custom: break;
  }
  throw InputError("build_graph: unknown family");
}

Graph wired_family(const FamilySpec& spec) {
  if (spec.sizes.empty()) throw InputError("wired_family: missing size");
  for (const int s : spec.sizes) require_positive(s, "wired_family");
  const int a = spec.sizes[0];
  std::vector<VertexId> keep;
  Graph big;
  switch (spec.family) {
    case Family::path:
      big = path_graph(a + 2);
      for (int i = 1; i <= a; ++i) keep.push_back(i);
      break;
    case Family::cycle:
      big = cycle_graph(a + 1);
      for (int i = 0; i < a; ++i) keep.push_back(i);
      break;
    case Family::ladder:
      big = ladder_graph(a + 2);
      for (int i = 2; i < 2 * (a + 1); ++i) keep.push_back(i);
      break;
    case Family::grid: {
      const int b = size_at(spec, 1, a);
      big = grid_graph(a + 2, b + 2);
      for (int i = 1; i <= a; ++i)
        for (int j = 1; j <= b; ++j) keep.push_back(i * (b + 2) + j);
      break;
    }
    case Family::cylinder: {
      const int m = size_at(spec, 1, 4);
      big = cylinder_graph(a + 2, m);
      for (int v = m; v < (a + 1) * m; ++v) keep.push_back(v);
      break;
    }
    case Family::tree:
      big = binary_tree_graph(a + 1);
      for (int v = 0; v < (1 << (a + 1)) - 1; ++v) keep.push_back(v);
      break;
    case Family::complete:
      big = complete_graph(a + 1);
      for (int v = 0; v < a; ++v) keep.push_back(v);
      break;
    case Family::torus:
    case Family::custom: throw InputError("wired_family: family has no boundary to wire");
  }
  return wired_quotient(big, keep);
}

}  // namespace evenloop
