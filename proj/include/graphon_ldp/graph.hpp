#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace gldp {

struct Edge {
  int a;
  int b;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// A simple labeled graph H: the pattern whose density is constrained.
// Vertices are 0-based internally; the file format is 1-based.
class FiniteGraph {
 public:
  // Throws ValidationError on loops, duplicates, out-of-range endpoints, or
  // when `declared_degree` is set and some vertex has a different degree.
  FiniteGraph(int vertex_count, std::vector<Edge> edges,
              std::optional<int> declared_degree = std::nullopt);

  int vertex_count() const noexcept { return vertex_count_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<int>& degrees() const noexcept { return degrees_; }
  bool adjacent(int a, int b) const;

  // Common degree when every vertex has the same degree.
  std::optional<int> regular_degree() const;
  int component_count() const;
  bool is_bipartite() const;

  // s_k = number of k-subsets of V(H) spanning no edge, k = 0..v.
  std::vector<std::uint64_t> independent_set_counts() const;

  static FiniteGraph single_edge();
  static FiniteGraph path(int edges);
  static FiniteGraph cycle(int length);
  static FiniteGraph complete(int vertices);
  static FiniteGraph complete_bipartite(int left, int right);
  static FiniteGraph hypercube(int dimension);

  // "edge", "triangle", "c4"/"cycle4", "k4", "k33", "cube", "path2", ...
  static FiniteGraph named(std::string_view name);

 private:
  int vertex_count_;
  std::vector<Edge> edges_;
  std::vector<int> degrees_;
  std::vector<std::uint64_t> adjacency_;  // bit rows, v <= 64
};

// d-regular check used by the operations whose theory needs regularity.
int require_regular(const FiniteGraph& graph);

}  // namespace gldp
