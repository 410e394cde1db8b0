#include "graphon_ldp/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "graphon_ldp/errors.hpp"

namespace gldp {

FiniteGraph::FiniteGraph(int vertex_count, std::vector<Edge> edges,
                         std::optional<int> declared_degree)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ < 1) throw ValidationError("graph needs at least one vertex");
  if (vertex_count_ > 64) throw CapacityError("pattern graphs are limited to 64 vertices");
  adjacency_.assign(static_cast<std::size_t>(vertex_count_), 0);
  degrees_.assign(static_cast<std::size_t>(vertex_count_), 0);
  for (auto& e : edges_) {
    if (e.a < 0 || e.b < 0 || e.a >= vertex_count_ || e.b >= vertex_count_)
      throw ValidationError("edge endpoint out of range");
    if (e.a == e.b) throw ValidationError("loop at vertex " + std::to_string(e.a + 1));
    if (e.a > e.b) std::swap(e.a, e.b);
    if (adjacency_[e.a] >> e.b & 1u)
      throw ValidationError("duplicate edge " + std::to_string(e.a + 1) + " " +
                            std::to_string(e.b + 1));
    adjacency_[e.a] |= std::uint64_t{1} << e.b;
    adjacency_[e.b] |= std::uint64_t{1} << e.a;
    ++degrees_[e.a];
    ++degrees_[e.b];
  }
  if (declared_degree) {
    for (int v = 0; v < vertex_count_; ++v)
      if (degrees_[v] != *declared_degree)
        throw ValidationError("vertex " + std::to_string(v + 1) + " has degree " +
                              std::to_string(degrees_[v]) + ", declared " +
                              std::to_string(*declared_degree));
  }
}

bool FiniteGraph::adjacent(int a, int b) const {
  return (adjacency_.at(static_cast<std::size_t>(a)) >> b) & 1u;
}

std::optional<int> FiniteGraph::regular_degree() const {
  if (std::adjacent_find(degrees_.begin(), degrees_.end(), std::not_equal_to<>()) !=
      degrees_.end())
    return std::nullopt;
  return degrees_.front();
}

int FiniteGraph::component_count() const {
  std::vector<int> parent(static_cast<std::size_t>(vertex_count_));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = vertex_count_;
  for (const auto& e : edges_) {
    int ra = find(e.a), rb = find(e.b);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components;
}

bool FiniteGraph::is_bipartite() const {
  std::vector<int> side(static_cast<std::size_t>(vertex_count_), -1);
  for (int start = 0; start < vertex_count_; ++start) {
    if (side[start] >= 0) continue;
    side[start] = 0;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w = 0; w < vertex_count_; ++w) {
        if (!adjacent(u, w)) continue;
        if (side[w] < 0) {
          side[w] = 1 - side[u];
          stack.push_back(w);
        } else if (side[w] == side[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

std::vector<std::uint64_t> FiniteGraph::independent_set_counts() const {
  if (vertex_count_ > 30) throw CapacityError("independent-set enumeration limited to v <= 30");
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(vertex_count_) + 1, 0);
  const std::uint64_t subsets = std::uint64_t{1} << vertex_count_;
  for (std::uint64_t s = 0; s < subsets; ++s) {
    bool independent = true;
    for (const auto& e : edges_) {
      if ((s >> e.a & 1u) && (s >> e.b & 1u)) {
        independent = false;
        break;
      }
    }
    if (independent) ++counts[static_cast<std::size_t>(std::popcount(s))];
  }
  return counts;
}

FiniteGraph FiniteGraph::single_edge() { return FiniteGraph(2, {{0, 1}}); }

FiniteGraph FiniteGraph::path(int edges) {
  if (edges < 1) throw DomainError("path needs at least one edge");
  std::vector<Edge> es;
  for (int i = 0; i < edges; ++i) es.push_back({i, i + 1});
  return FiniteGraph(edges + 1, std::move(es));
}

FiniteGraph FiniteGraph::cycle(int length) {
  if (length < 3) throw DomainError("cycle length must be at least 3");
  std::vector<Edge> es;
  for (int i = 0; i < length; ++i) es.push_back({i, (i + 1) % length});
  return FiniteGraph(length, std::move(es));
}

FiniteGraph FiniteGraph::complete(int vertices) {
  std::vector<Edge> es;
  for (int i = 0; i < vertices; ++i)
    for (int j = i + 1; j < vertices; ++j) es.push_back({i, j});
  return FiniteGraph(vertices, std::move(es));
}

FiniteGraph FiniteGraph::complete_bipartite(int left, int right) {
  std::vector<Edge> es;
  for (int i = 0; i < left; ++i)
    for (int j = 0; j < right; ++j) es.push_back({i, left + j});
  return FiniteGraph(left + right, std::move(es));
}

FiniteGraph FiniteGraph::hypercube(int dimension) {
  if (dimension < 1 || dimension > 6) throw DomainError("hypercube dimension must be in 1..6");
  const int v = 1 << dimension;
  std::vector<Edge> es;
  for (int x = 0; x < v; ++x)
    for (int bit = 0; bit < dimension; ++bit) {
      int y = x ^ (1 << bit);
      if (x < y) es.push_back({x, y});
    }
  return FiniteGraph(v, std::move(es));
}

FiniteGraph FiniteGraph::named(std::string_view name) {
  std::string n(name);
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
  if (n == "edge" || n == "k2") return single_edge();
  if (n == "triangle" || n == "k3" || n == "c3") return cycle(3);
  if (n == "cube" || n == "q3") return hypercube(3);
  if (n == "k33") return complete_bipartite(3, 3);
  if (n.rfind("path", 0) == 0 && n.size() > 4) return path(std::stoi(n.substr(4)));
  if (n.rfind("cycle", 0) == 0 && n.size() > 5) return cycle(std::stoi(n.substr(5)));
  if (n.size() > 1 && n[0] == 'c' && std::isdigit(static_cast<unsigned char>(n[1])))
    return cycle(std::stoi(n.substr(1)));
  if (n.size() > 1 && n[0] == 'k' && std::isdigit(static_cast<unsigned char>(n[1])))
    return complete(std::stoi(n.substr(1)));
  throw ValidationError("unknown pattern name '" + n + "'");
}

int require_regular(const FiniteGraph& graph) {
  auto d = graph.regular_degree();
  if (!d || *d < 1) throw DomainError("pattern graph must be d-regular with d >= 1");
  return *d;
}

}  // namespace gldp
