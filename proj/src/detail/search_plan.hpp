#pragma once

#include <algorithm>
#include <vector>

#include "graphon_ldp/graph.hpp"

namespace gldp::detail {

// Vertex order for the labeling search: each next vertex has as many
// already-placed neighbours as possible, so zero blocks prune early.
struct SearchPlan {
  std::vector<int> order;
  std::vector<std::vector<int>> back;  // back[k]: earlier positions adjacent to position k
};

inline SearchPlan make_plan(const FiniteGraph& H) {
  const int v = H.vertex_count();
  SearchPlan plan;
  std::vector<bool> placed(static_cast<std::size_t>(v), false);
  std::vector<int> position(static_cast<std::size_t>(v), -1);
  for (int k = 0; k < v; ++k) {
    int best = -1, best_links = -1, best_degree = -1;
    for (int u = 0; u < v; ++u) {
      if (placed[u]) continue;
      int links = 0;
      for (int w = 0; w < v; ++w)
        if (placed[w] && H.adjacent(u, w)) ++links;
      int deg = H.degrees()[u];
      if (links > best_links || (links == best_links && deg > best_degree)) {
        best = u;
        best_links = links;
        best_degree = deg;
      }
    }
    placed[best] = true;
    position[best] = k;
    plan.order.push_back(best);
    std::vector<int> earlier;
    for (int w = 0; w < v; ++w)
      if (w != best && placed[w] && H.adjacent(best, w)) earlier.push_back(position[w]);
    std::sort(earlier.begin(), earlier.end());
    plan.back.push_back(std::move(earlier));
  }
  return plan;
}

}  // namespace gldp::detail
