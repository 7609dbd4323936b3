#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "locohom/graph.hpp"

namespace locohom {

namespace detail {

// First c+1 vertices reached by BFS inside the first component of G - removed
// that has more than c vertices; empty if there is none.
inline VertexList oversized_witness(const Graph& g, const std::vector<bool>& removed, int c) {
  for (const auto& comp : connected_components(g, removed)) {
    if (static_cast<int>(comp.size()) <= c) continue;
    VertexList order{comp.front()};
    std::vector<bool> seen(static_cast<std::size_t>(g.order()), false);
    seen[static_cast<std::size_t>(comp.front())] = true;
    for (std::size_t head = 0; head < order.size() && static_cast<int>(order.size()) <= c; ++head) {
      for (Vertex w : g.neighbours(order[head])) {
        if (seen[static_cast<std::size_t>(w)] || removed[static_cast<std::size_t>(w)]) continue;
        seen[static_cast<std::size_t>(w)] = true;
        order.push_back(w);
        if (static_cast<int>(order.size()) == c + 1) break;
      }
    }
    order.resize(static_cast<std::size_t>(c + 1));
    return order;
  }
  return {};
}

inline bool branch_deletion(const Graph& g, std::vector<bool>& removed, int c, int budget, VertexList& chosen) {
  VertexList witness = oversized_witness(g, removed, c);
  if (witness.empty()) return true;
  if (budget == 0) return false;
  for (Vertex v : witness) {
    removed[static_cast<std::size_t>(v)] = true;
    chosen.push_back(v);
    if (branch_deletion(g, removed, c, budget - 1, chosen)) return true;
    chosen.pop_back();
    removed[static_cast<std::size_t>(v)] = false;
  }
  return false;
}

}  // namespace detail

/// A set D with |D| <= k such that every component of G - D has at most c
/// vertices, of minimum size among such sets; nullopt if none exists.
inline std::optional<VertexList> find_c_deletion_set(const Graph& g, int c, int k) {
  if (c < 1) throw PreconditionError("c-deletion sets need c >= 1");
  for (int size = 0; size <= k; ++size) {
    std::vector<bool> removed(static_cast<std::size_t>(g.order()), false);
    VertexList chosen;
    if (detail::branch_deletion(g, removed, c, size, chosen)) {
      std::sort(chosen.begin(), chosen.end());
      return chosen;
    }
  }
  return std::nullopt;
}

/// Deletion set for the subgraph induced by `vertices`, in original ids.
inline std::optional<VertexList> find_c_deletion_set_in(const Graph& g, const VertexList& vertices, int c, int k) {
  auto found = find_c_deletion_set(g.induced(vertices), c, k);
  if (!found) return std::nullopt;
  VertexList out;
  for (Vertex v : *found) out.push_back(vertices[static_cast<std::size_t>(v)]);
  return out;
}

inline int minimum_vertex_cover_size(const Graph& g) {
  for (int k = 0;; ++k) {
    if (find_c_deletion_set(g, 1, k)) return k;
  }
}

inline VertexList minimum_vertex_cover(const Graph& g) {
  for (int k = 0;; ++k) {
    if (auto d = find_c_deletion_set(g, 1, k)) return *d;
  }
}

inline bool is_c_deletion_set(const Graph& g, std::span<const Vertex> d, int c) {
  for (const auto& comp : components_without(g, d)) {
    if (static_cast<int>(comp.size()) > c) return false;
  }
  return true;
}

/// Every component of G - D has at most c vertices or a c-deletion set of
/// size at most k, and at most k components have more than c vertices.
inline bool is_extended_deletion_set(const Graph& g, std::span<const Vertex> d, int k, int c) {
  int large = 0;
  for (const auto& comp : components_without(g, d)) {
    if (static_cast<int>(comp.size()) <= c) continue;
    if (++large > k) return false;
    if (!find_c_deletion_set_in(g, comp, c, k)) return false;
  }
  return true;
}

/// D^m = vertices of degree at least m (a loop counts once).
inline VertexList high_degree_set(const Graph& g, int m) {
  VertexList out;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (g.degree(v) >= m) out.push_back(v);
  }
  return out;
}

struct FractureParams {
  int k = 0;
  int c = 1;
};

/// Smallest k + c (ties broken by smaller k) such that G has a c-deletion set
/// of size at most k. Always succeeds with k = 0, c = |V(G)| at worst.
inline FractureParams discover_fracture_params(const Graph& g) {
  const int n = std::max(1, g.order());
  for (int total = 1; total <= n + 1; ++total) {
    for (int k = 0; k < total; ++k) {
      int c = total - k;
      if (find_c_deletion_set(g, c, k)) return {k, c};
    }
  }
  return {0, n};
}

}  // namespace locohom
