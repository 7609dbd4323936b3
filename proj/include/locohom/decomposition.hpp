#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "locohom/deletion.hpp"
#include "locohom/graph.hpp"

namespace locohom {

struct TreeDecomposition {
  std::vector<int> parent;  // -1 at the root
  std::vector<VertexList> bags;
  int root = 0;

  int node_count() const { return static_cast<int>(bags.size()); }
  int width() const {
    std::size_t best = 0;
    for (const auto& b : bags) best = std::max(best, b.size());
    return static_cast<int>(best) - 1;
  }
  int add_node(int par, VertexList bag) {
    std::sort(bag.begin(), bag.end());
    parent.push_back(par);
    bags.push_back(std::move(bag));
    return node_count() - 1;
  }
};

/// Checks (P1) edge coverage and (P2) connectivity of occurrence sets.
/// Returns an empty string when valid, else a description of the failure.
inline std::string validate_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
  const int nodes = td.node_count();
  if (nodes == 0) return g.order() == 0 ? "" : "no nodes";
  if (static_cast<int>(td.parent.size()) != nodes) return "parent/bag size mismatch";
  int roots = 0;
  for (int t = 0; t < nodes; ++t) {
    if (td.parent[static_cast<std::size_t>(t)] < 0) ++roots;
    else if (td.parent[static_cast<std::size_t>(t)] >= nodes) return "parent out of range";
  }
  if (roots != 1) return "decomposition is not a single tree";
  std::vector<std::vector<bool>> in_bag(static_cast<std::size_t>(nodes));
  for (int t = 0; t < nodes; ++t) in_bag[static_cast<std::size_t>(t)] = membership(g.order(), td.bags[static_cast<std::size_t>(t)]);
  for (auto [u, v] : g.edges()) {
    bool covered = false;
    for (int t = 0; t < nodes && !covered; ++t) {
      covered = in_bag[static_cast<std::size_t>(t)][static_cast<std::size_t>(u)] && in_bag[static_cast<std::size_t>(t)][static_cast<std::size_t>(v)];
    }
    if (!covered) return "edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1) + " not covered (P1)";
  }
  // A vertex's node set is connected iff exactly one of its nodes has a parent
  // outside the set.
  for (Vertex v = 0; v < g.order(); ++v) {
    int tops = 0;
    int occurrences = 0;
    for (int t = 0; t < nodes; ++t) {
      if (!in_bag[static_cast<std::size_t>(t)][static_cast<std::size_t>(v)]) continue;
      ++occurrences;
      int p = td.parent[static_cast<std::size_t>(t)];
      if (p < 0 || !in_bag[static_cast<std::size_t>(p)][static_cast<std::size_t>(v)]) ++tops;
    }
    if (occurrences == 0) return "vertex " + std::to_string(v + 1) + " in no bag (P2)";
    if (tops != 1) return "bags containing vertex " + std::to_string(v + 1) + " are not connected (P2)";
  }
  return "";
}

/// Root bag D; one child D + S_C per component C of G - D (in component
/// order); below it one bag D + S_C + B per component B of C - S_C.
/// `component_sets[i]` is the c-deletion set chosen for the i-th component.
inline TreeDecomposition tree_decomposition_from_structure(const Graph& g, const VertexList& d,
                                                           const std::vector<VertexList>& component_sets, int c) {
  auto comps = components_without(g, d);
  if (component_sets.size() != comps.size()) {
    throw PreconditionError("expected one deletion set per component of G - D");
  }
  TreeDecomposition td;
  td.root = td.add_node(-1, d);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto& comp = comps[i];
    const auto& s = component_sets[i];
    auto in_comp = membership(g.order(), comp);
    for (Vertex v : s) {
      if (v < 0 || v >= g.order() || !in_comp[static_cast<std::size_t>(v)]) {
        throw PreconditionError("deletion set vertex outside its component");
      }
    }
    VertexList ds = d;
    ds.insert(ds.end(), s.begin(), s.end());
    int mid = td.add_node(td.root, ds);
    std::vector<bool> removed(static_cast<std::size_t>(g.order()), true);
    for (Vertex v : comp) removed[static_cast<std::size_t>(v)] = false;
    for (Vertex v : s) removed[static_cast<std::size_t>(v)] = true;
    for (const auto& sub : connected_components(g, removed)) {
      if (static_cast<int>(sub.size()) > c) {
        throw PreconditionError("component of C - S_C has more than c vertices");
      }
      VertexList bag = ds;
      bag.insert(bag.end(), sub.begin(), sub.end());
      td.add_node(mid, bag);
    }
  }
  return td;
}

/// Per-component deletion sets minimising |S_C| + (largest piece of C - S_C),
/// the bag size the decomposition above pays for C.
inline std::vector<VertexList> narrow_component_sets(const Graph& g, const VertexList& d,
                                                     std::vector<int>* piece_bound = nullptr) {
  std::vector<VertexList> out;
  if (piece_bound) piece_bound->clear();
  for (const auto& comp : components_without(g, d)) {
    const int size = static_cast<int>(comp.size());
    bool done = false;
    for (int w = 1; w <= size && !done; ++w) {
      for (int s = 0; s < w && !done; ++s) {
        if (auto found = find_c_deletion_set_in(g, comp, w - s, s)) {
          out.push_back(*found);
          if (piece_bound) piece_bound->push_back(w - s);
          done = true;
        }
      }
    }
  }
  return out;
}

}  // namespace locohom
