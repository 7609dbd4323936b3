#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "locohom/canon.hpp"
#include "locohom/errors.hpp"
#include "locohom/graph.hpp"

namespace locohom {

/// A graph whose vertices [0, base) form the base D (in a fixed order).
/// `origin[i]` records the vertex of some parent graph that vertex i came
/// from, when the extension was cut out of a larger graph.
struct Extension {
  Graph graph;
  int base = 0;
  VertexList origin;

  int order() const { return graph.order(); }
  std::vector<VertexList> components() const {
    std::vector<bool> removed(static_cast<std::size_t>(graph.order()), false);
    for (int i = 0; i < base; ++i) removed[static_cast<std::size_t>(i)] = true;
    return connected_components(graph, removed);
  }
  bool simple() const { return components().size() == 1; }
};

/// Induced extension with `base` first (in the given order) and `rest` after.
inline Extension cut_extension(const Graph& g, const VertexList& base, const VertexList& rest) {
  VertexList order = base;
  order.insert(order.end(), rest.begin(), rest.end());
  return {g.induced(order), static_cast<int>(base.size()), order};
}

/// Base-pinned canonical certificate of an extension.
inline std::string extension_key(const Extension& e) { return canonical_form(e.graph, e.base).certificate; }

inline bool same_base(const Extension& a, const Extension& b) {
  if (a.base != b.base) return false;
  for (int i = 0; i < a.base; ++i) {
    for (int j = i; j < a.base; ++j) {
      if (a.graph.adjacent(i, j) != b.graph.adjacent(i, j)) return false;
    }
  }
  return true;
}

/// Isomorphism fixing every base vertex.
inline bool pinned_isomorphic(const Extension& a, const Extension& b) {
  if (!same_base(a, b)) throw PreconditionError("extensions do not share the same base graph");
  if (a.order() != b.order() || a.graph.size() != b.graph.size()) return false;
  return extension_key(a) == extension_key(b);
}

/// Equivalence class of simple extensions of a base, stored as its
/// canonically relabelled representative.
struct TypeClass {
  std::string key;
  Extension canonical;
  int size() const { return canonical.order(); }
};

inline TypeClass make_type(const Extension& e) {
  auto form = canonical_form(e.graph, e.base);
  Extension rep{permute_graph(e.graph, form.position), e.base, {}};
  rep.origin.resize(static_cast<std::size_t>(e.order()));
  for (int v = 0; v < e.order(); ++v) rep.origin[static_cast<std::size_t>(form.position[static_cast<std::size_t>(v)])] = v;
  return {std::move(form.certificate), std::move(rep)};
}

/// Types of the components of G - D and the type-count census.
/// Components are listed by smallest vertex; types by first occurrence.
struct TypeCensus {
  VertexList base;
  std::vector<TypeClass> types;
  std::vector<int> counts;
  std::vector<VertexList> components;
  std::vector<int> component_type;
  // position_in_type[i][j]: canonical position of the j-th vertex of
  // components[i] (sorted order) inside its type representative.
  std::vector<std::vector<int>> position_in_type;

  int find(const std::string& key) const {
    for (std::size_t t = 0; t < types.size(); ++t) {
      if (types[t].key == key) return static_cast<int>(t);
    }
    return -1;
  }
  int total() const {
    int s = 0;
    for (int c : counts) s += c;
    return s;
  }
  /// Components of type t in component order.
  VertexList components_of_type(int t) const {
    VertexList out;
    for (std::size_t i = 0; i < components.size(); ++i) {
      if (component_type[i] == t) out.push_back(static_cast<int>(i));
    }
    return out;
  }
};

inline TypeCensus compute_types(const Graph& g, const VertexList& d) {
  TypeCensus out;
  out.base = d;
  out.components = components_without(g, d);
  std::unordered_map<std::string, int> index;
  for (const auto& comp : out.components) {
    Extension e = cut_extension(g, d, comp);
    auto form = canonical_form(e.graph, e.base);
    auto it = index.find(form.certificate);
    int t;
    if (it == index.end()) {
      t = static_cast<int>(out.types.size());
      index.emplace(form.certificate, t);
      Extension rep{permute_graph(e.graph, form.position), e.base, {}};
      rep.origin.assign(static_cast<std::size_t>(e.order()), -1);
      out.types.push_back({form.certificate, std::move(rep)});
      out.counts.push_back(0);
    } else {
      t = it->second;
    }
    ++out.counts[static_cast<std::size_t>(t)];
    out.component_type.push_back(t);
    std::vector<int> pos;
    for (std::size_t j = 0; j < comp.size(); ++j) pos.push_back(form.position[d.size() + j]);
    out.position_in_type.push_back(std::move(pos));
  }
  return out;
}

/// All simple-extension types of the base graph with 1..c new vertices
/// (connected new part). New vertices may carry loops iff allow_loops.
inline std::vector<TypeClass> enumerate_abstract_types(const Graph& base, int c, bool allow_loops, int bit_budget = 24) {
  std::vector<TypeClass> out;
  std::unordered_map<std::string, int> seen;
  const int b = base.order();
  for (int s = 1; s <= c; ++s) {
    const int inner = s * (s - 1) / 2;
    const int loops = allow_loops ? s : 0;
    const int cross = s * b;
    const int bits = inner + loops + cross;
    if (bits > bit_budget) throw BudgetExceeded("abstract type enumeration exceeds the bit budget");
    std::vector<std::pair<int, int>> inner_pairs;
    for (int i = 0; i < s; ++i) {
      for (int j = i + 1; j < s; ++j) inner_pairs.emplace_back(i, j);
    }
    for (std::uint64_t mask_inner = 0; mask_inner < (std::uint64_t{1} << inner); ++mask_inner) {
      // connectivity of the new part depends only on inner edges
      Graph part(s);
      for (int e = 0; e < inner; ++e) {
        if (mask_inner >> e & 1) part.add_edge(inner_pairs[static_cast<std::size_t>(e)].first, inner_pairs[static_cast<std::size_t>(e)].second);
      }
      if (!is_connected(part)) continue;
      for (std::uint64_t rest = 0; rest < (std::uint64_t{1} << (loops + cross)); ++rest) {
        Graph g(b + s, true);
        for (auto [u, v] : base.edges()) g.add_edge(u, v);
        for (int e = 0; e < inner; ++e) {
          if (mask_inner >> e & 1) g.add_edge(b + inner_pairs[static_cast<std::size_t>(e)].first, b + inner_pairs[static_cast<std::size_t>(e)].second);
        }
        for (int i = 0; i < loops; ++i) {
          if (rest >> i & 1) g.add_edge(b + i, b + i);
        }
        for (int i = 0; i < s; ++i) {
          for (int d = 0; d < b; ++d) {
            if (rest >> (loops + i * b + d) & 1) g.add_edge(b + i, d);
          }
        }
        Extension e{g, b, {}};
        auto form = canonical_form(e.graph, b);
        if (seen.count(form.certificate)) continue;
        seen.emplace(form.certificate, static_cast<int>(out.size()));
        out.push_back({form.certificate, Extension{permute_graph(g, form.position), b, {}}});
      }
    }
  }
  return out;
}

/// Sub-extensions E of G with E <= G (pointwise type counts) and at most
/// max_components components, given as count vectors over census types;
/// ordered by total, then lexicographically. The empty vector comes first.
inline std::vector<std::vector<int>> enumerate_sub_extensions(const TypeCensus& census, int max_components) {
  const std::size_t t = census.types.size();
  std::vector<std::vector<int>> out;
  std::vector<int> cur(t, 0);
  for (int total = 0; total <= max_components; ++total) {
    std::size_t before = out.size();
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (i == t) {
        if (left == 0) out.push_back(cur);
        return;
      }
      int cap = std::min(left, census.counts[i]);
      for (int c = cap; c >= 0; --c) {
        cur[i] = c;
        rec(i + 1, left - c);
      }
      cur[i] = 0;
    };
    rec(0, total);
    if (total > 0 && out.size() == before) break;  // no larger totals possible
  }
  return out;
}

/// Concrete extension for a count vector: the base followed by the first
/// counts[t] components of each type t (in component order).
inline Extension materialize(const Graph& g, const TypeCensus& census, const std::vector<int>& counts,
                             std::vector<int>* chosen_components = nullptr) {
  VertexList rest;
  std::vector<int> used(census.types.size(), 0);
  if (chosen_components) chosen_components->clear();
  for (std::size_t i = 0; i < census.components.size(); ++i) {
    int t = census.component_type[i];
    if (used[static_cast<std::size_t>(t)] >= counts[static_cast<std::size_t>(t)]) continue;
    ++used[static_cast<std::size_t>(t)];
    rest.insert(rest.end(), census.components[i].begin(), census.components[i].end());
    if (chosen_components) chosen_components->push_back(static_cast<int>(i));
  }
  return cut_extension(g, census.base, rest);
}

}  // namespace locohom
