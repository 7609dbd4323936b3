#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "locohom/graph.hpp"

namespace locohom {

namespace detail {

// Edmonds' blossom algorithm, BFS variant with explicit base tracking.
class BlossomMatcher {
 public:
  explicit BlossomMatcher(const Graph& g)
      : g_(g), n_(g.order()), match_(static_cast<std::size_t>(n_), -1), parent_(static_cast<std::size_t>(n_)),
        base_(static_cast<std::size_t>(n_)), used_(static_cast<std::size_t>(n_)), blossom_(static_cast<std::size_t>(n_)) {}

  std::vector<int> run() {
    for (Vertex v = 0; v < n_; ++v) {
      if (match_[idx(v)] != -1) continue;
      for (Vertex w : g_.neighbours(v)) {
        if (w != v && match_[idx(w)] == -1) {
          match_[idx(w)] = v;
          match_[idx(v)] = w;
          break;
        }
      }
    }
    for (Vertex v = 0; v < n_; ++v) {
      if (match_[idx(v)] != -1) continue;
      Vertex end = find_path(v);
      while (end != -1) {
        Vertex pv = parent_[idx(end)];
        Vertex ppv = match_[idx(pv)];
        match_[idx(end)] = pv;
        match_[idx(pv)] = end;
        end = ppv;
      }
    }
    return match_;
  }

 private:
  static std::size_t idx(Vertex v) { return static_cast<std::size_t>(v); }

  Vertex lca(Vertex a, Vertex b) {
    std::vector<bool> seen(idx(n_), false);
    while (true) {
      a = base_[idx(a)];
      seen[idx(a)] = true;
      if (match_[idx(a)] == -1) break;
      a = parent_[idx(match_[idx(a)])];
    }
    while (true) {
      b = base_[idx(b)];
      if (seen[idx(b)]) return b;
      b = parent_[idx(match_[idx(b)])];
    }
  }

  void mark_path(Vertex v, Vertex b, Vertex child) {
    while (base_[idx(v)] != b) {
      blossom_[idx(base_[idx(v)])] = true;
      blossom_[idx(base_[idx(match_[idx(v)])])] = true;
      parent_[idx(v)] = child;
      child = match_[idx(v)];
      v = parent_[idx(match_[idx(v)])];
    }
  }

  Vertex find_path(Vertex root) {
    std::fill(used_.begin(), used_.end(), false);
    std::fill(parent_.begin(), parent_.end(), -1);
    for (Vertex v = 0; v < n_; ++v) base_[idx(v)] = v;
    used_[idx(root)] = true;
    std::vector<Vertex> queue{root};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex v = queue[head];
      for (Vertex to : g_.neighbours(v)) {
        if (to == v || base_[idx(v)] == base_[idx(to)] || match_[idx(v)] == to) continue;
        if (to == root || (match_[idx(to)] != -1 && parent_[idx(match_[idx(to)])] != -1)) {
          Vertex cur = lca(v, to);
          std::fill(blossom_.begin(), blossom_.end(), false);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (Vertex i = 0; i < n_; ++i) {
            if (blossom_[idx(base_[idx(i)])]) {
              base_[idx(i)] = cur;
              if (!used_[idx(i)]) {
                used_[idx(i)] = true;
                queue.push_back(i);
              }
            }
          }
        } else if (parent_[idx(to)] == -1) {
          parent_[idx(to)] = v;
          if (match_[idx(to)] == -1) return to;
          used_[idx(match_[idx(to)])] = true;
          queue.push_back(match_[idx(to)]);
        }
      }
    }
    return -1;
  }

  const Graph& g_;
  int n_;
  std::vector<int> match_;
  std::vector<int> parent_;
  std::vector<int> base_;
  std::vector<bool> used_;
  std::vector<bool> blossom_;
};

}  // namespace detail

/// Maximum-cardinality matching as a sorted edge list (u < v). Loops are
/// never matching edges.
inline std::vector<std::pair<Vertex, Vertex>> max_matching(const Graph& g) {
  auto mate = detail::BlossomMatcher(g).run();
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (mate[static_cast<std::size_t>(v)] > v) out.emplace_back(v, mate[static_cast<std::size_t>(v)]);
  }
  return out;
}

}  // namespace locohom
