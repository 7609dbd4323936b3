#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>
#include <vector>

#include "locohom/graph.hpp"

namespace locohom {

/// Colour refinement to the stable colouring. New colours are ranks of
/// (old colour, sorted neighbour colours), so the result depends only on the
/// isomorphism class of the coloured graph.
inline std::vector<int> refine_colours(const Graph& g, std::vector<int> colour) {
  const int n = g.order();
  int classes = 0;
  {
    auto tmp = colour;
    std::sort(tmp.begin(), tmp.end());
    classes = static_cast<int>(std::unique(tmp.begin(), tmp.end()) - tmp.begin());
  }
  std::vector<std::vector<int>> sig(static_cast<std::size_t>(n));
  std::vector<int> order(static_cast<std::size_t>(n));
  while (true) {
    for (Vertex v = 0; v < n; ++v) {
      auto& s = sig[static_cast<std::size_t>(v)];
      s.clear();
      s.push_back(colour[static_cast<std::size_t>(v)]);
      for (Vertex w : g.neighbours(v)) s.push_back(colour[static_cast<std::size_t>(w)]);
      std::sort(s.begin() + 1, s.end());
    }
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return sig[static_cast<std::size_t>(a)] < sig[static_cast<std::size_t>(b)]; });
    std::vector<int> next(static_cast<std::size_t>(n));
    int rank = -1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i == 0 || sig[static_cast<std::size_t>(order[i])] != sig[static_cast<std::size_t>(order[i - 1])]) ++rank;
      next[static_cast<std::size_t>(order[i])] = rank;
    }
    colour = std::move(next);
    if (rank + 1 == classes) break;
    classes = rank + 1;
  }
  return colour;
}

struct EquitablePartitionResult {
  std::vector<VertexList> blocks;
  std::vector<std::vector<int>> matrix;
};

/// Coarsest equitable partition of a connected graph and its degree
/// refinement matrix. Blocks are ordered by size, then by the sorted entries
/// of their matrix row, then by refinement colour.
inline EquitablePartitionResult equitable_partition_drm(const Graph& g) {
  if (!is_connected(g)) throw PreconditionError("degree refinement matrix needs a connected graph");
  auto colour = refine_colours(g, std::vector<int>(static_cast<std::size_t>(g.order()), 0));
  const int k = *std::max_element(colour.begin(), colour.end()) + 1;
  std::vector<VertexList> by_colour(static_cast<std::size_t>(k));
  for (Vertex v = 0; v < g.order(); ++v) by_colour[static_cast<std::size_t>(colour[static_cast<std::size_t>(v)])].push_back(v);
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k), 0));
  for (int i = 0; i < k; ++i) {
    Vertex rep = by_colour[static_cast<std::size_t>(i)].front();
    for (Vertex w : g.neighbours(rep)) ++rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(colour[static_cast<std::size_t>(w)])];
  }
  std::vector<int> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](int i) {
    auto sorted_row = rows[static_cast<std::size_t>(i)];
    std::sort(sorted_row.begin(), sorted_row.end());
    return std::make_tuple(by_colour[static_cast<std::size_t>(i)].size(), sorted_row, i);
  };
  std::sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
  EquitablePartitionResult out;
  for (int i : order) out.blocks.push_back(by_colour[static_cast<std::size_t>(i)]);
  out.matrix.assign(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k), 0));
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      out.matrix[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          rows[static_cast<std::size_t>(order[static_cast<std::size_t>(a)])][static_cast<std::size_t>(order[static_cast<std::size_t>(b)])];
    }
  }
  return out;
}

}  // namespace locohom
