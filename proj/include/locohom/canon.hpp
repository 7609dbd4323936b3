#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "locohom/errors.hpp"
#include "locohom/graph.hpp"
#include "locohom/refinement.hpp"

namespace locohom {

/// Canonical labelling of a graph whose first `pinned` vertices are fixed
/// in place. `position[v]` is the canonical index of v; pinned vertices keep
/// their index. Two graphs with the same pinned prefix get equal
/// certificates iff an isomorphism fixes the prefix pointwise.
struct CanonicalForm {
  std::string certificate;
  std::vector<int> position;
};

namespace detail {

class Canonizer {
 public:
  Canonizer(const Graph& g, int pinned, std::size_t node_budget)
      : g_(g), n_(g.order()), pinned_(pinned), budget_(node_budget) {}

  CanonicalForm run() {
    std::vector<int> colour(static_cast<std::size_t>(n_));
    for (Vertex v = 0; v < n_; ++v) {
      colour[static_cast<std::size_t>(v)] = v < pinned_ ? v : pinned_ + (g_.has_loop(v) ? 1 : 0);
    }
    colour = refine_colours(g_, std::move(colour));
    std::vector<Vertex> prefix;
    search(colour, prefix);
    return {encode(best_cert_), best_pos_};
  }

 private:
  static std::size_t idx(int v) { return static_cast<std::size_t>(v); }

  // Adjacency bits in canonical order, row by row over the upper triangle
  // including the diagonal.
  std::vector<std::uint64_t> certificate(const std::vector<int>& pos) const {
    std::vector<int> inv(idx(n_));
    for (Vertex v = 0; v < n_; ++v) inv[idx(pos[idx(v)])] = v;
    std::vector<std::uint64_t> bits((idx(n_) * idx(n_ + 1) / 2 + 63) / 64 + 1, 0);
    bits[0] = static_cast<std::uint64_t>(n_);
    std::size_t k = 64;
    for (int i = 0; i < n_; ++i) {
      for (int j = i; j < n_; ++j, ++k) {
        if (g_.adjacent(inv[idx(i)], inv[idx(j)])) bits[k / 64] |= std::uint64_t{1} << (63 - k % 64);
      }
    }
    return bits;
  }

  static std::string encode(const std::vector<std::uint64_t>& bits) {
    std::string out;
    out.reserve(bits.size() * 8);
    for (auto w : bits) {
      for (int s = 56; s >= 0; s -= 8) out.push_back(static_cast<char>((w >> s) & 0xff));
    }
    return out;
  }

  int find(std::vector<int>& uf, int x) const {
    while (uf[idx(x)] != x) x = uf[idx(x)] = uf[idx(uf[idx(x)])];
    return x;
  }

  void search(const std::vector<int>& colour, std::vector<Vertex>& prefix) {
    if (++nodes_ > budget_) throw BudgetExceeded("canonical labelling search exceeded its node budget");
    // Target cell: the non-singleton cell with the smallest colour.
    std::vector<int> cell_size(idx(n_), 0);
    for (int c : colour) ++cell_size[idx(c)];
    int target = -1;
    for (int c = 0; c < n_; ++c) {
      if (cell_size[idx(c)] > 1) {
        target = c;
        break;
      }
    }
    if (target < 0) {
      leaf(colour);
      return;
    }
    std::vector<Vertex> cell;
    for (Vertex v = 0; v < n_; ++v) {
      if (colour[idx(v)] == target) cell.push_back(v);
    }
    std::vector<Vertex> explored;
    for (Vertex v : cell) {
      if (!explored.empty() && same_orbit_as_explored(v, explored, prefix)) continue;
      explored.push_back(v);
      std::vector<int> next(idx(n_));
      for (Vertex u = 0; u < n_; ++u) {
        next[idx(u)] = 2 * colour[idx(u)] + ((colour[idx(u)] == target && u != v) ? 1 : 0);
      }
      next = refine_colours(g_, std::move(next));
      prefix.push_back(v);
      search(next, prefix);
      prefix.pop_back();
    }
  }

  bool same_orbit_as_explored(Vertex v, const std::vector<Vertex>& explored, const std::vector<Vertex>& prefix) {
    std::vector<int> uf(idx(n_));
    std::iota(uf.begin(), uf.end(), 0);
    bool any = false;
    for (const auto& gamma : automorphisms_) {
      bool fixes = true;
      for (Vertex p : prefix) {
        if (gamma[idx(p)] != p) {
          fixes = false;
          break;
        }
      }
      if (!fixes) continue;
      any = true;
      for (Vertex u = 0; u < n_; ++u) {
        int a = find(uf, u);
        int b = find(uf, gamma[idx(u)]);
        if (a != b) uf[idx(a)] = b;
      }
    }
    if (!any) return false;
    int rv = find(uf, v);
    for (Vertex e : explored) {
      if (find(uf, e) == rv) return true;
    }
    return false;
  }

  void leaf(const std::vector<int>& pos) {
    auto cert = certificate(pos);
    if (best_pos_.empty() || cert < best_cert_) {
      best_cert_ = std::move(cert);
      best_pos_ = pos;
      return;
    }
    if (cert == best_cert_) {
      std::vector<int> inv_best(idx(n_));
      for (Vertex v = 0; v < n_; ++v) inv_best[idx(best_pos_[idx(v)])] = v;
      std::vector<int> gamma(idx(n_));
      for (Vertex v = 0; v < n_; ++v) gamma[idx(v)] = inv_best[idx(pos[idx(v)])];
      automorphisms_.push_back(std::move(gamma));
    }
  }

  const Graph& g_;
  int n_;
  int pinned_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<std::uint64_t> best_cert_;
  std::vector<int> best_pos_;
  std::vector<std::vector<int>> automorphisms_;
};

}  // namespace detail

inline CanonicalForm canonical_form(const Graph& g, int pinned = 0, std::size_t node_budget = 2'000'000) {
  if (pinned < 0 || pinned > g.order()) throw PreconditionError("pinned prefix out of range");
  if (g.order() == 0) return {std::string(8, '\0'), {}};
  return detail::Canonizer(g, pinned, node_budget).run();
}

/// Relabels g so that vertex v becomes position[v].
inline Graph permute_graph(const Graph& g, const std::vector<int>& position) {
  Graph out(g.order(), g.allows_loops());
  for (auto [u, v] : g.edges()) out.add_edge(position[static_cast<std::size_t>(u)], position[static_cast<std::size_t>(v)]);
  return out;
}

}  // namespace locohom
