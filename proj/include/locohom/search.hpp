#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "locohom/graph.hpp"
#include "locohom/hom.hpp"

namespace locohom {

struct SearchStats {
  long long nodes = 0;
  long long revisions = 0;
};

namespace detail {

// Exact search that keeps a candidate set per guest vertex and restores
// consistency after every branch: each pair (v, x) needs hom support from
// every neighbour of v and, for the local conditions, a matching between
// N(v) and N(x) inside the candidate sets.
class ConsistencySearch {
 public:
  ConsistencySearch(const Graph& g, const Graph& h, const Mode& mode, SearchStats* stats)
      : g_(g), h_(h), mode_(mode), need_surj_(mode.surjective_mask(g.order())), stats_(stats),
        words_(static_cast<std::size_t>((h.order() + 63) / 64)) {}

  std::optional<Mapping> run() {
    const int n = g_.order();
    std::vector<std::uint64_t> dom(static_cast<std::size_t>(n) * words_, 0);
    for (Vertex v = 0; v < n; ++v) {
      for (Vertex x = 0; x < h_.order(); ++x) {
        if (g_.has_loop(v) && !h_.has_loop(x)) continue;
        if (mode_.injective() && g_.degree(v) > h_.degree(x)) continue;
        if (need_surj_[static_cast<std::size_t>(v)] && g_.degree(v) < h_.degree(x)) continue;
        set(dom, v, x);
      }
      if (size(dom, v) == 0) return std::nullopt;
    }
    std::vector<Vertex> all(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) all[static_cast<std::size_t>(v)] = v;
    if (!propagate(dom, all)) return std::nullopt;
    return branch(dom);
  }

 private:
  bool test(const std::vector<std::uint64_t>& d, Vertex v, Vertex x) const {
    return d[static_cast<std::size_t>(v) * words_ + static_cast<std::size_t>(x >> 6)] >> (x & 63) & 1;
  }
  void set(std::vector<std::uint64_t>& d, Vertex v, Vertex x) const {
    d[static_cast<std::size_t>(v) * words_ + static_cast<std::size_t>(x >> 6)] |= std::uint64_t{1} << (x & 63);
  }
  void clear(std::vector<std::uint64_t>& d, Vertex v, Vertex x) const {
    d[static_cast<std::size_t>(v) * words_ + static_cast<std::size_t>(x >> 6)] &= ~(std::uint64_t{1} << (x & 63));
  }
  int size(const std::vector<std::uint64_t>& d, Vertex v) const {
    int s = 0;
    for (std::size_t w = 0; w < words_; ++w) s += std::popcount(d[static_cast<std::size_t>(v) * words_ + w]);
    return s;
  }
  Vertex first(const std::vector<std::uint64_t>& d, Vertex v) const {
    for (std::size_t w = 0; w < words_; ++w) {
      auto word = d[static_cast<std::size_t>(v) * words_ + w];
      if (word) return static_cast<Vertex>(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
    }
    return -1;
  }

  // Kuhn's augmenting paths from `left` into `right`; an edge a-b exists
  // when allowed(a, b). Returns whether every left vertex is matched.
  template <class Allowed>
  bool saturates(std::span<const Vertex> left, std::span<const Vertex> right, const Allowed& allowed) {
    if (left.size() > right.size()) return false;
    match_right_.assign(right.size(), -1);
    for (std::size_t a = 0; a < left.size(); ++a) {
      seen_.assign(right.size(), 0);
      if (!augment(left, right, allowed, a)) return false;
    }
    return true;
  }

  template <class Allowed>
  bool augment(std::span<const Vertex> left, std::span<const Vertex> right, const Allowed& allowed, std::size_t a) {
    for (std::size_t b = 0; b < right.size(); ++b) {
      if (seen_[b] || !allowed(left[a], right[b])) continue;
      seen_[b] = 1;
      if (match_right_[b] < 0 || augment(left, right, allowed, static_cast<std::size_t>(match_right_[b]))) {
        match_right_[b] = static_cast<int>(a);
        return true;
      }
    }
    return false;
  }

  bool supported(const std::vector<std::uint64_t>& d, Vertex v, Vertex x) {
    auto nv = g_.neighbours(v);
    auto nx = h_.neighbours(x);
    for (Vertex u : nv) {
      bool any = false;
      for (Vertex y : nx) {
        if (test(d, u, y)) {
          any = true;
          break;
        }
      }
      if (!any) return false;
    }
    if (need_surj_[static_cast<std::size_t>(v)] &&
        !saturates(nx, nv, [&](Vertex y, Vertex u) { return test(d, u, y); })) {
      return false;
    }
    if (mode_.injective() && !saturates(nv, nx, [&](Vertex u, Vertex y) { return test(d, u, y); })) return false;
    return true;
  }

  bool propagate(std::vector<std::uint64_t>& d, const std::vector<Vertex>& start) {
    std::vector<char> queued(static_cast<std::size_t>(g_.order()), 0);
    std::vector<Vertex> queue;
    for (Vertex v : start) {
      if (!queued[static_cast<std::size_t>(v)]) {
        queued[static_cast<std::size_t>(v)] = 1;
        queue.push_back(v);
      }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex v = queue[head];
      queued[static_cast<std::size_t>(v)] = 0;
      if (stats_) ++stats_->revisions;
      bool changed = false;
      for (Vertex x = 0; x < h_.order(); ++x) {
        if (test(d, v, x) && !supported(d, v, x)) {
          clear(d, v, x);
          changed = true;
        }
      }
      if (!changed) continue;
      if (size(d, v) == 0) return false;
      for (Vertex u : g_.neighbours(v)) {
        if (!queued[static_cast<std::size_t>(u)]) {
          queued[static_cast<std::size_t>(u)] = 1;
          queue.push_back(u);
        }
      }
    }
    return true;
  }

  std::optional<Mapping> branch(const std::vector<std::uint64_t>& d) {
    if (stats_) ++stats_->nodes;
    Vertex pick = -1;
    int best = 0;
    for (Vertex v = 0; v < g_.order(); ++v) {
      int s = size(d, v);
      if (s > 1 && (pick < 0 || s < best)) {
        pick = v;
        best = s;
      }
    }
    if (pick < 0) {
      Mapping phi(static_cast<std::size_t>(g_.order()));
      for (Vertex v = 0; v < g_.order(); ++v) phi[static_cast<std::size_t>(v)] = first(d, v);
      return phi;
    }
    for (Vertex x = 0; x < h_.order(); ++x) {
      if (!test(d, pick, x)) continue;
      auto next = d;
      std::fill_n(next.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(pick) * words_), words_, 0);
      set(next, pick, x);
      std::vector<Vertex> touched(g_.neighbours(pick).begin(), g_.neighbours(pick).end());
      if (!propagate(next, touched)) continue;
      if (auto found = branch(next)) return found;
    }
    return std::nullopt;
  }

  const Graph& g_;
  const Graph& h_;
  const Mode& mode_;
  std::vector<bool> need_surj_;
  SearchStats* stats_;
  std::size_t words_;
  std::vector<int> match_right_;
  std::vector<char> seen_;
};

}  // namespace detail

/// Exact decision with constraint propagation; for instances too large for
/// plain backtracking. Branches on the vertex with fewest candidates (lowest
/// index on ties), values ascending.
inline std::optional<Mapping> consistency_search_hom(const Graph& g, const Graph& h, const Mode& mode,
                                                     SearchStats* stats = nullptr) {
  if (g.order() == 0) return Mapping{};
  if (h.order() == 0) return std::nullopt;
  detail::ConsistencySearch search(g, h, mode, stats);
  auto phi = search.run();
  if (phi && !check_mapping(g, h, *phi, mode)) throw std::logic_error("consistency search produced an invalid mapping");
  return phi;
}

}  // namespace locohom
