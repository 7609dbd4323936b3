#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "locohom/errors.hpp"
#include "locohom/graph.hpp"
#include "locohom/hom.hpp"
#include "locohom/refinement.hpp"

namespace locohom {

struct ReductionPair {
  Graph guest;
  Graph host;
  std::optional<Mapping> witness;  // set for 3-Partition yes-instances
};

/// Index layout of the 3-Partition construction. Guest: for each element i
/// the centre c^i then leaves u^i_1..u^i_b; then p^i_j, q^i_j pairs in the
/// same (i, j) order; then x, y, z. Host: same pattern over m stars, then x~.
struct ThreePartitionLayout {
  int elements = 0;  // 3m
  int b = 0;
  bool is_host = false;
  int centre(int i) const { return i * (b + 1); }
  int leaf(int i, int j) const { return i * (b + 1) + 1 + j; }
  int p(int i, int j) const { return elements * (b + 1) + 2 * (i * b + j); }
  int q(int i, int j) const { return p(i, j) + 1; }
  int apex(int which) const { return elements * (b + 1) + 2 * elements * b + which; }
  int order() const { return apex(0) + (is_host ? 1 : 3); }
};

namespace detail {

inline ThreePartitionLayout guest_layout(int elements, int b) { return {elements, b, false}; }
inline ThreePartitionLayout host_layout(int m, int b) { return {m, b, true}; }

}  // namespace detail

/// Triples of indices partitioning A into groups summing to b, or nothing.
inline std::optional<std::vector<std::array<int, 3>>> solve_three_partition(const std::vector<int>& a, int b) {
  const int n = static_cast<int>(a.size());
  if (n % 3 != 0) return std::nullopt;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::vector<std::array<int, 3>> groups;
  std::function<bool()> search = [&]() -> bool {
    int first = 0;
    while (first < n && used[static_cast<std::size_t>(first)]) ++first;
    if (first == n) return true;
    used[static_cast<std::size_t>(first)] = 1;
    for (int s = first + 1; s < n; ++s) {
      if (used[static_cast<std::size_t>(s)]) continue;
      for (int t = s + 1; t < n; ++t) {
        if (used[static_cast<std::size_t>(t)]) continue;
        if (a[static_cast<std::size_t>(first)] + a[static_cast<std::size_t>(s)] + a[static_cast<std::size_t>(t)] != b) continue;
        used[static_cast<std::size_t>(s)] = used[static_cast<std::size_t>(t)] = 1;
        groups.push_back({first, s, t});
        if (search()) return true;
        groups.pop_back();
        used[static_cast<std::size_t>(s)] = used[static_cast<std::size_t>(t)] = 0;
      }
    }
    used[static_cast<std::size_t>(first)] = 0;
    return false;
  };
  if (!search()) return std::nullopt;
  return groups;
}

/// The 3-Partition to 3-fold cover construction. With `strict` the element
/// bounds b/4 < a_i < b/2 are enforced; otherwise any 1 <= a_i < b is taken
/// (the graphs and the equivalence with partitions into triples still hold).
inline ReductionPair gen_3partition_reduction(const std::vector<int>& a, int b, bool strict = true) {
  if (a.empty() || a.size() % 3 != 0) throw PreconditionError("element count must be a positive multiple of 3");
  if (b < 1) throw PreconditionError("b must be positive");
  const int elements = static_cast<int>(a.size());
  const int m = elements / 3;
  long long sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int ai = a[i];
    if (strict && 4 * ai <= b) throw PreconditionError("a_" + std::to_string(i + 1) + " = " + std::to_string(ai) + " is at most b/4");
    if (strict && 2 * ai >= b) throw PreconditionError("a_" + std::to_string(i + 1) + " = " + std::to_string(ai) + " is at least b/2");
    if (ai < 1 || ai >= b) throw PreconditionError("a_" + std::to_string(i + 1) + " must lie in [1, b-1]");
    sum += ai;
  }
  if (sum != static_cast<long long>(m) * b) throw PreconditionError("elements sum to " + std::to_string(sum) + ", expected m*b = " + std::to_string(m * b));

  const auto gl = detail::guest_layout(elements, b);
  Graph g(gl.order(), false);
  const int x = gl.apex(0), y = gl.apex(1), z = gl.apex(2);
  for (int i = 0; i < elements; ++i) {
    for (int j = 0; j < b; ++j) {
      g.add_edge(gl.centre(i), gl.leaf(i, j));
      g.add_edge(gl.leaf(i, j), gl.p(i, j));
      g.add_edge(gl.leaf(i, j), gl.q(i, j));
      if (j < a[static_cast<std::size_t>(i)]) {
        g.add_edge(x, gl.p(i, j));
        g.add_edge(x, gl.q(i, j));
      } else {
        g.add_edge(y, gl.p(i, j));
        g.add_edge(z, gl.q(i, j));
      }
    }
  }

  const auto hl = detail::host_layout(m, b);
  Graph h(hl.order(), false);
  const int hx = hl.apex(0);
  for (int k = 0; k < m; ++k) {
    for (int j = 0; j < b; ++j) {
      h.add_edge(hl.centre(k), hl.leaf(k, j));
      h.add_edge(hl.leaf(k, j), hl.p(k, j));
      h.add_edge(hl.leaf(k, j), hl.q(k, j));
      h.add_edge(hx, hl.p(k, j));
      h.add_edge(hx, hl.q(k, j));
    }
  }

  ReductionPair out{std::move(g), std::move(h), std::nullopt};
  auto groups = solve_three_partition(a, b);
  if (!groups) return out;

  Mapping phi(static_cast<std::size_t>(gl.order()), -1);
  phi[static_cast<std::size_t>(x)] = phi[static_cast<std::size_t>(y)] = phi[static_cast<std::size_t>(z)] = hx;
  // far[k*b + l]: leaves mapped to u~^k_l whose p, q are not adjacent to x
  std::vector<std::vector<std::pair<int, int>>> far(static_cast<std::size_t>(m * b));
  for (int k = 0; k < m; ++k) {
    int offset = 0;
    for (int idx : (*groups)[static_cast<std::size_t>(k)]) {
      phi[static_cast<std::size_t>(gl.centre(idx))] = hl.centre(k);
      for (int j = 0; j < b; ++j) {
        const int l = (offset + j) % b;
        phi[static_cast<std::size_t>(gl.leaf(idx, j))] = hl.leaf(k, l);
        if (j < a[static_cast<std::size_t>(idx)]) {
          phi[static_cast<std::size_t>(gl.p(idx, j))] = hl.p(k, l);
          phi[static_cast<std::size_t>(gl.q(idx, j))] = hl.q(k, l);
        } else {
          far[static_cast<std::size_t>(k * b + l)].emplace_back(idx, j);
        }
      }
      offset += a[static_cast<std::size_t>(idx)];
    }
    for (int l = 0; l < b; ++l) {
      const auto& pair = far[static_cast<std::size_t>(k * b + l)];
      auto [i1, j1] = pair[0];
      auto [i2, j2] = pair[1];
      phi[static_cast<std::size_t>(gl.p(i1, j1))] = hl.p(k, l);
      phi[static_cast<std::size_t>(gl.q(i1, j1))] = hl.q(k, l);
      phi[static_cast<std::size_t>(gl.p(i2, j2))] = hl.q(k, l);
      phi[static_cast<std::size_t>(gl.q(i2, j2))] = hl.p(k, l);
    }
  }
  out.witness = std::move(phi);
  return out;
}

enum class PartitionVariant { P3, K3 };

/// H'-Partition reductions for LIHom. P3 (k >= 2): gadgets a_i b_i c_i d_i,
/// a (k-1)-clique K in place of u, apex v; host is G' plus k universal
/// vertices. K3 (k >= 1): n triangles plus k universal vertices against G'
/// plus k universal vertices.
inline ReductionPair gen_hprime_partition_reduction(const Graph& g_prime, PartitionVariant variant, int k) {
  const int size = g_prime.order();
  if (size == 0 || size % 3 != 0) throw PreconditionError("G' must have 3n vertices, got " + std::to_string(size));
  if (g_prime.allows_loops()) {
    for (Vertex v = 0; v < size; ++v) {
      if (g_prime.has_loop(v)) throw PreconditionError("G' must be loopless");
    }
  }
  if (variant == PartitionVariant::K3 && k < 1) throw PreconditionError("the K3 variant needs k >= 1");
  if (variant == PartitionVariant::P3 && k < 2) throw PreconditionError("the P3 variant needs k >= 2");
  const int n = size / 3;
  Graph h(size + k, false);
  for (auto [u, v] : g_prime.edges()) h.add_edge(u, v);
  for (int i = 0; i < k; ++i) {
    for (Vertex v = 0; v < size + i; ++v) h.add_edge(v, size + i);
  }

  if (variant == PartitionVariant::K3) {
    Graph g(size + k, false);
    for (int t = 0; t < n; ++t) {
      g.add_edge(3 * t, 3 * t + 1);
      g.add_edge(3 * t + 1, 3 * t + 2);
      g.add_edge(3 * t, 3 * t + 2);
    }
    for (int i = 0; i < k; ++i) {
      for (Vertex v = 0; v < size + i; ++v) g.add_edge(v, size + i);
    }
    return {std::move(g), std::move(h), std::nullopt};
  }

  // a_i, b_i, c_i, d_i at 4i..4i+3, then the clique, then v
  const int clique_begin = 4 * n;
  const int v = clique_begin + (k - 1);
  Graph g(v + 1, false);
  for (int i = 0; i < n; ++i) {
    const int a = 4 * i, bb = a + 1, c = a + 2, d = a + 3;
    g.add_edge(a, bb);
    g.add_edge(c, d);
    for (int q = clique_begin; q < v; ++q) {
      g.add_edge(q, a);
      g.add_edge(q, bb);
      g.add_edge(q, d);
    }
    g.add_edge(v, a);
    g.add_edge(v, c);
    g.add_edge(v, d);
  }
  for (int q = clique_begin; q < v; ++q) {
    for (int r = q + 1; r < v; ++r) g.add_edge(q, r);
    g.add_edge(q, v);
  }
  return {std::move(g), std::move(h), std::nullopt};
}

/// Exhaustive H'-Partition check on small graphs.
inline bool has_hprime_partition(const Graph& g_prime, PartitionVariant variant) {
  const int size = g_prime.order();
  if (size % 3 != 0) return false;
  std::vector<char> used(static_cast<std::size_t>(size), 0);
  auto good = [&](int a, int b, int c) {
    const int e = int(g_prime.adjacent(a, b)) + int(g_prime.adjacent(b, c)) + int(g_prime.adjacent(a, c));
    return variant == PartitionVariant::K3 ? e == 3 : e >= 2;
  };
  std::function<bool()> search = [&]() -> bool {
    int first = 0;
    while (first < size && used[static_cast<std::size_t>(first)]) ++first;
    if (first == size) return true;
    used[static_cast<std::size_t>(first)] = 1;
    for (int s = first + 1; s < size; ++s) {
      if (used[static_cast<std::size_t>(s)]) continue;
      for (int t = s + 1; t < size; ++t) {
        if (used[static_cast<std::size_t>(t)] || !good(first, s, t)) continue;
        used[static_cast<std::size_t>(s)] = used[static_cast<std::size_t>(t)] = 1;
        if (search()) return true;
        used[static_cast<std::size_t>(s)] = used[static_cast<std::size_t>(t)] = 0;
      }
    }
    used[static_cast<std::size_t>(first)] = 0;
    return false;
  };
  return search();
}

/// Counter-based generator: value i of stream `seed` is a pure function of both.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * ++counter_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Connected loopless graph on n vertices whose first k vertices are a
/// c-deletion set: hubs 0..k-1 and random connected pieces of <= c vertices,
/// each attached to at least one hub.
inline Graph gen_random_bounded_fracture(int n, int k, int c, std::uint64_t seed) {
  if (n < 1) throw PreconditionError("n must be positive");
  if (k < 0 || c < 0) throw PreconditionError("k and c must be non-negative");
  if (n < k) throw PreconditionError("n must be at least k");
  if (n > k && c == 0) throw PreconditionError("c = 0 leaves no room for non-hub vertices");
  if (k == 0 && n > c) throw PreconditionError("without hubs the graph must fit in one piece of size c");
  CounterRng rng(seed);
  Graph g(n, false);
  if (n == k) {
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    }
    return g;
  }
  for (int v = 1; v < k; ++v) g.add_edge(rng.below(v), v);
  for (int u = 0; u < k; ++u) {
    for (int v = u + 1; v < k; ++v) {
      if (!g.adjacent(u, v) && rng.below(4) == 0) g.add_edge(u, v);
    }
  }
  int next = k;
  while (next < n) {
    const int size = k == 0 ? n : 1 + rng.below(std::min(c, n - next));
    for (int v = next + 1; v < next + size; ++v) g.add_edge(next + rng.below(v - next), v);
    for (int u = next; u < next + size; ++u) {
      for (int v = u + 1; v < next + size; ++v) {
        if (!g.adjacent(u, v) && rng.below(3) == 0) g.add_edge(u, v);
      }
    }
    if (k > 0) {
      g.add_edge(rng.below(k), next + rng.below(size));
      for (int hub = 0; hub < k; ++hub) {
        for (int v = next; v < next + size; ++v) {
          if (!g.adjacent(hub, v) && rng.below(5) == 0) g.add_edge(hub, v);
        }
      }
    }
    next += size;
  }
  return g;
}

struct ReductionCheck {
  bool size_ratio = false;
  bool drm_equal = false;
  bool guest_fvs = false;
  bool host_fvs = false;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

namespace detail {

inline std::string matrix_text(const std::vector<std::vector<int>>& m) {
  std::ostringstream out;
  for (const auto& row : m) {
    out << '[';
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
    out << ']';
  }
  return out.str();
}

}  // namespace detail

/// Structural checks on a 3-Partition reduction pair; the apexes are the
/// last three guest vertices and the last host vertex.
inline ReductionCheck verify_reduction_invariants(const Graph& g, const Graph& h) {
  ReductionCheck r;
  r.size_ratio = g.order() == 3 * h.order();
  if (!r.size_ratio) {
    r.failures.push_back("|V(G)| = " + std::to_string(g.order()) + " but 3|V(H)| = " + std::to_string(3 * h.order()));
  }
  if (!is_connected(g) || !is_connected(h)) {
    r.failures.push_back("degree refinement matrix needs connected graphs");
  } else {
    auto dg = equitable_partition_drm(g).matrix;
    auto dh = equitable_partition_drm(h).matrix;
    r.drm_equal = dg == dh;
    if (!r.drm_equal) r.failures.push_back("drm(G) = " + detail::matrix_text(dg) + " differs from drm(H) = " + detail::matrix_text(dh));
  }
  if (g.order() >= 3) {
    const VertexList apexes{g.order() - 3, g.order() - 2, g.order() - 1};
    r.guest_fvs = is_forest(g, apexes);
  }
  if (!r.guest_fvs) r.failures.push_back("removing the three guest apexes does not leave a forest");
  if (h.order() >= 1) {
    const VertexList apex{h.order() - 1};
    r.host_fvs = is_forest(h, apex);
  }
  if (!r.host_fvs) r.failures.push_back("removing the host apex does not leave a forest");
  return r;
}

}  // namespace locohom
