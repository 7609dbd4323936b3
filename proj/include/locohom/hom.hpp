#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "locohom/graph.hpp"

namespace locohom {

/// Total vertex map V(G) -> V(H), indexed by guest vertex.
using Mapping = std::vector<Vertex>;

enum class ModeKind { Hom, LocInj, LocSurj, LocBij, WeakSurj };

struct Mode {
  ModeKind kind = ModeKind::Hom;
  VertexList exempt;  // WeakSurj only: vertices where surjectivity is waived

  static Mode hom() { return {ModeKind::Hom, {}}; }
  static Mode inj() { return {ModeKind::LocInj, {}}; }
  static Mode surj() { return {ModeKind::LocSurj, {}}; }
  static Mode bij() { return {ModeKind::LocBij, {}}; }
  static Mode weak_surj(VertexList exempt) { return {ModeKind::WeakSurj, std::move(exempt)}; }

  bool injective() const { return kind == ModeKind::LocInj || kind == ModeKind::LocBij; }
  bool surjective_somewhere() const {
    return kind == ModeKind::LocSurj || kind == ModeKind::LocBij || kind == ModeKind::WeakSurj;
  }
  std::vector<bool> surjective_mask(int n) const {
    std::vector<bool> need(static_cast<std::size_t>(n), surjective_somewhere());
    if (kind == ModeKind::WeakSurj) {
      for (Vertex v : exempt) {
        if (v >= 0 && v < n) need[static_cast<std::size_t>(v)] = false;
      }
    }
    return need;
  }
};

inline std::string mode_name(const Mode& m) {
  switch (m.kind) {
    case ModeKind::Hom: return "hom";
    case ModeKind::LocInj: return "locally injective";
    case ModeKind::LocSurj: return "locally surjective";
    case ModeKind::LocBij: return "locally bijective";
    case ModeKind::WeakSurj: return "weakly surjective";
  }
  return "?";
}

/// Partial map from guest vertices `domain` to host vertices `codomain`;
/// `image[i]` is the image of `domain[i]`.
struct PartialHom {
  VertexList domain;
  VertexList codomain;
  VertexList image;

  std::optional<Vertex> lookup(Vertex v) const {
    for (std::size_t i = 0; i < domain.size(); ++i) {
      if (domain[i] == v) return image[i];
    }
    return std::nullopt;
  }
};

namespace detail {
inline void require_total(const Graph& g, const Graph& h, const Mapping& phi) {
  if (static_cast<int>(phi.size()) != g.order()) throw PreconditionError("mapping is not total on the guest");
  for (Vertex x : phi) {
    if (x < 0 || x >= h.order()) throw PreconditionError("mapping image out of range");
  }
}
}  // namespace detail

/// First violated condition (homomorphism edge or local condition), 1-based
/// in the message; nullopt when phi satisfies the mode.
inline std::optional<std::string> find_violation(const Graph& g, const Graph& h, const Mapping& phi, const Mode& mode) {
  detail::require_total(g, h, phi);
  for (auto [u, v] : g.edges()) {
    if (!h.adjacent(phi[static_cast<std::size_t>(u)], phi[static_cast<std::size_t>(v)])) {
      return "edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1) + " maps to non-edge " +
             std::to_string(phi[static_cast<std::size_t>(u)] + 1) + "-" + std::to_string(phi[static_cast<std::size_t>(v)] + 1);
    }
  }
  if (mode.kind == ModeKind::Hom) return std::nullopt;
  auto need_surj = mode.surjective_mask(g.order());
  std::vector<int> seen(static_cast<std::size_t>(h.order()), 0);
  for (Vertex v = 0; v < g.order(); ++v) {
    std::fill(seen.begin(), seen.end(), 0);
    for (Vertex u : g.neighbours(v)) {
      int& s = seen[static_cast<std::size_t>(phi[static_cast<std::size_t>(u)])];
      if (s && mode.injective()) {
        return "neighbourhood of " + std::to_string(v + 1) + " is not injective (two neighbours map to " +
               std::to_string(phi[static_cast<std::size_t>(u)] + 1) + ")";
      }
      s = 1;
    }
    if (need_surj[static_cast<std::size_t>(v)]) {
      for (Vertex x : h.neighbours(phi[static_cast<std::size_t>(v)])) {
        if (!seen[static_cast<std::size_t>(x)]) {
          return "neighbourhood of " + std::to_string(v + 1) + " is not surjective (misses " + std::to_string(x + 1) + ")";
        }
      }
    }
  }
  return std::nullopt;
}

inline bool check_mapping(const Graph& g, const Graph& h, const Mapping& phi, const Mode& mode) {
  return !find_violation(g, h, phi, mode).has_value();
}

/// phi agrees with phi_P on its domain and sends no other vertex into the
/// codomain.
inline bool augments(const Mapping& phi, const PartialHom& p) {
  std::vector<int> in_domain(phi.size(), 0);
  for (std::size_t i = 0; i < p.domain.size(); ++i) {
    Vertex v = p.domain[i];
    if (v < 0 || static_cast<std::size_t>(v) >= phi.size()) return false;
    if (phi[static_cast<std::size_t>(v)] != p.image[i]) return false;
    in_domain[static_cast<std::size_t>(v)] = 1;
  }
  for (std::size_t v = 0; v < phi.size(); ++v) {
    if (in_domain[v]) continue;
    if (std::find(p.codomain.begin(), p.codomain.end(), phi[v]) != p.codomain.end()) return false;
  }
  return true;
}

namespace detail {

class BruteForceHom {
 public:
  BruteForceHom(const Graph& g, const Graph& h, const Mode& mode, const PartialHom* fixed)
      : g_(g), h_(h), mode_(mode), need_surj_(mode.surjective_mask(g.order())),
        phi_(static_cast<std::size_t>(g.order()), -1), rem_(static_cast<std::size_t>(g.order()), 0),
        cnt_(static_cast<std::size_t>(g.order()) * static_cast<std::size_t>(h.order()), 0) {
    for (Vertex v = 0; v < g.order(); ++v) rem_[static_cast<std::size_t>(v)] = g.degree(v);
    std::vector<int> forced(static_cast<std::size_t>(g.order()), -1);
    std::vector<bool> blocked(static_cast<std::size_t>(h.order()), false);
    if (fixed) {
      for (std::size_t i = 0; i < fixed->domain.size(); ++i) forced[static_cast<std::size_t>(fixed->domain[i])] = fixed->image[i];
      for (Vertex x : fixed->codomain) blocked[static_cast<std::size_t>(x)] = true;
    }
    // BFS order over all components, each started at its smallest vertex.
    std::vector<bool> seen(static_cast<std::size_t>(g.order()), false);
    for (Vertex s = 0; s < g.order(); ++s) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      seen[static_cast<std::size_t>(s)] = true;
      std::size_t head = order_.size();
      order_.push_back(s);
      for (; head < order_.size(); ++head) {
        for (Vertex w : g.neighbours(order_[head])) {
          if (!seen[static_cast<std::size_t>(w)]) {
            seen[static_cast<std::size_t>(w)] = true;
            order_.push_back(w);
          }
        }
      }
    }
    candidates_.resize(static_cast<std::size_t>(g.order()));
    for (Vertex v = 0; v < g.order(); ++v) {
      auto& cand = candidates_[static_cast<std::size_t>(v)];
      if (forced[static_cast<std::size_t>(v)] >= 0) {
        cand.push_back(forced[static_cast<std::size_t>(v)]);
        continue;
      }
      for (Vertex x = 0; x < h.order(); ++x) {
        if (blocked[static_cast<std::size_t>(x)]) continue;
        if (!degree_ok(v, x)) continue;
        cand.push_back(x);
      }
    }
  }

  std::optional<Mapping> run() {
    if (search(0)) return phi_;
    return std::nullopt;
  }

 private:
  int& cnt(Vertex v, Vertex x) {
    return cnt_[static_cast<std::size_t>(v) * static_cast<std::size_t>(h_.order()) + static_cast<std::size_t>(x)];
  }

  bool degree_ok(Vertex v, Vertex x) const {
    int dg = g_.degree(v);
    int dh = h_.degree(x);
    if (mode_.injective() && dg > dh) return false;
    if (need_surj_[static_cast<std::size_t>(v)] && dg < dh) return false;
    return true;
  }

  // Surjectivity at an assigned vertex is still reachable with the
  // neighbours left to assign.
  bool coverage_ok(Vertex v) {
    if (!need_surj_[static_cast<std::size_t>(v)]) return true;
    Vertex x = phi_[static_cast<std::size_t>(v)];
    int missing = 0;
    for (Vertex y : h_.neighbours(x)) {
      if (cnt(v, y) == 0) ++missing;
    }
    return missing <= rem_[static_cast<std::size_t>(v)];
  }

  bool search(std::size_t pos) {
    if (pos == order_.size()) return true;
    Vertex v = order_[pos];
    for (Vertex x : candidates_[static_cast<std::size_t>(v)]) {
      if (!consistent(v, x)) continue;
      assign(v, x);
      bool ok = coverage_ok(v);
      for (Vertex u : g_.neighbours(v)) {
        if (!ok) break;
        if (phi_[static_cast<std::size_t>(u)] >= 0) ok = coverage_ok(u);
      }
      if (ok && search(pos + 1)) return true;
      unassign(v, x);
    }
    return false;
  }

  bool consistent(Vertex v, Vertex x) {
    if (g_.has_loop(v) && !h_.has_loop(x)) return false;
    for (Vertex u : g_.neighbours(v)) {
      Vertex y = phi_[static_cast<std::size_t>(u)];
      if (y >= 0 && !h_.adjacent(x, y)) return false;
      if (mode_.injective() && cnt(u, x) > 0) return false;
    }
    return true;
  }

  void assign(Vertex v, Vertex x) {
    phi_[static_cast<std::size_t>(v)] = x;
    for (Vertex u : g_.neighbours(v)) {
      ++cnt(u, x);
      --rem_[static_cast<std::size_t>(u)];
    }
  }

  void unassign(Vertex v, Vertex x) {
    phi_[static_cast<std::size_t>(v)] = -1;
    for (Vertex u : g_.neighbours(v)) {
      --cnt(u, x);
      ++rem_[static_cast<std::size_t>(u)];
    }
  }

  const Graph& g_;
  const Graph& h_;
  const Mode& mode_;
  std::vector<bool> need_surj_;
  Mapping phi_;
  std::vector<int> rem_;
  std::vector<int> cnt_;
  VertexList order_;
  std::vector<VertexList> candidates_;
};

}  // namespace detail

/// Exhaustive backtracking. Vertices are assigned in BFS order (components
/// started at their smallest vertex), candidates in ascending order, so the
/// witness is the first one in that order.
inline std::optional<Mapping> brute_force_hom(const Graph& g, const Graph& h, const Mode& mode,
                                              const std::optional<PartialHom>& fixed = std::nullopt) {
  if (g.order() == 0) return Mapping{};
  if (h.order() == 0) return std::nullopt;
  detail::BruteForceHom search(g, h, mode, fixed ? &*fixed : nullptr);
  return search.run();
}

struct RoleAssignment {
  std::vector<int> roles;  // roles[v] in 0..h-1
  Graph role_graph;        // loops allowed
};

/// Role graph of a role map: roles adjacent iff some guest edge joins them.
inline Graph role_graph_of(const Graph& g, const std::vector<int>& roles, int h) {
  Graph r(h, true);
  for (auto [u, v] : g.edges()) {
    int a = roles[static_cast<std::size_t>(u)];
    int b = roles[static_cast<std::size_t>(v)];
    if (!r.adjacent(a, b)) r.add_edge(a, b);
  }
  return r;
}

/// Exhaustive search over role maps given as restricted growth strings in
/// vertex order (vertex 0 gets role 0, each new role is the next unused).
inline std::optional<RoleAssignment> brute_force_role(const Graph& g, int h) {
  if (h < 1) throw PreconditionError("role count must be at least 1");
  const int n = g.order();
  if (h > n) return std::nullopt;
  std::vector<int> roles(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<char>> seen_roles(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(h), 0));
  // Role set of the first completed vertex of each role.
  std::vector<std::vector<char>> reference(static_cast<std::size_t>(h));
  std::vector<int> ref_owner(static_cast<std::size_t>(h), -1);

  auto complete = [&](Vertex v) {
    for (Vertex u : g.neighbours(v)) {
      if (roles[static_cast<std::size_t>(u)] < 0) return false;
    }
    return roles[static_cast<std::size_t>(v)] >= 0;
  };
  auto role_set = [&](Vertex v) {
    std::vector<char> s(static_cast<std::size_t>(h), 0);
    for (Vertex u : g.neighbours(v)) s[static_cast<std::size_t>(roles[static_cast<std::size_t>(u)])] = 1;
    return s;
  };

  std::function<bool(int, int)> search = [&](int v, int used) -> bool {
    if (v == n) return used == h;
    if (h - used > n - v) return false;
    int limit = std::min(used + 1, h);
    for (int r = 0; r < limit; ++r) {
      roles[static_cast<std::size_t>(v)] = r;
      int new_used = std::max(used, r + 1);
      std::vector<int> claimed;
      bool ok = true;
      auto check = [&](Vertex x) {
        if (!complete(x)) return;
        int rx = roles[static_cast<std::size_t>(x)];
        auto s = role_set(x);
        if (ref_owner[static_cast<std::size_t>(rx)] < 0) {
          ref_owner[static_cast<std::size_t>(rx)] = x;
          reference[static_cast<std::size_t>(rx)] = s;
          claimed.push_back(rx);
        } else if (reference[static_cast<std::size_t>(rx)] != s) {
          ok = false;
        }
      };
      check(v);
      for (Vertex u : g.neighbours(v)) {
        if (ok && u < v) check(u);
      }
      if (ok && search(v + 1, new_used)) return true;
      for (int rx : claimed) ref_owner[static_cast<std::size_t>(rx)] = -1;
      roles[static_cast<std::size_t>(v)] = -1;
    }
    return false;
  };
  if (!search(0, 0)) return std::nullopt;
  return RoleAssignment{roles, role_graph_of(g, roles, h)};
}

}  // namespace locohom
