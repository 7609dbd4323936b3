#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "locohom/deletion.hpp"
#include "locohom/hom.hpp"
#include "locohom/ilp.hpp"
#include "locohom/matching.hpp"
#include "locohom/pipeline.hpp"
#include "locohom/report.hpp"

namespace locohom {

namespace detail {

// Everything about one guessed base map that the pre-image search needs.
class LocallyInjectiveCover {
 public:
  LocallyInjectiveCover(const Graph& g, const Graph& h, const VertexList& cover) : g_(g), h_(h), cover_(cover) {
    in_cover_ = membership(g.order(), cover);
    // non-cover vertices grouped by neighbourhood (their type)
    std::map<VertexList, int> index;
    for (Vertex v = 0; v < g.order(); ++v) {
      if (in_cover_[static_cast<std::size_t>(v)]) continue;
      VertexList nb(g.neighbours(v).begin(), g.neighbours(v).end());
      auto [it, inserted] = index.emplace(nb, static_cast<int>(type_nbrs_.size()));
      if (inserted) {
        type_nbrs_.push_back(nb);
        type_members_.emplace_back();
      }
      type_members_[static_cast<std::size_t>(it->second)].push_back(v);
    }
  }

  /// Solution extending the base map, or nullopt.
  std::optional<Mapping> solve_for(const VertexList& base_image, SolveStats& stats) {
    base_image_ = base_image;
    phi_.assign(static_cast<std::size_t>(g_.order()), -1);
    for (std::size_t i = 0; i < cover_.size(); ++i) phi_[static_cast<std::size_t>(cover_[i])] = base_image[i];
    d_h_.clear();
    for (Vertex x : base_image) {
      if (std::find(d_h_.begin(), d_h_.end(), x) == d_h_.end()) d_h_.push_back(x);
    }
    std::sort(d_h_.begin(), d_h_.end());
    in_dh_ = membership(h_.order(), d_h_);
    used_.assign(type_members_.size(), 0);
    return guess_dh_preimages(0, stats);
  }

 private:
  // Extra pre-image vertices (as types) of the D_H vertex d_h_[pos].
  std::optional<Mapping> guess_dh_preimages(std::size_t pos, SolveStats& stats) {
    if (pos == d_h_.size()) return solve_rest(stats);
    const Vertex target = d_h_[pos];
    VertexList chosen;
    std::optional<Mapping> found;
    std::function<bool(std::size_t)> rec = [&](std::size_t from) -> bool {
      ++stats.branches;
      found = place_and_continue(chosen, target, pos, stats);
      if (found) return true;
      for (std::size_t t = from; t < type_members_.size(); ++t) {
        if (used_[t] >= static_cast<int>(type_members_[t].size())) continue;
        if (!fits(static_cast<int>(t), target)) continue;
        chosen.push_back(static_cast<int>(t));
        if (rec(t + 1)) return true;
        chosen.pop_back();
      }
      return false;
    };
    rec(0);
    return found;
  }

  // Maps the next unused member of each chosen type to target and moves on
  // to the next D_H vertex.
  std::optional<Mapping> place_and_continue(const VertexList& chosen, Vertex target, std::size_t pos, SolveStats& stats) {
    VertexList placed;
    for (int t : chosen) {
      auto& count = used_[static_cast<std::size_t>(t)];
      Vertex v = type_members_[static_cast<std::size_t>(t)][static_cast<std::size_t>(count++)];
      phi_[static_cast<std::size_t>(v)] = target;
      placed.push_back(v);
    }
    std::optional<Mapping> r;
    if (partial_ok()) r = guess_dh_preimages(pos + 1, stats);
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      --used_[static_cast<std::size_t>(chosen[i])];
      phi_[static_cast<std::size_t>(placed[i])] = -1;
    }
    return r;
  }

  // A non-cover vertex of type t may map to target: its neighbours' images
  // are neighbours of target.
  bool fits(int t, Vertex target) const {
    for (Vertex u : type_nbrs_[static_cast<std::size_t>(t)]) {
      if (!h_.adjacent(phi_[static_cast<std::size_t>(u)], target)) return false;
    }
    return true;
  }

  // Mapped neighbours of every vertex have distinct images.
  bool partial_ok() const {
    std::vector<int> seen(static_cast<std::size_t>(h_.order()), -1);
    for (Vertex v = 0; v < g_.order(); ++v) {
      for (Vertex u : g_.neighbours(v)) {
        Vertex x = phi_[static_cast<std::size_t>(u)];
        if (x < 0) continue;
        if (seen[static_cast<std::size_t>(x)] == v) return false;
        seen[static_cast<std::size_t>(x)] = v;
      }
    }
    return true;
  }

  // Remaining non-cover vertices go outside D_H; solved by (I1, I2).
  std::optional<Mapping> solve_rest(SolveStats& stats) {
    // guest types with their remaining counts
    std::vector<int> remaining;
    for (std::size_t t = 0; t < type_members_.size(); ++t) {
      remaining.push_back(static_cast<int>(type_members_[t].size()) - used_[t]);
    }
    // host types: N_H(x) ∩ D_H for x outside D_H (edges outside D_H dropped)
    std::map<VertexList, int> host_index;
    std::vector<VertexList> host_keys;
    std::vector<VertexList> host_members;
    for (Vertex x = 0; x < h_.order(); ++x) {
      if (in_dh_[static_cast<std::size_t>(x)]) continue;
      VertexList key;
      for (Vertex y : h_.neighbours(x)) {
        if (in_dh_[static_cast<std::size_t>(y)]) key.push_back(y);
      }
      auto [it, inserted] = host_index.emplace(key, static_cast<int>(host_keys.size()));
      if (inserted) {
        host_keys.push_back(key);
        host_members.emplace_back();
      }
      host_members[static_cast<std::size_t>(it->second)].push_back(x);
    }
    std::vector<int> tc_h;
    for (const auto& m : host_members) tc_h.push_back(static_cast<int>(m.size()));
    // candidate pre-images: sets of guest types with pairwise disjoint
    // neighbourhoods, at most one vertex per type
    const std::size_t nt = type_members_.size();
    std::vector<MappedExtension> icm;
    std::vector<int> cur(nt, 0);
    const int size_cap = std::max<int>(1, static_cast<int>(cover_.size()));
    for (std::size_t ht = 0; ht < host_keys.size(); ++ht) {
      const auto& key = host_keys[ht];
      std::vector<bool> allowed_image(static_cast<std::size_t>(h_.order()), false);
      for (Vertex y : key) allowed_image[static_cast<std::size_t>(y)] = true;
      std::vector<int> usable;
      for (std::size_t t = 0; t < nt; ++t) {
        if (remaining[t] == 0) continue;
        bool ok = true;
        for (Vertex u : type_nbrs_[t]) {
          if (!allowed_image[static_cast<std::size_t>(phi_[static_cast<std::size_t>(u)])]) ok = false;
        }
        if (ok) usable.push_back(static_cast<int>(t));
      }
      std::vector<bool> taken(static_cast<std::size_t>(g_.order()), false);
      std::function<void(std::size_t, int)> rec = [&](std::size_t from, int size) {
        icm.push_back({cur, static_cast<int>(ht)});
        if (size == size_cap) return;
        for (std::size_t i = from; i < usable.size(); ++i) {
          const auto t = static_cast<std::size_t>(usable[i]);
          bool disjoint = true;
          for (Vertex u : type_nbrs_[t]) {
            if (taken[static_cast<std::size_t>(u)]) disjoint = false;
          }
          if (!disjoint) continue;
          for (Vertex u : type_nbrs_[t]) taken[static_cast<std::size_t>(u)] = true;
          cur[t] = 1;
          rec(i + 1, size + 1);
          cur[t] = 0;
          for (Vertex u : type_nbrs_[t]) taken[static_cast<std::size_t>(u)] = false;
        }
      };
      rec(0, 0);
    }
    ILPModel model = build_model_I(remaining, tc_h, icm);
    ++stats.ilp_solves;
    auto sol = solve_feasibility(model);
    if (!sol) return std::nullopt;
    Mapping phi = phi_;
    std::vector<int> next_guest = used_;
    std::vector<std::size_t> next_host(host_keys.size(), 0);
    for (std::size_t i = 0; i < icm.size(); ++i) {
      const auto ht = static_cast<std::size_t>(icm[i].host_type);
      for (long long r = 0; r < (*sol)[i]; ++r) {
        Vertex x = host_members[ht][next_host[ht]++];
        for (std::size_t t = 0; t < nt; ++t) {
          if (icm[i].counts[t] == 0) continue;
          Vertex v = type_members_[t][static_cast<std::size_t>(next_guest[t]++)];
          phi[static_cast<std::size_t>(v)] = x;
        }
      }
    }
    if (!check_mapping(g_, h_, phi, Mode::inj())) throw std::logic_error("locally injective witness failed verification");
    return phi;
  }

  const Graph& g_;
  const Graph& h_;
  VertexList cover_;
  std::vector<bool> in_cover_;
  std::vector<VertexList> type_nbrs_;
  std::vector<VertexList> type_members_;
  VertexList base_image_;
  Mapping phi_;
  VertexList d_h_;
  std::vector<bool> in_dh_;
  std::vector<int> used_;
};

// Base maps D_G -> V(H): homomorphisms under which every vertex sees its
// mapped cover neighbours injectively. Lexicographic order.
inline std::vector<VertexList> injective_base_maps(const Graph& g, const Graph& h, const VertexList& cover) {
  std::vector<VertexList> out;
  const std::size_t k = cover.size();
  VertexList img(k, -1);
  std::vector<int> pos(static_cast<std::size_t>(g.order()), -1);
  for (std::size_t i = 0; i < k; ++i) pos[static_cast<std::size_t>(cover[i])] = static_cast<int>(i);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == k) {
      out.push_back(img);
      return;
    }
    const Vertex v = cover[i];
    for (Vertex x = 0; x < h.order(); ++x) {
      bool ok = true;
      for (Vertex u : g.neighbours(v)) {
        int j = pos[static_cast<std::size_t>(u)];
        if (j >= 0 && static_cast<std::size_t>(j) < i && !h.adjacent(img[static_cast<std::size_t>(j)], x)) ok = false;
      }
      // two mapped cover vertices with a common neighbour need distinct images
      for (std::size_t j = 0; j < i && ok; ++j) {
        if (img[j] != x) continue;
        for (Vertex w : g.neighbours(v)) {
          if (g.adjacent(w, cover[j])) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) continue;
      img[i] = x;
      rec(i + 1);
    }
    img[i] = -1;
  };
  rec(0);
  return out;
}

}  // namespace detail

/// LIHom by guessing the images of a minimum vertex cover and solving the
/// rest as an integer program over candidate pre-images.
inline SolveReport solve_lihom_xp(const Graph& g, const Graph& h, const SolveOptions& opts = {}) {
  detail::require_connected(g, "guest");
  if (h.order() == 0) throw PreconditionError("host must be nonempty");
  SolveReport report;
  report.route = "xp-vertex-cover";
  const VertexList cover = minimum_vertex_cover(g);
  report.k = static_cast<int>(cover.size());
  report.c = 1;
  if (cover.empty()) {
    // single vertex guest
    report.answer = true;
    report.witness = Mapping(1, 0);
    report.stats.partial_homs_tried = 1;
    return report;
  }
  auto bases = detail::injective_base_maps(g, h, cover);
  std::function<std::optional<Mapping>(std::size_t, SolveStats&)> task = [&](std::size_t i, SolveStats& st) {
    ++st.partial_homs_tried;
    detail::LocallyInjectiveCover solver(g, h, cover);
    return solver.solve_for(bases[i], st);
  };
  auto [found, stats] = first_success<Mapping>(bases.size(), opts.threads, task);
  report.stats = stats;
  if (found) {
    report.answer = true;
    report.witness = std::move(*found);
  }
  return report;
}

namespace detail {

// Guest G - v has components of at most two vertices. Returns a witness
// with v -> w when one exists (host loopless).
inline std::optional<Mapping> lihom_two_deletion(const Graph& g, Vertex v, const Graph& h, Vertex w) {
  const auto nbr = g.neighbours(v);
  std::vector<bool> near(static_cast<std::size_t>(g.order()), false);
  for (Vertex a : nbr) near[static_cast<std::size_t>(a)] = true;
  std::vector<std::pair<Vertex, Vertex>> triangles;  // both ends adjacent to v
  std::vector<std::pair<Vertex, Vertex>> pendants;   // (neighbour of v, far end)
  VertexList singles;
  for (const auto& comp : components_without(g, VertexList{v})) {
    if (comp.size() == 1) {
      singles.push_back(comp[0]);
    } else if (near[static_cast<std::size_t>(comp[0])] && near[static_cast<std::size_t>(comp[1])]) {
      triangles.emplace_back(comp[0], comp[1]);
    } else if (near[static_cast<std::size_t>(comp[0])]) {
      pendants.emplace_back(comp[0], comp[1]);
    } else {
      pendants.emplace_back(comp[1], comp[0]);
    }
  }
  const auto hn = h.neighbours(w);
  const VertexList u(hn.begin(), hn.end());
  const std::size_t need = 2 * triangles.size() + pendants.size() + singles.size();
  if (u.size() < need) return std::nullopt;
  Graph local = h.induced(u);
  auto matching = max_matching(local);
  if (matching.size() < triangles.size()) return std::nullopt;
  std::vector<bool> used(u.size(), false);
  Mapping phi(static_cast<std::size_t>(g.order()), -1);
  phi[static_cast<std::size_t>(v)] = w;
  for (std::size_t i = 0; i < triangles.size(); ++i) {
    auto [a, b] = matching[i];
    used[static_cast<std::size_t>(a)] = used[static_cast<std::size_t>(b)] = true;
    phi[static_cast<std::size_t>(triangles[i].first)] = u[static_cast<std::size_t>(a)];
    phi[static_cast<std::size_t>(triangles[i].second)] = u[static_cast<std::size_t>(b)];
  }
  // pendant paths need a neighbour of w with another neighbour besides w
  std::size_t next = 0;
  for (auto [a, b] : pendants) {
    while (next < u.size()) {
      bool good = !used[next] && h.degree(u[next]) >= 2;
      if (good) break;
      ++next;
    }
    if (next == u.size()) return std::nullopt;
    used[next] = true;
    const Vertex x = u[next];
    phi[static_cast<std::size_t>(a)] = x;
    Vertex far = -1;
    for (Vertex y : h.neighbours(x)) {
      if (y != w) {
        far = y;
        break;
      }
    }
    phi[static_cast<std::size_t>(b)] = far;
  }
  std::size_t free_slot = 0;
  for (Vertex a : singles) {
    while (free_slot < u.size() && used[free_slot]) ++free_slot;
    if (free_slot == u.size()) return std::nullopt;
    used[free_slot] = true;
    phi[static_cast<std::size_t>(a)] = u[free_slot];
  }
  return phi;
}

}  // namespace detail

struct LihomOptions {
  int cover_threshold = 3;
  int threads = 1;
};

/// LIHom along the tractable cells: small vertex cover, or a single vertex
/// whose removal leaves components of at most two vertices. Other inputs go
/// to exhaustive search and are labelled as such in the route.
inline SolveReport solve_lihom_special(const Graph& g, const Graph& h, const LihomOptions& opts = {}) {
  detail::require_connected(g, "guest");
  if (h.order() == 0) throw PreconditionError("host must be nonempty");
  if (find_c_deletion_set(g, 1, opts.cover_threshold)) return solve_lihom_xp(g, h, {opts.threads});
  bool host_loopless = true;
  for (Vertex x = 0; x < h.order(); ++x) {
    if (h.has_loop(x)) host_loopless = false;
  }
  auto del = find_c_deletion_set(g, 2, 1);
  SolveReport report;
  if (del && del->size() == 1 && host_loopless) {
    report.route = "two-deletion";
    report.k = 1;
    report.c = 2;
    const Vertex v = del->front();
    for (Vertex w = 0; w < h.order(); ++w) {
      ++report.stats.partial_homs_tried;
      if (auto phi = detail::lihom_two_deletion(g, v, h, w)) {
        if (!check_mapping(g, h, *phi, Mode::inj())) throw std::logic_error("two-deletion witness failed verification");
        report.answer = true;
        report.witness = std::move(*phi);
        return report;
      }
    }
    return report;
  }
  report.route = "brute-force-fallback (outside the tractable cells)";
  if (auto phi = brute_force_hom(g, h, Mode::inj())) {
    report.answer = true;
    report.witness = std::move(*phi);
  }
  return report;
}

}  // namespace locohom
