#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "locohom/deletion.hpp"
#include "locohom/dp.hpp"
#include "locohom/extension.hpp"
#include "locohom/hom.hpp"
#include "locohom/ilp.hpp"
#include "locohom/report.hpp"

namespace locohom {

/// Locally surjective (bijective) homomorphisms from d_g onto d_h, as image
/// vectors in lexicographic order. Empty when |V(d_h)| > |V(d_g)|.
inline std::vector<VertexList> enumerate_partial_homs(const Graph& d_g, const Graph& d_h, bool bijective) {
  std::vector<VertexList> out;
  const int n = d_g.order();
  const int m = d_h.order();
  if (m > n) return out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  Mode mode = bijective ? Mode::bij() : Mode::surj();
  VertexList img(static_cast<std::size_t>(n), 0);
  std::function<void(int)> rec = [&](int v) {
    if (v == n) {
      std::vector<bool> hit(static_cast<std::size_t>(m), false);
      for (Vertex x : img) hit[static_cast<std::size_t>(x)] = true;
      if (std::find(hit.begin(), hit.end(), false) != hit.end()) return;
      if (check_mapping(d_g, d_h, img, mode)) out.push_back(img);
      return;
    }
    for (Vertex x = 0; x < m; ++x) {
      bool ok = true;
      for (Vertex u : d_g.neighbours(v)) {
        if (u < v && !d_h.adjacent(img[static_cast<std::size_t>(u)], x)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      img[static_cast<std::size_t>(v)] = x;
      rec(v + 1);
    }
  };
  rec(0);
  return out;
}

/// Mapping sets for one base map: weak pairs (guest type, host type) and
/// minimal mapped extensions (count vectors over guest types).
struct MappingSets {
  std::vector<std::pair<int, int>> wsm;
  std::vector<MappedExtension> mapped;
};

/// The guest side of the framework: G, the base D (in order) and the census
/// of G - D.
struct GuestSide {
  const Graph* g = nullptr;
  VertexList d;
  TypeCensus census;
};

namespace detail {

// Edges from base vertex i into one component of a type representative.
inline std::vector<int> base_edge_counts(const Extension& rep) {
  std::vector<int> out(static_cast<std::size_t>(rep.base), 0);
  for (int i = 0; i < rep.base; ++i) {
    for (Vertex w : rep.graph.neighbours(i)) {
      if (w >= rep.base) ++out[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

}  // namespace detail

/// wSM and SM (or BM) for base map phi_p (phi_p[i] = index in D_H of the
/// image of D[i]). Host types with zero upper bound are skipped.
inline MappingSets compute_mapping_sets(const GuestSide& guest, const TargetDescription& desc, const VertexList& phi_p, bool bijective,
                                        const std::vector<long long>& type_upper, SolveStats& stats) {
  MappingSets out;
  const auto& census = guest.census;
  const std::size_t ng = census.types.size();
  const std::size_t nh = desc.types.size();
  const int base_g = static_cast<int>(guest.d.size());
  const int base_h = desc.d_h.order();
  std::vector<std::vector<bool>> weak(ng, std::vector<bool>(nh, false));
  for (std::size_t t = 0; t < nh; ++t) {
    if (t < type_upper.size() && type_upper[t] == 0) continue;
    for (std::size_t g = 0; g < ng; ++g) {
      ++stats.dp_calls;
      if (can_be_mapped(census.types[g].canonical, desc.types[t], phi_p, MapVariant::WeakS)) {
        weak[g][t] = true;
        out.wsm.emplace_back(static_cast<int>(g), static_cast<int>(t));
      }
    }
  }
  std::vector<std::vector<int>> guest_edges;
  std::vector<int> guest_sizes;
  for (const auto& type : census.types) {
    guest_edges.push_back(detail::base_edge_counts(type.canonical));
    guest_sizes.push_back(type.size() - base_g);
  }
  for (std::size_t t = 0; t < nh; ++t) {
    if (t < type_upper.size() && type_upper[t] == 0) continue;
    const Extension& rep = desc.types[t].canonical;
    const int new_h = rep.order() - base_h;
    auto host_edges = detail::base_edge_counts(rep);
    // demand on each guest base vertex: neighbours of its image in the type
    std::vector<int> demand(static_cast<std::size_t>(base_g));
    for (int i = 0; i < base_g; ++i) demand[static_cast<std::size_t>(i)] = host_edges[static_cast<std::size_t>(phi_p[static_cast<std::size_t>(i)])];
    std::vector<int> allowed;
    for (std::size_t g = 0; g < ng; ++g) {
      if (weak[g][t]) allowed.push_back(static_cast<int>(g));
    }
    if (allowed.empty()) continue;
    const int bound = std::max(1, base_g * new_h);
    std::vector<std::vector<int>> accepted;
    std::vector<int> cur(ng, 0);
    for (int total = 1; total <= bound; ++total) {
      bool any_shape = false;
      std::function<void(std::size_t, int)> rec = [&](std::size_t a, int left) {
        if (a == allowed.size()) {
          if (left != 0) return;
          any_shape = true;
          for (const auto& acc : accepted) {
            bool dominates = true;
            for (std::size_t g = 0; g < ng; ++g) {
              if (acc[g] > cur[g]) {
                dominates = false;
                break;
              }
            }
            if (dominates) return;
          }
          int vertices = 0;
          for (std::size_t g = 0; g < ng; ++g) vertices += cur[g] * guest_sizes[g];
          if (vertices < new_h) return;
          for (int i = 0; i < base_g; ++i) {
            int have = 0;
            for (std::size_t g = 0; g < ng; ++g) have += cur[g] * guest_edges[g][static_cast<std::size_t>(i)];
            int need = demand[static_cast<std::size_t>(i)];
            if (bijective ? have != need : have < need) return;
          }
          Extension ext = materialize(*guest.g, census, cur);
          ++stats.dp_calls;
          if (can_be_mapped(ext, desc.types[t], phi_p, bijective ? MapVariant::B : MapVariant::S)) {
            accepted.push_back(cur);
            out.mapped.push_back({cur, static_cast<int>(t)});
          }
          return;
        }
        const std::size_t g = static_cast<std::size_t>(allowed[a]);
        const int cap = std::min(left, census.counts[g]);
        for (int c = cap; c >= 0; --c) {
          cur[g] = c;
          rec(a + 1, left - c);
        }
        cur[g] = 0;
      };
      rec(0, total);
      if (!any_shape) break;
    }
  }
  return out;
}

/// A host assembled from D_H and copies of type representatives, with a
/// homomorphism onto it.
struct DecPartResult {
  Graph host;
  Mapping phi;
  std::vector<long long> type_counts;  // copies of each description type
  // host vertex ranges: copy j of the assembly occupies [begin, begin + size)
  std::vector<int> copy_type;
  std::vector<int> copy_begin;
};

/// Decides whether some host satisfying desc admits an augmenting locally
/// surjective (bijective) homomorphism extending phi_p; reconstructs both.
inline std::optional<DecPartResult> dec_part(const GuestSide& guest, const TargetDescription& desc, const VertexList& phi_p, bool bijective,
                                             const std::vector<long long>& type_upper, SolveStats& stats) {
  const auto sets = compute_mapping_sets(guest, desc, phi_p, bijective, type_upper, stats);
  const auto& census = guest.census;
  ILPModel model = build_model_SB(census.counts, bijective ? std::nullopt : std::optional(sets.wsm), sets.mapped, desc, bijective, type_upper);
  if (!model.infeasible_reason.empty()) return std::nullopt;
  ++stats.ilp_solves;
  auto sol = solve_feasibility(model);
  if (!sol) return std::nullopt;

  const std::size_t nh = desc.types.size();
  const int base_g = static_cast<int>(guest.d.size());
  const int base_h = desc.d_h.order();
  DecPartResult res;
  res.type_counts.assign(sol->begin(), sol->begin() + static_cast<long>(nh));
  // assemble the host
  int total = base_h;
  for (std::size_t t = 0; t < nh; ++t) total += static_cast<int>(res.type_counts[t]) * (desc.types[t].size() - base_h);
  Graph host(total, true);
  for (auto [u, v] : desc.d_h.edges()) host.add_edge(u, v);
  std::vector<std::vector<int>> copies_of(nh);
  int next_vertex = base_h;
  for (std::size_t t = 0; t < nh; ++t) {
    const Extension& rep = desc.types[t].canonical;
    for (long long j = 0; j < res.type_counts[t]; ++j) {
      const int begin = next_vertex;
      auto place = [&](Vertex x) { return x < base_h ? x : begin + (x - base_h); };
      for (auto [u, v] : rep.graph.edges()) {
        if (u >= base_h || v >= base_h) host.add_edge(place(u), place(v));
      }
      copies_of[t].push_back(static_cast<int>(res.copy_type.size()));
      res.copy_type.push_back(static_cast<int>(t));
      res.copy_begin.push_back(begin);
      next_vertex += rep.order() - base_h;
    }
  }
  res.host = std::move(host);

  const Graph& g = *guest.g;
  Mapping phi(static_cast<std::size_t>(g.order()), -1);
  for (int i = 0; i < base_g; ++i) phi[static_cast<std::size_t>(guest.d[static_cast<std::size_t>(i)])] = phi_p[static_cast<std::size_t>(i)];
  std::vector<std::size_t> next_comp(census.types.size(), 0);
  std::vector<VertexList> comps_by_type;
  for (std::size_t t = 0; t < census.types.size(); ++t) comps_by_type.push_back(census.components_of_type(static_cast<int>(t)));
  std::vector<std::size_t> next_copy(nh, 0);

  auto map_part = [&](const VertexList& comps, int copy, MapVariant variant) {
    VertexList rest;
    for (int ci : comps) {
      const auto& comp = census.components[static_cast<std::size_t>(ci)];
      rest.insert(rest.end(), comp.begin(), comp.end());
    }
    Extension ext = cut_extension(g, guest.d, rest);
    const int t = res.copy_type[static_cast<std::size_t>(copy)];
    ++stats.dp_calls;
    auto psi = map_to_type(ext, desc.types[static_cast<std::size_t>(t)], phi_p, variant);
    if (!psi) throw std::logic_error("mapped extension lost its witness during reconstruction");
    const int begin = res.copy_begin[static_cast<std::size_t>(copy)];
    for (int j = base_g; j < ext.order(); ++j) {
      phi[static_cast<std::size_t>(ext.origin[static_cast<std::size_t>(j)])] = begin + ((*psi)[static_cast<std::size_t>(j)] - base_h);
    }
  };

  const int first_pair = static_cast<int>(nh);
  for (std::size_t i = 0; i < sets.mapped.size(); ++i) {
    const auto& e = sets.mapped[i];
    for (long long rep = 0; rep < (*sol)[static_cast<std::size_t>(first_pair) + i]; ++rep) {
      VertexList comps;
      for (std::size_t t = 0; t < e.counts.size(); ++t) {
        for (int j = 0; j < e.counts[t]; ++j) comps.push_back(comps_by_type[t][next_comp[t]++]);
      }
      const auto th = static_cast<std::size_t>(e.host_type);
      int copy = copies_of[th][next_copy[th]++];
      map_part(comps, copy, bijective ? MapVariant::B : MapVariant::S);
    }
  }
  // components left over by (S1) go weakly to any used copy of a compatible type
  for (std::size_t t = 0; t < census.types.size(); ++t) {
    while (next_comp[t] < comps_by_type[t].size()) {
      int target = -1;
      for (auto [tg, th] : sets.wsm) {
        if (tg == static_cast<int>(t) && !copies_of[static_cast<std::size_t>(th)].empty()) {
          target = copies_of[static_cast<std::size_t>(th)].front();
          break;
        }
      }
      if (target < 0 || bijective) throw std::logic_error("leftover component without a compatible host copy");
      map_part({comps_by_type[t][next_comp[t]++]}, target, MapVariant::WeakS);
    }
  }
  res.phi = std::move(phi);
  if (!check_mapping(g, res.host, res.phi, bijective ? Mode::bij() : Mode::surj())) {
    throw std::logic_error("reconstructed homomorphism failed verification");
  }
  return res;
}

/// c' for the types of H - D_H^{k+c}: D_H^{k+c} is a kc(k+c)-deletion set
/// when k >= 1; with k = 0 the graph itself has at most c vertices.
inline int type_size_bound(int k, int c) { return std::max(c, k * c * (k + c)); }

namespace detail {

inline void require_connected(const Graph& g, const char* what) {
  if (!is_connected(g)) throw PreconditionError(std::string(what) + " must be connected and nonempty");
}

inline std::vector<VertexList> subsets_of(const VertexList& set) {
  std::vector<VertexList> out;
  const std::size_t n = set.size();
  // by size, then lexicographically
  for (std::size_t size = 0; size <= n; ++size) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
    do {
      VertexList s;
      for (std::size_t i = 0; i < n; ++i) {
        if (pick[i]) s.push_back(set[i]);
      }
      out.push_back(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

}  // namespace detail

struct SolveOptions {
  int threads = 1;
};

/// LSHom / LBHom for G with a c-deletion set of size at most k.
inline SolveReport solve_constrained_hom(const Graph& g, const Graph& h, bool bijective, int k, int c, const SolveOptions& opts = {}) {
  detail::require_connected(g, "guest");
  detail::require_connected(h, "host");
  if (g.allows_loops()) {
    for (Vertex v = 0; v < g.order(); ++v) {
      if (g.has_loop(v)) throw PreconditionError("guest must be loopless");
    }
  }
  if (k < 0 || c < 1) throw PreconditionError("need k >= 0 and c >= 1");
  if (!find_c_deletion_set(g, c, k)) throw PreconditionError("guest has no c-deletion set of size at most k");
  SolveReport report;
  report.route = bijective ? "fpt-lbhom" : "fpt-lshom";
  report.k = k;
  report.c = c;
  // a locally surjective map onto a connected host is onto
  if (h.order() > g.order()) return report;
  // the image of a c-deletion set is a c-deletion set
  if (!find_c_deletion_set(h, c, k)) return report;
  const VertexList dh_set = high_degree_set(h, k + c);
  const Graph d_h = h.induced(dh_set);
  const TypeCensus host_census = compute_types(h, dh_set);
  const int c_prime = type_size_bound(k, c);
  TargetDescription desc;
  desc.d_h = d_h;
  desc.c_prime = c_prime;
  desc.types = host_census.types;
  std::vector<long long> upper;
  for (std::size_t t = 0; t < desc.types.size(); ++t) {
    if (desc.types[t].size() - d_h.order() > c_prime) throw std::logic_error("host component exceeds the type size bound");
    desc.ch.push_back({{{static_cast<int>(t), 1}}, Relation::Eq, host_census.counts[t]});
    upper.push_back(host_census.counts[t]);
  }
  const VertexList dg_high = high_degree_set(g, k + c);
  std::vector<VertexList> bases;
  if (bijective) bases.push_back(dg_high);
  else bases = detail::subsets_of(dg_high);

  struct Branch {
    std::size_t base;
    VertexList phi_p;
  };
  std::vector<GuestSide> guests;
  std::vector<Branch> branches;
  SolveStats setup;
  for (std::size_t b = 0; b < bases.size(); ++b) {
    const auto& d = bases[b];
    ++setup.subsets_tried;
    if (static_cast<int>(d.size()) < d_h.order()) continue;
    auto homs = enumerate_partial_homs(g.induced(d), d_h, bijective);
    if (homs.empty()) continue;
    guests.push_back({&g, d, compute_types(g, d)});
    for (auto& p : homs) branches.push_back({guests.size() - 1, std::move(p)});
  }
  std::function<std::optional<DecPartResult>(std::size_t, SolveStats&)> task = [&](std::size_t i, SolveStats& st) {
    ++st.partial_homs_tried;
    const auto& br = branches[i];
    return dec_part(guests[br.base], desc, br.phi_p, bijective, upper, st);
  };
  auto [found, stats] = first_success<DecPartResult>(branches.size(), opts.threads, task);
  stats += setup;
  report.stats = stats;
  if (!found) return report;
  // identify the assembled host with H: copy j of type t is the j-th
  // component of that type in H
  const int base_h = d_h.order();
  std::vector<Vertex> to_h(static_cast<std::size_t>(found->host.order()), -1);
  for (int i = 0; i < base_h; ++i) to_h[static_cast<std::size_t>(i)] = dh_set[static_cast<std::size_t>(i)];
  std::vector<std::size_t> used(host_census.types.size(), 0);
  std::vector<VertexList> comps_by_type;
  for (std::size_t t = 0; t < host_census.types.size(); ++t) comps_by_type.push_back(host_census.components_of_type(static_cast<int>(t)));
  for (std::size_t j = 0; j < found->copy_type.size(); ++j) {
    const auto t = static_cast<std::size_t>(found->copy_type[j]);
    const int ci = comps_by_type[t][used[t]++];
    const auto& comp = host_census.components[static_cast<std::size_t>(ci)];
    const auto& pos = host_census.position_in_type[static_cast<std::size_t>(ci)];
    for (std::size_t a = 0; a < comp.size(); ++a) {
      to_h[static_cast<std::size_t>(found->copy_begin[j] + (pos[a] - base_h))] = comp[a];
    }
  }
  Mapping phi(static_cast<std::size_t>(g.order()));
  for (Vertex v = 0; v < g.order(); ++v) phi[static_cast<std::size_t>(v)] = to_h[static_cast<std::size_t>(found->phi[static_cast<std::size_t>(v)])];
  if (!check_mapping(g, h, phi, bijective ? Mode::bij() : Mode::surj())) {
    throw std::logic_error("witness failed verification against the host");
  }
  report.answer = true;
  report.witness = std::move(phi);
  return report;
}

/// Parameters discovered from the guest, then solve_constrained_hom.
inline SolveReport solve_constrained_hom(const Graph& g, const Graph& h, bool bijective, const SolveOptions& opts = {}) {
  detail::require_connected(g, "guest");
  auto p = discover_fracture_params(g);
  return solve_constrained_hom(g, h, bijective, p.k, p.c, opts);
}

// ---------------------------------------------------------------------------
// Role assignment

namespace detail {

// Loopy graphs on n vertices up to isomorphism, in a fixed order.
inline std::vector<Graph> loopy_graphs(int n) {
  std::vector<Graph> out;
  std::vector<std::string> seen;
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) slots.emplace_back(i, j);
  }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    Graph g(n, true);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (mask >> s & 1) g.add_edge(slots[s].first, slots[s].second);
    }
    auto cert = canonical_form(g).certificate;
    if (std::find(seen.begin(), seen.end(), cert) != seen.end()) continue;
    seen.push_back(cert);
    out.push_back(std::move(g));
  }
  return out;
}

// Does D plus one copy of each type in the set form a connected graph?
inline bool types_connect(const Graph& d, const std::vector<TypeClass>& types, const std::vector<int>& set) {
  const int b = d.order();
  if (b == 0) return set.size() == 1;
  int total = b;
  for (int t : set) total += types[static_cast<std::size_t>(t)].size() - b;
  Graph g(total, true);
  for (auto [u, v] : d.edges()) g.add_edge(u, v);
  int next = b;
  for (int t : set) {
    const auto& rep = types[static_cast<std::size_t>(t)].canonical;
    const int begin = next;
    auto place = [&](Vertex x) { return x < b ? x : begin + (x - b); };
    for (auto [u, v] : rep.graph.edges()) {
      if (u >= b || v >= b) g.add_edge(place(u), place(v));
    }
    next += rep.order() - b;
  }
  return is_connected(g);
}

}  // namespace detail

/// Role Assignment: is there a locally surjective map of G onto some
/// connected graph with h vertices (loops allowed)?
inline SolveReport solve_role_assignment(const Graph& g, int h, int k, int c, const SolveOptions& opts = {}) {
  if (h < 1) throw PreconditionError("role count must be at least 1");
  detail::require_connected(g, "guest");
  if (k < 0 || c < 1) throw PreconditionError("need k >= 0 and c >= 1");
  if (!find_c_deletion_set(g, c, k)) throw PreconditionError("guest has no c-deletion set of size at most k");
  SolveReport report;
  report.route = "fpt-role";
  report.k = k;
  report.c = c;
  if (h > g.order()) return report;
  const VertexList dg_high = high_degree_set(g, k + c);
  const int c_prime = type_size_bound(k, c);

  struct Branch {
    std::size_t guest;
    std::size_t desc;
    VertexList phi_p;
  };
  std::vector<GuestSide> guests;
  std::vector<TargetDescription> descs;
  std::vector<std::vector<long long>> uppers;
  std::vector<Branch> branches;
  SolveStats setup;
  // D_H candidates up to isomorphism, with their descriptions per type set
  const int max_dh = std::min({static_cast<int>(dg_high.size()), k, h});
  std::vector<Graph> dh_graphs;
  for (int s = 0; s <= max_dh; ++s) {
    for (auto& gr : detail::loopy_graphs(s)) dh_graphs.push_back(std::move(gr));
  }
  std::vector<std::vector<std::size_t>> descs_of_dh(dh_graphs.size());
  for (std::size_t di = 0; di < dh_graphs.size(); ++di) {
    const Graph& d_h = dh_graphs[di];
    const int b = d_h.order();
    const int room = h - b;
    const int size_cap = std::min(c_prime, room);
    if (room == 0) {
      // H = D_H itself
      if (!is_connected(d_h)) continue;
      TargetDescription desc{d_h, c_prime, {}, {}};
      descs_of_dh[di].push_back(descs.size());
      descs.push_back(std::move(desc));
      uppers.emplace_back();
      continue;
    }
    if (size_cap < 1) continue;
    auto types = enumerate_abstract_types(d_h, size_cap, true);
    // type sets with total new-vertex size at most room
    std::vector<int> cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int used) {
      if (!cur.empty() && detail::types_connect(d_h, types, cur)) {
        TargetDescription desc;
        desc.d_h = d_h;
        desc.c_prime = c_prime;
        std::vector<long long> upper;
        std::vector<std::pair<int, long long>> count_terms;
        for (std::size_t j = 0; j < cur.size(); ++j) {
          desc.types.push_back(types[static_cast<std::size_t>(cur[j])]);
          const int sz = desc.types.back().size() - b;
          desc.ch.push_back({{{static_cast<int>(j), 1}}, Relation::GreaterEq, 1});
          count_terms.emplace_back(static_cast<int>(j), sz);
          upper.push_back(room / sz);
        }
        desc.ch.push_back({count_terms, Relation::Eq, room});
        if (b == 0) desc.ch.push_back({{{0, 1}}, Relation::Eq, 1});
        descs_of_dh[di].push_back(descs.size());
        descs.push_back(std::move(desc));
        uppers.push_back(std::move(upper));
      }
      for (std::size_t t = from; t < types.size(); ++t) {
        const int sz = types[t].size() - b;
        if (used + sz > room) continue;
        if (b == 0 && !cur.empty()) continue;
        cur.push_back(static_cast<int>(t));
        rec(t + 1, used + sz);
        cur.pop_back();
      }
    };
    rec(0, 0);
  }
  for (const auto& d : detail::subsets_of(dg_high)) {
    ++setup.subsets_tried;
    const Graph d_g = g.induced(d);
    std::size_t guest_index = guests.size();
    bool guest_added = false;
    for (std::size_t di = 0; di < dh_graphs.size(); ++di) {
      if (dh_graphs[di].order() > static_cast<int>(d.size())) continue;
      if (descs_of_dh[di].empty()) continue;
      auto homs = enumerate_partial_homs(d_g, dh_graphs[di], false);
      if (homs.empty()) continue;
      if (!guest_added) {
        guests.push_back({&g, d, compute_types(g, d)});
        guest_added = true;
      }
      for (std::size_t de : descs_of_dh[di]) {
        for (const auto& p : homs) branches.push_back({guest_index, de, p});
      }
    }
  }
  std::function<std::optional<DecPartResult>(std::size_t, SolveStats&)> task = [&](std::size_t i, SolveStats& st) -> std::optional<DecPartResult> {
    ++st.branches;
    ++st.partial_homs_tried;
    const auto& br = branches[i];
    const auto& desc = descs[br.desc];
    if (desc.types.empty()) {
      // the host is D_H: G must equal its base
      if (static_cast<int>(guests[br.guest].d.size()) != g.order()) return std::nullopt;
      DecPartResult r;
      r.host = desc.d_h;
      r.phi.assign(static_cast<std::size_t>(g.order()), -1);
      for (std::size_t i2 = 0; i2 < br.phi_p.size(); ++i2) r.phi[static_cast<std::size_t>(guests[br.guest].d[i2])] = br.phi_p[i2];
      return r;
    }
    return dec_part(guests[br.guest], desc, br.phi_p, false, uppers[br.desc], st);
  };
  auto [found, stats] = first_success<DecPartResult>(branches.size(), opts.threads, task);
  stats += setup;
  report.stats = stats;
  if (!found) return report;
  if (found->host.order() != h || !is_connected(found->host) || !check_mapping(g, found->host, found->phi, Mode::surj())) {
    throw std::logic_error("role assignment witness failed verification");
  }
  report.answer = true;
  report.witness = found->phi;
  report.host = found->host;
  return report;
}

inline SolveReport solve_role_assignment(const Graph& g, int h, const SolveOptions& opts = {}) {
  if (h < 1) throw PreconditionError("role count must be at least 1");
  detail::require_connected(g, "guest");
  auto p = discover_fracture_params(g);
  return solve_role_assignment(g, h, p.k, p.c, opts);
}

}  // namespace locohom
