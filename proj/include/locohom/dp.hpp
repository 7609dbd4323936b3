#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "locohom/decomposition.hpp"
#include "locohom/errors.hpp"
#include "locohom/extension.hpp"
#include "locohom/hom.hpp"

namespace locohom {

struct DpStats {
  std::size_t peak_states = 0;
  std::size_t total_states = 0;
};

namespace detail {

// Dynamic programming over a linear introduce/forget schedule of the
// non-fixed guest vertices. The fixed vertices (domain of phi_P) stay active
// throughout. Every active vertex carries its image and the set of host
// vertices already covered by images of neighbours whose edge has been
// processed. An edge between two non-fixed vertices is processed when the
// first of them is forgotten; edges to fixed vertices when the non-fixed end
// is introduced.
class AugmentingDp {
 public:
  AugmentingDp(const Graph& g, const Graph& h, const PartialHom& phi_p, const Mode& mode, std::size_t state_budget)
      : g_(g), h_(h), mode_(mode), need_surj_(mode.surjective_mask(g.order())), budget_(state_budget) {
    if (h.order() > 64) throw BudgetExceeded("host extension has more than 64 vertices");
    const int n = g.order();
    fixed_.assign(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < phi_p.domain.size(); ++i) {
      Vertex v = phi_p.domain[i];
      Vertex x = phi_p.image[i];
      if (v < 0 || v >= n || x < 0 || x >= h.order()) throw PreconditionError("partial map out of range");
      fixed_[static_cast<std::size_t>(v)] = x;
    }
    for (auto [u, v] : g.edges()) {
      Vertex a = fixed_[static_cast<std::size_t>(u)];
      Vertex b = fixed_[static_cast<std::size_t>(v)];
      if (a >= 0 && b >= 0 && !h.adjacent(a, b)) throw PreconditionError("partial map is not a homomorphism on its domain");
    }
    blocked_.assign(static_cast<std::size_t>(h.order()), false);
    for (Vertex x : phi_p.codomain) blocked_[static_cast<std::size_t>(x)] = true;
    nbr_mask_.assign(static_cast<std::size_t>(h.order()), 0);
    for (Vertex x = 0; x < h.order(); ++x) {
      for (Vertex y : h.neighbours(x)) nbr_mask_[static_cast<std::size_t>(x)] |= bit(y);
    }
    blocked_mask_ = 0;
    for (Vertex x = 0; x < h.order(); ++x) {
      if (blocked_[static_cast<std::size_t>(x)]) blocked_mask_ |= bit(x);
    }
  }

  std::optional<Mapping> run(DpStats* stats) {
    const int n = g_.order();
    for (Vertex v = 0; v < n; ++v) {
      if (fixed_[static_cast<std::size_t>(v)] >= 0) fixed_list_.push_back(v);
      else free_list_.push_back(v);
    }
    if (!initial_fixed_seen()) return std::nullopt;
    if (!build_domains()) return std::nullopt;
    build_schedule();
    auto found = search(stats);
    if (!found) return std::nullopt;
    Mapping phi(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
      if (fixed_[static_cast<std::size_t>(v)] >= 0) phi[static_cast<std::size_t>(v)] = fixed_[static_cast<std::size_t>(v)];
    }
    for (std::size_t i = 0; i < found->size(); ++i) phi[static_cast<std::size_t>(free_list_[i])] = (*found)[i];
    return phi;
  }

 private:
  static std::uint64_t bit(int x) { return std::uint64_t{1} << x; }
  static std::size_t idx(int v) { return static_cast<std::size_t>(v); }
  bool is_fixed(Vertex v) const { return fixed_[idx(v)] >= 0; }

  // Seen sets of fixed vertices from fixed-fixed edges.
  bool initial_fixed_seen() {
    fixed_seen0_.assign(fixed_list_.size(), 0);
    fixed_slot_.assign(idx(g_.order()), -1);
    for (std::size_t i = 0; i < fixed_list_.size(); ++i) fixed_slot_[idx(fixed_list_[i])] = static_cast<int>(i);
    for (std::size_t i = 0; i < fixed_list_.size(); ++i) {
      Vertex d = fixed_list_[i];
      for (Vertex w : g_.neighbours(d)) {
        if (!is_fixed(w)) continue;
        std::uint64_t b = bit(fixed_[idx(w)]);
        if (mode_.injective() && (fixed_seen0_[i] & b)) return false;
        fixed_seen0_[i] |= b;
      }
    }
    return true;
  }

  // Static candidate filters followed by arc consistency to a fixpoint.
  bool build_domains() {
    const int n = g_.order();
    domain_.assign(idx(n), 0);
    for (Vertex v : free_list_) {
      std::uint64_t fixed_images = 0;
      int fixed_count = 0;
      bool fixed_repeat = false;
      for (Vertex d : g_.neighbours(v)) {
        if (!is_fixed(d)) continue;
        std::uint64_t b = bit(fixed_[idx(d)]);
        if (fixed_images & b) fixed_repeat = true;
        fixed_images |= b;
        ++fixed_count;
      }
      if (fixed_repeat && mode_.injective()) return false;
      const int free_count = g_.degree(v) - fixed_count;
      std::uint64_t dom = 0;
      for (Vertex x = 0; x < h_.order(); ++x) {
        if (blocked_[idx(x)]) continue;
        std::uint64_t nx = nbr_mask_[idx(x)];
        if ((fixed_images & ~nx) != 0) continue;
        int free_h = std::popcount(nx & ~blocked_mask_);
        if (mode_.injective() && free_count > free_h) continue;
        if (need_surj_[idx(v)]) {
          if ((nx & blocked_mask_ & ~fixed_images) != 0) continue;
          if (free_count < free_h) continue;
        }
        dom |= bit(x);
      }
      if (dom == 0) return false;
      domain_[idx(v)] = dom;
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (Vertex v : free_list_) {
        std::uint64_t dom = domain_[idx(v)];
        std::uint64_t keep = 0;
        for (std::uint64_t rest = dom; rest; rest &= rest - 1) {
          int x = std::countr_zero(rest);
          if (supported(v, x)) keep |= bit(x);
        }
        if (keep != dom) {
          if (keep == 0) return false;
          domain_[idx(v)] = keep;
          changed = true;
        }
      }
    }
    return true;
  }

  bool supported(Vertex v, int x) const {
    std::uint64_t nx = nbr_mask_[idx(x)];
    std::uint64_t reach = 0;
    for (Vertex w : g_.neighbours(v)) {
      if (is_fixed(w)) continue;
      std::uint64_t options = domain_[idx(w)] & nx;
      if (options == 0) return false;
      reach |= options;
    }
    if (need_surj_[idx(v)] && (nx & ~blocked_mask_ & ~reach) != 0) return false;
    return true;
  }

  struct Step {
    bool introduce;
    Vertex v;
  };

  // Vertex order per component of G - fixed: the narrow deletion set first,
  // then its pieces, for small components; a greedy frontier-minimising
  // order for large ones. A vertex is forgotten right after its last
  // non-fixed neighbour is introduced.
  void build_schedule() {
    VertexList order;
    std::vector<bool> removed(idx(g_.order()), false);
    for (Vertex v : fixed_list_) removed[idx(v)] = true;
    for (const auto& comp : connected_components(g_, removed)) {
      if (comp.size() <= 16) {
        auto sets = narrow_component_sets(g_.induced(comp), {});
        const auto& s = sets.front();
        std::vector<bool> local_removed(comp.size(), false);
        for (Vertex v : s) {
          order.push_back(comp[idx(v)]);
          local_removed[idx(v)] = true;
        }
        for (const auto& piece : connected_components(g_.induced(comp), local_removed)) {
          for (Vertex v : piece) order.push_back(comp[idx(v)]);
        }
      } else {
        greedy_order(comp, order);
      }
    }
    std::vector<int> pending(idx(g_.order()), 0);
    for (Vertex v : free_list_) {
      for (Vertex w : g_.neighbours(v)) {
        if (!is_fixed(w) && w != v) ++pending[idx(v)];
      }
    }
    std::vector<bool> introduced(idx(g_.order()), false);
    for (Vertex v : order) {
      schedule_.push_back({true, v});
      introduced[idx(v)] = true;
      for (Vertex w : g_.neighbours(v)) {
        if (!is_fixed(w) && w != v) --pending[idx(w)];
      }
      if (pending[idx(v)] == 0) schedule_.push_back({false, v});
      for (Vertex w : g_.neighbours(v)) {
        if (!is_fixed(w) && w != v && introduced[idx(w)] && pending[idx(w)] == 0) schedule_.push_back({false, w});
      }
    }
  }

  void greedy_order(const VertexList& comp, VertexList& order) {
    std::vector<bool> in(idx(g_.order()), false);
    std::vector<bool> placed(idx(g_.order()), false);
    for (Vertex v : comp) in[idx(v)] = true;
    std::vector<int> left(idx(g_.order()), 0);
    for (Vertex v : comp) {
      for (Vertex w : g_.neighbours(v)) {
        if (in[idx(w)] && w != v) ++left[idx(v)];
      }
    }
    for (std::size_t step = 0; step < comp.size(); ++step) {
      Vertex best = -1;
      int best_score = 0;
      for (Vertex v : comp) {
        if (placed[idx(v)]) continue;
        // frontier change: +1 for v unless it closes immediately, -1 for
        // each placed neighbour this closes
        int score = 0;
        int unplaced_nbrs = 0;
        bool touches = false;
        for (Vertex w : g_.neighbours(v)) {
          if (!in[idx(w)] || w == v) continue;
          if (placed[idx(w)]) {
            touches = true;
            if (left[idx(w)] == 1) --score;
          } else {
            ++unplaced_nbrs;
          }
        }
        if (unplaced_nbrs > 0) ++score;
        if (step > 0 && !touches) score += 1000;
        if (best < 0 || score < best_score) {
          best = v;
          best_score = score;
        }
      }
      placed[idx(best)] = true;
      order.push_back(best);
      for (Vertex w : g_.neighbours(best)) {
        if (in[idx(w)] && w != best) --left[idx(w)];
      }
    }
  }

  // ---- table search ----

  struct Layer {
    std::vector<int> parent;
    std::vector<std::uint8_t> image;  // introduce layers only
  };

  std::optional<std::vector<int>> search(DpStats* stats) {
    const int n = g_.order();
    const std::size_t nf = fixed_list_.size();
    // slot assignment for free vertices
    std::vector<int> slot(idx(n), -1);
    std::vector<int> free_slots;
    int slots_used = 0;
    std::vector<int> slot_of_step(schedule_.size());
    for (std::size_t i = 0; i < schedule_.size(); ++i) {
      Vertex v = schedule_[i].v;
      if (schedule_[i].introduce) {
        int s;
        if (!free_slots.empty()) {
          s = free_slots.back();
          free_slots.pop_back();
        } else {
          s = slots_used++;
        }
        slot[idx(v)] = s;
      } else {
        free_slots.push_back(slot[idx(v)]);
      }
      slot_of_step[i] = slot[idx(v)];
    }
    const std::size_t ns = static_cast<std::size_t>(slots_used);
    // remaining non-fixed neighbours (not yet introduced) of each fixed
    // vertex after each step, for coverage pruning
    std::vector<std::vector<int>> fixed_remaining(schedule_.size() + 1, std::vector<int>(nf, 0));
    {
      std::vector<int> rem(nf, 0);
      for (std::size_t i = 0; i < nf; ++i) {
        for (Vertex w : g_.neighbours(fixed_list_[i])) {
          if (!is_fixed(w)) ++rem[i];
        }
      }
      fixed_remaining[0] = rem;
      for (std::size_t i = 0; i < schedule_.size(); ++i) {
        if (schedule_[i].introduce) {
          for (Vertex w : g_.neighbours(schedule_[i].v)) {
            if (is_fixed(w)) --rem[idx(fixed_slot_[idx(w)])];
          }
        }
        fixed_remaining[i + 1] = rem;
      }
    }
    std::vector<bool> active(idx(n), false);
    std::vector<bool> gone(idx(n), false);

    // key layout: [fixed seen (nf)] [slot seen (ns)] [slot images packed]
    const std::size_t img_words = (ns + 7) / 8;
    const std::size_t key_len = nf + ns + img_words;
    auto get_img = [&](const std::vector<std::uint64_t>& key, std::size_t s) -> int {
      return static_cast<int>((key[nf + ns + s / 8] >> (8 * (s % 8))) & 0xff);
    };
    auto set_img = [&](std::vector<std::uint64_t>& key, std::size_t s, int x) {
      auto& w = key[nf + ns + s / 8];
      w &= ~(std::uint64_t{0xff} << (8 * (s % 8)));
      w |= static_cast<std::uint64_t>(x & 0xff) << (8 * (s % 8));
    };
    struct KeyHash {
      std::size_t operator()(const std::vector<std::uint64_t>& k) const {
        std::uint64_t hsh = 0x9e3779b97f4a7c15ULL;
        for (auto w : k) {
          hsh ^= w + 0x9e3779b97f4a7c15ULL + (hsh << 6) + (hsh >> 2);
          hsh *= 0xff51afd7ed558ccdULL;
        }
        return static_cast<std::size_t>(hsh ^ (hsh >> 33));
      }
    };

    std::vector<std::vector<std::uint64_t>> current;
    {
      std::vector<std::uint64_t> key(key_len, 0);
      for (std::size_t i = 0; i < nf; ++i) key[i] = fixed_seen0_[i];
      for (std::size_t s = 0; s < ns; ++s) set_img(key, s, 0xff);
      current.push_back(std::move(key));
    }
    if (!fixed_coverage_possible(current.front(), fixed_remaining[0])) return std::nullopt;
    std::vector<Layer> layers;
    layers.reserve(schedule_.size());
    std::size_t total = 1;
    std::size_t peak = 1;

    for (std::size_t step = 0; step < schedule_.size(); ++step) {
      const Step st = schedule_[step];
      const Vertex v = st.v;
      const std::size_t sv = static_cast<std::size_t>(slot_of_step[step]);
      Layer layer;
      std::vector<std::vector<std::uint64_t>> next;
      std::unordered_map<std::vector<std::uint64_t>, int, KeyHash> index;
      // active free neighbours of v (their slots)
      std::vector<std::size_t> bag_nbrs;
      for (Vertex w : g_.neighbours(v)) {
        if (w != v && !is_fixed(w) && active[idx(w)]) bag_nbrs.push_back(static_cast<std::size_t>(slot[idx(w)]));
      }
      std::vector<std::size_t> fixed_nbrs;
      for (Vertex w : g_.neighbours(v)) {
        if (is_fixed(w)) fixed_nbrs.push_back(static_cast<std::size_t>(fixed_slot_[idx(w)]));
      }
      std::uint64_t fixed_nbr_images = 0;
      for (Vertex w : g_.neighbours(v)) {
        if (is_fixed(w)) fixed_nbr_images |= bit(fixed_[idx(w)]);
      }
      // unprocessed free-neighbour edges of active free vertices after this step
      auto bag_pending = [&](Vertex u) {
        int c = 0;
        for (Vertex w : g_.neighbours(u)) {
          if (w != u && !is_fixed(w) && !gone[idx(w)]) ++c;
        }
        return c;
      };

      auto emit = [&](std::vector<std::uint64_t>&& key, int parent, int image) {
        auto [it, inserted] = index.emplace(key, static_cast<int>(next.size()));
        if (!inserted) return;
        next.push_back(std::move(key));
        layer.parent.push_back(parent);
        if (st.introduce) layer.image.push_back(static_cast<std::uint8_t>(image));
        if (next.size() > budget_) throw BudgetExceeded("augmenting homomorphism table exceeded its state budget");
      };

      if (st.introduce) {
        const bool self_loop = g_.has_loop(v);
        for (std::size_t e = 0; e < current.size(); ++e) {
          const auto& key = current[e];
          for (std::uint64_t rest = domain_[idx(v)]; rest; rest &= rest - 1) {
            int x = std::countr_zero(rest);
            bool ok = true;
            for (std::size_t s : bag_nbrs) {
              if (!h_.adjacent(x, get_img(key, s))) {
                ok = false;
                break;
              }
            }
            if (!ok) continue;
            if (self_loop && !h_.adjacent(x, x)) continue;
            auto nk = key;
            for (std::size_t f : fixed_nbrs) {
              if (mode_.injective() && (nk[f] & bit(x))) {
                ok = false;
                break;
              }
              nk[f] |= bit(x);
            }
            if (!ok) continue;
            nk[nf + sv] = fixed_nbr_images;
            set_img(nk, sv, x);
            if (!fixed_coverage_possible(nk, fixed_remaining[step + 1])) continue;
            emit(std::move(nk), static_cast<int>(e), x);
          }
        }
        active[idx(v)] = true;
      } else {
        // process edges from v to active free neighbours, then finalise v
        for (std::size_t e = 0; e < current.size(); ++e) {
          auto nk = current[e];
          const int xv = get_img(nk, sv);
          bool ok = true;
          for (std::size_t s : bag_nbrs) {
            int xw = get_img(nk, s);
            if (mode_.injective() && ((nk[nf + sv] & bit(xw)) || (nk[nf + s] & bit(xv)))) {
              ok = false;
              break;
            }
            nk[nf + sv] |= bit(xw);
            nk[nf + s] |= bit(xv);
          }
          if (!ok) continue;
          if (g_.has_loop(v)) {
            if (mode_.injective() && (nk[nf + sv] & bit(xv))) continue;
            nk[nf + sv] |= bit(xv);
          }
          if (need_surj_[idx(v)] && nk[nf + sv] != nbr_mask_[idx(xv)]) continue;
          nk[nf + sv] = 0;
          set_img(nk, sv, 0xff);
          emit(std::move(nk), static_cast<int>(e), -1);
        }
        active[idx(v)] = false;
        gone[idx(v)] = true;
        // coverage pruning for bag vertices with surjectivity demands
        std::vector<std::pair<std::size_t, int>> checks;
        for (Vertex u : free_list_) {
          if (active[idx(u)] && need_surj_[idx(u)]) checks.emplace_back(static_cast<std::size_t>(slot[idx(u)]), bag_pending(u));
        }
        if (!checks.empty()) {
          std::vector<std::vector<std::uint64_t>> kept;
          Layer filtered;
          for (std::size_t e = 0; e < next.size(); ++e) {
            bool ok = true;
            for (auto [s, pend] : checks) {
              int x = get_img(next[e], s);
              if (std::popcount(nbr_mask_[idx(x)] & ~next[e][nf + s]) > pend) {
                ok = false;
                break;
              }
            }
            if (!ok) continue;
            kept.push_back(std::move(next[e]));
            filtered.parent.push_back(layer.parent[e]);
          }
          next = std::move(kept);
          layer = std::move(filtered);
        }
      }
      total += next.size();
      peak = std::max(peak, next.size());
      layers.push_back(std::move(layer));
      current = std::move(next);
      if (current.empty()) break;
    }
    if (stats) {
      stats->peak_states = std::max(stats->peak_states, peak);
      stats->total_states += total;
    }
    // final check on fixed vertices
    int accept = -1;
    if (layers.size() == schedule_.size()) {
      for (std::size_t e = 0; e < current.size() && accept < 0; ++e) {
        bool ok = true;
        for (std::size_t i = 0; i < nf && ok; ++i) {
          Vertex d = fixed_list_[i];
          if (need_surj_[idx(d)] && current[e][i] != nbr_mask_[idx(fixed_[idx(d)])]) ok = false;
        }
        if (ok) accept = static_cast<int>(e);
      }
    } else {
      return std::nullopt;
    }
    if (accept < 0) return std::nullopt;
    // walk back
    std::vector<int> image_of(idx(n), -1);
    int e = accept;
    for (std::size_t step = schedule_.size(); step-- > 0;) {
      const Layer& layer = layers[step];
      if (schedule_[step].introduce) image_of[idx(schedule_[step].v)] = layer.image[idx(e)];
      e = layer.parent[idx(e)];
    }
    std::vector<int> out;
    for (Vertex v : free_list_) out.push_back(image_of[idx(v)]);
    return out;
  }

  bool fixed_coverage_possible(const std::vector<std::uint64_t>& key, const std::vector<int>& remaining) const {
    for (std::size_t i = 0; i < fixed_list_.size(); ++i) {
      Vertex d = fixed_list_[i];
      if (!need_surj_[idx(d)]) continue;
      if (std::popcount(nbr_mask_[idx(fixed_[idx(d)])] & ~key[i]) > remaining[i]) return false;
    }
    return true;
  }

  const Graph& g_;
  const Graph& h_;
  const Mode& mode_;
  std::vector<bool> need_surj_;
  std::size_t budget_;
  std::vector<int> fixed_;
  std::vector<bool> blocked_;
  std::uint64_t blocked_mask_ = 0;
  std::vector<std::uint64_t> nbr_mask_;
  VertexList fixed_list_;
  VertexList free_list_;
  std::vector<int> fixed_slot_;
  std::vector<std::uint64_t> fixed_seen0_;
  std::vector<std::uint64_t> domain_;
  std::vector<Step> schedule_;
};

}  // namespace detail

/// A total map extending phi_P that satisfies `mode` and sends no vertex
/// outside phi_P's domain into its codomain; nullopt if none exists.
inline std::optional<Mapping> exists_augmenting_hom(const Graph& g, const Graph& h, const PartialHom& phi_p, const Mode& mode,
                                                    DpStats* stats = nullptr, std::size_t state_budget = 4'000'000) {
  if (g.order() == 0) return Mapping{};
  detail::AugmentingDp dp(g, h, phi_p, mode, state_budget);
  return dp.run(stats);
}

/// Base-to-base partial map of two extensions: base vertex i of ext_g goes
/// to base_image[i].
inline PartialHom base_partial_hom(const Extension& ext_g, const Extension& ext_h, const VertexList& base_image) {
  PartialHom p;
  for (int i = 0; i < ext_g.base; ++i) p.domain.push_back(i);
  for (int i = 0; i < ext_h.base; ++i) p.codomain.push_back(i);
  p.image = base_image;
  return p;
}

inline std::optional<Mapping> exists_augmenting_hom(const Extension& ext_g, const Extension& ext_h, const VertexList& base_image,
                                                    const Mode& mode, DpStats* stats = nullptr) {
  return exists_augmenting_hom(ext_g.graph, ext_h.graph, base_partial_hom(ext_g, ext_h, base_image), mode, stats);
}

enum class MapVariant { WeakS, S, B };

inline Mode variant_mode(MapVariant variant, int base) {
  switch (variant) {
    case MapVariant::WeakS: {
      VertexList exempt;
      for (int i = 0; i < base; ++i) exempt.push_back(i);
      return Mode::weak_surj(std::move(exempt));
    }
    case MapVariant::S: return Mode::surj();
    case MapVariant::B: return Mode::bij();
  }
  return Mode::surj();
}

/// Witness that ext_g can be (weakly) S-mapped or B-mapped to the type.
inline std::optional<Mapping> map_to_type(const Extension& ext_g, const TypeClass& type, const VertexList& base_image,
                                          MapVariant variant, DpStats* stats = nullptr) {
  return exists_augmenting_hom(ext_g, type.canonical, base_image, variant_mode(variant, ext_g.base), stats);
}

inline bool can_be_mapped(const Extension& ext_g, const TypeClass& type, const VertexList& base_image, MapVariant variant,
                          DpStats* stats = nullptr) {
  return map_to_type(ext_g, type, base_image, variant, stats).has_value();
}

}  // namespace locohom
