#include <gtest/gtest.h>

#include <algorithm>
#include <functional>

#include "locohom/generators.hpp"
#include "locohom/lihom.hpp"
#include "locohom/pipeline.hpp"
#include "test_support.hpp"

using namespace locohom;
using namespace locohom::testing;

namespace {

Graph cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph complete(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

const Graph kK2 = make_graph(2, {{0, 1}});
const Graph kP3 = make_graph(3, {{0, 1}, {1, 2}});

TargetDescription pendant_description(long long copies) {
  TargetDescription desc;
  desc.d_h = Graph(1, true);
  desc.c_prime = 1;
  desc.types.push_back(make_type(Extension{make_graph(2, {{0, 1}}, true), 1, {}}));
  desc.ch.push_back({{{0, 1}}, Relation::Eq, copies});
  return desc;
}

// Host types of H - high_degree_set(H, k + c), pinned to their counts.
TargetDescription exact_description(const Graph& h, int k, int c, std::vector<long long>& upper) {
  const VertexList dh = high_degree_set(h, k + c);
  auto census = compute_types(h, dh);
  TargetDescription desc;
  desc.d_h = h.induced(dh);
  desc.c_prime = type_size_bound(k, c);
  desc.types = census.types;
  upper.clear();
  for (std::size_t t = 0; t < desc.types.size(); ++t) {
    desc.ch.push_back({{{static_cast<int>(t), 1}}, Relation::Eq, census.counts[t]});
    upper.push_back(census.counts[t]);
  }
  return desc;
}

// Every non-empty count vector below `counts` (pointwise), excluding counts
// itself. The empty extension maps vacuously when D is empty.
std::vector<std::vector<int>> strictly_below(const std::vector<int>& counts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(counts.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == counts.size()) {
      if (cur != counts && std::any_of(cur.begin(), cur.end(), [](int x) { return x > 0; })) out.push_back(cur);
      return;
    }
    for (int x = 0; x <= counts[i]; ++x) {
      cur[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace

TEST(HighDegreeSet, Examples) {
  EXPECT_EQ(high_degree_set(make_graph(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}}), 2), VertexList{0});
  EXPECT_TRUE(high_degree_set(cycle(6), 3).empty());
  EXPECT_EQ(high_degree_set(make_graph(4, {{0, 1}, {1, 2}, {2, 3}}), 2), (VertexList{1, 2}));
  EXPECT_EQ(high_degree_set(make_graph(2, {{0, 0}, {0, 1}}, true), 2), VertexList{0});
}

TEST(PartialHoms, Examples) {
  EXPECT_EQ(enumerate_partial_homs(Graph(1), Graph(1), false).size(), 1u);
  auto loop = make_graph(1, {{0, 0}}, true);
  auto maps = enumerate_partial_homs(kK2, loop, false);
  ASSERT_EQ(maps.size(), 1u);
  EXPECT_EQ(maps[0], (VertexList{0, 0}));
  EXPECT_TRUE(enumerate_partial_homs(Graph(1), kK2, false).empty());
}

TEST(PartialHoms, CountBound) {
  SplitMix rng{21};
  for (int trial = 0; trial < 300; ++trial) {
    Graph d = random_connected_graph(rng, 1 + rng.below(5), rng.below(60));
    Graph dh = random_connected_graph(rng, 1 + rng.below(4), rng.below(60), true);
    const bool bij = rng.below(2);
    auto maps = enumerate_partial_homs(d, dh, bij);
    long long bound = 1;
    for (int i = 0; i < d.order(); ++i) bound *= d.order();
    EXPECT_LE(static_cast<long long>(maps.size()), bound);
    for (const auto& m : maps) EXPECT_TRUE(check_mapping(d, dh, m, bij ? Mode::bij() : Mode::surj()));
  }
}

TEST(MappingSets, StarFixture) {
  const Graph g = kP3;
  GuestSide guest{&g, {1}, compute_types(g, {1})};
  SolveStats stats;
  for (bool bij : {false, true}) {
    auto sets = compute_mapping_sets(guest, pendant_description(2), {0}, bij, {2}, stats);
    ASSERT_EQ(sets.mapped.size(), 1u);
    EXPECT_EQ(sets.mapped[0].counts, std::vector<int>{1});
    EXPECT_EQ(sets.mapped[0].host_type, 0);
    EXPECT_EQ(sets.wsm, (std::vector<std::pair<int, int>>{{0, 0}}));
  }
  EXPECT_GT(stats.dp_calls, 0);
}

TEST(MappingSets, UnmappableGuestType) {
  // guest type: a triangle through d; host type: a pendant
  const Graph g = make_graph(3, {{0, 1}, {0, 2}, {1, 2}});
  GuestSide guest{&g, {0}, compute_types(g, {0})};
  SolveStats stats;
  auto sets = compute_mapping_sets(guest, pendant_description(1), {0}, false, {1}, stats);
  EXPECT_TRUE(sets.wsm.empty());
  EXPECT_FALSE(dec_part(guest, pendant_description(1), {0}, false, {1}, stats));
}

TEST(DecPart, StarFixture) {
  const Graph g = kP3;
  GuestSide guest{&g, {1}, compute_types(g, {1})};
  SolveStats stats;
  auto yes = dec_part(guest, pendant_description(2), {0}, true, {2}, stats);
  ASSERT_TRUE(yes);
  EXPECT_EQ(canonical_form(yes->host).certificate, canonical_form(kP3.with_loop_policy(true)).certificate);
  EXPECT_TRUE(check_mapping(g, yes->host, yes->phi, Mode::bij()));

  EXPECT_FALSE(dec_part(guest, pendant_description(1), {0}, true, {1}, stats));

  auto surj = dec_part(guest, pendant_description(1), {0}, false, {1}, stats);
  ASSERT_TRUE(surj);
  EXPECT_EQ(surj->host.order(), 2);
  EXPECT_TRUE(check_mapping(g, surj->host, surj->phi, Mode::surj()));
}

TEST(SolveConstrainedHom, Examples) {
  auto r = solve_constrained_hom(cycle(6), cycle(3), true, 2, 2);
  EXPECT_TRUE(r.answer);
  EXPECT_TRUE(check_mapping(cycle(6), cycle(3), r.witness, Mode::bij()));

  r = solve_constrained_hom(cycle(4), kK2, false, 2, 1);
  EXPECT_TRUE(r.answer);
  EXPECT_TRUE(check_mapping(cycle(4), kK2, r.witness, Mode::surj()));
  EXPECT_FALSE(solve_constrained_hom(cycle(4), kK2, true, 2, 1).answer);

  EXPECT_TRUE(solve_constrained_hom(cycle(6), cycle(3), true).answer);
  EXPECT_FALSE(solve_constrained_hom(cycle(4), kK2, true).answer);
}

TEST(SolveConstrainedHom, ParameterPreconditions) {
  // C6 - v is P5 and C4 - v is P3: neither fits the component bound
  EXPECT_THROW(solve_constrained_hom(cycle(6), cycle(3), true, 1, 4), PreconditionError);
  EXPECT_THROW(solve_constrained_hom(cycle(4), kK2, false, 1, 2), PreconditionError);
  EXPECT_THROW(solve_constrained_hom(Graph(2), kK2, false, 2, 1), PreconditionError);
  EXPECT_THROW(solve_constrained_hom(kK2, Graph(2), false, 2, 1), PreconditionError);
}

TEST(SolveConstrainedHom, ThreePartitionFigurePair) {
  auto pair = gen_3partition_reduction({2, 3, 2}, 7);
  for (bool bij : {true, false}) {
    auto r = solve_constrained_hom(pair.guest, pair.host, bij);
    ASSERT_TRUE(r.answer);
    EXPECT_TRUE(check_mapping(pair.guest, pair.host, r.witness, bij ? Mode::bij() : Mode::surj()));
  }
}

TEST(SolveConstrainedHom, AgreesWithBruteForce) {
  auto guests = connected_graphs_up_to(6, false);
  auto hosts = spread_sample(connected_graphs_up_to(4, true), 50);
  for (const auto& g : guests) {
    for (const auto& h : hosts) {
      for (bool bij : {false, true}) {
        const Mode mode = bij ? Mode::bij() : Mode::surj();
        auto expect = brute_force_hom(g, h, mode);
        auto r = solve_constrained_hom(g, h, bij);
        ASSERT_EQ(r.answer, expect.has_value()) << (bij ? "B\n" : "S\n") << to_graph_string(g) << to_graph_string(h);
        if (r.answer) {
          EXPECT_TRUE(check_mapping(g, h, r.witness, mode));
        }
      }
    }
  }
}

TEST(SolveConstrainedHom, ThreadCountDoesNotChangeResult) {
  SplitMix rng{22};
  for (int trial = 0; trial < 60; ++trial) {
    Graph g = random_connected_graph(rng, 4 + rng.below(4), rng.below(30));
    Graph h = random_connected_graph(rng, 1 + rng.below(4), rng.below(60), true);
    const bool bij = rng.below(2);
    auto a = solve_constrained_hom(g, h, bij);
    auto b = solve_constrained_hom(g, h, bij, {4});
    EXPECT_EQ(a.answer, b.answer);
    EXPECT_EQ(a.witness, b.witness);
    EXPECT_EQ(a.stats.ilp_solves, b.stats.ilp_solves);
    EXPECT_EQ(a.stats.dp_calls, b.stats.dp_calls);
  }
}

TEST(HighDegreeLemma, BoundsOnRandomGraphs) {
  SplitMix rng{23};
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int k = 1 + rng.below(3);
    const int c = 1 + rng.below(3);
    Graph g = gen_random_bounded_fracture(k + rng.below(12), k, c, rng.next());
    if (!find_c_deletion_set(g, c, k)) continue;
    ++checked;
    const VertexList high = high_degree_set(g, k + c);
    ASSERT_LE(static_cast<int>(high.size()), k);
    EXPECT_TRUE(is_c_deletion_set(g, high, k * c * (k + c)));
    for (const auto& d : detail::subsets_of(high)) {
      EXPECT_TRUE(is_extended_deletion_set(g, d, k - static_cast<int>(d.size()), c));
    }
  }
  EXPECT_GE(checked, 200);
}

TEST(HighDegreeLemma, WitnessPreimageOfHostBase) {
  auto guests = connected_graphs_up_to(6, false);
  auto hosts = spread_sample(connected_graphs_up_to(4, true), 40);
  int checked = 0;
  for (const auto& g : guests) {
    auto p = discover_fracture_params(g);
    const VertexList dg = high_degree_set(g, p.k + p.c);
    auto in_dg = membership(g.order(), dg);
    for (const auto& h : hosts) {
      auto phi = brute_force_hom(g, h, Mode::surj());
      if (!phi) continue;
      ++checked;
      const VertexList dh = high_degree_set(h, p.k + p.c);
      auto in_dh = membership(h.order(), dh);
      VertexList pre;
      for (Vertex v = 0; v < g.order(); ++v) {
        if (in_dh[static_cast<std::size_t>((*phi)[static_cast<std::size_t>(v)])]) {
          EXPECT_TRUE(in_dg[static_cast<std::size_t>(v)]);
          pre.push_back(v);
        }
      }
      Mapping restricted;
      for (Vertex v : pre) {
        auto pos = std::find(dh.begin(), dh.end(), (*phi)[static_cast<std::size_t>(v)]) - dh.begin();
        restricted.push_back(static_cast<Vertex>(pos));
      }
      EXPECT_TRUE(check_mapping(g.induced(pre), h.induced(dh), restricted, Mode::surj()));
    }
  }
  EXPECT_GT(checked, 200);
}

TEST(MappingSets, MinimalAndBounded) {
  SplitMix rng{24};
  int mapped_seen = 0;
  for (int trial = 0; trial < 800; ++trial) {
    Graph g = random_connected_graph(rng, 3 + rng.below(6), rng.below(25));
    Graph h = random_connected_graph(rng, 2 + rng.below(4), rng.below(50), true);
    auto p = discover_fracture_params(g);
    if (!find_c_deletion_set(h, p.c, p.k)) continue;
    const bool bij = rng.below(2);
    std::vector<long long> upper;
    TargetDescription desc = exact_description(h, p.k, p.c, upper);
    const VertexList d = high_degree_set(g, p.k + p.c);
    GuestSide guest{&g, d, compute_types(g, d)};
    const auto variant = bij ? MapVariant::B : MapVariant::S;
    for (const auto& phi_p : enumerate_partial_homs(g.induced(d), desc.d_h, bij)) {
      SolveStats stats;
      auto sets = compute_mapping_sets(guest, desc, phi_p, bij, upper, stats);
      for (const auto& e : sets.mapped) {
        ++mapped_seen;
        const auto& type = desc.types[static_cast<std::size_t>(e.host_type)];
        EXPECT_TRUE(can_be_mapped(materialize(g, guest.census, e.counts), type, phi_p, variant));
        int comps = 0;
        for (int x : e.counts) comps += x;
        EXPECT_LE(comps, std::max(1, static_cast<int>(d.size()) * (type.size() - desc.d_h.order())));
        for (const auto& smaller : strictly_below(e.counts)) {
          EXPECT_FALSE(can_be_mapped(materialize(g, guest.census, smaller), type, phi_p, variant));
        }
      }
    }
  }
  EXPECT_GT(mapped_seen, 50);
}

TEST(SolveRoleAssignment, Examples) {
  auto r = solve_role_assignment(kP3, 2);
  ASSERT_TRUE(r.answer);
  ASSERT_TRUE(r.host);
  EXPECT_EQ(r.host->order(), 2);
  EXPECT_TRUE(check_mapping(kP3, *r.host, r.witness, Mode::surj()));
  EXPECT_TRUE(solve_role_assignment(kK2, 1).answer);
  EXPECT_FALSE(solve_role_assignment(kK2, 3).answer);
  EXPECT_THROW(solve_role_assignment(kK2, 0), PreconditionError);
}

TEST(SolveRoleAssignment, AgreesWithBruteForce) {
  for (const auto& g : connected_graphs_up_to(6, false)) {
    for (int h = 1; h <= 4; ++h) {
      auto expect = brute_force_role(g, h);
      auto r = solve_role_assignment(g, h);
      ASSERT_EQ(r.answer, expect.has_value()) << "h=" << h << '\n' << to_graph_string(g);
      if (r.answer) {
        ASSERT_TRUE(r.host);
        EXPECT_EQ(r.host->order(), h);
        EXPECT_TRUE(is_connected(*r.host));
        EXPECT_TRUE(check_mapping(g, *r.host, r.witness, Mode::surj()));
      }
    }
  }
}

TEST(SolveLihomXp, Examples) {
  auto r = solve_lihom_xp(complete(3), complete(4));
  EXPECT_TRUE(r.answer);
  EXPECT_TRUE(check_mapping(complete(3), complete(4), r.witness, Mode::inj()));
  EXPECT_FALSE(solve_lihom_xp(complete(3), cycle(4)).answer);
  EXPECT_FALSE(solve_lihom_xp(cycle(4), cycle(8)).answer);
  EXPECT_TRUE(solve_lihom_xp(Graph(1), kK2).answer);
}

TEST(SolveLihomSpecial, Examples) {
  LihomOptions two_deletion{0, 1};
  auto r = solve_lihom_special(complete(3), complete(3), two_deletion);
  EXPECT_EQ(r.route, "two-deletion");
  EXPECT_TRUE(r.answer);
  EXPECT_FALSE(solve_lihom_special(complete(3), cycle(4), two_deletion).answer);
  EXPECT_TRUE(solve_lihom_special(kP3, kP3).answer);
  auto fallback = solve_lihom_special(cycle(8), cycle(4), two_deletion);
  EXPECT_NE(fallback.route.find("brute"), std::string::npos);
  EXPECT_TRUE(fallback.answer);
}

TEST(SolveLihom, AgreesWithBruteForce) {
  std::vector<Graph> guests;
  for (const auto& g : connected_graphs_up_to(6, false)) {
    if (minimum_vertex_cover_size(g) <= 3 || find_c_deletion_set(g, 2, 1)) guests.push_back(g);
  }
  auto hosts = spread_sample(connected_graphs_up_to(5, false), 40);
  for (const auto& g : spread_sample(guests, 60)) {
    for (const auto& h : hosts) {
      auto expect = brute_force_hom(g, h, Mode::inj());
      if (minimum_vertex_cover_size(g) <= 3) {
        auto r = solve_lihom_xp(g, h);
        ASSERT_EQ(r.answer, expect.has_value()) << to_graph_string(g) << to_graph_string(h);
        if (r.answer) {
          EXPECT_TRUE(check_mapping(g, h, r.witness, Mode::inj()));
        }
      }
      auto s = solve_lihom_special(g, h, {0, 1});
      ASSERT_EQ(s.answer, expect.has_value()) << to_graph_string(g) << to_graph_string(h);
      if (s.answer) {
        EXPECT_TRUE(check_mapping(g, h, s.witness, Mode::inj()));
      }
    }
  }
}
