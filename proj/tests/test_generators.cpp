#include <gtest/gtest.h>

#include "locohom/canon.hpp"
#include "locohom/deletion.hpp"
#include "locohom/generators.hpp"
#include "locohom/search.hpp"
#include "test_support.hpp"

using namespace locohom;
using namespace locohom::testing;

namespace {

Graph complete(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

Graph cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph without_edge(const Graph& g, std::pair<Vertex, Vertex> drop) {
  Graph out(g.order(), g.allows_loops());
  for (auto e : g.edges()) {
    if (e != drop) out.add_edge(e.first, e.second);
  }
  return out;
}

std::string error_of(const std::vector<int>& a, int b, bool strict = true) {
  try {
    gen_3partition_reduction(a, b, strict);
  } catch (const PreconditionError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(ThreePartition, Solver) {
  auto s = solve_three_partition({2, 3, 2}, 7);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->size(), 1u);
  EXPECT_TRUE(solve_three_partition({2, 2, 2, 2, 3, 3}, 7));
  EXPECT_FALSE(solve_three_partition({1, 1, 1, 1, 1, 3}, 4));
  EXPECT_FALSE(solve_three_partition({1, 1, 1, 1, 3, 5}, 6));
}

TEST(ThreePartitionReduction, FigurePairSizes) {
  auto pair = gen_3partition_reduction({2, 3, 2}, 7);
  EXPECT_EQ(pair.guest.order(), 69);
  EXPECT_EQ(pair.host.order(), 23);
  ASSERT_TRUE(pair.witness);
  EXPECT_TRUE(check_mapping(pair.guest, pair.host, *pair.witness, Mode::bij()));
}

TEST(ThreePartitionReduction, Layout) {
  auto pair = gen_3partition_reduction({2, 3, 2}, 7);
  auto gl = detail::guest_layout(3, 7);
  auto hl = detail::host_layout(1, 7);
  EXPECT_EQ(gl.order(), pair.guest.order());
  EXPECT_EQ(hl.order(), pair.host.order());
  EXPECT_EQ(pair.guest.degree(gl.centre(0)), 7);
  EXPECT_TRUE(pair.guest.adjacent(gl.leaf(1, 4), gl.p(1, 4)));
  EXPECT_TRUE(pair.guest.adjacent(gl.leaf(1, 4), gl.q(1, 4)));
  // x takes p and q of the first a_i leaves of every star
  EXPECT_TRUE(pair.guest.adjacent(gl.apex(0), gl.p(1, 2)));
  EXPECT_FALSE(pair.guest.adjacent(gl.apex(0), gl.p(1, 3)));
  EXPECT_EQ(pair.guest.degree(gl.apex(0)), 2 * 7);
  EXPECT_EQ(pair.host.degree(hl.apex(0)), 2 * 7);
}

TEST(ThreePartitionReduction, ByteStable) {
  auto a = gen_3partition_reduction({2, 2, 2, 2, 3, 3}, 7);
  auto b = gen_3partition_reduction({2, 2, 2, 2, 3, 3}, 7);
  EXPECT_EQ(to_graph_string(a.guest), to_graph_string(b.guest));
  EXPECT_EQ(to_graph_string(a.host), to_graph_string(b.host));
  EXPECT_EQ(a.witness, b.witness);
}

TEST(ThreePartitionReduction, Errors) {
  EXPECT_NE(error_of({1, 3, 3}, 7).find("at most b/4"), std::string::npos);
  EXPECT_NE(error_of({2, 4, 1}, 7).find("at least b/2"), std::string::npos);
  EXPECT_NE(error_of({2, 2, 2}, 7).find("expected m*b"), std::string::npos);
  EXPECT_NE(error_of({2, 3}, 5).find("multiple of 3"), std::string::npos);
  EXPECT_NE(error_of({0, 2, 2}, 4, false).find("[1, b-1]"), std::string::npos);
  EXPECT_EQ(error_of({1, 1, 2}, 4, false), "");
}

TEST(ThreePartitionReduction, InvariantsAndAnswers) {
  struct Case {
    std::vector<int> a;
    int b;
    bool strict;
  };
  const std::vector<Case> cases{{{2, 3, 2}, 7, true},       {{2, 2, 2, 2, 2, 2}, 6, true}, {{2, 2, 2, 2, 3, 3}, 7, true},
                                {{1, 1, 1, 1, 1, 3}, 4, false}, {{1, 1, 1, 1, 2, 4}, 5, false}, {{1, 2, 3, 4, 3, 3}, 8, false}};
  for (const auto& c : cases) {
    auto pair = gen_3partition_reduction(c.a, c.b, c.strict);
    const bool expect = solve_three_partition(c.a, c.b).has_value();
    EXPECT_EQ(pair.witness.has_value(), expect);
    auto check = verify_reduction_invariants(pair.guest, pair.host);
    EXPECT_TRUE(check.ok()) << (check.failures.empty() ? "" : check.failures[0]);
    auto lb = consistency_search_hom(pair.guest, pair.host, Mode::bij());
    auto ls = consistency_search_hom(pair.guest, pair.host, Mode::surj());
    EXPECT_EQ(lb.has_value(), expect);
    EXPECT_EQ(ls.has_value(), expect);
  }
}

TEST(ReductionInvariants, DetectsPerturbation) {
  auto pair = gen_3partition_reduction({2, 3, 2}, 7);
  auto edges = pair.guest.edges();
  auto broken = verify_reduction_invariants(without_edge(pair.guest, edges[edges.size() / 2]), pair.host);
  EXPECT_FALSE(broken.drm_equal);
  EXPECT_FALSE(broken.ok());

  auto other = verify_reduction_invariants(cycle(6), cycle(3));
  EXPECT_FALSE(other.size_ratio);
  EXPECT_TRUE(verify_reduction_invariants(cycle(9), cycle(3)).size_ratio);
}

TEST(HPartitionReduction, Examples) {
  auto k4 = gen_hprime_partition_reduction(complete(3), PartitionVariant::K3, 1);
  EXPECT_EQ(canonical_form(k4.guest).certificate, canonical_form(complete(4)).certificate);
  EXPECT_EQ(canonical_form(k4.host).certificate, canonical_form(complete(4)).certificate);
  EXPECT_TRUE(brute_force_hom(k4.guest, k4.host, Mode::inj()));

  auto c6 = gen_hprime_partition_reduction(cycle(6), PartitionVariant::K3, 1);
  EXPECT_FALSE(brute_force_hom(c6.guest, c6.host, Mode::inj()));

  EXPECT_THROW(gen_hprime_partition_reduction(cycle(4), PartitionVariant::K3, 1), PreconditionError);
  EXPECT_THROW(gen_hprime_partition_reduction(cycle(3), PartitionVariant::P3, 1), PreconditionError);
  EXPECT_THROW(gen_hprime_partition_reduction(cycle(3), PartitionVariant::K3, 0), PreconditionError);
}

TEST(HPartitionReduction, AnswerMatchesPartition) {
  SplitMix rng{31};
  std::vector<Graph> inputs;
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    Graph g(3);
    const std::pair<int, int> pairs[] = {{0, 1}, {0, 2}, {1, 2}};
    for (int e = 0; e < 3; ++e) {
      if (mask >> e & 1) g.add_edge(pairs[e].first, pairs[e].second);
    }
    inputs.push_back(g);
  }
  for (int i = 0; i < 40; ++i) {
    Graph g(6);
    for (int u = 0; u < 6; ++u) {
      for (int v = u + 1; v < 6; ++v) {
        if (rng.below(100) < 45) g.add_edge(u, v);
      }
    }
    inputs.push_back(g);
  }
  int yes = 0;
  for (const auto& gp : inputs) {
    for (auto variant : {PartitionVariant::K3, PartitionVariant::P3}) {
      const int k = variant == PartitionVariant::K3 ? 1 + rng.below(2) : 2 + rng.below(2);
      auto pair = gen_hprime_partition_reduction(gp, variant, k);
      const bool expect = has_hprime_partition(gp, variant);
      yes += expect;
      auto phi = consistency_search_hom(pair.guest, pair.host, Mode::inj());
      ASSERT_EQ(phi.has_value(), expect) << (variant == PartitionVariant::K3 ? "K3 " : "P3 ") << k << '\n' << to_graph_string(gp);
    }
  }
  EXPECT_GT(yes, 10);
}

TEST(RandomFracture, Examples) {
  Graph g = gen_random_bounded_fracture(6, 1, 1, 42);
  EXPECT_EQ(g.order(), 6);
  EXPECT_TRUE(find_c_deletion_set(g, 1, 1));
  EXPECT_EQ(g.degree(0), 5);

  EXPECT_EQ(gen_random_bounded_fracture(4, 4, 2, 1), complete(4));
  EXPECT_EQ(gen_random_bounded_fracture(9, 2, 3, 77), gen_random_bounded_fracture(9, 2, 3, 77));
}

TEST(RandomFracture, Errors) {
  EXPECT_THROW(gen_random_bounded_fracture(0, 0, 1, 1), PreconditionError);
  EXPECT_THROW(gen_random_bounded_fracture(3, 4, 1, 1), PreconditionError);
  EXPECT_THROW(gen_random_bounded_fracture(5, 2, 0, 1), PreconditionError);
  EXPECT_THROW(gen_random_bounded_fracture(5, 0, 3, 1), PreconditionError);
}

TEST(RandomFracture, PlantedDeletionSet) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    CounterRng pick(seed);
    const int k = pick.below(4);
    const int c = 1 + pick.below(4);
    const int n = k == 0 ? 1 + pick.below(c) : k + pick.below(15);
    Graph g = gen_random_bounded_fracture(n, k, c, seed);
    ASSERT_EQ(g.order(), n);
    EXPECT_TRUE(is_connected(g));
    VertexList hubs;
    for (int i = 0; i < k; ++i) hubs.push_back(i);
    EXPECT_TRUE(is_c_deletion_set(g, hubs, c));
    EXPECT_TRUE(find_c_deletion_set(g, c, k));
  }
}
