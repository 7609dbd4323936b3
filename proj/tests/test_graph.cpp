#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "locohom/canon.hpp"
#include "locohom/decomposition.hpp"
#include "locohom/deletion.hpp"
#include "locohom/errors.hpp"
#include "locohom/generators.hpp"
#include "locohom/graph.hpp"
#include "locohom/matching.hpp"
#include "locohom/refinement.hpp"
#include "test_support.hpp"

using namespace locohom;
using namespace locohom::testing;

namespace {

Graph cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph path(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph star(int leaves) {
  Graph g(leaves + 1);
  for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

std::vector<VertexList> no_inner_sets(const Graph& g, const VertexList& d) {
  return std::vector<VertexList>(components_without(g, d).size());
}

Graph random_graph(SplitMix& rng, int n, int pct) {
  Graph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.below(100) < pct) g.add_edge(u, v);
    }
  }
  return g;
}

}  // namespace

TEST(Parse, SmallestEdge) {
  Graph g = parse_graph("p ghom 2 1\ne 1 2");
  EXPECT_EQ(g.order(), 2);
  EXPECT_TRUE(g.adjacent(0, 1));
  EXPECT_FALSE(g.allows_loops());
}

TEST(Parse, LoopWithHeaderFlag) {
  Graph g = parse_graph("p ghom 1 1 loops\ne 1 1");
  EXPECT_TRUE(g.has_loop(0));
  EXPECT_EQ(g.neighbours(0).size(), 1u);
  EXPECT_EQ(g.degree(0), 1);
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_graph("p ghom 2 1\ne 1 1"), InputError);
  EXPECT_THROW(parse_graph("p ghom 2 1\ne 1 3"), InputError);
  EXPECT_THROW(parse_graph("p ghom 3 2\ne 1 2\ne 2 1"), InputError);
  EXPECT_THROW(parse_graph("p graph 2 1\ne 1 2"), InputError);
  EXPECT_THROW(parse_graph("p ghom 2 2\ne 1 2"), InputError);
  EXPECT_THROW(parse_graph(""), InputError);
}

TEST(Parse, CommentsAndRoundTrip) {
  Graph g = parse_graph("# a comment\np ghom 4 3 loops\ne 1 2\n# another\ne 2 3\ne 4 4\n");
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(parse_graph(to_graph_string(g)), g);
  SplitMix rng{3};
  for (int i = 0; i < 50; ++i) {
    Graph r = random_connected_graph(rng, 1 + rng.below(9), 40, i % 2 == 0);
    EXPECT_EQ(parse_graph(to_graph_string(r)), r);
  }
}

TEST(Components, Examples) {
  auto k2 = connected_components(make_graph(2, {{0, 1}}));
  ASSERT_EQ(k2.size(), 1u);
  EXPECT_EQ(k2[0], (VertexList{0, 1}));
  auto two = connected_components(make_graph(4, {{0, 1}, {2, 3}}));
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0], (VertexList{0, 1}));
  EXPECT_EQ(two[1], (VertexList{2, 3}));
  EXPECT_EQ(connected_components(Graph(3)).size(), 3u);
}

TEST(DeletionSet, Examples) {
  auto s = find_c_deletion_set(star(5), 1, 1);
  ASSERT_TRUE(s);
  EXPECT_EQ(*s, VertexList{0});
  EXPECT_FALSE(find_c_deletion_set(cycle(4), 1, 1));
  Graph triangles(9);
  for (int t = 0; t < 3; ++t) {
    triangles.add_edge(3 * t, 3 * t + 1);
    triangles.add_edge(3 * t + 1, 3 * t + 2);
    triangles.add_edge(3 * t, 3 * t + 2);
  }
  auto none = find_c_deletion_set(triangles, 3, 0);
  ASSERT_TRUE(none);
  EXPECT_TRUE(none->empty());
}

TEST(DeletionSet, AgreesWithSubsetSearch) {
  SplitMix rng{11};
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + rng.below(8);
    Graph g = random_graph(rng, n, 20 + rng.below(50));
    for (int c = 1; c <= 3; ++c) {
      int best = n + 1;
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        VertexList d;
        for (int v = 0; v < n; ++v) {
          if (mask >> v & 1) d.push_back(v);
        }
        if (is_c_deletion_set(g, d, c)) best = std::min(best, static_cast<int>(d.size()));
      }
      for (int k = 0; k <= 3; ++k) {
        auto found = find_c_deletion_set(g, c, k);
        EXPECT_EQ(found.has_value(), best <= k) << to_graph_string(g) << " c=" << c << " k=" << k;
        if (found) {
          EXPECT_LE(static_cast<int>(found->size()), k);
          EXPECT_TRUE(is_c_deletion_set(g, *found, c));
        }
      }
    }
  }
}

TEST(DeletionSet, VertexCoverMatchesExhaustive) {
  SplitMix rng{5};
  for (int trial = 0; trial < 200; ++trial) {
    Graph g = random_graph(rng, 1 + rng.below(9), 35);
    int best = g.order();
    for (std::uint32_t mask = 0; mask < (1u << g.order()); ++mask) {
      bool ok = true;
      for (auto [u, v] : g.edges()) ok = ok && ((mask >> u & 1) || (mask >> v & 1));
      if (ok) best = std::min(best, std::popcount(mask));
    }
    EXPECT_EQ(minimum_vertex_cover_size(g), best);
    EXPECT_TRUE(is_c_deletion_set(g, minimum_vertex_cover(g), 1));
  }
}

TEST(ExtendedDeletionSet, Examples) {
  Graph p7 = path(7);
  EXPECT_TRUE(is_extended_deletion_set(p7, VertexList{3}, 1, 3));
  EXPECT_FALSE(is_extended_deletion_set(p7, VertexList{}, 0, 3));
  EXPECT_TRUE(is_extended_deletion_set(star(5), VertexList{0}, 0, 1));
}

TEST(HighDegree, Examples) {
  EXPECT_EQ(high_degree_set(star(5), 2), VertexList{0});
  EXPECT_TRUE(high_degree_set(cycle(6), 3).empty());
  EXPECT_EQ(high_degree_set(path(4), 2), (VertexList{1, 2}));
}

TEST(FractureParams, SmallestTotal) {
  auto p = discover_fracture_params(star(5));
  EXPECT_EQ(p.k + p.c, 2);
  auto q = discover_fracture_params(cycle(6));
  EXPECT_TRUE(find_c_deletion_set(cycle(6), q.c, q.k));
  EXPECT_FALSE(find_c_deletion_set(cycle(6), 1, 1));
  EXPECT_EQ(q.k + q.c, 4);
}

TEST(TreeDecomposition, Examples) {
  auto td = tree_decomposition_from_structure(star(5), {0}, no_inner_sets(star(5), {0}), 1);
  EXPECT_EQ(validate_tree_decomposition(star(5), td), "");
  EXPECT_EQ(td.width(), 1);
  auto tp = tree_decomposition_from_structure(path(7), {3}, no_inner_sets(path(7), {3}), 3);
  EXPECT_EQ(validate_tree_decomposition(path(7), tp), "");
  EXPECT_LE(tp.width(), 3);
  const Graph k2 = make_graph(2, {{0, 1}});
  EXPECT_THROW(tree_decomposition_from_structure(k2, {}, no_inner_sets(k2, {}), 1), PreconditionError);
}

TEST(TreeDecomposition, ValidOnRandomStructures) {
  SplitMix rng{17};
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + rng.below(2);
    const int c = 1 + rng.below(3);
    Graph g = gen_random_bounded_fracture(3 + rng.below(9), k, c, rng.next());
    auto d = find_c_deletion_set(g, c, k);
    ASSERT_TRUE(d);
    auto td = tree_decomposition_from_structure(g, *d, no_inner_sets(g, *d), c);
    EXPECT_EQ(validate_tree_decomposition(g, td), "");
    EXPECT_LE(td.width(), static_cast<int>(d->size()) + c - 1);
  }
}

TEST(Drm, Examples) {
  auto c6 = equitable_partition_drm(cycle(6));
  EXPECT_EQ(c6.matrix, (std::vector<std::vector<int>>{{2}}));
  auto k13 = equitable_partition_drm(star(3));
  ASSERT_EQ(k13.blocks.size(), 2u);
  EXPECT_EQ(k13.blocks[0], VertexList{0});
  EXPECT_EQ(k13.matrix, (std::vector<std::vector<int>>{{0, 3}, {1, 0}}));
  EXPECT_THROW(equitable_partition_drm(Graph(2)), PreconditionError);
}

TEST(Drm, ReductionMatrixMatchesConstruction) {
  auto pair = gen_3partition_reduction({2, 3, 2}, 7);
  auto drm = equitable_partition_drm(pair.guest);
  ASSERT_EQ(drm.blocks.size(), 4u);
  // Identify blocks by a representative: apex, leaf u, p-vertex, centre.
  auto block_of = [&](Vertex v) {
    for (std::size_t i = 0; i < drm.blocks.size(); ++i) {
      if (std::find(drm.blocks[i].begin(), drm.blocks[i].end(), v) != drm.blocks[i].end()) return i;
    }
    return drm.blocks.size();
  };
  const std::size_t apex = block_of(pair.guest.order() - 1), leaf = block_of(1), pq = block_of(3 * 8), centre = block_of(0);
  const std::vector<std::size_t> order{apex, leaf, pq, centre};
  const std::vector<std::vector<int>> expected{{0, 0, 14, 0}, {0, 0, 2, 1}, {1, 1, 0, 0}, {0, 7, 0, 0}};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(drm.matrix[order[i]][order[j]], expected[i][j]);
  }
  EXPECT_EQ(drm.matrix, equitable_partition_drm(pair.host).matrix);
}

TEST(Drm, EquitableAndCoarsest) {
  SplitMix rng{23};
  for (int trial = 0; trial < 200; ++trial) {
    Graph g = random_connected_graph(rng, 1 + rng.below(10), rng.below(40));
    auto r = equitable_partition_drm(g);
    std::vector<int> colour(static_cast<std::size_t>(g.order()), -1);
    for (std::size_t b = 0; b < r.blocks.size(); ++b) {
      for (Vertex v : r.blocks[b]) colour[static_cast<std::size_t>(v)] = static_cast<int>(b);
    }
    for (Vertex v = 0; v < g.order(); ++v) {
      std::vector<int> row(r.blocks.size(), 0);
      for (Vertex u : g.neighbours(v)) ++row[static_cast<std::size_t>(colour[static_cast<std::size_t>(u)])];
      EXPECT_EQ(row, r.matrix[static_cast<std::size_t>(colour[static_cast<std::size_t>(v)])]);
    }
    // refining the result again splits nothing
    auto again = refine_colours(g, colour);
    EXPECT_EQ(*std::max_element(again.begin(), again.end()) + 1, static_cast<int>(r.blocks.size()));
  }
}

TEST(Matching, Examples) {
  EXPECT_EQ(max_matching(make_graph(3, {{0, 1}, {1, 2}, {0, 2}})).size(), 1u);
  EXPECT_EQ(max_matching(cycle(4)).size(), 2u);
  EXPECT_EQ(max_matching(star(4)).size(), 1u);
}

TEST(Matching, AgreesWithExhaustive) {
  SplitMix rng{29};
  for (int trial = 0; trial < 300; ++trial) {
    Graph g = random_graph(rng, 1 + rng.below(10), 15 + rng.below(50));
    auto edges = g.edges();
    int best = 0;
    std::function<void(std::size_t, std::uint32_t, int)> go = [&](std::size_t i, std::uint32_t used, int size) {
      best = std::max(best, size);
      if (size + static_cast<int>(edges.size() - i) <= best) return;
      for (std::size_t j = i; j < edges.size(); ++j) {
        auto [u, v] = edges[j];
        if ((used >> u & 1) || (used >> v & 1)) continue;
        go(j + 1, used | 1u << u | 1u << v, size + 1);
      }
    };
    go(0, 0, 0);
    auto m = max_matching(g);
    EXPECT_EQ(static_cast<int>(m.size()), best);
    std::vector<int> seen(static_cast<std::size_t>(g.order()), 0);
    for (auto [u, v] : m) {
      EXPECT_TRUE(g.adjacent(u, v));
      EXPECT_EQ(seen[static_cast<std::size_t>(u)]++, 0);
      EXPECT_EQ(seen[static_cast<std::size_t>(v)]++, 0);
    }
  }
}

TEST(Canonical, InvariantUnderRelabelling) {
  SplitMix rng{31};
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + rng.below(9);
    Graph g = random_connected_graph(rng, n, rng.below(50), trial % 3 == 0);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(rng.below(i + 1))]);
    Graph h = permute_graph(g, perm);
    EXPECT_EQ(canonical_form(g).certificate, canonical_form(h).certificate);
    // canonical relabelling of either gives the same graph
    EXPECT_EQ(permute_graph(g, canonical_form(g).position), permute_graph(h, canonical_form(h).position));
  }
}

TEST(Canonical, SeparatesNonIsomorphic) {
  auto by_order = connected_graphs_by_order(6, false);
  std::size_t expected[] = {0, 1, 1, 2, 6, 21, 112};
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(by_order[static_cast<std::size_t>(n)].size(), expected[n]);
}
