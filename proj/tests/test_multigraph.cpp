#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "support.hpp"

using namespace smatch;
using namespace smatch::testing;

namespace {

NodeSet set_of(const Multigraph& g, std::initializer_list<const char*> names) {
  NodeSet s;
  for (const char* n : names) s.insert(g.id(n));
  return s;
}

/// Figure graph with parts {1}, {3,5}, {2,4,6}.
Multigraph three_partite_six() {
  std::vector<std::pair<int, int>> e;
  const std::vector<std::vector<int>> parts = {{1}, {3, 5}, {2, 4, 6}};
  for (std::size_t a = 0; a < parts.size(); ++a) {
    for (std::size_t b = a + 1; b < parts.size(); ++b) {
      for (int x : parts[a]) {
        for (int y : parts[b]) e.emplace_back(x, y);
      }
    }
  }
  return Multigraph::numbered(6, e);
}

}  // namespace

TEST(Multigraph, RejectsMalformedInput) {
  EXPECT_THROW(Multigraph({"1"}, {}, {}), InputError);
  EXPECT_THROW(Multigraph({"1", "1"}, {{"1", "1"}}, {}), InputError);
  EXPECT_THROW(Multigraph({"1", "2"}, {{"1", "3"}}, {}), InputError);
  EXPECT_THROW(Multigraph({"1", "2"}, {{"1", "1"}, {"1", "2"}}, {}), InputError);
  EXPECT_THROW(Multigraph({"1", "2"}, {{"1", "2"}, {"2", "1"}}, {}), InputError);
  EXPECT_THROW(Multigraph({"1", "2", "3"}, {{"1", "2"}}, {}), InputError);
  EXPECT_THROW(Multigraph({"1", "2"}, {{"1", "2"}}, {"4"}), InputError);
}

TEST(Multigraph, NeighborhoodExamples) {
  const Multigraph sq = square_loops();
  EXPECT_EQ(sq.neighborhood(set_of(sq, {"1"})), set_of(sq, {"1", "2", "4"}));
  EXPECT_TRUE(sq.neighborhood(NodeSet{}).empty());
  const Multigraph g = two_triangles_loop();
  EXPECT_EQ(g.neighborhood(set_of(g, {"2"})), set_of(g, {"1", "2", "3", "4"}));
  EXPECT_THROW(g.id("9"), InputError);
}

TEST(Multigraph, DegreeExamples) {
  EXPECT_EQ(square_loops().degree(0), 3U);
  EXPECT_EQ(k2().degree(0), 1U);
  EXPECT_EQ(two_triangles_loop().degree(1), 4U);
}

TEST(Multigraph, BipartiteExamples) {
  const Multigraph path = Multigraph::numbered(3, {{1, 2}, {2, 3}});
  auto bp = bipartition(path);
  ASSERT_TRUE(bp);
  EXPECT_EQ(bp->side_a, set_of(path, {"1", "3"}));
  EXPECT_EQ(bp->side_b, set_of(path, {"2"}));
  EXPECT_FALSE(is_bipartite_graph(path_loop()));
  EXPECT_FALSE(is_bipartite_graph(Multigraph::numbered(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}})));
}

TEST(Multigraph, IndependentSetExamples) {
  const auto sets = independent_sets(maximal_subgraph(square_loops()));
  const Multigraph sq = square_loops();
  const std::vector<NodeSet> expected = {set_of(sq, {"1"}),      set_of(sq, {"1", "3"}), set_of(sq, {"2"}),
                                         set_of(sq, {"2", "4"}), set_of(sq, {"3"}),      set_of(sq, {"4"})};
  EXPECT_EQ(sets, expected);
  EXPECT_EQ(independent_sets(triangle()).size(), 3U);
  EXPECT_TRUE(independent_sets(square_loops()).empty());
}

TEST(Multigraph, MaximalSubgraphAndBlowup) {
  const Multigraph g = two_triangles_loop();
  const Multigraph reduced = maximal_subgraph(g);
  EXPECT_TRUE(reduced.self_looped().empty());
  EXPECT_EQ(reduced.edges(), g.edges());
  EXPECT_EQ(maximal_subgraph(triangle()), triangle());

  const BlowupMap map = minimal_blowup(g);
  ASSERT_EQ(map.blown.size(), 5U);
  const NodeId copy = *map.copy_of[1];
  EXPECT_EQ(map.blown.name(copy), "2_");
  EXPECT_EQ(map.blown.neighbors(copy), set_of(map.blown, {"1", "2", "3", "4"}));
  EXPECT_TRUE(map.blown.self_looped().empty());
  EXPECT_EQ(map.origin[copy], 1U);

  const BlowupMap path = minimal_blowup(path_loop());
  EXPECT_EQ(path.blown.neighbors(*path.copy_of[2]), set_of(path.blown, {"2", "3"}));

  const BlowupMap plain = minimal_blowup(triangle());
  EXPECT_EQ(plain.blown, triangle());
  EXPECT_TRUE(std::none_of(plain.copy_of.begin(), plain.copy_of.end(), [](auto c) { return c.has_value(); }));
}

TEST(Multigraph, MultipartiteExamples) {
  const Multigraph g = three_partite_six();
  auto parts = complete_multipartite_decomposition(g);
  ASSERT_TRUE(parts);
  const std::vector<NodeSet> expected = {set_of(g, {"1"}), set_of(g, {"2", "4", "6"}), set_of(g, {"3", "5"})};
  EXPECT_EQ(*parts, expected);
  EXPECT_EQ(complete_multipartite_decomposition(k2())->size(), 2U);
  EXPECT_FALSE(complete_multipartite_decomposition(Multigraph::numbered(4, {{1, 2}, {2, 3}, {3, 4}})));
  EXPECT_EQ(complete_multipartite_decomposition(partite_loop())->size(), 3U);
}

// Property tests over random connected multigraphs.

class RandomGraphs : public ::testing::TestWithParam<int> {};

TEST_P(RandomGraphs, StructuralInvariants) {
  RandomStream rng(static_cast<std::uint64_t>(GetParam()));
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 2 + rng.below(6);
    const Multigraph g = random_connected(n, 0.35, 0.3, rng);

    std::size_t degree_sum = 0;
    for (NodeId u = 0; u < n; ++u) {
      degree_sum += g.degree(u);
      for (NodeId v = 0; v < n; ++v) EXPECT_EQ(g.adjacent(u, v), g.adjacent(v, u));
    }
    EXPECT_EQ(degree_sum, 2 * g.edge_count() + g.self_looped().size());

    // Independent sets agree with the subset scan and avoid V₁.
    std::vector<NodeSet> brute;
    for (const auto& s : oracle::independent_subsets(g)) {
      NodeSet x;
      for (NodeId i : s) x.insert(i);
      brute.push_back(x);
    }
    auto lib = independent_sets(g);
    std::sort(brute.begin(), brute.end(), [](NodeSet a, NodeSet b) { return lex_less(a, b); });
    EXPECT_EQ(lib, brute);
    for (NodeSet s : lib) EXPECT_FALSE(s.intersects(g.self_looped()));

    const BlowupMap map = minimal_blowup(g);
    EXPECT_EQ(maximal_subgraph(map.blown), map.blown);
    EXPECT_NO_THROW(Multigraph(maximal_subgraph(g)));
    // Independent sets of Ĝ inside V₂ are exactly those of G.
    std::vector<NodeSet> inside;
    for (NodeSet s : independent_sets(map.blown)) {
      if (s.subset_of(g.unlooped())) inside.push_back(s);
    }
    EXPECT_EQ(inside, lib);

    if (auto bp = bipartition(g)) {
      for (auto [i, j] : g.edges()) EXPECT_NE(bp->side_a.contains(i), bp->side_a.contains(j));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomGraphs, ::testing::Range(0, 5));
