#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "mag/core.hpp"
#include "test_support.hpp"

using mag::CompanionTuple;
using mag::CompositeVertex;
using mag::ErrorKind;
using mag::Index;
using mag::SimpleMag;

namespace {

template <typename Fn>
ErrorKind error_kind(Fn&& fn) {
  try {
    fn();
  } catch (const mag::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected mag::Error";
  return ErrorKind::Adapter;
}

}  // namespace

TEST(CompanionTuple, RejectsEmptyAndZeroSizes) {
  EXPECT_EQ(error_kind([] { CompanionTuple(std::vector<Index>{}); }), ErrorKind::Argument);
  EXPECT_EQ(error_kind([] { CompanionTuple{3, 0}; }), ErrorKind::Argument);
}

TEST(CompanionTuple, VertexCountOverflowFails) {
  EXPECT_EQ(error_kind([] { CompanionTuple{Index{1} << 32, Index{1} << 32}; }),
            ErrorKind::Overflow);
  EXPECT_EQ(CompanionTuple({Index{1} << 31, 4}).vertex_count(), Index{1} << 33);
}

TEST(VertexIndex, Examples) {
  const CompanionTuple shape{3, 2};
  EXPECT_EQ(mag::vertex_index(shape, {0, 0}), 0u);
  EXPECT_EQ(mag::vertex_index(shape, {2, 1}), 5u);
  EXPECT_EQ(mag::vertex_index(shape, {1, 1}), 4u);
}

TEST(VertexIndex, ShapeMismatch) {
  const CompanionTuple shape{3, 2};
  EXPECT_EQ(error_kind([&] { mag::vertex_index(shape, {3, 0}); }), ErrorKind::ShapeMismatch);
  EXPECT_EQ(error_kind([&] { mag::vertex_index(shape, {0, 2}); }), ErrorKind::ShapeMismatch);
  EXPECT_EQ(error_kind([&] { mag::vertex_index(shape, {0}); }), ErrorKind::ShapeMismatch);
}

TEST(VertexFromIndex, Examples) {
  EXPECT_EQ(mag::vertex_from_index({3, 2}, 0), (CompositeVertex{0, 0}));
  EXPECT_EQ(mag::vertex_from_index({3, 2}, 5), (CompositeVertex{2, 1}));
  // Position 17 in the first-aspect-fastest enumeration of (4,3,2).
  EXPECT_EQ(mag::vertex_from_index({4, 3, 2}, 17), (CompositeVertex{1, 1, 1}));
  EXPECT_EQ(error_kind([] { mag::vertex_from_index({3, 2}, 6); }), ErrorKind::Range);
}

TEST(VertexIndex, ExhaustiveBijectionAgainstEnumeration) {
  const std::vector<std::vector<Index>> shapes = {
      {1}, {7}, {3, 2}, {4, 3, 2}, {2, 2, 2, 2, 2}, {100, 100}, {10, 10, 10, 10}, {9999}};
  for (const auto& sizes : shapes) {
    const CompanionTuple shape(sizes);
    const auto tuples = magtest::enumerate_tuples(sizes);
    ASSERT_EQ(tuples.size(), shape.vertex_count());
    for (Index i = 0; i < tuples.size(); ++i) {
      const CompositeVertex v(tuples[i]);
      ASSERT_EQ(mag::vertex_index(shape, v), i);
      ASSERT_EQ(mag::vertex_from_index(shape, i), v);
      for (std::size_t k = 0; k < sizes.size(); ++k)
        ASSERT_EQ(mag::aspect_coord(shape, i, k), tuples[i][k]);
    }
  }
}

TEST(EdgeRank, Examples) {
  const CompanionTuple shape{4};
  EXPECT_EQ(mag::edge_rank(shape, {{0}, {1}}), 0u);
  EXPECT_EQ(mag::edge_rank(shape, {{2}, {3}}), 5u);
  EXPECT_EQ(mag::edge_rank(shape, {{0}, {3}}), 2u);
  // Endpoint order does not matter.
  EXPECT_EQ(mag::edge_rank(shape, {{3}, {0}}), 2u);
  EXPECT_EQ(error_kind([&] { mag::edge_rank(shape, {{1}, {1}}); }), ErrorKind::SelfLoop);
}

TEST(EdgeFromRank, Examples) {
  EXPECT_EQ(mag::pair_from_rank(4, 0), (std::pair<Index, Index>{0, 1}));
  EXPECT_EQ(mag::pair_from_rank(4, 5), (std::pair<Index, Index>{2, 3}));
  // Position 3141 of the lexicographic enumeration of pairs over [0, 100).
  EXPECT_EQ(mag::pair_from_rank(100, 3141), (std::pair<Index, Index>{39, 61}));
  EXPECT_EQ(error_kind([] { mag::pair_from_rank(4, 6); }), ErrorKind::Range);
  EXPECT_EQ(error_kind([] { mag::pair_from_rank(1, 0); }), ErrorKind::Range);

  const auto e = mag::edge_from_rank({3, 2}, 0);
  EXPECT_EQ(e.u, (CompositeVertex{0, 0}));
  EXPECT_EQ(e.v, (CompositeVertex{1, 0}));
}

TEST(EdgeRank, ExhaustiveBijectionUpTo200) {
  for (Index n = 2; n <= 200; ++n) {
    const auto pairs = magtest::enumerate_pairs(n);
    for (Index r = 0; r < pairs.size(); ++r) {
      ASSERT_EQ(mag::pair_rank(n, pairs[r].first, pairs[r].second), r) << "n=" << n;
      ASSERT_EQ(mag::pair_from_rank(n, r), pairs[r]) << "n=" << n;
    }
  }
}

TEST(EdgeRank, LargeVertexCountsRoundTrip) {
  // Exercises the floating point correction where sqrt loses precision.
  std::mt19937_64 rng(5);
  for (Index n : {Index{1} << 20, Index{1} << 32, (Index{1} << 32) + 1, Index{3037000499}}) {
    const Index m = mag::possible_edge_count(CompanionTuple{n});
    std::vector<Index> ranks = {0, 1, m / 2, m - 2, m - 1};
    for (int i = 0; i < 2000; ++i) ranks.push_back(rng() % m);
    for (Index a : {Index{0}, Index{1}, n / 3, n - 2}) ranks.push_back(mag::pair_row_start(n, a));
    for (Index r : ranks) {
      const auto [a, b] = mag::pair_from_rank(n, r);
      ASSERT_LT(a, b);
      ASSERT_LT(b, n);
      ASSERT_EQ(mag::pair_rank(n, a, b), r) << "n=" << n << " r=" << r;
    }
  }
}

TEST(PossibleEdgeCount, Examples) {
  EXPECT_EQ(mag::possible_edge_count({2, 1}), 1u);
  EXPECT_EQ(mag::possible_edge_count({3, 2}), 15u);
  EXPECT_EQ(mag::possible_edge_count({32, 16}), 130816u);
  EXPECT_EQ(mag::possible_edge_count({1}), 0u);
}

TEST(PossibleEdgeCount, Overflow) {
  EXPECT_EQ(error_kind([] { mag::possible_edge_count({Index{1} << 33}); }), ErrorKind::Overflow);
  // (2^32 + 1) 2^32 / 2 still fits.
  EXPECT_EQ(mag::possible_edge_count({(Index{1} << 32) + 1}),
            ((Index{1} << 32) + 1) * (Index{1} << 31));
}

TEST(SimpleMag, FreshMagHasNoEdges) {
  SimpleMag g({3, 2});
  EXPECT_EQ(g.position_count(), 15u);
  for (Index r = 0; r < g.position_count(); ++r)
    EXPECT_FALSE(g.has_edge(mag::edge_from_rank(g.shape(), r)));
}

TEST(SimpleMag, SetThenGet) {
  SimpleMag g({3, 2});
  const mag::CompositeEdge e{{0, 1}, {2, 0}};
  g.set_edge(e);
  EXPECT_TRUE(g.has_edge(e));
  EXPECT_TRUE(g.has_edge({{2, 0}, {0, 1}}));
  EXPECT_EQ(g.edge_count(), 1u);
  g.set_edge(e, false);
  EXPECT_FALSE(g.has_edge(e));
  EXPECT_EQ(error_kind([&] { g.set_edge({{0, 2}, {1, 0}}); }), ErrorKind::ShapeMismatch);
  EXPECT_EQ(error_kind([&] { g.set_edge({{1, 1}, {1, 1}}); }), ErrorKind::SelfLoop);
}

TEST(SimpleMag, CompleteMagHandshake) {
  SimpleMag g({4, 3});
  g.fill();
  const Index n = g.vertex_count();
  std::vector<Index> degree(n, 0);
  for (const auto& [a, b] : mag::to_classical_graph(g)) {
    ++degree[a];
    ++degree[b];
  }
  for (Index d : degree) EXPECT_EQ(d, n - 1);
  EXPECT_EQ(g.edge_count(), n * (n - 1) / 2);
}

TEST(SimpleMag, FromCharacteristicStringChecksLength) {
  EXPECT_EQ(error_kind([] { SimpleMag::from_characteristic_string({3, 2}, mag::BitString(14)); }),
            ErrorKind::Length);
}

TEST(ToClassicalGraph, Examples) {
  SimpleMag g({3, 2});
  EXPECT_TRUE(mag::to_classical_graph(g).empty());
  g.set_edge({{0, 0}, {1, 0}});
  const auto edges = mag::to_classical_graph(g);
  ASSERT_EQ(edges.size(), 1u);
  EXPECT_EQ(edges[0], (mag::ClassicalEdge{0, 1}));
}

TEST(ToClassicalGraph, RandomRoundTrip) {
  const CompanionTuple shape{5, 4, 3};
  std::mt19937_64 rng(99);
  std::set<std::pair<std::vector<Index>, std::vector<Index>>> edges;
  SimpleMag g(shape);
  while (edges.size() < 20) {
    const auto a = mag::vertex_from_index(shape, rng() % shape.vertex_count());
    const auto b = mag::vertex_from_index(shape, rng() % shape.vertex_count());
    if (a == b) continue;
    const auto e = mag::make_edge(shape, a, b);
    if (edges.emplace(e.u.coords, e.v.coords).second) g.set_edge(e);
  }
  const auto classical = mag::to_classical_graph(g);
  ASSERT_EQ(classical.size(), edges.size());
  std::set<std::pair<std::vector<Index>, std::vector<Index>>> reimported;
  std::vector<Index> degree_mag(shape.vertex_count(), 0);
  for (const auto& [a, b] : classical) {
    reimported.emplace(mag::vertex_from_index(shape, a).coords,
                       mag::vertex_from_index(shape, b).coords);
    ++degree_mag[a];
    ++degree_mag[b];
  }
  EXPECT_EQ(reimported, edges);
  // Degree sequence preserved.
  for (const auto& [u, v] : edges) {
    --degree_mag[mag::vertex_index(shape, CompositeVertex(u))];
    --degree_mag[mag::vertex_index(shape, CompositeVertex(v))];
  }
  for (Index d : degree_mag) EXPECT_EQ(d, 0u);
}

TEST(CharacteristicString, MatchesNaiveEnumeration) {
  // Independent route: enumerate tuples by odometer, pair them
  // lexicographically and test membership in a coordinate set.
  for (const std::vector<Index>& sizes : {std::vector<Index>{3, 2}, {4, 3, 2}, {6, 5}}) {
    const CompanionTuple shape(sizes);
    std::mt19937_64 rng(sizes.size() * 31 + sizes[0]);
    std::set<std::pair<std::vector<Index>, std::vector<Index>>> present;
    SimpleMag g(shape);
    const auto tuples = magtest::enumerate_tuples(sizes);
    for (std::size_t i = 0; i < tuples.size(); ++i)
      for (std::size_t j = i + 1; j < tuples.size(); ++j)
        if (rng() % 3 == 0) {
          present.emplace(tuples[i], tuples[j]);
          g.set_edge({CompositeVertex(tuples[j]), CompositeVertex(tuples[i])});
        }
    std::vector<bool> oracle;
    for (std::size_t i = 0; i < tuples.size(); ++i)
      for (std::size_t j = i + 1; j < tuples.size(); ++j)
        oracle.push_back(present.count({tuples[i], tuples[j]}) > 0);
    const auto& x = g.characteristic_string();
    ASSERT_EQ(x.size(), oracle.size());
    for (std::size_t r = 0; r < oracle.size(); ++r) ASSERT_EQ(x.test(r), oracle[r]) << r;
  }
}

TEST(CharacteristicString, OrderingDependsOnlyOnShape) {
  const CompanionTuple shape{4, 4};
  auto g1 = magtest::random_mag(shape, 1);
  auto g2 = magtest::random_mag(shape, 2);
  const mag::CompositeEdge e{{1, 2}, {3, 0}};
  g1.set_edge(e);
  g2.set_edge(e);
  const Index r = mag::edge_rank(shape, e);
  EXPECT_TRUE(g1.has_rank(r));
  EXPECT_TRUE(g2.has_rank(r));
  EXPECT_EQ(mag::edge_from_rank(shape, r), mag::make_edge(shape, e.u, e.v));
}
