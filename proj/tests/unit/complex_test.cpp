#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "confsink/chain.hpp"
#include "confsink/cube_complex.hpp"
#include "confsink/homology.hpp"
#include "support/oracles.hpp"

using namespace confsink;

TEST(CellCounts, CircleTwoParticles) {
  const auto cx = CubeComplex::enumerate(build_graph(GraphSpec::circle()), 2);
  EXPECT_EQ(cx.cell_counts(), (std::vector<std::size_t>{4, 4}));
}

TEST(CellCounts, IntervalBetweenSinksIsACircleForTwo) {
  const auto cx = CubeComplex::enumerate(build_graph(GraphSpec::interval().with_sinks({0, 1})), 2);
  // Only one particle at a time may cross, so the square has no interior.
  EXPECT_EQ(cx.cell_counts(), (std::vector<std::size_t>{4, 4}));
  EXPECT_EQ(homology(cx).betti(), (std::vector<std::size_t>{1, 1}));
}

TEST(CellCounts, IntervalWithoutSinksHasNoUsableVertex) {
  const auto cx = CubeComplex::enumerate(build_graph(GraphSpec::interval()), 2);
  // Only interior slots: the two orders.
  EXPECT_EQ(cx.cell_counts(), (std::vector<std::size_t>{2}));
}

TEST(CellCounts, MatchBruteForce) {
  const std::vector<GraphSpec> specs{GraphSpec::star(3),
                                     GraphSpec::star(3).with_sinks({2}),
                                     GraphSpec::circle(),
                                     GraphSpec::circle().with_sinks({0}),
                                     GraphSpec::banana(3),
                                     GraphSpec::banana(3).with_sinks({0}),
                                     GraphSpec::h_graph(),
                                     GraphSpec::complete(4),
                                     GraphSpec::explicit_graph(2, {{0, 0}, {0, 1}, {1, 1}}, {1})};
  for (const auto& spec : specs) {
    const Graph g = build_graph(spec);
    for (std::size_t n = 0; n <= 3; ++n) {
      const auto cx = CubeComplex::enumerate(g, n);
      auto expected = oracle::brute_force_cell_counts(g, n);
      auto actual = cx.cell_counts();
      while (!expected.empty() && expected.back() == 0) expected.pop_back();
      if (expected.empty()) expected.push_back(0);
      EXPECT_EQ(actual, expected) << to_document(g) << " n=" << n;
    }
  }
}

TEST(CellCounts, CellsAreSortedAndValid) {
  const auto cx = CubeComplex::enumerate(build_graph(GraphSpec::banana(3).with_sinks({1})), 3);
  for (std::size_t k = 0; k <= cx.dimension(); ++k) {
    const auto& cells = cx.cells(k);
    EXPECT_TRUE(std::is_sorted(cells.begin(), cells.end()));
    for (std::size_t i = 0; i < cells.size(); ++i) {
      EXPECT_EQ(cells[i].dimension(), k);
      EXPECT_TRUE(cell_is_valid(cx.graph(), cells[i]));
      EXPECT_EQ(cx.index_of(cells[i]), i);
    }
  }
}

TEST(CellCounts, DimensionWithinBound) {
  for (const auto& spec : {GraphSpec::banana(4), GraphSpec::h_graph(), GraphSpec::star(4).with_sinks({1, 2})}) {
    const Graph g = build_graph(spec);
    for (std::size_t n = 1; n <= 3; ++n) EXPECT_LE(CubeComplex::enumerate(g, n).dimension(), dimension_bound(g, n));
  }
}

TEST(BoundaryMatrices, SquareToZero) {
  const auto cx = CubeComplex::enumerate(build_graph(GraphSpec::banana(4)), 3);
  ASSERT_EQ(cx.dimension(), 2u);
  const auto d1 = cx.boundary_matrix(1);
  const auto d2 = cx.boundary_matrix(2);
  EXPECT_EQ(d1.rows(), cx.cell_count(0));
  EXPECT_EQ(d1.cols(), cx.cell_count(1));
  EXPECT_TRUE(d1.multiply(d2).is_zero());
}

TEST(BoundaryMatrices, ChainBoundarySquaresToZeroWithSinks) {
  const Graph g = build_graph(GraphSpec::explicit_graph(3, {{0, 1}, {0, 1}, {1, 2}, {2, 2}}, {2}));
  const auto cx = CubeComplex::enumerate(g, 3);
  for (std::size_t k = 2; k <= cx.dimension(); ++k)
    for (const auto& c : cx.cells(k)) EXPECT_TRUE(boundary(g, boundary(g, c)).is_zero()) << to_record(c);
}

TEST(BoundaryMatrices, DegreeZeroIsRejected) {
  const auto cx = CubeComplex::enumerate(build_graph(GraphSpec::circle()), 1);
  EXPECT_THROW(cx.boundary_matrix(0), InvalidArgument);
}

TEST(Caps, CellCapThrows) {
  Limits limits;
  limits.max_cells = 100;
  EXPECT_THROW(CubeComplex::enumerate(build_graph(GraphSpec::complete(5)), 2, limits), CapExceeded);
  try {
    CubeComplex::enumerate(build_graph(GraphSpec::complete(5)), 2, limits);
  } catch (const CapExceeded& e) {
    EXPECT_EQ(e.limit(), 100u);
  }
}

TEST(FromCells, RejectsInvalidAndKeepsOrder) {
  const Graph g = build_graph(GraphSpec::circle());
  const auto cx = CubeComplex::enumerate(g, 2);
  std::vector<std::vector<CubeCell>> cells{cx.cells(0), cx.cells(1)};
  std::reverse(cells[0].begin(), cells[0].end());
  const auto rebuilt = CubeComplex::from_cells(g, 2, cells);
  EXPECT_EQ(rebuilt.cells(0), cells[0]);
  cells[0].push_back(CubeCell({ParticleState::on_edge(0, 5), ParticleState::at_vertex(0)}));
  EXPECT_THROW(CubeComplex::from_cells(g, 2, cells), InvalidArgument);
}

TEST(Relabeling, BettiNumbersAreInvariant) {
  const Graph g = build_graph(GraphSpec::star(3).with_sinks({1}));
  const auto cx = CubeComplex::enumerate(g, 3);
  const auto reference = homology(cx).betti();
  std::vector<ParticleId> perm{0, 1, 2};
  std::size_t seen = 0;
  do {
    std::vector<std::vector<CubeCell>> cells(cx.dimension() + 1);
    for (std::size_t k = 0; k <= cx.dimension(); ++k)
      for (const auto& c : cx.cells(k)) cells[k].push_back(relabel(c, perm));
    const auto moved = CubeComplex::from_cells(g, 3, cells);
    EXPECT_EQ(homology(moved).betti(), reference);
    ++seen;
  } while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_EQ(seen, 6u);
}

TEST(StaticPlacements, AvoidBlockedSites) {
  const Graph g = build_graph(GraphSpec::star(3));
  std::vector<bool> vertices(g.vertex_count(), false), edges(g.edge_count(), false);
  const auto all = static_placements(g, 1, vertices, edges, 100);
  EXPECT_EQ(all.size(), 4u);  // center plus three edge interiors
  vertices[0] = true;
  edges[0] = true;
  EXPECT_EQ(static_placements(g, 1, vertices, edges, 100).size(), 2u);
  bool truncated = false;
  EXPECT_EQ(first_static_placements(g, 2, vertices, edges, 1, &truncated).size(), 1u);
  EXPECT_TRUE(truncated);
}
