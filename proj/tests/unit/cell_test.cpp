#include <gtest/gtest.h>

#include "confsink/cell.hpp"
#include "confsink/errors.hpp"

using namespace confsink;

namespace {

using S = ParticleState;

CubeCell cell(std::vector<ParticleState> s) { return CubeCell(std::move(s)); }

}  // namespace

TEST(CellValidity, TwoMovesAtTheSameEndConflict) {
  const Graph g = build_graph(GraphSpec::banana(4));
  EXPECT_FALSE(cell_is_valid(g, cell({S::move_end(0, End::Initial), S::move_end(0, End::Initial)})));
}

TEST(CellValidity, MovesAtOppositeEndsOfOneEdgeAreAllowed) {
  const Graph g = build_graph(GraphSpec::banana(4));
  EXPECT_TRUE(cell_is_valid(g, cell({S::move_end(0, End::Initial), S::move_end(0, End::Terminal)})));
}

TEST(CellValidity, TwoMovesIntoOneVertexConflict) {
  const Graph g = build_graph(GraphSpec::banana(4));
  EXPECT_FALSE(cell_is_valid(g, cell({S::move_end(0, End::Initial), S::move_end(1, End::Initial)})));
}

TEST(CellValidity, ParticleAtANonSinkLeafIsInvalid) {
  const Graph g = build_graph(GraphSpec::star(3));
  EXPECT_FALSE(cell_is_valid(g, cell({S::at_vertex(1)})));
  EXPECT_TRUE(cell_is_valid(g, cell({S::at_vertex(0)})));
}

TEST(CellValidity, SinkHoldsManyParticles) {
  const Graph g = build_graph(GraphSpec::star(3).with_sinks({1}));
  EXPECT_TRUE(cell_is_valid(g, cell({S::at_vertex(1), S::at_vertex(1)})));
  EXPECT_TRUE(cell_is_valid(g, cell({S::at_vertex(1), S::at_vertex(1), S::at_vertex(1)})));
}

TEST(CellValidity, NonSinkVertexHoldsOne) {
  const Graph g = build_graph(GraphSpec::star(3));
  EXPECT_FALSE(cell_is_valid(g, cell({S::at_vertex(0), S::at_vertex(0)})));
  EXPECT_FALSE(cell_is_valid(g, cell({S::at_vertex(0), S::move_end(1, End::Initial)})));
}

TEST(CellValidity, RanksMustBeContiguous) {
  const Graph g = build_graph(GraphSpec::circle());
  EXPECT_TRUE(cell_is_valid(g, cell({S::on_edge(0, 1), S::on_edge(0, 0)})));
  EXPECT_FALSE(cell_is_valid(g, cell({S::on_edge(0, 0), S::on_edge(0, 2)})));
  EXPECT_FALSE(cell_is_valid(g, cell({S::on_edge(0, 0), S::on_edge(0, 0)})));
}

TEST(CellValidity, SinkEdgesHaveNoInteriorSlots) {
  const Graph g = build_graph(GraphSpec::interval().with_sinks({0}));
  EXPECT_FALSE(cell_is_valid(g, cell({S::on_edge(0, 0)})));
  EXPECT_FALSE(cell_is_valid(g, cell({S::move_end(0, End::Initial)})));
  // The other end is a non-sink leaf, so a full traversal is impossible.
  EXPECT_FALSE(cell_is_valid(g, cell({S::move_full(0)})));
  const Graph both = build_graph(GraphSpec::interval().with_sinks({0, 1}));
  EXPECT_TRUE(cell_is_valid(both, cell({S::move_full(0), S::at_vertex(0)})));
}

TEST(CellValidity, MoveFullNeedsASinkEndpoint) {
  const Graph g = build_graph(GraphSpec::banana(3));
  EXPECT_FALSE(cell_is_valid(g, cell({S::move_full(0)})));
}

TEST(CellValidity, AbsentOnlyWhenAllowed) {
  const Graph g = build_graph(GraphSpec::star(3));
  const CubeCell c = cell({S::at_vertex(0), S::absent()});
  EXPECT_FALSE(cell_is_valid(g, c));
  EXPECT_TRUE(cell_is_valid(g, c, true));
  EXPECT_FALSE(c.complete());
}

TEST(CellValidity, OutOfRangeIds) {
  const Graph g = build_graph(GraphSpec::star(3));
  EXPECT_FALSE(cell_is_valid(g, cell({S::at_vertex(9)})));
  EXPECT_FALSE(cell_is_valid(g, cell({S::on_edge(9, 0)})));
}

TEST(CellFaces, MoveEndCollapsesToVertexOrOutermostSlot) {
  const Graph g = build_graph(GraphSpec::banana(4));
  const CubeCell c = cell({S::move_end(0, End::Initial), S::on_edge(0, 0)});
  EXPECT_EQ(c.dimension(), 1u);
  EXPECT_EQ(face(g, c, 0, 1), cell({S::at_vertex(0), S::on_edge(0, 0)}));
  EXPECT_EQ(face(g, c, 0, 0), cell({S::on_edge(0, 0), S::on_edge(0, 1)}));
  const CubeCell d = cell({S::move_end(0, End::Terminal), S::on_edge(0, 0)});
  EXPECT_EQ(face(g, d, 0, 0), cell({S::on_edge(0, 1), S::on_edge(0, 0)}));
  EXPECT_EQ(face(g, d, 0, 1), cell({S::at_vertex(1), S::on_edge(0, 0)}));
}

TEST(CellFaces, MoveFullGoesInitialToTerminal) {
  const Graph g = build_graph(GraphSpec::interval().with_sinks({0, 1}));
  const CubeCell c = cell({S::move_full(0)});
  EXPECT_EQ(face(g, c, 0, 0), cell({S::at_vertex(0)}));
  EXPECT_EQ(face(g, c, 0, 1), cell({S::at_vertex(1)}));
}

TEST(CellFaces, SlotOutOfRangeThrows) {
  const Graph g = build_graph(GraphSpec::banana(4));
  EXPECT_THROW(face(g, cell({S::at_vertex(0)}), 0, 0), InvalidArgument);
  EXPECT_THROW(face(g, cell({S::move_end(0, End::Initial)}), 0, 2), InvalidArgument);
}

TEST(CellCorners, SquareHasFourValidCorners) {
  const Graph g = build_graph(GraphSpec::banana(4));
  const CubeCell c = cell({S::move_end(0, End::Initial), S::move_end(1, End::Terminal)});
  ASSERT_TRUE(cell_is_valid(g, c));
  const auto corners = corner_configurations(g, c);
  ASSERT_EQ(corners.size(), 4u);
  for (const auto& k : corners) EXPECT_TRUE(cell_is_valid(g, k));
  EXPECT_EQ(corners[0], cell({S::on_edge(0, 0), S::on_edge(1, 0)}));
  EXPECT_EQ(corners[3], cell({S::at_vertex(0), S::at_vertex(1)}));
}

TEST(CellRelabel, PermutesStatesAndTracksOrientation) {
  const CubeCell c = cell({S::move_end(0, End::Initial), S::at_vertex(1), S::move_end(1, End::Initial)});
  const std::vector<ParticleId> swap02{2, 1, 0};
  EXPECT_EQ(relabel(c, swap02), cell({S::move_end(1, End::Initial), S::at_vertex(1), S::move_end(0, End::Initial)}));
  EXPECT_EQ(relabel_sign(c, swap02), -1);
  const std::vector<ParticleId> cycle{1, 2, 0};
  // Movers 0 and 2 land on 2 and 1: directions (2, 0) in new order, one inversion.
  EXPECT_EQ(relabel_sign(c, cycle), -1);
  const std::vector<ParticleId> id{0, 1, 2};
  EXPECT_EQ(relabel(c, id), c);
  EXPECT_EQ(relabel_sign(c, id), 1);
}

TEST(CellRelabel, InverseUndoes) {
  const CubeCell c = cell({S::at_vertex(0), S::on_edge(1, 0), S::move_end(2, End::Terminal)});
  const std::vector<ParticleId> perm{2, 0, 1};
  EXPECT_EQ(relabel(relabel(c, perm), inverse_permutation(perm)), c);
  EXPECT_THROW(relabel(c, std::vector<ParticleId>{0, 1}), InvalidArgument);
}

TEST(CellRecords, RoundTrip) {
  const CubeCell c =
      cell({S::at_vertex(3), S::on_edge(1, 2), S::move_end(4, End::Terminal), S::move_full(5), S::absent()});
  EXPECT_EQ(to_record(c), "V 3; E 1 2; ME 4 1; MF 5; -");
  EXPECT_EQ(cell_from_record(to_record(c)), c);
}

TEST(CellRecords, MalformedThrows) {
  EXPECT_THROW(cell_from_record("Q 1"), InvalidArgument);
  EXPECT_THROW(cell_from_record("ME 1 7"), InvalidArgument);
  EXPECT_THROW(cell_from_record("E 1"), InvalidArgument);
}
