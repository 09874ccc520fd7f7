#include <gtest/gtest.h>

#include "confsink/cycles.hpp"
#include "confsink/homology.hpp"
#include "confsink/verify.hpp"

using namespace confsink;

namespace {

using S = ParticleState;

const StarSpec kStar3{0, {{0, End::Initial}, {1, End::Initial}, {2, End::Initial}}};

// h_graph: edge 0 joins the centers 0 and 1; edges 1, 2 hang off 0 and edges 3, 4 off 1.
const HSpec kH{0, 1, {{0, End::Initial}}, {{1, End::Initial}, {2, End::Initial}}, {{3, End::Initial}, {4, End::Initial}}};

}  // namespace

TEST(StarCycle, TwelveCellCycleGeneratingTheStar) {
  const Graph g = build_graph(GraphSpec::star(3));
  const auto cx = CubeComplex::enumerate(g, 2);
  const Chain z = star_cycle(g, kStar3, 0, 1, empty_parking(2));
  EXPECT_EQ(z.degree(), 1u);
  EXPECT_EQ(z.support_size(), 12u);
  EXPECT_TRUE(is_cycle(g, z));
  EXPECT_FALSE(is_boundary(z, cx));
  EXPECT_TRUE(generates_integrally({z}, cx, 1));
}

TEST(StarCycle, SwappingTheParticlesGivesAHomologousCycle) {
  const Graph g = build_graph(GraphSpec::star(3));
  const auto cx = CubeComplex::enumerate(g, 2);
  const Chain z = star_cycle(g, kStar3, 0, 1, empty_parking(2));
  const std::vector<ParticleId> swap{1, 0};
  EXPECT_TRUE(is_cycle(g, relabel(z, swap)));
  EXPECT_TRUE(is_boundary(z - relabel(z, swap), cx));
}

TEST(StarCycle, RejectsBadSpecs) {
  const Graph g = build_graph(GraphSpec::star(3));
  EXPECT_THROW(star_cycle(g, kStar3, 0, 0, empty_parking(2)), InvalidArgument);
  EXPECT_THROW(star_cycle(g, {0, {{0, End::Initial}, {0, End::Initial}, {1, End::Initial}}}, 0, 1, empty_parking(2)),
               InvalidArgument);
  EXPECT_THROW(star_cycle(g, {1, {{0, End::Terminal}, {1, End::Initial}, {2, End::Initial}}}, 0, 1, empty_parking(2)),
               InvalidArgument);
  CubeCell busy = empty_parking(2);
  busy.states[0] = S::on_edge(0, 0);
  EXPECT_THROW(star_cycle(g, kStar3, 0, 1, busy), InvalidArgument);
}

TEST(StarCycle, ParkedParticleStaysPut) {
  const Graph g = build_graph(GraphSpec::star(4));
  CubeCell parking = empty_parking(3);
  parking.states[2] = S::on_edge(3, 0);
  const Chain z = star_cycle(g, kStar3, 0, 1, parking);
  EXPECT_TRUE(is_cycle(g, z));
  for (const auto& [cell, coef] : z.terms()) EXPECT_EQ(cell.states[2], S::on_edge(3, 0));
  EXPECT_FALSE(is_boundary(z, CubeComplex::enumerate(g, 3)));
}

TEST(StarCycle, SinkLeafEndsWork) {
  const Graph g = build_graph(GraphSpec::star(3).with_sinks({1, 2}));
  const Chain z = star_cycle(g, kStar3, 0, 1, empty_parking(2));
  EXPECT_TRUE(is_cycle(g, z));
  EXPECT_FALSE(is_boundary(z, CubeComplex::enumerate(g, 2)));
}

TEST(Star4Relation, VanishesOnStarAndBanana) {
  const StarSpec four{0, {{0, End::Initial}, {1, End::Initial}, {2, End::Initial}, {3, End::Initial}}};
  EXPECT_TRUE(star4_relation(build_graph(GraphSpec::star(4)), four, 0, 1, empty_parking(2)).is_zero());
  EXPECT_TRUE(star4_relation(build_graph(GraphSpec::banana(4)), four, 0, 1, empty_parking(2)).is_zero());
}

TEST(CircuitCycle, CircleTwoParticlesGenerates) {
  const Graph g = build_graph(GraphSpec::circle());
  const auto cx = CubeComplex::enumerate(g, 2);
  const auto circuits = embedded_circuits(g);
  ASSERT_EQ(circuits.size(), 1u);
  const Chain z = circuit_cycle(g, circuits[0], {0, 1}, empty_parking(2));
  EXPECT_TRUE(is_cycle(g, z));
  EXPECT_TRUE(generates_integrally({z}, cx, 1));
}

TEST(CircuitCycle, BananaCircuitWithAParkedParticle) {
  const Graph g = build_graph(GraphSpec::banana(3));
  const auto circuits = embedded_circuits(g);
  ASSERT_EQ(circuits.size(), 3u);
  CubeCell parking = empty_parking(2);
  parking.states[1] = S::on_edge(2, 0);
  const Chain z = circuit_cycle(g, circuits[0], {0}, parking);
  EXPECT_TRUE(is_cycle(g, z));
  EXPECT_FALSE(is_boundary(z, CubeComplex::enumerate(g, 2)));
  EXPECT_THROW(circuit_cycle(g, circuits[0], {}, parking), InvalidArgument);
  EXPECT_THROW(circuit_cycle(g, circuits[0], {0, 0}, empty_parking(2)), InvalidArgument);
}

TEST(CircuitCycle, CircuitThroughASink) {
  const Graph g = build_graph(GraphSpec::banana(2).with_sinks({1}));
  const auto circuits = embedded_circuits(g);
  ASSERT_EQ(circuits.size(), 1u);
  const Chain z = circuit_cycle(g, circuits[0], {0, 1}, empty_parking(2));
  EXPECT_TRUE(is_cycle(g, z));
  EXPECT_FALSE(is_boundary(z, CubeComplex::enumerate(g, 2)));
}

TEST(EmbeddedCircuits, Counts) {
  EXPECT_EQ(embedded_circuits(build_graph(GraphSpec::banana(4))).size(), 6u);
  EXPECT_EQ(embedded_circuits(build_graph(GraphSpec::complete(4))).size(), 7u);
  EXPECT_TRUE(embedded_circuits(build_graph(GraphSpec::h_graph())).empty());
  EXPECT_EQ(embedded_circuits(build_graph(GraphSpec::explicit_graph(1, {{0, 0}, {0, 0}}))).size(), 2u);
}

TEST(HCycle, IsANewClassOnTheHGraph) {
  const Graph g = build_graph(GraphSpec::h_graph());
  const auto cx = CubeComplex::enumerate(g, 2);
  const Chain z = h_cycle(g, kH, 0, 1, empty_parking(2));
  EXPECT_TRUE(is_cycle(g, z));
  EXPECT_FALSE(is_boundary(z, cx));
  const StarSpec at1{1, {{0, End::Terminal}, {3, End::Initial}, {4, End::Initial}}};
  const std::vector<Chain> stars{star_cycle(g, kStar3, 0, 1, empty_parking(2)), star_cycle(g, at1, 0, 1, empty_parking(2))};
  auto with_h = stars;
  with_h.push_back(z);
  EXPECT_EQ(class_span_rank(with_h, cx, 1), class_span_rank(stars, cx, 1) + 1);
}

TEST(HCycle, SinkEndpointNeedsNoSides) {
  const Graph g = build_graph(GraphSpec::h_graph().with_sinks({1}));
  const HSpec spec{0, 1, {{0, End::Initial}}, {{1, End::Initial}, {2, End::Initial}}, {}};
  const Chain z = h_cycle(g, spec, 0, 1, empty_parking(2));
  EXPECT_TRUE(is_cycle(g, z));
}

TEST(Walks, IllegalStepAndOpenWalk) {
  const Graph g = build_graph(GraphSpec::star(3));
  const CubeCell start({S::at_vertex(0), S::on_edge(1, 0)});
  EXPECT_FALSE(try_walk(g, start, {{1, S::move_end(1, End::Initial)}}).has_value());
  CubeCell finish;
  const auto half = try_walk(g, start, {{0, S::move_end(0, End::Initial)}}, &finish);
  ASSERT_TRUE(half.has_value());
  EXPECT_EQ(finish, CubeCell({S::on_edge(0, 0), S::on_edge(1, 0)}));
  EXPECT_THROW(closed_walk(g, start, {{0, S::move_end(0, End::Initial)}}), InvalidArgument);
}

TEST(Products, TwoLoopsGiveATorus) {
  const Graph g = build_graph(GraphSpec::explicit_graph(2, {{0, 0}, {0, 1}, {1, 1}}));
  const auto cx = CubeComplex::enumerate(g, 2);
  const auto circuits = embedded_circuits(g);
  ASSERT_EQ(circuits.size(), 2u);
  CubeCell a_only = empty_parking(2), b_only = empty_parking(2);
  const Chain a = circuit_cycle(g, circuits[0], {0}, b_only);
  const Chain b = circuit_cycle(g, circuits[1], {1}, a_only);
  const Chain ab = product_chain(g, a, b);
  EXPECT_EQ(ab.degree(), 2u);
  EXPECT_EQ(ab.support_size(), a.support_size() * b.support_size());
  EXPECT_TRUE(is_cycle(g, ab));
  EXPECT_FALSE(is_boundary(ab, cx));
  EXPECT_THROW(product_chain(g, a, a), InvalidArgument);
}

TEST(PushIn, AddsAParticleAndCommutesWithBoundary) {
  const Graph g = build_graph(GraphSpec::star(4));
  const Chain z = star_cycle(g, kStar3, 0, 1, empty_parking(2));
  const Chain pz = push_in(g, z, 3, 0);
  for (const auto& [cell, coef] : pz.terms()) EXPECT_EQ(cell.states[0], S::on_edge(3, 0));
  EXPECT_TRUE(is_cycle(g, pz));
  EXPECT_FALSE(is_boundary(pz, CubeComplex::enumerate(g, 3)));
  EXPECT_EQ(drop_particle(pz, 0), z);
  EXPECT_THROW(push_in(build_graph(GraphSpec::banana(3)), Chain(0), 0, 0), InvalidArgument);
}

TEST(PushIn, SinkLeafTakesTheParticleAtTheVertex) {
  const Graph g = build_graph(GraphSpec::star(4).with_sinks({4}));
  const Chain pz = push_in(g, star_cycle(g, kStar3, 0, 1, empty_parking(2)), 3, 2);
  for (const auto& [cell, coef] : pz.terms()) EXPECT_EQ(cell.states[2], S::at_vertex(4));
  EXPECT_TRUE(is_cycle(g, pz));
}

TEST(NonProduct, BananaTwoCycle) {
  const Graph g = build_graph(GraphSpec::banana(4));
  const Chain z = b3_nonproduct_cycle(g, 3);
  EXPECT_EQ(z.degree(), 2u);
  EXPECT_EQ(z.support_size(), 144u);
  EXPECT_TRUE(is_cycle(g, z));
  const auto cx = CubeComplex::enumerate(g, 3);
  EXPECT_FALSE(is_boundary(z, cx));
  EXPECT_EQ(class_span_rank({z}, cx, 2), 1u);
}

TEST(NonProduct, LoopAugmented) {
  const auto zero = loop_augmented_nonproduct(0);
  EXPECT_EQ(zero.degree, 2u);
  EXPECT_EQ(zero.particles, 3u);
  EXPECT_EQ(zero.cycle.support_size(), 144u);
  const auto one = loop_augmented_nonproduct(1);
  EXPECT_EQ(one.degree, 3u);
  EXPECT_EQ(one.particles, 4u);
  EXPECT_EQ(one.cycle.degree(), 3u);
  EXPECT_TRUE(is_cycle(one.graph, one.cycle));
  EXPECT_FALSE(is_boundary(one.cycle, CubeComplex::enumerate(one.graph, one.particles)));
  EXPECT_FALSE(one.recipe.empty());
}

TEST(StarLocal, ThreeParticlesInAStarSpanItsFirstHomology) {
  const Graph g = build_graph(GraphSpec::star(3));
  const auto cx = CubeComplex::enumerate(g, 3);
  const auto zs = star_local_cycles(g, 0, {0, 1, 2}, empty_parking(3));
  ASSERT_FALSE(zs.empty());
  for (const auto& z : zs) EXPECT_TRUE(is_cycle(g, z));
  EXPECT_EQ(class_span_rank(zs, cx, 1), homology(cx).degrees[1].betti);
}

TEST(StarLocal, TwoParticlesInAFourStar) {
  const Graph g = build_graph(GraphSpec::star(4));
  const auto cx = CubeComplex::enumerate(g, 2);
  const auto zs = star_local_cycles(g, 0, {0, 1}, empty_parking(2));
  EXPECT_EQ(class_span_rank(zs, cx, 1), homology(cx).degrees[1].betti);
}

TEST(Enumerate, SpansFirstHomologyAndIsDeterministic) {
  for (const auto& spec : {GraphSpec::h_graph(), GraphSpec::banana(3), GraphSpec::star(3).with_sinks({1})}) {
    const Graph g = build_graph(spec);
    const auto cx = CubeComplex::enumerate(g, 2);
    const auto a = enumerate_basic_classes(g, 2);
    const auto b = enumerate_basic_classes(g, 2);
    ASSERT_EQ(a.classes.size(), b.classes.size());
    for (std::size_t i = 0; i < a.classes.size(); ++i) {
      EXPECT_EQ(a.classes[i].label, b.classes[i].label);
      EXPECT_EQ(a.classes[i].chain, b.classes[i].chain);
    }
    EXPECT_FALSE(a.truncated);
    EXPECT_EQ(class_span_rank(a.chains(1), cx, 1), homology(cx).degrees[1].betti) << to_document(g);
  }
}

TEST(Enumerate, CapsTruncate) {
  ClassCaps caps;
  caps.max_classes = 1;
  const auto list = enumerate_basic_classes(build_graph(GraphSpec::banana(3)), 2, caps);
  EXPECT_TRUE(list.truncated);
  EXPECT_LE(list.classes.size(), 1u);
}

TEST(Enumerate, ProductsOnlyWhenAsked) {
  const Graph g = build_graph(GraphSpec::explicit_graph(2, {{0, 0}, {0, 1}, {1, 1}}));
  EXPECT_TRUE(enumerate_basic_classes(g, 2).chains(2).empty());
  ClassCaps caps;
  caps.products = true;
  const auto products = enumerate_basic_classes(g, 2, caps).chains(2);
  ASSERT_FALSE(products.empty());
  const auto cx = CubeComplex::enumerate(g, 2);
  EXPECT_EQ(class_span_rank(products, cx, 2), homology(cx).degrees[2].betti);
}
