#include <gtest/gtest.h>

#include "confsink/homology.hpp"
#include "confsink/sparse_matrix.hpp"
#include "support/oracles.hpp"

using namespace confsink;

namespace {

SparseIntMatrix dense(std::vector<std::vector<long>> rows) {
  std::vector<std::vector<mpz_class>> m;
  for (const auto& r : rows) {
    m.emplace_back();
    for (long x : r) m.back().emplace_back(x);
  }
  return SparseIntMatrix::from_dense(m);
}

std::vector<mpz_class> z(std::vector<long> xs) { return {xs.begin(), xs.end()}; }

HomologySummary summary(std::vector<std::size_t> betti, std::vector<std::vector<long>> torsion = {}) {
  HomologySummary h;
  for (std::size_t k = 0; k < betti.size(); ++k) {
    DegreeSummary d;
    d.degree = k;
    d.betti = betti[k];
    if (k < torsion.size()) d.torsion = z(torsion[k]);
    h.degrees.push_back(d);
  }
  return h;
}

}  // namespace

TEST(SmithNormalForm, SmallExamples) {
  EXPECT_EQ(smith_normal_form(dense({{2, 4}, {6, 10}})), z({2, 2}));
  EXPECT_EQ(smith_normal_form(dense({{2, 0}, {0, 3}})), z({1, 6}));
  EXPECT_EQ(smith_normal_form(dense({{0, 0}, {0, 0}})), z({}));
  EXPECT_EQ(smith_normal_form(dense({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})), z({1, 3}));
  EXPECT_EQ(torsion_coefficients(dense({{2, 0}, {0, 3}})), z({6}));
}

TEST(SmithNormalForm, EmptyShapes) {
  EXPECT_TRUE(smith_normal_form(SparseIntMatrix(0, 5)).empty());
  EXPECT_TRUE(smith_normal_form(SparseIntMatrix(4, 0)).empty());
  EXPECT_EQ(rank_over_rationals(SparseIntMatrix(3, 3)), 0u);
}

TEST(Rank, SmallExamples) {
  EXPECT_EQ(rank_over_rationals(dense({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})), 2u);
  EXPECT_EQ(rank_over_rationals(dense({{1, 0}, {0, 1}, {1, 1}})), 2u);
  EXPECT_EQ(rank_over_rationals(SparseIntMatrix::identity(7)), 7u);
}

TEST(SparseMatrix, TripletsSumAndDropZeros) {
  const auto m = SparseIntMatrix::from_triplets(2, 2, {{0, 0, 1}, {0, 0, -1}, {1, 1, 2}, {1, 1, 3}});
  EXPECT_EQ(m.nonzeros(), 1u);
  EXPECT_EQ(m.to_dense()[1][1], 5);
  EXPECT_EQ(dense({{1, 2}}).hconcat(dense({{3}})), dense({{1, 2, 3}}));
  EXPECT_EQ(dense({{1, 2}, {3, 4}}).multiply(dense({{0, 1}, {1, 0}})), dense({{2, 1}, {4, 3}}));
}

TEST(Homology, CircleOneParticle) {
  const auto cx = CubeComplex::enumerate(build_graph(GraphSpec::circle()), 1);
  const auto h = homology(cx);
  EXPECT_EQ(h.betti(), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(h.euler_characteristic, 0);
  EXPECT_TRUE(h.torsion_free());
}

TEST(Homology, StarTwoParticlesIsACircle) {
  const auto cx = CubeComplex::enumerate(build_graph(GraphSpec::star(3)), 2);
  EXPECT_EQ(homology(cx).betti(), (std::vector<std::size_t>{1, 1}));
}

TEST(Homology, IntervalIsDisconnectedForTwo) {
  const auto cx = CubeComplex::enumerate(build_graph(GraphSpec::interval()), 2);
  EXPECT_EQ(homology(cx).betti(), (std::vector<std::size_t>{2}));
  EXPECT_EQ(connected_components(cx), 2u);
}

TEST(Homology, SinkConnectsTheInterval) {
  const auto cx = CubeComplex::enumerate(build_graph(GraphSpec::interval().with_sinks({0})), 3);
  EXPECT_EQ(homology(cx).betti(), (std::vector<std::size_t>{1}));
}

TEST(Homology, SurfaceExamples) {
  EXPECT_EQ(homology(CubeComplex::enumerate(build_graph(GraphSpec::complete(5)), 2)).betti(),
            (std::vector<std::size_t>{1, 12, 1}));
  EXPECT_EQ(homology(CubeComplex::enumerate(build_graph(GraphSpec::complete_bipartite(3, 3)), 2)).betti(),
            (std::vector<std::size_t>{1, 8, 1}));
}

TEST(Homology, EulerCharacteristicAgreesWithBetti) {
  for (const auto& spec : {GraphSpec::h_graph(), GraphSpec::banana(3).with_sinks({1}), GraphSpec::complete(4)}) {
    const auto cx = CubeComplex::enumerate(build_graph(spec), 3);
    const auto h = homology(cx, {true, false});
    std::int64_t alt = 0;
    for (const auto& d : h.degrees) alt += (d.degree % 2 ? -1 : 1) * static_cast<std::int64_t>(d.betti);
    EXPECT_EQ(alt, h.euler_characteristic);
    EXPECT_EQ(h.euler_characteristic, euler_characteristic(cx));
    EXPECT_EQ(h.degrees[0].betti, connected_components(cx));
  }
}

TEST(Homology, EulerCharacteristicMatchesGeneratingFunction) {
  for (const auto& spec : {GraphSpec::complete(5), GraphSpec::banana(4), GraphSpec::h_graph()}) {
    const Graph g = build_graph(spec);
    for (std::size_t n = 1; n <= 3; ++n) {
      Limits limits;
      limits.max_cells = 400'000;
      EXPECT_EQ(euler_characteristic(CubeComplex::enumerate(g, n, limits)), oracle::euler_characteristic_no_sinks(g, n));
    }
  }
}

TEST(Homology, ParallelAndSerialAgree) {
  const auto cx = CubeComplex::enumerate(build_graph(GraphSpec::banana(4)), 3);
  const auto a = homology(cx, {true, true});
  const auto b = homology(cx, {true, false});
  EXPECT_EQ(a.betti(), b.betti());
  EXPECT_EQ(to_table(a), to_table(b));
}

TEST(Homology, CompleteFiveHasUnitInvariantFactors) {
  const auto cx = CubeComplex::enumerate(build_graph(GraphSpec::complete(5)), 2);
  for (std::size_t k = 1; k <= cx.dimension(); ++k)
    for (const auto& f : smith_normal_form(cx.boundary_matrix(k))) EXPECT_EQ(f, 1);
}

TEST(IsBoundary, CircleOneParticle) {
  const Graph g = build_graph(GraphSpec::circle());
  const auto cx = CubeComplex::enumerate(g, 1);
  const CubeCell in{{ParticleState::move_end(0, End::Initial)}};
  const CubeCell out{{ParticleState::move_end(0, End::Terminal)}};
  const Chain loop = Chain::of(in) - Chain::of(out);
  EXPECT_TRUE(is_cycle(g, loop));
  EXPECT_FALSE(is_boundary(loop, cx));
  EXPECT_FALSE(is_boundary(2 * loop, cx));
  const Chain point_difference =
      Chain::of(CubeCell{{ParticleState::at_vertex(0)}}) - Chain::of(CubeCell{{ParticleState::on_edge(0, 0)}});
  EXPECT_TRUE(is_boundary(point_difference, cx));
  EXPECT_FALSE(is_boundary(Chain::of(CubeCell{{ParticleState::at_vertex(0)}}), cx));
  EXPECT_TRUE(is_boundary(Chain(1), cx));
  EXPECT_EQ(class_span_rank({loop}, cx, 1), 1u);
  EXPECT_EQ(class_span_rank({loop, -loop, 3 * loop}, cx, 1), 1u);
  EXPECT_TRUE(generates_integrally({loop}, cx, 1));
  EXPECT_FALSE(generates_integrally({2 * loop}, cx, 1));
}

TEST(IsBoundary, NonCycleIsRejectedBySpan) {
  const Graph g = build_graph(GraphSpec::circle());
  const auto cx = CubeComplex::enumerate(g, 1);
  const Chain half = Chain::of(CubeCell{{ParticleState::move_end(0, End::Initial)}});
  EXPECT_FALSE(is_cycle(g, half));
  EXPECT_THROW(class_span_rank({half}, cx, 1), InvalidArgument);
}

TEST(IsBoundary, CellOutsideTheComplexThrows) {
  const auto cx = CubeComplex::enumerate(build_graph(GraphSpec::circle()), 1);
  EXPECT_THROW(is_boundary(Chain::of(CubeCell{{ParticleState::on_edge(0, 4)}}), cx), InvalidArgument);
}

TEST(SurfaceProfile, Examples) {
  EXPECT_TRUE(surface_profile(summary({1, 12, 1})).is_surface);
  EXPECT_EQ(surface_profile(summary({1, 12, 1})).genus, 6u);
  EXPECT_EQ(surface_profile(summary({1, 0, 1})).genus, 0u);
  EXPECT_FALSE(surface_profile(summary({1, 3, 1})).is_surface);
  EXPECT_FALSE(surface_profile(summary({2, 4, 1})).is_surface);
  EXPECT_FALSE(surface_profile(summary({1, 4})).is_surface);
  EXPECT_FALSE(surface_profile(summary({1, 4, 1, 1})).is_surface);
  EXPECT_EQ(surface_profile(summary({1, 4, 1}, {{}, {2}})).reason, "torsion present");
}

TEST(Reports, DocumentHasTheFields) {
  const auto cx = CubeComplex::enumerate(build_graph(GraphSpec::star(3)), 2);
  const std::string doc = to_document(homology(cx), cx);
  for (const char* key : {"\"betti\"", "\"torsion\"", "\"euler_characteristic\"", "\"cells\"", "\"degree\""})
    EXPECT_NE(doc.find(key), std::string::npos) << key;
}
