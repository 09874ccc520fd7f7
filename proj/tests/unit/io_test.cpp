#include <gtest/gtest.h>

#include "confsink/cycles.hpp"
#include "confsink/homology.hpp"
#include "confsink/io.hpp"

using namespace confsink;

TEST(ComplexExport, RoundTripKeepsCellsAndHomology) {
  const auto cx = CubeComplex::enumerate(build_graph(GraphSpec::banana(3).with_sinks({1})), 2);
  const std::string text = export_complex(cx);
  EXPECT_EQ(text.rfind("confsink-complex 1\n", 0), 0u);
  const auto back = import_complex(text);
  EXPECT_EQ(back.graph(), cx.graph());
  EXPECT_EQ(back.particle_count(), 2u);
  for (std::size_t k = 0; k <= cx.dimension(); ++k) EXPECT_EQ(back.cells(k), cx.cells(k));
  EXPECT_EQ(homology(back).betti(), homology(cx).betti());
  EXPECT_EQ(export_complex(back), text);
}

TEST(ComplexExport, BoundarySectionMatchesTheMatrix) {
  const auto cx = CubeComplex::enumerate(build_graph(GraphSpec::circle()), 2);
  const std::string text = export_complex(cx);
  const auto d = cx.boundary_matrix(1);
  EXPECT_NE(text.find("boundary 1 " + std::to_string(d.rows()) + " " + std::to_string(d.cols()) + " " +
                      std::to_string(d.nonzeros())),
            std::string::npos);
  EXPECT_EQ(export_complex(cx, false).find("boundary"), std::string::npos);
}

TEST(ComplexExport, MalformedInputThrows) {
  EXPECT_THROW(import_complex(""), InvalidArgument);
  EXPECT_THROW(import_complex("confsink-complex 9\n"), InvalidArgument);
  const auto cx = CubeComplex::enumerate(build_graph(GraphSpec::circle()), 1);
  std::string text = export_complex(cx, false);
  text.replace(text.find("E 0 0"), 5, "E 0 7");
  EXPECT_THROW(import_complex(text), InvalidArgument);
}

TEST(ChainExport, RoundTrip) {
  const Graph g = build_graph(GraphSpec::banana(4));
  const std::vector<Chain> zs{b3_nonproduct_cycle(g, 3), Chain(1), 3 * Chain::of(CubeCell({ParticleState::at_vertex(0)}))};
  const std::string text = export_chains(zs);
  EXPECT_EQ(import_chains(text), zs);
  EXPECT_EQ(import_chains(to_text(zs[0])), std::vector<Chain>{zs[0]});
  EXPECT_TRUE(import_chains("").empty());
}

TEST(ChainExport, MalformedThrows) {
  EXPECT_THROW(import_chains("chain 1 2\n1\tV 0\n"), InvalidArgument);
  EXPECT_THROW(import_chains("garbage\n"), InvalidArgument);
  EXPECT_THROW(import_chains("chain 0 1\nx\tV 0\n"), InvalidArgument);
}
