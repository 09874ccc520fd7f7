#include <gtest/gtest.h>

#include <algorithm>

#include <json.hpp>

#include "confsink/cycles.hpp"
#include "confsink/verify.hpp"

using namespace confsink;

namespace {

VerifyOptions quick(std::vector<std::string> only) {
  VerifyOptions o;
  o.only = std::move(only);
  o.property_cases = 100;
  o.fuzz_graphs = 10;
  return o;
}

}  // namespace

TEST(Verify, BaseTableHasTwentyChecksAndPasses) {
  const auto results = run_verify(quick({"base-table"}));
  EXPECT_EQ(results.size(), 20u);
  EXPECT_TRUE(all_passed(results));
  for (const auto& r : results) {
    EXPECT_EQ(r.id.rfind("base-table/", 0), 0u);
    EXPECT_FALSE(r.reference.empty());
  }
}

TEST(Verify, SingleCheckById) {
  const auto all = run_verify(quick({"surfaces"}));
  ASSERT_FALSE(all.empty());
  const auto one = run_verify(quick({all.front().id}));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one.front().id, all.front().id);
}

TEST(Verify, UnknownSelectionThrows) { EXPECT_THROW(run_verify(quick({"no-such-group"})), InvalidArgument); }

TEST(Verify, GroupsAreListed) {
  const auto groups = check_groups();
  for (const char* g : {"base-table", "surfaces", "nonproduct", "star4", "tree-span", "properties", "fuzz"})
    EXPECT_NE(std::find(groups.begin(), groups.end(), g), groups.end()) << g;
}

TEST(Verify, BrokenBoundaryIsCaught) {
  auto o = quick({"properties/boundary-squared"});
  // Drop the sign alternation: faces no longer cancel in pairs.
  o.boundary = [](const Graph& g, const CubeCell& cell) {
    Chain out(cell.dimension() == 0 ? 0 : cell.dimension() - 1);
    for (std::size_t i = 0; i < cell.dimension(); ++i) {
      out.add(face(g, cell, i, 1), 1);
      out.add(face(g, cell, i, 0), -1);
    }
    return out;
  };
  const auto results = run_verify(o);
  ASSERT_EQ(results.size(), 1u);
  EXPECT_FALSE(results.front().passed);
  EXPECT_FALSE(all_passed(results));
}

TEST(Verify, DeterministicForASeed) {
  const auto a = run_verify(quick({"properties/corner-validity", "properties/equivariance"}));
  const auto b = run_verify(quick({"properties/corner-validity", "properties/equivariance"}));
  EXPECT_EQ(verify_document(a), verify_document(b));
  EXPECT_TRUE(all_passed(a));
}

TEST(Verify, FuzzIsNonBlocking) {
  const auto results = run_verify(quick({"fuzz"}));
  ASSERT_FALSE(results.empty());
  for (const auto& r : results) EXPECT_FALSE(r.blocking);
  CheckResult failing{"fuzz/x", "r", false, false, {}};
  EXPECT_TRUE(all_passed({failing}));
  failing.blocking = true;
  EXPECT_FALSE(all_passed({failing}));
}

TEST(Verify, DocumentShape) {
  const auto doc = nlohmann::json::parse(verify_document(run_verify(quick({"star4"}))));
  ASSERT_TRUE(doc.contains("checks"));
  for (const auto& c : doc["checks"]) {
    EXPECT_TRUE(c.contains("id"));
    EXPECT_TRUE(c.contains("passed"));
  }
}

TEST(Oracles, DenseSmithAndRank) {
  const auto m = SparseIntMatrix::from_dense({{2, 4}, {6, 10}});
  EXPECT_EQ(dense_smith_normal_form(m), (std::vector<mpz_class>{2, 2}));
  EXPECT_EQ(dense_rank(m), 2u);
}

TEST(Corpus, FortyNamedGraphs) {
  const auto corpus = tree_corpus();
  EXPECT_EQ(corpus.size(), 40u);
  for (const auto& ng : corpus) {
    EXPECT_FALSE(ng.name.empty());
    // Trees with loops: every embedded circuit is a single loop.
    for (const auto& c : embedded_circuits(ng.graph)) EXPECT_EQ(c.walk.size(), 1u) << ng.name;
  }
}
