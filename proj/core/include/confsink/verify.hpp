#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "confsink/chain.hpp"
#include "confsink/cube_complex.hpp"

namespace confsink {

/// Outcome of one named check. Ids are `group/name`; `reference` says what the expected value
/// rests on (a closed formula, a known surface, an exhaustive oracle, ...).
struct CheckResult {
  std::string id;
  std::string reference;
  bool passed = false;
  bool blocking = true;  // the fuzz report is informational
  std::string detail;
};

using BoundaryFn = std::function<Chain(const Graph&, const CubeCell&)>;

struct VerifyOptions {
  /// Group ids (`base-table`) or check ids / id prefixes (`base-table/circle`); empty runs all.
  std::vector<std::string> only;
  std::uint64_t seed = 0x5eed'2026;
  std::size_t property_cases = 1000;
  std::size_t fuzz_graphs = 300;
  /// Boundary used by the boundary-squared property; defaults to confsink::boundary. Lets a test
  /// inject a broken boundary as a negative control.
  BoundaryFn boundary;
  bool parallel = true;
};

/// Group ids in report order.
std::vector<std::string> check_groups();

/// Runs the selected checks; results sorted by id. Throws InvalidArgument for an `only` entry
/// that selects nothing.
std::vector<CheckResult> run_verify(const VerifyOptions& options = {});

/// True iff every blocking check passed.
bool all_passed(const std::vector<CheckResult>& results);

std::string verify_table(const std::vector<CheckResult>& results);
std::string verify_document(const std::vector<CheckResult>& results);

/// A named graph of the tree-with-loops corpus: star(3), star(4) and circle, all wedges of two of
/// them at a star's center or leaf or the circle's vertex, the H-graph, and each of these again
/// with its first valence-1 vertex made a sink.
struct NamedGraph {
  std::string name;
  Graph graph;
};
std::vector<NamedGraph> tree_corpus();

/// Invariant factors by dense elimination; the oracle for the sparse Smith normal form.
std::vector<mpz_class> dense_smith_normal_form(const SparseIntMatrix& m);
std::size_t dense_rank(const SparseIntMatrix& m);

/// Independent validity oracle for complete cells: per-state side conditions, at most one move
/// per half-edge, and every corner a valid configuration.
bool corner_oracle_valid(const Graph& g, const CubeCell& cell);

/// Removes particle s from every cell (ids above s shift down), undoing push_in.
Chain drop_particle(const Chain& z, ParticleId s);

}  // namespace confsink
