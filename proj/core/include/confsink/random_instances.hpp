#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "confsink/chain.hpp"
#include "confsink/cube_complex.hpp"
#include "confsink/sparse_matrix.hpp"

namespace confsink {

/// Seeded generator for reproducible random instances. Draws use only the raw mt19937_64 stream
/// (no library distributions), so a seed means the same instances on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n); n must be positive.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::size_t>(hi - lo + 1)));
  }
  bool chance(unsigned percent) { return below(100) < percent; }

  template <class T>
  const T& pick(const std::vector<T>& items) {
    return items.at(below(items.size()));
  }
  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

struct RandomGraphOptions {
  std::size_t max_vertices = 4;
  std::size_t max_edges = 5;
  unsigned loop_percent = 15;
  unsigned sink_percent = 20;
};

/// Connected multigraph: a random spanning tree plus extra edges (loops and parallels allowed),
/// random orientations, each vertex a sink with the given chance.
Graph random_connected_graph(Rng& rng, const RandomGraphOptions& options = {});

/// A uniformly chosen permutation of 0..n-1.
std::vector<ParticleId> random_permutation(Rng& rng, std::size_t n);

/// Up to `terms` distinct cells of dimension k with coefficients in [-3, 3] \ {0}.
Chain random_chain(Rng& rng, const CubeComplex& cx, std::size_t k, std::size_t terms);

/// Candidate cell that may break validity: a valid cell with one or two particle states
/// replaced by arbitrary states of the graph.
CubeCell random_candidate_cell(Rng& rng, const CubeComplex& cx);

/// rows x cols matrix with about `percent`% nonzero entries drawn from [-magnitude, magnitude].
SparseIntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, unsigned percent, int magnitude);

/// Product of `steps` random elementary integer operations on the identity; determinant +-1.
SparseIntMatrix random_unimodular(Rng& rng, std::size_t n, std::size_t steps);

}  // namespace confsink
