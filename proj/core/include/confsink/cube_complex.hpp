#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "confsink/cell.hpp"
#include "confsink/chain.hpp"
#include "confsink/graph.hpp"
#include "confsink/sparse_matrix.hpp"

namespace confsink {

/// Resource caps guarding desk-scale computations.
struct Limits {
  std::size_t max_cells = 5'000'000;
  std::size_t max_nonzeros = 50'000'000;
};

/// The finite cube complex modelling the configuration space of `n` labelled particles in a graph
/// with sinks. Cells of each dimension are stored in ascending CubeCell order, so two
/// enumerations of the same instance agree index for index.
class CubeComplex {
 public:
  /// Enumerates every valid cell. Throws CapExceeded past `limits.max_cells`.
  static CubeComplex enumerate(Graph g, std::size_t particles, Limits limits = {});

  /// Wraps an explicit cell list, kept in the given order. Cells must be valid and complete.
  static CubeComplex from_cells(Graph g, std::size_t particles, std::vector<std::vector<CubeCell>> cells_by_dimension,
                                Limits limits = {});

  const Graph& graph() const noexcept { return graph_; }
  std::size_t particle_count() const noexcept { return particles_; }
  const Limits& limits() const noexcept { return limits_; }

  /// Highest dimension holding a cell (0 for an empty complex).
  std::size_t dimension() const noexcept { return cells_.empty() ? 0 : cells_.size() - 1; }
  const std::vector<CubeCell>& cells(std::size_t k) const;
  std::size_t cell_count(std::size_t k) const { return cells(k).size(); }
  std::vector<std::size_t> cell_counts() const;
  std::size_t total_cells() const;

  std::optional<std::size_t> index_of(const CubeCell& cell) const;
  bool contains(const CubeCell& cell) const { return index_of(cell).has_value(); }

  /// Matrix of the boundary from k-cells (columns) to (k-1)-cells (rows); requires k >= 1.
  SparseIntMatrix boundary_matrix(std::size_t k) const;

  /// Column vector of `chain` over the cells of its degree; throws if a cell is not in the complex.
  SparseIntMatrix column_of(const Chain& chain) const;

 private:
  CubeComplex(Graph g, std::size_t particles, std::vector<std::vector<CubeCell>> cells, Limits limits);

  Graph graph_;
  std::size_t particles_ = 0;
  Limits limits_;
  std::vector<std::vector<CubeCell>> cells_;
  std::vector<std::unordered_map<CubeCell, std::size_t, CubeCellHash>> index_;
};

/// All complete 0-cells for `particles` particles whose static positions avoid the given
/// vertices and edges. Used to enumerate parkings.
std::vector<CubeCell> static_placements(const Graph& g, std::size_t particles, const std::vector<bool>& blocked_vertices,
                                        const std::vector<bool>& blocked_edges, std::size_t max_results);

/// The first `limit` placements in search order (sorted afterwards); sets `*truncated` when more
/// exist.
std::vector<CubeCell> first_static_placements(const Graph& g, std::size_t particles, const std::vector<bool>& blocked_vertices,
                                              const std::vector<bool>& blocked_edges, std::size_t limit, bool* truncated);

}  // namespace confsink
