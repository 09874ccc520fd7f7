#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "confsink/graph.hpp"

namespace confsink {

using ParticleId = std::uint32_t;

/// Where one particle sits in a cell of the cube-complex model.
///
/// `Absent` marks particles outside a partial cell (chains built on a subset of the particles,
/// e.g. factors of a product). Complete cells never contain it.
enum class StateKind : std::uint8_t { Absent = 0, AtVertex = 1, OnEdge = 2, MoveEnd = 3, MoveFull = 4 };

struct ParticleState {
  StateKind kind = StateKind::Absent;
  std::uint32_t id = 0;    // vertex for AtVertex, edge otherwise
  std::uint32_t slot = 0;  // rank from the initial end for OnEdge, End for MoveEnd

  static constexpr ParticleState absent() noexcept { return {}; }
  static constexpr ParticleState at_vertex(VertexId v) noexcept { return {StateKind::AtVertex, v, 0}; }
  static constexpr ParticleState on_edge(EdgeId e, std::uint32_t rank) noexcept { return {StateKind::OnEdge, e, rank}; }
  static constexpr ParticleState move_end(EdgeId e, End end) noexcept {
    return {StateKind::MoveEnd, e, static_cast<std::uint32_t>(end)};
  }
  static constexpr ParticleState move_full(EdgeId e) noexcept { return {StateKind::MoveFull, e, 0}; }

  constexpr bool is_move() const noexcept { return kind == StateKind::MoveEnd || kind == StateKind::MoveFull; }
  constexpr bool is_static() const noexcept { return kind == StateKind::AtVertex || kind == StateKind::OnEdge; }
  constexpr bool present() const noexcept { return kind != StateKind::Absent; }
  constexpr End end() const noexcept { return static_cast<End>(slot); }

  friend constexpr auto operator<=>(const ParticleState&, const ParticleState&) = default;
};

/// A cube of the model: one state per particle; the dimension is the number of moving particles.
/// Move directions are ordered by ascending particle id.
struct CubeCell {
  std::vector<ParticleState> states;

  CubeCell() = default;
  explicit CubeCell(std::vector<ParticleState> s) : states(std::move(s)) {}

  std::size_t particle_count() const noexcept { return states.size(); }
  std::size_t dimension() const noexcept;
  /// Particles in Move states, ascending: slot i of the cube is particle `movers()[i]`.
  std::vector<ParticleId> movers() const;
  bool complete() const noexcept;

  friend auto operator<=>(const CubeCell&, const CubeCell&) = default;
  friend bool operator==(const CubeCell&, const CubeCell&) = default;
};

struct CubeCellHash {
  std::size_t operator()(const CubeCell& cell) const noexcept;
};

/// Checks every model invariant: state side conditions, one move per half-edge (a MoveFull claims
/// both halves, so two particles may enter a sink-free edge from opposite ends), exclusive use of
/// non-sink vertices, contiguous slot ranks. Partial cells are accepted only if `allow_absent`.
bool cell_is_valid(const Graph& g, const CubeCell& cell, bool allow_absent = false);

/// Replaces the move in `slot` (0-based, see CubeCell::movers) by its endpoint: side 1 is the
/// vertex end of a MoveEnd and the terminal vertex of a MoveFull; side 0 is the edge slot of a
/// MoveEnd (other ranks on the edge shift) and the initial vertex of a MoveFull.
CubeCell face(const Graph& g, const CubeCell& cell, std::size_t slot, int side);

/// All 2^dim corners, ordered by the binary side assignment (slot 0 is the low bit).
std::vector<CubeCell> corner_configurations(const Graph& g, const CubeCell& cell);

/// Precomposes the state map with `perm`: particle i of the result has the state of particle
/// perm[i] of `cell`.
CubeCell relabel(const CubeCell& cell, std::span<const ParticleId> perm);

/// Orientation change of the cube under relabel: the sign of the induced reordering of the
/// move directions.
int relabel_sign(const CubeCell& cell, std::span<const ParticleId> perm);

std::vector<ParticleId> inverse_permutation(std::span<const ParticleId> perm);

/// `V v`, `E e r`, `ME e end`, `MF e` or `-` for absent, joined by `; `.
std::string to_record(const CubeCell& cell);
CubeCell cell_from_record(const std::string& record);

}  // namespace confsink
