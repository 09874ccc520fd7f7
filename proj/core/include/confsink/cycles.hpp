#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "confsink/chain.hpp"
#include "confsink/cube_complex.hpp"

namespace confsink {

/// Parked particles: a cell of the full particle count whose present states are static. Active
/// particles of a constructor must be Absent here; other Absent particles stay absent (a partial
/// chain, e.g. a product factor).
using Parking = CubeCell;

/// Parking with every one of `particles` particles absent.
Parking empty_parking(std::size_t particles);

/// Center vertex and three (or, for star4_relation, four) distinct half-edges at it.
struct StarSpec {
  VertexId center = 0;
  std::vector<HalfEdge> ends;
};

/// Embedded circuit as a closed walk: `walk[i]` leaves vertex u_i along its edge and arrives at
/// u_{i+1}; u_L = u_0. Edges are distinct, as are the vertices u_0..u_{L-1}. A single loop is a
/// circuit of length one.
struct CircuitSpec {
  std::vector<HalfEdge> walk;
};

/// Two distinct vertices joined by an embedded path (`path[i]` leaves x_i, x_0 = v, x_m = w).
/// A non-sink endpoint needs two side half-edges off the path; a sink endpoint uses none.
struct HSpec {
  VertexId v = 0;
  VertexId w = 0;
  std::vector<HalfEdge> path;
  std::vector<HalfEdge> v_sides;
  std::vector<HalfEdge> w_sides;
};

/// One particle move in a walk: the particle's current static state is lifted to `move`, and the
/// walk continues at the opposite face.
struct WalkStep {
  ParticleId particle = 0;
  ParticleState move;
};

/// Follows `steps` from `start` and returns the signed sum of the traversed 1-cells (each with
/// +1 when travelled from its 0-face to its 1-face). Returns nullopt if a step is not a legal
/// move from the current configuration.
std::optional<Chain> try_walk(const Graph& g, const CubeCell& start, const std::vector<WalkStep>& steps,
                              CubeCell* finish = nullptr);

/// As try_walk, but also requires the walk to close up; throws InvalidArgument otherwise.
Chain closed_walk(const Graph& g, const CubeCell& start, const std::vector<WalkStep>& steps);

/// The twelve-cell 1-cycle in which particles p and q take turns moving to the free end of a
/// three-ended star through its center.
Chain star_cycle(const Graph& g, const StarSpec& spec, ParticleId p, ParticleId q, const Parking& parking);

/// Sum over i of (-1)^i times the star cycle on the four ends minus end i; the zero chain.
Chain star4_relation(const Graph& g, const StarSpec& spec, ParticleId p, ParticleId q, const Parking& parking);

/// The listed particles travel once around the circuit, keeping their cyclic order (the order of
/// `particles` from front to back).
Chain circuit_cycle(const Graph& g, const CircuitSpec& spec, const std::vector<ParticleId>& particles,
                    const Parking& parking);

/// p and q start at v's sides and end at w's sides; the cycle is the route where p crosses first
/// minus the route where q crosses first.
Chain h_cycle(const Graph& g, const HSpec& spec, ParticleId p, ParticleId q, const Parking& parking);

/// Fundamental cycles of the configuration graph of the `active` particles confined to the star
/// of v (v, the interiors of its edges, far sinks of its sink edges), parked particles fixed.
/// Together they generate the first homology of that star configuration space.
std::vector<Chain> star_local_cycles(const Graph& g, VertexId v, const std::vector<ParticleId>& active,
                                     const Parking& parking);

/// Cell-wise product of chains on disjoint particles and disjoint graph support, oriented by the
/// shuffle sign of the merged move slots, so that d(a x b) = da x b + (-1)^|a| a x db.
Chain product_chain(const Graph& g, const Chain& a, const Chain& b);

/// Fills the absent particles of every cell from `parking`; throws if a cell becomes invalid.
Chain park(const Graph& g, const Chain& z, const Parking& parking);

/// Vertices and edges touched by any cell of z.
struct Support {
  std::vector<bool> vertices;
  std::vector<bool> edges;
};
Support chain_support(const Graph& g, const Chain& z);

/// Inserts a new particle with id `s` (existing ids >= s shift up) at the leaf end of the leaf
/// edge `e`: outermost interior slot there, or on the leaf vertex when it is a sink.
Chain push_in(const Graph& g, const Chain& z, EdgeId e, ParticleId s);

/// The non-product 2-cycle on three particles in banana(4): for each particle pair and each
/// omitted edge i, (-1)^i times the star cycle at vertex 0 on the other three edges, multiplied
/// by the third particle moving along edge i to vertex 1. 144 cells.
Chain b3_nonproduct_cycle(const Graph& g, std::size_t particles);

/// banana(4) with k lollipops (a stem from vertex 0 to a new vertex carrying a loop) and the
/// (k+2)-cycle on k+3 particles: the banana 2-cycle times one loop rotation per lollipop.
struct LoopAugmented {
  Graph graph;
  std::size_t particles = 0;
  std::size_t degree = 0;
  std::string recipe;
  Chain cycle;
};
LoopAugmented loop_augmented_nonproduct(std::size_t k, const Limits& limits = {});

/// Caps for enumerate_basic_classes.
struct ClassCaps {
  std::size_t max_classes = 20'000;
  std::size_t max_parkings = 64;  // per class
  std::size_t max_path_length = 6;
  std::size_t max_local_particles = 3;  // active particles in star-local classes
  bool products = false;          // also degree-2 products of degree-1 classes
};

struct BasicClass {
  std::string label;
  Chain chain;
};

struct BasicClassList {
  std::vector<BasicClass> classes;
  bool truncated = false;

  std::vector<Chain> chains(std::size_t degree) const;
};

/// Star cycles, star-local classes (star_local_cycles at vertices of valence >= 3 for up to
/// caps.max_local_particles particles), circuit rotations and H cycles of `particles` particles in
/// g, each with every parking of the remaining particles (up to the caps); with `caps.products`,
/// also products of two such classes on disjoint particles and support. Deterministic order.
BasicClassList enumerate_basic_classes(const Graph& g, std::size_t particles, const ClassCaps& caps = {});

/// Embedded circuits of g, one closed walk per circuit (starting at its least vertex).
std::vector<CircuitSpec> embedded_circuits(const Graph& g);

}  // namespace confsink
