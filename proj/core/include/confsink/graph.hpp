#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "confsink/errors.hpp"

namespace confsink {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Which end of an oriented edge: the initial half-edge (iota) or the terminal one (tau).
enum class End : std::uint8_t { Initial = 0, Terminal = 1 };

inline constexpr End opposite(End end) noexcept {
  return end == End::Initial ? End::Terminal : End::Initial;
}

/// One half of an edge. Half-edge id is `2 * edge + end`.
struct HalfEdge {
  EdgeId edge = 0;
  End end = End::Initial;

  friend auto operator<=>(const HalfEdge&, const HalfEdge&) = default;
};

/// Finite connected multigraph (loops and parallel edges allowed) with a set of sink vertices.
///
/// Vertices are dense integers `0..V-1`. Edge `e` consists of half-edges `2e` (initial end) and
/// `2e+1` (terminal end); the stored pair order fixes the orientation used for slot ranks.
/// Instances are immutable once built.
class Graph {
 public:
  using EdgeList = std::vector<std::pair<VertexId, VertexId>>;

  /// Validates and builds; throws InvalidArgument for dangling vertex ids, bad sinks, an empty
  /// vertex set or a disconnected graph.
  Graph(std::size_t vertex_count, EdgeList edges, std::vector<VertexId> sinks = {});

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const EdgeList& edges() const noexcept { return edges_; }

  VertexId endpoint(EdgeId e, End end) const {
    return end == End::Initial ? edges_.at(e).first : edges_.at(e).second;
  }
  VertexId endpoint(HalfEdge h) const { return endpoint(h.edge, h.end); }
  bool is_loop(EdgeId e) const { return edges_.at(e).first == edges_.at(e).second; }

  std::size_t valence(VertexId v) const { return half_edges_at_.at(v).size(); }
  /// Half-edges incident to `v`, ordered by half-edge id. A loop contributes both of its ends.
  std::span<const HalfEdge> half_edges_at(VertexId v) const { return half_edges_at_.at(v); }

  bool is_sink(VertexId v) const { return is_sink_.at(v); }
  const std::vector<VertexId>& sinks() const noexcept { return sinks_; }

  /// Number of sink endpoints of `e` (a loop at a sink counts as 2).
  int sink_endpoints(EdgeId e) const {
    return static_cast<int>(is_sink(edges_.at(e).first)) + static_cast<int>(is_sink(edges_.at(e).second));
  }
  bool touches_sink(EdgeId e) const { return sink_endpoints(e) > 0; }

  /// A vertex may hold a particle in a 0-cell iff it is a sink or a non-sink of valence >= 2.
  bool vertex_usable(VertexId v) const { return is_sink(v) || valence(v) >= 2; }

  /// Same vertices and edges, different sink set.
  Graph with_sinks(std::vector<VertexId> sinks) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t vertex_count_ = 0;
  EdgeList edges_;
  std::vector<VertexId> sinks_;
  std::vector<bool> is_sink_;
  std::vector<std::vector<HalfEdge>> half_edges_at_;
};

/// Description of a graph to build: either a named family or an explicit edge list.
struct GraphSpec {
  enum class Family { Explicit, Interval, Circle, Star, HGraph, Banana, Complete, CompleteBipartite };

  Family family = Family::Explicit;
  std::vector<int> params;
  std::size_t vertex_count = 0;  // Explicit only
  Graph::EdgeList edges;         // Explicit only
  std::vector<VertexId> sinks;

  static GraphSpec interval() { return {Family::Interval, {}, 0, {}, {}}; }
  static GraphSpec circle() { return {Family::Circle, {}, 0, {}, {}}; }
  static GraphSpec star(int k) { return {Family::Star, {k}, 0, {}, {}}; }
  static GraphSpec h_graph() { return {Family::HGraph, {}, 0, {}, {}}; }
  /// `banana(k)` has k parallel edges between two vertices.
  static GraphSpec banana(int k) { return {Family::Banana, {k}, 0, {}, {}}; }
  static GraphSpec complete(int m) { return {Family::Complete, {m}, 0, {}, {}}; }
  static GraphSpec complete_bipartite(int a, int b) { return {Family::CompleteBipartite, {a, b}, 0, {}, {}}; }
  static GraphSpec explicit_graph(std::size_t vertices, Graph::EdgeList edges, std::vector<VertexId> sinks = {}) {
    return {Family::Explicit, {}, vertices, std::move(edges), std::move(sinks)};
  }

  GraphSpec with_sinks(std::vector<VertexId> s) const {
    GraphSpec copy = *this;
    copy.sinks = std::move(s);
    return copy;
  }
};

Graph build_graph(const GraphSpec& spec);

/// Parses `family[:params]` as accepted on the command line: `interval`, `circle`, `h`,
/// `star:K`, `banana:K`, `k:M` (complete), `k:A,B` or `kAB` such as `k33` (complete bipartite).
GraphSpec parse_family(const std::string& text);

/// Disjoint union of `g1` and `g2` with `v2` identified to `v1`. Vertices of `g2` other than `v2`
/// are renumbered after those of `g1` in their original order; edges of `g2` follow those of `g1`.
Graph wedge(const Graph& g1, VertexId v1, const Graph& g2, VertexId v2);

/// Replaces edge `e` by two edges through a new degree-2 vertex (id `V`). The first half keeps id
/// `e`; the second half is appended.
Graph subdivide_edge(const Graph& g, EdgeId e);

/// Vertices of valence at least three.
std::vector<VertexId> essential_vertices(const Graph& g);

/// min{n, #non-sink vertices of valence >= 2 + #edges whose endpoints are both sinks}.
std::size_t dimension_bound(const Graph& g, std::size_t particles);

/// Canonical text document: `{"edges": [[u,v],...], "sinks": [...], "vertices": V}`.
std::string to_document(const Graph& g);
Graph graph_from_document(const std::string& text);

/// Accepts a family string (see parse_family) or a path to a graph document.
Graph load_graph(const std::string& family_or_path);

}  // namespace confsink
