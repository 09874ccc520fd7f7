#include "confsink/cycles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace confsink {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidArgument(message);
}

std::string half_edge_text(HalfEdge h) {
  return std::to_string(h.edge) + (h.end == End::Initial ? "i" : "t");
}

/// Puts particle p next to endpoint(h), reached through h's edge: outermost interior slot at h's
/// end of a sink-free edge, or the far sink of a sink-incident edge.
void place_near(const Graph& g, CubeCell& cell, ParticleId p, HalfEdge h) {
  const EdgeId e = h.edge;
  if (!g.touches_sink(e)) {
    std::uint32_t count = 0;
    for (auto& s : cell.states) {
      if (s.kind != StateKind::OnEdge || s.id != e) continue;
      ++count;
      if (h.end == End::Initial) ++s.slot;
    }
    cell.states.at(p) = ParticleState::on_edge(e, h.end == End::Initial ? 0 : count);
    return;
  }
  const VertexId far = g.endpoint(e, opposite(h.end));
  require(g.is_sink(far), "no parking spot next to vertex " + std::to_string(g.endpoint(h)) + " along edge " +
                              std::to_string(e));
  cell.states.at(p) = ParticleState::at_vertex(far);
}

/// The move between endpoint(h) and the position place_near gives.
ParticleState move_via(const Graph& g, HalfEdge h) {
  return g.touches_sink(h.edge) ? ParticleState::move_full(h.edge) : ParticleState::move_end(h.edge, h.end);
}

void require_absent(const CubeCell& cell, ParticleId p) {
  require(p < cell.states.size(), "particle " + std::to_string(p) + " out of range");
  require(!cell.states[p].present(), "particle " + std::to_string(p) + " is both active and parked");
}

/// One step of a walk. On success, returns the oriented coefficient and moves `cell` on.
std::optional<int> take_step(const Graph& g, CubeCell& cell, ParticleId p, ParticleState move) {
  if (p >= cell.states.size() || !move.is_move()) return std::nullopt;
  const ParticleState current = cell.states[p];
  if (!current.is_static()) return std::nullopt;
  CubeCell lifted = cell;
  if (current.kind == StateKind::OnEdge) {
    for (auto& s : lifted.states)
      if (s.kind == StateKind::OnEdge && s.id == current.id && s.slot > current.slot) --s.slot;
  }
  lifted.states[p] = move;
  if (lifted.dimension() != 1 || !cell_is_valid(g, lifted, true)) return std::nullopt;
  CubeCell f0 = face(g, lifted, 0, 0);
  CubeCell f1 = face(g, lifted, 0, 1);
  if (f0 == cell) {
    cell = std::move(f1);
    return 1;
  }
  if (f1 == cell) {
    cell = std::move(f0);
    return -1;
  }
  return std::nullopt;
}

/// The cell a step traverses, recomputed for the chain.
CubeCell lifted_cell(const CubeCell& cell, ParticleId p, ParticleState move) {
  CubeCell lifted = cell;
  const ParticleState current = cell.states[p];
  if (current.kind == StateKind::OnEdge) {
    for (auto& s : lifted.states)
      if (s.kind == StateKind::OnEdge && s.id == current.id && s.slot > current.slot) --s.slot;
  }
  lifted.states[p] = move;
  return lifted;
}

void require_half_edge_at(const Graph& g, HalfEdge h, VertexId v) {
  require(h.edge < g.edge_count(), "no edge " + std::to_string(h.edge));
  require(g.endpoint(h) == v, "half-edge " + half_edge_text(h) + " is not at vertex " + std::to_string(v));
}

/// The star walk: p starts near ends[0], q near ends[1].
std::vector<WalkStep> star_steps(const Graph& g, const StarSpec& spec, ParticleId p, ParticleId q) {
  const HalfEdge x = spec.ends[0], y = spec.ends[1], z = spec.ends[2];
  const std::pair<ParticleId, std::pair<HalfEdge, HalfEdge>> legs[] = {
      {p, {x, z}}, {q, {y, x}}, {p, {z, y}}, {q, {x, z}}, {p, {y, x}}, {q, {z, y}}};
  std::vector<WalkStep> steps;
  for (const auto& [particle, ends] : legs) {
    steps.push_back({particle, move_via(g, ends.first)});
    steps.push_back({particle, move_via(g, ends.second)});
  }
  return steps;
}

void validate_star(const Graph& g, const StarSpec& spec, std::size_t ends) {
  require(spec.center < g.vertex_count(), "star center " + std::to_string(spec.center) + " not in graph");
  require(!g.is_sink(spec.center), "star center must not be a sink");
  require(spec.ends.size() == ends, "star needs exactly " + std::to_string(ends) + " ends");
  for (const auto& h : spec.ends) require_half_edge_at(g, h, spec.center);
  std::set<HalfEdge> distinct(spec.ends.begin(), spec.ends.end());
  require(distinct.size() == spec.ends.size(), "star ends must be distinct");
}

std::vector<VertexId> validate_circuit(const Graph& g, const CircuitSpec& spec) {
  require(!spec.walk.empty(), "circuit must have at least one edge");
  std::vector<VertexId> vertices;
  std::set<EdgeId> edges;
  std::set<VertexId> seen;
  for (std::size_t i = 0; i < spec.walk.size(); ++i) {
    const HalfEdge h = spec.walk[i];
    require(h.edge < g.edge_count(), "no edge " + std::to_string(h.edge));
    require(edges.insert(h.edge).second, "circuit repeats edge " + std::to_string(h.edge));
    const VertexId u = g.endpoint(h);
    require(seen.insert(u).second, "circuit repeats vertex " + std::to_string(u));
    const VertexId next = g.endpoint(h.edge, opposite(h.end));
    const VertexId expected = g.endpoint(spec.walk[(i + 1) % spec.walk.size()]);
    require(next == expected, "circuit walk is not closed at edge " + std::to_string(h.edge));
    vertices.push_back(u);
  }
  return vertices;
}

void validate_h(const Graph& g, const HSpec& spec) {
  require(spec.v < g.vertex_count() && spec.w < g.vertex_count(), "H endpoints must be vertices of the graph");
  require(spec.v != spec.w, "H endpoints must be distinct");
  require(!spec.path.empty(), "H path must have at least one edge");
  std::set<VertexId> seen{spec.v};
  std::set<EdgeId> edges;
  VertexId at = spec.v;
  for (const auto& h : spec.path) {
    require_half_edge_at(g, h, at);
    require(!g.is_loop(h.edge), "H path must not use loops");
    require(edges.insert(h.edge).second, "H path repeats edge " + std::to_string(h.edge));
    at = g.endpoint(h.edge, opposite(h.end));
    require(seen.insert(at).second, "H path repeats vertex " + std::to_string(at));
  }
  require(at == spec.w, "H path does not end at w");
  auto check_sides = [&](VertexId x, const std::vector<HalfEdge>& sides) {
    if (g.is_sink(x)) return;
    require(sides.size() == 2, "non-sink H endpoint " + std::to_string(x) + " needs two side ends");
    require(sides[0] != sides[1], "H side ends must be distinct");
    for (const auto& h : sides) {
      require_half_edge_at(g, h, x);
      require(!edges.count(h.edge), "H side end " + half_edge_text(h) + " lies on the path");
    }
  };
  check_sides(spec.v, spec.v_sides);
  check_sides(spec.w, spec.w_sides);
}

/// Moves of one particle crossing the H path from side a at v to side b at w.
void append_crossing(const Graph& g, const HSpec& spec, ParticleId p, std::size_t side, std::vector<WalkStep>& steps) {
  if (!g.is_sink(spec.v)) steps.push_back({p, move_via(g, spec.v_sides[side])});
  for (const auto& h : spec.path) {
    if (g.touches_sink(h.edge)) {
      steps.push_back({p, ParticleState::move_full(h.edge)});
    } else {
      steps.push_back({p, ParticleState::move_end(h.edge, h.end)});
      steps.push_back({p, ParticleState::move_end(h.edge, opposite(h.end))});
    }
  }
  if (!g.is_sink(spec.w)) steps.push_back({p, move_via(g, spec.w_sides[side])});
}

int shuffle_sign(const CubeCell& a, const CubeCell& b) {
  const auto ma = a.movers();
  const auto mb = b.movers();
  std::size_t inversions = 0;
  for (ParticleId x : ma)
    for (ParticleId y : mb)
      if (x > y) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

void touch(const Graph& g, const ParticleState& s, Support& out) {
  switch (s.kind) {
    case StateKind::AtVertex: out.vertices[s.id] = true; break;
    case StateKind::OnEdge: out.edges[s.id] = true; break;
    case StateKind::MoveEnd:
      out.edges[s.id] = true;
      out.vertices[g.endpoint(s.id, s.end())] = true;
      break;
    case StateKind::MoveFull:
      out.edges[s.id] = true;
      out.vertices[g.endpoint(s.id, End::Initial)] = true;
      out.vertices[g.endpoint(s.id, End::Terminal)] = true;
      break;
    default: break;
  }
}

/// b3 construction on particles 0,1,2 with any further particles absent.
Chain banana_cycle(const Graph& g, std::size_t particles) {
  const VertexId v = 0;
  Chain total(2);
  const ParticleId triples[3][3] = {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}};
  for (const auto& [p, q, t] : triples) {
    for (EdgeId i = 0; i < 4; ++i) {
      StarSpec star{v, {}};
      for (EdgeId e = 0; e < 4; ++e)
        if (e != i) star.ends.push_back({e, g.endpoint(e, End::Initial) == v ? End::Initial : End::Terminal});
      const Chain z = star_cycle(g, star, p, q, empty_parking(particles));
      CubeCell move = empty_parking(particles);
      move.states[t] = ParticleState::move_end(i, g.endpoint(i, End::Initial) == v ? End::Terminal : End::Initial);
      Chain term = product_chain(g, z, Chain::of(move));
      if (i % 2 == 1) term *= -1;
      total += term;
    }
  }
  return total;
}

void require_banana4(const Graph& g) {
  bool ok = g.vertex_count() >= 2 && g.edge_count() >= 4 && g.sinks().empty();
  for (EdgeId e = 0; ok && e < 4; ++e) {
    const auto [a, b] = g.edges()[e];
    ok = (a == 0 && b == 1) || (a == 1 && b == 0);
  }
  require(ok, "graph must start with banana(4): vertices 0 and 1 joined by edges 0..3, no sinks");
}

std::string particles_text(const std::vector<ParticleId>& ps) {
  std::string out;
  for (std::size_t i = 0; i < ps.size(); ++i) out += (i ? "," : "") + std::to_string(ps[i]);
  return out;
}

}  // namespace

Parking empty_parking(std::size_t particles) {
  return CubeCell(std::vector<ParticleState>(particles, ParticleState::absent()));
}

std::optional<Chain> try_walk(const Graph& g, const CubeCell& start, const std::vector<WalkStep>& steps, CubeCell* finish) {
  if (!cell_is_valid(g, start, true) || start.dimension() != 0) return std::nullopt;
  Chain chain(1);
  CubeCell cell = start;
  for (const auto& step : steps) {
    const CubeCell before = cell;
    const auto sign = take_step(g, cell, step.particle, step.move);
    if (!sign) return std::nullopt;
    chain.add(lifted_cell(before, step.particle, step.move), *sign);
  }
  if (finish) *finish = cell;
  return chain;
}

Chain closed_walk(const Graph& g, const CubeCell& start, const std::vector<WalkStep>& steps) {
  CubeCell finish;
  auto chain = try_walk(g, start, steps, &finish);
  require(chain.has_value(), "walk blocked: a move is illegal from the configuration reached");
  require(finish == start, "walk does not return to its start");
  return std::move(*chain);
}

Chain star_cycle(const Graph& g, const StarSpec& spec, ParticleId p, ParticleId q, const Parking& parking) {
  validate_star(g, spec, 3);
  require(p != q, "star cycle needs two distinct particles");
  CubeCell start = parking;
  require_absent(start, p);
  require_absent(start, q);
  place_near(g, start, p, spec.ends[0]);
  place_near(g, start, q, spec.ends[1]);
  return closed_walk(g, start, star_steps(g, spec, p, q));
}

Chain star4_relation(const Graph& g, const StarSpec& spec, ParticleId p, ParticleId q, const Parking& parking) {
  validate_star(g, spec, 4);
  Chain total(1);
  for (std::size_t i = 0; i < 4; ++i) {
    StarSpec three{spec.center, {}};
    for (std::size_t j = 0; j < 4; ++j)
      if (j != i) three.ends.push_back(spec.ends[j]);
    Chain z = star_cycle(g, three, p, q, parking);
    if (i % 2 == 1) z *= -1;
    total += z;
  }
  return total;
}

Chain circuit_cycle(const Graph& g, const CircuitSpec& spec, const std::vector<ParticleId>& particles, const Parking& parking) {
  const auto vertices = validate_circuit(g, spec);
  require(!particles.empty(), "circuit cycle needs at least one particle");
  std::set<ParticleId> distinct(particles.begin(), particles.end());
  require(distinct.size() == particles.size(), "circuit particles must be distinct");
  const std::size_t length = spec.walk.size();

  // Start on the first sink-free edge, or else at the first sink of the circuit.
  std::optional<std::size_t> start_edge;
  for (std::size_t i = 0; i < length && !start_edge; ++i)
    if (!g.touches_sink(spec.walk[i].edge)) start_edge = i;
  CubeCell start = parking;
  std::vector<ParticleState> lap;
  std::size_t first = 0;
  if (start_edge) {
    for (ParticleId p : particles) {
      require_absent(start, p);
      place_near(g, start, p, spec.walk[*start_edge]);
    }
    const HalfEdge h = spec.walk[*start_edge];
    lap.push_back(ParticleState::move_end(h.edge, opposite(h.end)));
    first = *start_edge + 1;
  } else {
    std::size_t sink_index = 0;
    while (!g.is_sink(vertices[sink_index])) ++sink_index;
    for (ParticleId p : particles) {
      require_absent(start, p);
      start.states[p] = ParticleState::at_vertex(vertices[sink_index]);
    }
    first = sink_index;
  }
  for (std::size_t k = 0; k < length; ++k) {
    const std::size_t i = (first + k) % length;
    const HalfEdge h = spec.walk[i];
    if (g.touches_sink(h.edge)) {
      lap.push_back(ParticleState::move_full(h.edge));
      continue;
    }
    lap.push_back(ParticleState::move_end(h.edge, h.end));
    if (!(start_edge && i == *start_edge)) lap.push_back(ParticleState::move_end(h.edge, opposite(h.end)));
  }
  require(cell_is_valid(g, start, true), "circuit start configuration conflicts with the parking");

  // Round robin: each particle advances whenever its next move is legal, until all finish a lap.
  std::vector<std::size_t> progress(particles.size(), 0);
  std::vector<WalkStep> steps;
  CubeCell cell = start;
  for (bool done = false; !done;) {
    done = true;
    bool moved = false;
    for (std::size_t k = 0; k < particles.size(); ++k) {
      if (progress[k] == lap.size()) continue;
      done = false;
      if (take_step(g, cell, particles[k], lap[progress[k]])) {
        steps.push_back({particles[k], lap[progress[k]]});
        ++progress[k];
        moved = true;
      }
    }
    require(done || moved, "circuit rotation is blocked");
  }
  return closed_walk(g, start, steps);
}

Chain h_cycle(const Graph& g, const HSpec& spec, ParticleId p, ParticleId q, const Parking& parking) {
  validate_h(g, spec);
  require(p != q, "H cycle needs two distinct particles");
  CubeCell start = parking;
  require_absent(start, p);
  require_absent(start, q);
  if (g.is_sink(spec.v)) {
    start.states[p] = ParticleState::at_vertex(spec.v);
    start.states[q] = ParticleState::at_vertex(spec.v);
  } else {
    place_near(g, start, p, spec.v_sides[0]);
    place_near(g, start, q, spec.v_sides[1]);
  }
  std::vector<WalkStep> route_a, route_b;
  append_crossing(g, spec, p, 0, route_a);
  append_crossing(g, spec, q, 1, route_a);
  append_crossing(g, spec, q, 1, route_b);
  append_crossing(g, spec, p, 0, route_b);
  CubeCell end_a, end_b;
  auto a = try_walk(g, start, route_a, &end_a);
  auto b = try_walk(g, start, route_b, &end_b);
  require(a && b, "H crossing blocked: a move is illegal from the configuration reached");
  require(end_a == end_b, "the two H crossings end in different configurations");
  return *a - *b;
}

Chain product_chain(const Graph& g, const Chain& a, const Chain& b) {
  Chain out(a.degree() + b.degree());
  if (a.is_zero() || b.is_zero()) return out;
  const Support sa = chain_support(g, a);
  const Support sb = chain_support(g, b);
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    require(!(sa.vertices[v] && sb.vertices[v]), "product factors share vertex " + std::to_string(v));
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    require(!(sa.edges[e] && sb.edges[e]), "product factors share edge " + std::to_string(e));
  for (const auto& [ca, ka] : a.terms()) {
    for (const auto& [cb, kb] : b.terms()) {
      require(ca.particle_count() == cb.particle_count(), "product factors have different particle counts");
      CubeCell merged = ca;
      for (std::size_t p = 0; p < merged.states.size(); ++p) {
        if (!cb.states[p].present()) continue;
        require(!merged.states[p].present(), "product factors share particle " + std::to_string(p));
        merged.states[p] = cb.states[p];
      }
      require(cell_is_valid(g, merged, true), "product cell is invalid: " + to_record(merged));
      out.add(merged, shuffle_sign(ca, cb) * ka * kb);
    }
  }
  return out;
}

Chain park(const Graph& g, const Chain& z, const Parking& parking) {
  Chain out(z.degree());
  for (const auto& [cell, k] : z.terms()) {
    require(cell.particle_count() == parking.particle_count(), "parking has the wrong particle count");
    CubeCell merged = cell;
    for (std::size_t p = 0; p < merged.states.size(); ++p) {
      if (!parking.states[p].present()) continue;
      require(!merged.states[p].present(), "parked particle " + std::to_string(p) + " is active in the chain");
      merged.states[p] = parking.states[p];
    }
    require(cell_is_valid(g, merged, true), "parking makes a cell invalid: " + to_record(merged));
    out.add(merged, k);
  }
  return out;
}

Support chain_support(const Graph& g, const Chain& z) {
  Support out{std::vector<bool>(g.vertex_count(), false), std::vector<bool>(g.edge_count(), false)};
  for (const auto& [cell, k] : z.terms())
    for (const auto& s : cell.states) touch(g, s, out);
  return out;
}

Chain push_in(const Graph& g, const Chain& z, EdgeId e, ParticleId s) {
  require(e < g.edge_count(), "no edge " + std::to_string(e));
  require(!g.is_loop(e), "edge " + std::to_string(e) + " is not a leaf");
  std::optional<End> leaf;
  if (g.valence(g.endpoint(e, End::Initial)) == 1) {
    leaf = End::Initial;
  } else if (g.valence(g.endpoint(e, End::Terminal)) == 1) {
    leaf = End::Terminal;
  }
  require(leaf.has_value(), "edge " + std::to_string(e) + " is not a leaf");
  const VertexId leaf_vertex = g.endpoint(e, *leaf);
  require(g.is_sink(leaf_vertex) || !g.touches_sink(e),
          "leaf edge " + std::to_string(e) + " has no interior slots (its other end is a sink)");
  Chain out(z.degree());
  for (const auto& [cell, k] : z.terms()) {
    require(s <= cell.particle_count(), "inserted particle id " + std::to_string(s) + " out of range");
    CubeCell next = cell;
    ParticleState inserted = ParticleState::at_vertex(leaf_vertex);
    if (!g.is_sink(leaf_vertex)) {
      std::uint32_t count = 0;
      for (auto& st : next.states) {
        if (st.kind != StateKind::OnEdge || st.id != e) continue;
        ++count;
        if (*leaf == End::Initial) ++st.slot;
      }
      inserted = ParticleState::on_edge(e, *leaf == End::Initial ? 0 : count);
    }
    next.states.insert(next.states.begin() + s, inserted);
    out.add(next, k);
  }
  return out;
}

Chain b3_nonproduct_cycle(const Graph& g, std::size_t particles) {
  require(g.vertex_count() == 2 && g.edge_count() == 4, "the non-product cycle lives on banana(4)");
  require_banana4(g);
  require(particles == 3, "the non-product cycle needs exactly 3 particles");
  return banana_cycle(g, particles);
}

LoopAugmented loop_augmented_nonproduct(std::size_t k, const Limits& limits) {
  const std::size_t cells = std::size_t{144} << std::min<std::size_t>(k, 40);
  if (k >= 40 || cells > limits.max_cells) throw CapExceeded("loop-augmented cycle cells", limits.max_cells);
  Graph g = build_graph(GraphSpec::banana(4));
  const Graph lollipop(2, {{0, 1}, {1, 1}});
  for (std::size_t j = 0; j < k; ++j) g = wedge(g, 0, lollipop, 0);

  LoopAugmented out{g, k + 3, k + 2, {}, {}};
  Chain cycle = banana_cycle(g, out.particles);
  std::ostringstream recipe;
  recipe << "banana 2-cycle on particles 0,1,2 at vertices 0,1";
  for (std::size_t j = 0; j < k; ++j) {
    const auto loop = static_cast<EdgeId>(5 + 2 * j);
    const auto particle = static_cast<ParticleId>(3 + j);
    const Chain rotation = circuit_cycle(g, CircuitSpec{{HalfEdge{loop, End::Initial}}}, {particle}, empty_parking(out.particles));
    cycle = product_chain(g, cycle, rotation);
    recipe << " x rotation of particle " << particle << " around loop " << loop << " at vertex " << g.endpoint(loop, End::Initial);
  }
  out.recipe = recipe.str();
  out.cycle = std::move(cycle);
  return out;
}

std::vector<Chain> star_local_cycles(const Graph& g, VertexId v, const std::vector<ParticleId>& active,
                                     const Parking& parking) {
  require(v < g.vertex_count() && !g.is_sink(v), "local star center must be a non-sink vertex");
  for (ParticleId p : active) require_absent(parking, p);
  for (const auto& s : parking.states)
    require(!(s.kind == StateKind::AtVertex && s.id == v), "a parked particle occupies the star center");
  const auto sites = g.half_edges_at(v);
  const std::size_t d = sites.size();

  // Local configurations: each active particle at v (at most one) or at a site, ordered outward
  // from v on sink-free edges.
  std::map<CubeCell, std::size_t> index;
  std::vector<CubeCell> nodes;
  std::vector<int> choice(active.size(), -1);
  auto build = [&](const std::vector<std::vector<ParticleId>>& at_site, std::optional<ParticleId> at_center) {
    CubeCell cell = parking;
    if (at_center) cell.states[*at_center] = ParticleState::at_vertex(v);
    std::map<EdgeId, std::pair<std::vector<ParticleId>, std::vector<ParticleId>>> on_edge;  // (initial, terminal)
    for (std::size_t i = 0; i < d; ++i) {
      const HalfEdge h = sites[i];
      if (g.touches_sink(h.edge)) {
        for (ParticleId p : at_site[i]) cell.states[p] = ParticleState::at_vertex(g.endpoint(h.edge, opposite(h.end)));
      } else if (!at_site[i].empty()) {
        auto& lists = on_edge[h.edge];
        (h.end == End::Initial ? lists.first : lists.second) = at_site[i];
      }
    }
    for (const auto& [e, lists] : on_edge) {
      std::uint32_t parked = 0;
      for (auto& st : cell.states) {
        if (st.kind != StateKind::OnEdge || st.id != e) continue;
        st.slot += static_cast<std::uint32_t>(lists.first.size());
        ++parked;
      }
      const auto front = static_cast<std::uint32_t>(lists.first.size());
      for (std::uint32_t r = 0; r < front; ++r) cell.states[lists.first[r]] = ParticleState::on_edge(e, r);
      const auto back = static_cast<std::uint32_t>(lists.second.size());
      for (std::uint32_t r = 0; r < back; ++r)
        cell.states[lists.second[r]] = ParticleState::on_edge(e, front + parked + back - 1 - r);
    }
    if (!cell_is_valid(g, cell, true) || index.count(cell)) return;
    index.emplace(cell, nodes.size());
    nodes.push_back(std::move(cell));
  };
  auto assign = [&](auto&& self, std::size_t k, bool center_used) -> void {
    if (k == active.size()) {
      std::vector<std::vector<ParticleId>> at_site(d);
      std::optional<ParticleId> at_center;
      for (std::size_t j = 0; j < active.size(); ++j) {
        if (choice[j] < 0) {
          at_center = active[j];
        } else {
          at_site[static_cast<std::size_t>(choice[j])].push_back(active[j]);
        }
      }
      // Every ordering on each sink-free site.
      auto order = [&](auto&& again, std::size_t i) -> void {
        if (i == d) {
          build(at_site, at_center);
          return;
        }
        auto& list = at_site[i];
        if (g.touches_sink(sites[i].edge)) {
          again(again, i + 1);
          return;
        }
        std::sort(list.begin(), list.end());
        do {
          again(again, i + 1);
        } while (std::next_permutation(list.begin(), list.end()));
      };
      order(order, 0);
      return;
    }
    if (!center_used) {
      choice[k] = -1;
      self(self, k + 1, true);
    }
    for (std::size_t i = 0; i < d; ++i) {
      choice[k] = static_cast<int>(i);
      self(self, k + 1, center_used);
    }
  };
  assign(assign, 0, false);

  // 1-cells: an active particle next to v moves onto v. Each is found from its off-center end.
  struct Link {
    std::size_t from, to;
    CubeCell cell;
    int sign;
  };
  std::vector<Link> links;
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    const CubeCell& c = nodes[a];
    const bool center_free = std::none_of(c.states.begin(), c.states.end(), [&](const ParticleState& s) {
      return s.kind == StateKind::AtVertex && s.id == v;
    });
    if (!center_free) continue;
    for (const HalfEdge h : sites) {
      for (ParticleId p : active) {
        const ParticleState move = move_via(g, h);
        CubeCell next = c;
        const auto sign = take_step(g, next, p, move);
        if (!sign) continue;
        const auto it = index.find(next);
        if (it == index.end()) continue;
        links.push_back({a, it->second, lifted_cell(c, p, move), *sign});
      }
    }
  }

  // Fundamental cycles of a spanning forest.
  std::vector<std::optional<std::size_t>> parent_link(nodes.size());
  std::vector<bool> seen(nodes.size(), false);
  std::vector<std::vector<std::size_t>> incident(nodes.size());
  for (std::size_t k = 0; k < links.size(); ++k) {
    incident[links[k].from].push_back(k);
    incident[links[k].to].push_back(k);
  }
  std::vector<bool> tree(links.size(), false);
  for (std::size_t root = 0; root < nodes.size(); ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::vector<std::size_t> queue{root};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t x = queue[head];
      for (std::size_t k : incident[x]) {
        const std::size_t y = links[k].from == x ? links[k].to : links[k].from;
        if (seen[y]) continue;
        seen[y] = true;
        tree[k] = true;
        parent_link[y] = k;
        queue.push_back(y);
      }
    }
  }
  auto to_root = [&](std::size_t x) {
    Chain path(1);
    while (parent_link[x]) {
      const Link& l = links[*parent_link[x]];
      path.add(l.cell, l.from == x ? l.sign : -l.sign);
      x = l.from == x ? l.to : l.from;
    }
    return path;
  };
  std::vector<Chain> out;
  for (std::size_t k = 0; k < links.size(); ++k) {
    if (tree[k]) continue;
    Chain z = Chain::of(links[k].cell, links[k].sign);
    z += to_root(links[k].to);
    z -= to_root(links[k].from);
    out.push_back(std::move(z));
  }
  return out;
}

std::vector<Chain> BasicClassList::chains(std::size_t degree) const {
  std::vector<Chain> out;
  for (const auto& c : classes)
    if (c.chain.degree() == degree) out.push_back(c.chain);
  return out;
}

std::vector<CircuitSpec> embedded_circuits(const Graph& g) {
  std::vector<CircuitSpec> out;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (g.is_loop(e)) out.push_back({{HalfEdge{e, End::Initial}}});
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    std::vector<HalfEdge> walk;
    std::vector<bool> on_path(g.vertex_count(), false);
    std::vector<bool> used(g.edge_count(), false);
    on_path[s] = true;
    auto dfs = [&](auto&& self, VertexId at) -> void {
      for (const HalfEdge h : g.half_edges_at(at)) {
        if (used[h.edge] || g.is_loop(h.edge)) continue;
        const VertexId next = g.endpoint(h.edge, opposite(h.end));
        if (next == s && !walk.empty()) {
          // Each circuit is found in both directions; keep the one whose first edge is smaller.
          if (walk.front().edge < h.edge) {
            walk.push_back(h);
            out.push_back({walk});
            walk.pop_back();
          }
          continue;
        }
        if (next < s || on_path[next]) continue;
        used[h.edge] = true;
        on_path[next] = true;
        walk.push_back(h);
        self(self, next);
        walk.pop_back();
        on_path[next] = false;
        used[h.edge] = false;
      }
    };
    dfs(dfs, s);
  }
  return out;
}

namespace {

/// A degree-1 class before parking: which particles it moves, what it blocks for parked
/// particles, and how to build it for a given parking.
struct Candidate {
  std::string label;
  std::vector<ParticleId> active;
  std::vector<bool> blocked_vertices;
  std::vector<bool> blocked_edges;
  std::function<std::vector<Chain>(const Parking&)> build;
};

class Enumerator {
 public:
  Enumerator(const Graph& g, std::size_t particles, const ClassCaps& caps) : g_(g), n_(particles), caps_(caps) {}

  BasicClassList run() {
    collect_stars();
    collect_local_stars();
    collect_circuits();
    collect_h();
    for (const auto& c : candidates_) {
      if (full()) break;
      emit_parked(c);
    }
    if (caps_.products) emit_products();
    return std::move(out_);
  }

 private:
  bool full() {
    if (out_.classes.size() >= caps_.max_classes) {
      out_.truncated = true;
      return true;
    }
    return false;
  }

  std::vector<bool> no_vertices() const { return std::vector<bool>(g_.vertex_count(), false); }
  std::vector<bool> no_edges() const { return std::vector<bool>(g_.edge_count(), false); }

  std::vector<std::vector<ParticleId>> pairs() const {
    std::vector<std::vector<ParticleId>> out;
    for (ParticleId p = 0; p < n_; ++p)
      for (ParticleId q = p + 1; q < n_; ++q) out.push_back({p, q});
    return out;
  }

  void collect_stars() {
    for (VertexId v = 0; v < g_.vertex_count(); ++v) {
      if (g_.is_sink(v) || g_.valence(v) < 3) continue;
      const auto halves = g_.half_edges_at(v);
      for (std::size_t i = 0; i < halves.size(); ++i)
        for (std::size_t j = i + 1; j < halves.size(); ++j)
          for (std::size_t k = j + 1; k < halves.size(); ++k) {
            StarSpec spec{v, {halves[i], halves[j], halves[k]}};
            for (const auto& pq : pairs()) {
              Candidate c;
              c.label = "star v=" + std::to_string(v) + " ends=" + half_edge_text(halves[i]) + "," +
                        half_edge_text(halves[j]) + "," + half_edge_text(halves[k]) + " particles=" + particles_text(pq);
              c.active = pq;
              c.blocked_vertices = no_vertices();
              c.blocked_vertices[v] = true;
              c.blocked_edges = no_edges();
              c.build = [this, spec, pq](const Parking& park) { return std::vector<Chain>{star_cycle(g_, spec, pq[0], pq[1], park)}; };
              candidates_.push_back(std::move(c));
            }
          }
    }
  }

  /// Classes of three or more particles shuffling through one vertex, which two-particle star
  /// cycles with parking do not reach, and two-particle classes at vertices of valence four or
  /// more, where the three-ended stars do not span.
  void collect_local_stars() {
    for (VertexId v = 0; v < g_.vertex_count(); ++v) {
      if (g_.is_sink(v) || g_.valence(v) < 3) continue;
      for (std::uint32_t mask = 1; mask < (1U << n_); ++mask) {
        std::vector<ParticleId> active;
        for (ParticleId p = 0; p < n_; ++p)
          if (mask & (1U << p)) active.push_back(p);
        if (active.size() > caps_.max_local_particles) continue;
        if (active.size() < 2 || (active.size() == 2 && g_.valence(v) < 4)) continue;
        Candidate c;
        c.label = "local v=" + std::to_string(v) + " particles=" + particles_text(active);
        c.active = active;
        c.blocked_vertices = no_vertices();
        c.blocked_vertices[v] = true;
        c.blocked_edges = no_edges();
        c.build = [this, v, active](const Parking& park) { return star_local_cycles(g_, v, active, park); };
        candidates_.push_back(std::move(c));
      }
    }
  }

  void collect_circuits() {
    for (const auto& circuit : embedded_circuits(g_)) {
      std::vector<bool> bv = no_vertices(), be = no_edges();
      std::string walk_text;
      for (const auto& h : circuit.walk) {
        be[h.edge] = true;
        const VertexId u = g_.endpoint(h);
        if (!g_.is_sink(u)) bv[u] = true;
        walk_text += (walk_text.empty() ? "" : ",") + half_edge_text(h);
      }
      for (std::uint32_t mask = 1; mask < (1U << n_); ++mask) {
        std::vector<ParticleId> active;
        for (ParticleId p = 0; p < n_; ++p)
          if (mask & (1U << p)) active.push_back(p);
        // Cyclic orders: fix the first particle, permute the rest.
        std::vector<ParticleId> rest(active.begin() + 1, active.end());
        do {
          std::vector<ParticleId> order{active.front()};
          order.insert(order.end(), rest.begin(), rest.end());
          Candidate c;
          c.label = "circuit walk=" + walk_text + " particles=" + particles_text(order);
          c.active = order;
          c.blocked_vertices = bv;
          c.blocked_edges = be;
          c.build = [this, circuit, order](const Parking& park) { return std::vector<Chain>{circuit_cycle(g_, circuit, order, park)}; };
          candidates_.push_back(std::move(c));
        } while (std::next_permutation(rest.begin(), rest.end()));
      }
    }
  }

  void collect_h() {
    std::vector<VertexId> ends;
    for (VertexId v = 0; v < g_.vertex_count(); ++v)
      if (g_.is_sink(v) || g_.valence(v) >= 3) ends.push_back(v);
    for (VertexId v : ends)
      for (VertexId w : ends)
        if (v < w) collect_h_paths(v, w);
  }

  void collect_h_paths(VertexId v, VertexId w) {
    std::vector<HalfEdge> path;
    std::vector<bool> on_path(g_.vertex_count(), false);
    on_path[v] = true;
    auto dfs = [&](auto&& self, VertexId at) -> void {
      if (at == w) {
        collect_h_sides(v, w, path);
        return;
      }
      if (path.size() >= caps_.max_path_length) return;
      for (const HalfEdge h : g_.half_edges_at(at)) {
        if (g_.is_loop(h.edge)) continue;
        const VertexId next = g_.endpoint(h.edge, opposite(h.end));
        if (on_path[next]) continue;
        on_path[next] = true;
        path.push_back(h);
        self(self, next);
        path.pop_back();
        on_path[next] = false;
      }
    };
    dfs(dfs, v);
  }

  /// Ordered pairs of side half-edges at x off the path; a single empty choice at a sink.
  std::vector<std::vector<HalfEdge>> side_choices(VertexId x, const std::vector<bool>& path_edges) const {
    if (g_.is_sink(x)) return {{}};
    std::vector<HalfEdge> spare;
    for (const HalfEdge h : g_.half_edges_at(x))
      if (!path_edges[h.edge]) spare.push_back(h);
    std::vector<std::vector<HalfEdge>> out;
    for (const auto& a : spare)
      for (const auto& b : spare)
        if (a != b) out.push_back({a, b});
    return out;
  }

  void collect_h_sides(VertexId v, VertexId w, const std::vector<HalfEdge>& path) {
    std::vector<bool> bv = no_vertices(), be = no_edges();
    std::string path_text;
    VertexId at = v;
    if (!g_.is_sink(at)) bv[at] = true;
    for (const auto& h : path) {
      be[h.edge] = true;
      at = g_.endpoint(h.edge, opposite(h.end));
      if (!g_.is_sink(at)) bv[at] = true;
      path_text += (path_text.empty() ? "" : ",") + half_edge_text(h);
    }
    for (const auto& vs : side_choices(v, be)) {
      for (const auto& ws : side_choices(w, be)) {
        const HSpec spec{v, w, path, vs, ws};
        for (const auto& pq : pairs()) {
          Candidate c;
          c.label = "h v=" + std::to_string(v) + " w=" + std::to_string(w) + " path=" + path_text;
          if (!vs.empty()) c.label += " v_sides=" + half_edge_text(vs[0]) + "," + half_edge_text(vs[1]);
          if (!ws.empty()) c.label += " w_sides=" + half_edge_text(ws[0]) + "," + half_edge_text(ws[1]);
          c.label += " particles=" + particles_text(pq);
          c.active = pq;
          c.blocked_vertices = bv;
          c.blocked_edges = be;
          c.build = [this, spec, pq](const Parking& park) { return std::vector<Chain>{h_cycle(g_, spec, pq[0], pq[1], park)}; };
          candidates_.push_back(std::move(c));
        }
      }
    }
  }

  /// Parkings of every particle outside `active` that avoid the blocked vertices and edges.
  std::vector<Parking> parkings(const std::vector<ParticleId>& active, const std::vector<bool>& bv,
                                const std::vector<bool>& be) {
    std::vector<ParticleId> others;
    for (ParticleId p = 0; p < n_; ++p)
      if (std::find(active.begin(), active.end(), p) == active.end()) others.push_back(p);
    bool truncated = false;
    const auto placements = first_static_placements(g_, others.size(), bv, be, caps_.max_parkings, &truncated);
    if (truncated) out_.truncated = true;
    std::vector<Parking> out;
    for (const auto& placement : placements) {
      Parking park = empty_parking(n_);
      for (std::size_t i = 0; i < others.size(); ++i) park.states[others[i]] = placement.states[i];
      out.push_back(std::move(park));
    }
    return out;
  }

  void emit_parked(const Candidate& c) {
    for (const auto& park : parkings(c.active, c.blocked_vertices, c.blocked_edges)) {
      if (full()) return;
      try {
        auto zs = c.build(park);
        for (std::size_t i = 0; i < zs.size(); ++i) {
          if (zs[i].is_zero() || full()) continue;
          std::string label = c.label;
          if (zs.size() > 1) label += " #" + std::to_string(i);
          if (has_parked(park)) label += " park=" + to_record(park);
          out_.classes.push_back({std::move(label), std::move(zs[i])});
        }
      } catch (const InvalidArgument&) {
        // The parking blocks this class; other parkings may not.
      }
    }
  }

  static bool has_parked(const Parking& park) {
    return std::any_of(park.states.begin(), park.states.end(), [](const ParticleState& s) { return s.present(); });
  }

  void emit_products() {
    struct Bare {
      std::string label;
      std::vector<ParticleId> active;
      Chain chain;
      Support support;
    };
    std::vector<Bare> bare;
    for (const auto& c : candidates_) {
      try {
        auto zs = c.build(empty_parking(n_));
        for (std::size_t i = 0; i < zs.size(); ++i) {
          if (zs[i].is_zero()) continue;
          Support s = chain_support(g_, zs[i]);
          bare.push_back({c.label + (zs.size() > 1 ? " #" + std::to_string(i) : ""), c.active, std::move(zs[i]),
                          std::move(s)});
        }
      } catch (const InvalidArgument&) {
      }
    }
    for (std::size_t i = 0; i < bare.size(); ++i) {
      for (std::size_t j = i + 1; j < bare.size(); ++j) {
        const Bare& a = bare[i];
        const Bare& b = bare[j];
        if (a.active.size() + b.active.size() > n_) continue;
        bool disjoint = true;
        for (ParticleId p : a.active) disjoint = disjoint && std::find(b.active.begin(), b.active.end(), p) == b.active.end();
        for (std::size_t v = 0; disjoint && v < g_.vertex_count(); ++v) disjoint = !(a.support.vertices[v] && b.support.vertices[v]);
        for (std::size_t e = 0; disjoint && e < g_.edge_count(); ++e) disjoint = !(a.support.edges[e] && b.support.edges[e]);
        if (!disjoint) continue;
        Chain prod = product_chain(g_, a.chain, b.chain);
        std::vector<ParticleId> active = a.active;
        active.insert(active.end(), b.active.begin(), b.active.end());
        std::vector<bool> bv = no_vertices(), be = no_edges();
        for (std::size_t v = 0; v < g_.vertex_count(); ++v)
          bv[v] = !g_.is_sink(static_cast<VertexId>(v)) && (a.support.vertices[v] || b.support.vertices[v]);
        for (std::size_t e = 0; e < g_.edge_count(); ++e) be[e] = a.support.edges[e] || b.support.edges[e];
        for (const auto& parking : parkings(active, bv, be)) {
          if (full()) return;
          try {
            out_.classes.push_back({"product (" + a.label + ") x (" + b.label + ")" +
                                        (has_parked(parking) ? " park=" + to_record(parking) : ""),
                                    park(g_, prod, parking)});
          } catch (const InvalidArgument&) {
          }
        }
      }
    }
  }

  const Graph& g_;
  std::size_t n_;
  ClassCaps caps_;
  std::vector<Candidate> candidates_;
  BasicClassList out_;
};

}  // namespace

BasicClassList enumerate_basic_classes(const Graph& g, std::size_t particles, const ClassCaps& caps) {
  require(particles <= 16, "enumerate_basic_classes supports at most 16 particles");
  return Enumerator(g, particles, caps).run();
}

}  // namespace confsink
