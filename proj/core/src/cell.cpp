#include "confsink/cell.hpp"

#include <algorithm>
#include <sstream>

namespace confsink {

std::size_t CubeCell::dimension() const noexcept {
  return static_cast<std::size_t>(std::count_if(states.begin(), states.end(), [](const ParticleState& s) { return s.is_move(); }));
}

std::vector<ParticleId> CubeCell::movers() const {
  std::vector<ParticleId> out;
  for (ParticleId p = 0; p < states.size(); ++p)
    if (states[p].is_move()) out.push_back(p);
  return out;
}

bool CubeCell::complete() const noexcept {
  return std::all_of(states.begin(), states.end(), [](const ParticleState& s) { return s.present(); });
}

std::size_t CubeCellHash::operator()(const CubeCell& cell) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& s : cell.states) {
    const std::uint64_t word = (static_cast<std::uint64_t>(s.kind) << 56) ^ (static_cast<std::uint64_t>(s.id) << 24) ^ s.slot;
    h ^= word + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

bool cell_is_valid(const Graph& g, const CubeCell& cell, bool allow_absent) {
  std::vector<int> vertex_load(g.vertex_count(), 0);
  // Moves per half-edge: a MoveEnd claims its own end, a MoveFull claims both.
  std::vector<int> edge_moves(2 * g.edge_count(), 0);
  std::vector<std::vector<std::uint32_t>> ranks(g.edge_count());

  auto load = [&](VertexId v) {
    if (!g.is_sink(v)) ++vertex_load[v];
  };

  for (const auto& s : cell.states) {
    switch (s.kind) {
      case StateKind::Absent:
        if (!allow_absent) return false;
        break;
      case StateKind::AtVertex:
        if (s.id >= g.vertex_count() || !g.vertex_usable(s.id)) return false;
        load(s.id);
        break;
      case StateKind::OnEdge:
        if (s.id >= g.edge_count() || g.touches_sink(s.id)) return false;
        ranks[s.id].push_back(s.slot);
        break;
      case StateKind::MoveEnd: {
        if (s.id >= g.edge_count() || g.touches_sink(s.id) || s.slot > 1) return false;
        const VertexId v = g.endpoint(s.id, s.end());
        if (g.valence(v) < 2) return false;
        ++edge_moves[2 * s.id + s.slot];
        load(v);
        break;
      }
      case StateKind::MoveFull: {
        if (s.id >= g.edge_count() || !g.touches_sink(s.id)) return false;
        for (End end : {End::Initial, End::Terminal}) {
          const VertexId v = g.endpoint(s.id, end);
          if (!g.is_sink(v) && g.valence(v) < 2) return false;
        }
        ++edge_moves[2 * s.id];
        ++edge_moves[2 * s.id + 1];
        load(g.endpoint(s.id, End::Initial));
        if (!g.is_loop(s.id)) load(g.endpoint(s.id, End::Terminal));
        break;
      }
      default:
        return false;
    }
  }
  if (std::any_of(vertex_load.begin(), vertex_load.end(), [](int n) { return n > 1; })) return false;
  if (std::any_of(edge_moves.begin(), edge_moves.end(), [](int n) { return n > 1; })) return false;
  for (auto& r : ranks) {
    std::sort(r.begin(), r.end());
    for (std::uint32_t i = 0; i < r.size(); ++i)
      if (r[i] != i) return false;
  }
  return true;
}

CubeCell face(const Graph& g, const CubeCell& cell, std::size_t slot, int side) {
  const auto movers = cell.movers();
  if (slot >= movers.size()) {
    throw InvalidArgument("face: slot " + std::to_string(slot) + " out of range for a " + std::to_string(movers.size()) +
                          "-cell");
  }
  if (side != 0 && side != 1) throw InvalidArgument("face: side must be 0 or 1");
  CubeCell out = cell;
  const ParticleId p = movers[slot];
  const ParticleState mover = cell.states[p];
  if (mover.kind == StateKind::MoveFull) {
    out.states[p] = ParticleState::at_vertex(g.endpoint(mover.id, side == 0 ? End::Initial : End::Terminal));
    return out;
  }
  if (side == 1) {
    out.states[p] = ParticleState::at_vertex(g.endpoint(mover.id, mover.end()));
    return out;
  }
  std::uint32_t occupants = 0;
  for (auto& s : out.states) {
    if (s.kind == StateKind::OnEdge && s.id == mover.id) {
      ++occupants;
      if (mover.end() == End::Initial) ++s.slot;
    }
  }
  out.states[p] = ParticleState::on_edge(mover.id, mover.end() == End::Initial ? 0 : occupants);
  return out;
}

std::vector<CubeCell> corner_configurations(const Graph& g, const CubeCell& cell) {
  const std::size_t dim = cell.dimension();
  std::vector<CubeCell> out;
  out.reserve(std::size_t{1} << dim);
  for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
    CubeCell c = cell;
    // Collapse the highest slot first so lower slot indices stay put.
    for (std::size_t slot = dim; slot-- > 0;) c = face(g, c, slot, static_cast<int>((mask >> slot) & 1U));
    out.push_back(std::move(c));
  }
  return out;
}

CubeCell relabel(const CubeCell& cell, std::span<const ParticleId> perm) {
  if (perm.size() != cell.states.size()) throw InvalidArgument("relabel: permutation size mismatch");
  CubeCell out;
  out.states.resize(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out.states[i] = cell.states.at(perm[i]);
  return out;
}

int relabel_sign(const CubeCell& cell, std::span<const ParticleId> perm) {
  // Directions of the relabeled cell, listed in its own ascending order, name the old movers
  // perm[i]; the sign is the parity of that sequence.
  std::vector<ParticleId> old_order;
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (cell.states.at(perm[i]).is_move()) old_order.push_back(perm[i]);
  int sign = 1;
  for (std::size_t i = 0; i < old_order.size(); ++i)
    for (std::size_t j = i + 1; j < old_order.size(); ++j)
      if (old_order[i] > old_order[j]) sign = -sign;
  return sign;
}

std::vector<ParticleId> inverse_permutation(std::span<const ParticleId> perm) {
  std::vector<ParticleId> inv(perm.size());
  for (ParticleId i = 0; i < perm.size(); ++i) inv.at(perm[i]) = i;
  return inv;
}

std::string to_record(const CubeCell& cell) {
  std::ostringstream out;
  for (std::size_t p = 0; p < cell.states.size(); ++p) {
    if (p) out << "; ";
    const auto& s = cell.states[p];
    switch (s.kind) {
      case StateKind::Absent: out << '-'; break;
      case StateKind::AtVertex: out << "V " << s.id; break;
      case StateKind::OnEdge: out << "E " << s.id << ' ' << s.slot; break;
      case StateKind::MoveEnd: out << "ME " << s.id << ' ' << s.slot; break;
      case StateKind::MoveFull: out << "MF " << s.id; break;
    }
  }
  return out.str();
}

CubeCell cell_from_record(const std::string& record) {
  CubeCell cell;
  std::istringstream in(record);
  std::string item;
  while (std::getline(in, item, ';')) {
    std::istringstream fields(item);
    std::string tag;
    fields >> tag;
    std::uint32_t a = 0, b = 0;
    if (tag == "-") {
      cell.states.push_back(ParticleState::absent());
    } else if (tag == "V" && fields >> a) {
      cell.states.push_back(ParticleState::at_vertex(a));
    } else if (tag == "E" && fields >> a >> b) {
      cell.states.push_back(ParticleState::on_edge(a, b));
    } else if (tag == "ME" && fields >> a >> b && b <= 1) {
      cell.states.push_back(ParticleState::move_end(a, static_cast<End>(b)));
    } else if (tag == "MF" && fields >> a) {
      cell.states.push_back(ParticleState::move_full(a));
    } else {
      throw InvalidArgument("malformed cell record '" + record + "'");
    }
  }
  return cell;
}

}  // namespace confsink
