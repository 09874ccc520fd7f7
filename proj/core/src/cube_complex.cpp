#include "confsink/cube_complex.hpp"

#include <algorithm>
#include <functional>

namespace confsink {

namespace {

/// Depth-first assignment of one state per particle under the resource rules of the model
/// (a non-sink vertex carries at most one occupant or incident move, a half-edge at most one move).
/// Particles parked on a sink-free edge get their ranks from every ordering of that edge's
/// occupants, so each leaf of the search expands to all rank assignments.
class CellSearch {
 public:
  struct Options {
    bool allow_moves = true;
    const std::vector<bool>* blocked_vertices = nullptr;
    const std::vector<bool>* blocked_edges = nullptr;
    std::size_t max_cells = 0;
    bool stop_at_cap = false;  // keep the first max_cells results instead of throwing
    const char* what = "cell enumeration";
  };

  CellSearch(const Graph& g, std::size_t particles, Options options)
      : g_(g), particles_(particles), options_(options), vertex_load_(g.vertex_count(), 0), edge_moves_(2 * g.edge_count(), 0),
        current_(particles) {
    build_choices();
  }

  std::vector<std::vector<CubeCell>> run() {
    dfs(0);
    return std::move(out_);
  }

  bool stopped() const noexcept { return stopped_; }

 private:
  void build_choices() {
    auto vertex_ok = [&](VertexId v) { return !options_.blocked_vertices || !(*options_.blocked_vertices)[v]; };
    auto edge_ok = [&](EdgeId e) { return !options_.blocked_edges || !(*options_.blocked_edges)[e]; };
    for (VertexId v = 0; v < g_.vertex_count(); ++v)
      if (g_.vertex_usable(v) && vertex_ok(v)) choices_.push_back(ParticleState::at_vertex(v));
    for (EdgeId e = 0; e < g_.edge_count(); ++e)
      if (!g_.touches_sink(e) && edge_ok(e)) choices_.push_back(ParticleState::on_edge(e, 0));
    if (!options_.allow_moves) return;
    for (EdgeId e = 0; e < g_.edge_count(); ++e) {
      const ParticleState candidates[] = {ParticleState::move_end(e, End::Initial), ParticleState::move_end(e, End::Terminal),
                                          ParticleState::move_full(e)};
      for (const auto& s : candidates)
        if (cell_is_valid(g_, CubeCell({s}))) choices_.push_back(s);
    }
  }

  /// Non-sink vertices a state occupies or moves towards.
  void touched_vertices(const ParticleState& s, VertexId out[2], int& count) const {
    count = 0;
    auto push = [&](VertexId v) {
      if (!g_.is_sink(v)) out[count++] = v;
    };
    switch (s.kind) {
      case StateKind::AtVertex: push(s.id); break;
      case StateKind::MoveEnd: push(g_.endpoint(s.id, s.end())); break;
      case StateKind::MoveFull:
        push(g_.endpoint(s.id, End::Initial));
        if (!g_.is_loop(s.id)) push(g_.endpoint(s.id, End::Terminal));
        break;
      default: break;
    }
  }

  /// Half-edge range [first, last) claimed by a move: its own end for MoveEnd, both for MoveFull.
  static std::pair<std::size_t, std::size_t> claimed_halves(const ParticleState& s) {
    switch (s.kind) {
      case StateKind::MoveEnd: return {2 * s.id + s.slot, 2 * s.id + s.slot + 1};
      case StateKind::MoveFull: return {2 * s.id, 2 * s.id + 2};
      default: return {0, 0};
    }
  }

  void dfs(std::size_t p) {
    if (stopped_) return;
    if (p == particles_) {
      emit();
      return;
    }
    for (const auto& choice : choices_) {
      VertexId touched[2];
      int count = 0;
      touched_vertices(choice, touched, count);
      bool fits = true;
      for (int i = 0; i < count; ++i) fits = fits && vertex_load_[touched[i]] == 0;
      if (count == 2 && touched[0] == touched[1]) fits = false;
      const auto [first_half, last_half] = claimed_halves(choice);
      for (auto h = first_half; h < last_half; ++h) fits = fits && edge_moves_[h] == 0;
      if (!fits) continue;
      for (int i = 0; i < count; ++i) ++vertex_load_[touched[i]];
      for (auto h = first_half; h < last_half; ++h) ++edge_moves_[h];
      current_[p] = choice;
      dfs(p + 1);
      for (int i = 0; i < count; ++i) --vertex_load_[touched[i]];
      for (auto h = first_half; h < last_half; ++h) --edge_moves_[h];
    }
  }

  void emit() {
    // Occupants of each sink-free edge, in particle order; every permutation gives the ranks.
    std::vector<std::vector<ParticleId>> occupants;
    for (ParticleId p = 0; p < particles_; ++p) {
      if (current_[p].kind != StateKind::OnEdge) continue;
      const EdgeId e = current_[p].id;
      auto it = std::find_if(occupants.begin(), occupants.end(),
                             [&](const auto& list) { return current_[list.front()].id == e; });
      if (it == occupants.end()) {
        occupants.push_back({p});
      } else {
        it->push_back(p);
      }
    }
    std::size_t dim = 0;
    for (const auto& s : current_) dim += s.is_move() ? 1 : 0;
    if (out_.size() <= dim) out_.resize(dim + 1);

    std::function<void(std::size_t)> expand = [&](std::size_t k) {
      if (stopped_) return;
      if (k == occupants.size()) {
        if (++emitted_ > options_.max_cells) {
          if (!options_.stop_at_cap) throw CapExceeded(options_.what, options_.max_cells);
          stopped_ = true;
          return;
        }
        out_[dim].emplace_back(current_);
        return;
      }
      auto& order = occupants[k];
      std::sort(order.begin(), order.end());
      do {
        for (std::uint32_t r = 0; r < order.size(); ++r) current_[order[r]].slot = r;
        expand(k + 1);
      } while (std::next_permutation(order.begin(), order.end()));
    };
    expand(0);
    for (auto& s : current_)
      if (s.kind == StateKind::OnEdge) s.slot = 0;
  }

  const Graph& g_;
  std::size_t particles_;
  Options options_;
  std::vector<ParticleState> choices_;
  std::vector<int> vertex_load_;
  std::vector<int> edge_moves_;
  std::vector<ParticleState> current_;
  std::vector<std::vector<CubeCell>> out_;
  std::size_t emitted_ = 0;
  bool stopped_ = false;
};

}  // namespace

CubeComplex::CubeComplex(Graph g, std::size_t particles, std::vector<std::vector<CubeCell>> cells, Limits limits)
    : graph_(std::move(g)), particles_(particles), limits_(limits), cells_(std::move(cells)) {
  while (cells_.size() > 1 && cells_.back().empty()) cells_.pop_back();
  index_.resize(cells_.size());
  for (std::size_t k = 0; k < cells_.size(); ++k) {
    index_[k].reserve(cells_[k].size());
    for (std::size_t i = 0; i < cells_[k].size(); ++i) {
      if (!index_[k].emplace(cells_[k][i], i).second) throw InvalidArgument("duplicate cell " + to_record(cells_[k][i]));
    }
  }
}

CubeComplex CubeComplex::enumerate(Graph g, std::size_t particles, Limits limits) {
  CellSearch::Options options;
  options.max_cells = limits.max_cells;
  auto cells = CellSearch(g, particles, options).run();
  for (auto& list : cells) std::sort(list.begin(), list.end());
  return CubeComplex(std::move(g), particles, std::move(cells), limits);
}

CubeComplex CubeComplex::from_cells(Graph g, std::size_t particles, std::vector<std::vector<CubeCell>> cells_by_dimension,
                                    Limits limits) {
  for (std::size_t k = 0; k < cells_by_dimension.size(); ++k) {
    for (const auto& cell : cells_by_dimension[k]) {
      if (cell.particle_count() != particles || cell.dimension() != k || !cell_is_valid(g, cell)) {
        throw InvalidArgument("from_cells: invalid " + std::to_string(k) + "-cell " + to_record(cell));
      }
    }
  }
  return CubeComplex(std::move(g), particles, std::move(cells_by_dimension), limits);
}

const std::vector<CubeCell>& CubeComplex::cells(std::size_t k) const {
  static const std::vector<CubeCell> kEmpty;
  return k < cells_.size() ? cells_[k] : kEmpty;
}

std::vector<std::size_t> CubeComplex::cell_counts() const {
  std::vector<std::size_t> out;
  for (const auto& list : cells_) out.push_back(list.size());
  if (out.empty()) out.push_back(0);
  return out;
}

std::size_t CubeComplex::total_cells() const {
  std::size_t total = 0;
  for (const auto& list : cells_) total += list.size();
  return total;
}

std::optional<std::size_t> CubeComplex::index_of(const CubeCell& cell) const {
  const std::size_t k = cell.dimension();
  if (k >= index_.size()) return std::nullopt;
  auto it = index_[k].find(cell);
  if (it == index_[k].end()) return std::nullopt;
  return it->second;
}

SparseIntMatrix CubeComplex::boundary_matrix(std::size_t k) const {
  if (k == 0) throw InvalidArgument("boundary_matrix needs degree >= 1");
  const auto& columns = cells(k);
  const auto& rows = cells(k - 1);
  std::vector<SparseIntMatrix::Entry> triplets;
  triplets.reserve(columns.size() * 2 * k);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const Chain faces = boundary(graph_, columns[j]);
    for (const auto& [face_cell, coef] : faces.terms()) {
      const auto row = index_of(face_cell);
      if (!row) throw InvalidArgument("boundary face outside the complex: " + to_record(face_cell));
      triplets.push_back({*row, j, coef});
      if (triplets.size() > limits_.max_nonzeros) throw CapExceeded("boundary matrix nonzeros", limits_.max_nonzeros);
    }
  }
  return SparseIntMatrix::from_triplets(rows.size(), columns.size(), std::move(triplets));
}

SparseIntMatrix CubeComplex::column_of(const Chain& chain) const {
  std::vector<SparseIntMatrix::Entry> triplets;
  for (const auto& [cell, coef] : chain.terms()) {
    const auto row = index_of(cell);
    if (!row) throw InvalidArgument("chain cell not in the complex: " + to_record(cell));
    triplets.push_back({*row, 0, coef});
  }
  return SparseIntMatrix::from_triplets(cell_count(chain.degree()), 1, std::move(triplets));
}

std::vector<CubeCell> static_placements(const Graph& g, std::size_t particles, const std::vector<bool>& blocked_vertices,
                                        const std::vector<bool>& blocked_edges, std::size_t max_results) {
  CellSearch::Options options;
  options.allow_moves = false;
  options.blocked_vertices = &blocked_vertices;
  options.blocked_edges = &blocked_edges;
  options.max_cells = max_results;
  options.what = "parking placements";
  auto cells = CellSearch(g, particles, options).run();
  if (cells.empty()) return {};
  std::sort(cells[0].begin(), cells[0].end());
  return std::move(cells[0]);
}

std::vector<CubeCell> first_static_placements(const Graph& g, std::size_t particles, const std::vector<bool>& blocked_vertices,
                                              const std::vector<bool>& blocked_edges, std::size_t limit, bool* truncated) {
  CellSearch::Options options;
  options.allow_moves = false;
  options.blocked_vertices = &blocked_vertices;
  options.blocked_edges = &blocked_edges;
  options.max_cells = limit;
  options.stop_at_cap = true;
  CellSearch search(g, particles, options);
  auto cells = search.run();
  if (truncated) *truncated = search.stopped();
  if (cells.empty()) return {};
  std::sort(cells[0].begin(), cells[0].end());
  return std::move(cells[0]);
}

}  // namespace confsink
