#include "confsink/random_instances.hpp"

#include <algorithm>
#include <numeric>

namespace confsink {

Graph random_connected_graph(Rng& rng, const RandomGraphOptions& options) {
  const std::size_t vertices = 1 + rng.below(std::max<std::size_t>(options.max_vertices, 1));
  const std::size_t min_edges = vertices - 1;
  const std::size_t max_edges = std::max(options.max_edges, min_edges);
  // A single vertex still gets at least one loop so the graph has an edge.
  const std::size_t edges = std::max<std::size_t>(min_edges + rng.below(max_edges - min_edges + 1), 1);

  auto oriented = [&](VertexId a, VertexId b) {
    return rng.chance(50) ? std::pair{a, b} : std::pair{b, a};
  };
  Graph::EdgeList list;
  for (VertexId v = 1; v < vertices; ++v) list.push_back(oriented(static_cast<VertexId>(rng.below(v)), v));
  while (list.size() < edges) {
    const auto a = static_cast<VertexId>(rng.below(vertices));
    if (vertices == 1 || rng.chance(options.loop_percent)) {
      list.emplace_back(a, a);
    } else {
      auto b = static_cast<VertexId>(rng.below(vertices - 1));
      if (b >= a) ++b;
      list.push_back(oriented(a, b));
    }
  }
  rng.shuffle(list);
  std::vector<VertexId> sinks;
  for (VertexId v = 0; v < vertices; ++v)
    if (rng.chance(options.sink_percent)) sinks.push_back(v);
  return Graph(vertices, std::move(list), std::move(sinks));
}

std::vector<ParticleId> random_permutation(Rng& rng, std::size_t n) {
  std::vector<ParticleId> perm(n);
  std::iota(perm.begin(), perm.end(), ParticleId{0});
  rng.shuffle(perm);
  return perm;
}

Chain random_chain(Rng& rng, const CubeComplex& cx, std::size_t k, std::size_t terms) {
  Chain z(k);
  if (k > cx.dimension() || cx.cell_count(k) == 0) return z;
  for (std::size_t i = 0; i < terms; ++i) {
    std::int64_t coef = rng.between(-3, 2);
    if (coef >= 0) ++coef;
    z.add(cx.cells(k)[rng.below(cx.cell_count(k))], coef);
  }
  return z;
}

namespace {

ParticleState random_state(Rng& rng, const Graph& g, std::size_t particles) {
  const auto v = static_cast<VertexId>(rng.below(g.vertex_count()));
  const auto e = static_cast<EdgeId>(rng.below(g.edge_count()));
  switch (rng.below(4)) {
    case 0: return ParticleState::at_vertex(v);
    case 1: return ParticleState::on_edge(e, static_cast<std::uint32_t>(rng.below(particles + 1)));
    case 2: return ParticleState::move_end(e, rng.chance(50) ? End::Initial : End::Terminal);
    default: return ParticleState::move_full(e);
  }
}

}  // namespace

CubeCell random_candidate_cell(Rng& rng, const CubeComplex& cx) {
  const std::size_t k = rng.below(cx.dimension() + 1);
  CubeCell cell = cx.cells(k)[rng.below(cx.cell_count(k))];
  if (cell.states.empty() || cx.graph().edge_count() == 0) return cell;
  const std::size_t changes = 1 + rng.below(2);
  for (std::size_t i = 0; i < changes; ++i)
    cell.states[rng.below(cell.states.size())] = random_state(rng, cx.graph(), cell.states.size());
  return cell;
}

SparseIntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, unsigned percent, int magnitude) {
  std::vector<SparseIntMatrix::Entry> entries;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (rng.chance(percent)) entries.push_back({r, c, mpz_class(rng.between(-magnitude, magnitude))});
  return SparseIntMatrix::from_triplets(rows, cols, std::move(entries));
}

SparseIntMatrix random_unimodular(Rng& rng, std::size_t n, std::size_t steps) {
  auto dense = SparseIntMatrix::identity(n).to_dense();
  for (std::size_t s = 0; s < steps && n > 1; ++s) {
    const std::size_t i = rng.below(n);
    std::size_t j = rng.below(n - 1);
    if (j >= i) ++j;
    switch (rng.below(3)) {
      case 0: {  // row_i += c * row_j
        const mpz_class c = rng.between(-2, 2);
        for (std::size_t col = 0; col < n; ++col) dense[i][col] += c * dense[j][col];
        break;
      }
      case 1: std::swap(dense[i], dense[j]); break;
      default:
        for (auto& x : dense[i]) x = -x;
        break;
    }
  }
  return SparseIntMatrix::from_dense(dense);
}

}  // namespace confsink
