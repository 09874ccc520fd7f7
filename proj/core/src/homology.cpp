#include "confsink/homology.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace confsink {

std::vector<std::size_t> HomologySummary::betti() const {
  std::vector<std::size_t> out;
  for (const auto& d : degrees) out.push_back(d.betti);
  return out;
}

bool HomologySummary::torsion_free() const {
  for (const auto& d : degrees)
    if (!d.torsion.empty()) return false;
  return true;
}

namespace {

struct BoundaryData {
  std::size_t rank = 0;
  std::vector<mpz_class> torsion;
};

BoundaryData analyse_boundary(const CubeComplex& cx, std::size_t k, bool torsion) {
  const SparseIntMatrix d = cx.boundary_matrix(k);
  BoundaryData out;
  out.rank = rank_over_rationals(d);
  if (torsion) {
    const auto factors = smith_normal_form(d);
    if (factors.size() != out.rank) {
      throw std::logic_error("Smith normal form rank " + std::to_string(factors.size()) + " disagrees with rational rank " +
                             std::to_string(out.rank) + " in degree " + std::to_string(k));
    }
    for (const auto& f : factors)
      if (f > 1) out.torsion.push_back(f);
  }
  return out;
}

SparseIntMatrix boundary_or_empty(const CubeComplex& cx, std::size_t k) {
  if (k >= 1 && k <= cx.dimension()) return cx.boundary_matrix(k);
  const std::size_t rows = k == 0 ? 0 : cx.cell_count(k - 1);
  return SparseIntMatrix(rows, 0);
}

SparseIntMatrix columns_of(const std::vector<Chain>& zs, const CubeComplex& cx, std::size_t degree) {
  std::vector<SparseIntMatrix::Entry> triplets;
  for (std::size_t j = 0; j < zs.size(); ++j) {
    const Chain& z = zs[j];
    if (z.is_zero()) continue;
    if (z.degree() != degree) {
      throw InvalidArgument("chain of degree " + std::to_string(z.degree()) + " where degree " + std::to_string(degree) +
                            " was expected");
    }
    for (const auto& [cell, coef] : z.terms()) {
      const auto row = cx.index_of(cell);
      if (!row) throw InvalidArgument("chain cell not in the complex: " + to_record(cell));
      triplets.push_back({*row, j, coef});
    }
  }
  return SparseIntMatrix::from_triplets(cx.cell_count(degree), zs.size(), std::move(triplets));
}

void require_cycles(const std::vector<Chain>& zs, const CubeComplex& cx) {
  for (const auto& z : zs)
    if (!is_cycle(cx.graph(), z)) throw InvalidArgument("expected a cycle, got a chain with nonzero boundary");
}

nlohmann::json integer_json(const mpz_class& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

}  // namespace

HomologySummary homology(const CubeComplex& cx, HomologyOptions options) {
  const std::size_t dim = cx.dimension();
  std::vector<std::future<BoundaryData>> jobs;
  for (std::size_t k = 1; k <= dim; ++k) {
    jobs.push_back(std::async(options.parallel ? std::launch::async : std::launch::deferred, analyse_boundary, std::cref(cx),
                              k, options.torsion));
  }
  std::vector<BoundaryData> data(dim + 2);  // data[k] describes D_k; D_0 and D_{dim+1} vanish
  for (std::size_t k = 1; k <= dim; ++k) data[k] = jobs[k - 1].get();

  HomologySummary h;
  h.euler_characteristic = euler_characteristic(cx);
  for (std::size_t k = 0; k <= dim; ++k) {
    DegreeSummary d;
    d.degree = k;
    d.cells = cx.cell_count(k);
    d.betti = d.cells - data[k].rank - data[k + 1].rank;
    d.torsion = data[k + 1].torsion;
    h.degrees.push_back(std::move(d));
  }
  return h;
}

std::int64_t euler_characteristic(const CubeComplex& cx) {
  std::int64_t chi = 0;
  for (std::size_t k = 0; k <= cx.dimension(); ++k) {
    const auto n = static_cast<std::int64_t>(cx.cell_count(k));
    chi += (k % 2 == 0) ? n : -n;
  }
  return chi;
}

std::size_t connected_components(const CubeComplex& cx) {
  const std::size_t n = cx.cell_count(0);
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::size_t components = n;
  for (const auto& edge : cx.cells(1)) {
    if (cx.dimension() < 1) break;
    const auto a = cx.index_of(face(cx.graph(), edge, 0, 0));
    const auto b = cx.index_of(face(cx.graph(), edge, 0, 1));
    if (!a || !b) throw InvalidArgument("1-cell with a face outside the complex");
    const auto ra = find(*a), rb = find(*b);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components;
}

bool is_cycle(const Graph& g, const Chain& z) { return boundary(g, z).is_zero(); }

bool is_boundary(const Chain& z, const CubeComplex& cx) {
  if (z.is_zero()) return true;
  const std::size_t k = z.degree();
  const SparseIntMatrix d = boundary_or_empty(cx, k + 1);
  const SparseIntMatrix augmented = d.hconcat(cx.column_of(z));
  const auto base = smith_normal_form(d);
  const auto extended = smith_normal_form(augmented);
  if (base.size() != extended.size()) return false;
  const mpz_class base_product = std::accumulate(base.begin(), base.end(), mpz_class(1), std::multiplies<>());
  const mpz_class extended_product = std::accumulate(extended.begin(), extended.end(), mpz_class(1), std::multiplies<>());
  return base_product == extended_product;
}

std::size_t class_span_rank(const std::vector<Chain>& zs, const CubeComplex& cx, std::size_t degree) {
  if (zs.empty()) return 0;
  require_cycles(zs, cx);
  const SparseIntMatrix d = boundary_or_empty(cx, degree + 1);
  return rank_over_rationals(columns_of(zs, cx, degree).hconcat(d)) - rank_over_rationals(d);
}

bool generates_integrally(const std::vector<Chain>& zs, const CubeComplex& cx, std::size_t degree) {
  require_cycles(zs, cx);
  const SparseIntMatrix m = columns_of(zs, cx, degree).hconcat(boundary_or_empty(cx, degree + 1));
  const std::size_t cycle_rank = cx.cell_count(degree) - rank_over_rationals(boundary_or_empty(cx, degree));
  const auto factors = smith_normal_form(m);
  if (factors.size() != cycle_rank) return false;
  for (const auto& f : factors)
    if (f != 1) return false;
  return true;
}

SurfaceProfile surface_profile(const HomologySummary& h) {
  const auto b = h.betti();
  SurfaceProfile p;
  if (!h.torsion_free()) {
    p.reason = "torsion present";
  } else if (b.size() < 3 || b[0] != 1 || b[2] != 1) {
    p.reason = "b0 and b2 must both be 1";
  } else if (std::any_of(b.begin() + 3, b.end(), [](std::size_t x) { return x != 0; })) {
    p.reason = "homology above degree 2";
  } else if (b[1] % 2 != 0) {
    p.reason = "b1 is odd";
  } else {
    p.is_surface = true;
    p.genus = b[1] / 2;
  }
  return p;
}

std::string to_table(const HomologySummary& h) {
  std::ostringstream out;
  out << "degree  cells  betti  torsion\n";
  for (const auto& d : h.degrees) {
    out << d.degree << '\t' << d.cells << '\t' << d.betti << '\t';
    if (d.torsion.empty()) {
      out << "-";
    } else {
      for (std::size_t i = 0; i < d.torsion.size(); ++i) out << (i ? "," : "") << "Z/" << d.torsion[i].get_str();
    }
    out << '\n';
  }
  out << "euler characteristic: " << h.euler_characteristic << '\n';
  return out.str();
}

std::string to_document(const HomologySummary& h, const CubeComplex& cx) {
  nlohmann::json doc;
  doc["graph"] = nlohmann::json::parse(to_document(cx.graph()));
  doc["particles"] = cx.particle_count();
  doc["euler_characteristic"] = h.euler_characteristic;
  nlohmann::json degrees = nlohmann::json::array();
  for (const auto& d : h.degrees) {
    nlohmann::json torsion = nlohmann::json::array();
    for (const auto& t : d.torsion) torsion.push_back(integer_json(t));
    degrees.push_back({{"degree", d.degree}, {"cells", d.cells}, {"betti", d.betti}, {"torsion", torsion}});
  }
  doc["degrees"] = std::move(degrees);
  return doc.dump(2);
}

}  // namespace confsink
