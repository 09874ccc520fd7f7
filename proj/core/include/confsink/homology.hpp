#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "confsink/chain.hpp"
#include "confsink/cube_complex.hpp"

namespace confsink {

struct DegreeSummary {
  std::size_t degree = 0;
  std::size_t cells = 0;
  std::size_t betti = 0;
  std::vector<mpz_class> torsion;  // invariant factors > 1, each dividing the next
};

struct HomologySummary {
  std::vector<DegreeSummary> degrees;  // one per degree 0..dimension
  std::int64_t euler_characteristic = 0;

  std::vector<std::size_t> betti() const;
  bool torsion_free() const;
};

struct HomologyOptions {
  /// Run Smith normal form on every boundary matrix. When off, torsion lists stay empty and only
  /// rational ranks are computed.
  bool torsion = true;
  /// Process degrees concurrently (results do not depend on scheduling).
  bool parallel = true;
};

HomologySummary homology(const CubeComplex& cx, HomologyOptions options = {});

std::int64_t euler_characteristic(const CubeComplex& cx);

/// Components of the 1-skeleton, via union-find.
std::size_t connected_components(const CubeComplex& cx);

bool is_cycle(const Graph& g, const Chain& z);

/// True iff z = D x for some integer vector x. Decided by comparing rank and the product of the
/// invariant factors of D and [D | z]: the index of im D in im [D | z] is their quotient.
bool is_boundary(const Chain& z, const CubeComplex& cx);

/// Rank of (span(zs) + B_k) / B_k over the rationals.
std::size_t class_span_rank(const std::vector<Chain>& zs, const CubeComplex& cx, std::size_t degree);

/// True iff zs together with the boundaries span every integral k-cycle.
bool generates_integrally(const std::vector<Chain>& zs, const CubeComplex& cx, std::size_t degree);

/// Homological surface test: b0 = 1, b2 = 1, b1 even, no higher homology, no torsion. This
/// does not certify the homotopy type.
struct SurfaceProfile {
  bool is_surface = false;
  std::size_t genus = 0;  // b1 / 2 when is_surface
  std::string reason;     // why not, otherwise empty
};
SurfaceProfile surface_profile(const HomologySummary& h);

/// Human table or a JSON document with fields degree, cells, betti, torsion and euler_characteristic.
std::string to_table(const HomologySummary& h);
std::string to_document(const HomologySummary& h, const CubeComplex& cx);

}  // namespace confsink
