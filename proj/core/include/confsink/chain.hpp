#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "confsink/cell.hpp"

namespace confsink {

/// Finitely supported integer combination of cells of one dimension. Zero coefficients are never
/// stored. Cells may be partial (some particles Absent) while a chain is being assembled from
/// factors.
class Chain {
 public:
  using Terms = std::map<CubeCell, std::int64_t>;

  Chain() = default;
  explicit Chain(std::size_t degree) : degree_(degree) {}
  static Chain of(const CubeCell& cell, std::int64_t coefficient = 1);

  std::size_t degree() const noexcept { return degree_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t support_size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::int64_t coefficient(const CubeCell& cell) const;

  /// Adds `coefficient * cell`; throws InvalidArgument on a dimension mismatch.
  void add(const CubeCell& cell, std::int64_t coefficient);

  Chain& operator+=(const Chain& other);
  Chain& operator-=(const Chain& other);
  Chain& operator*=(std::int64_t scalar);
  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
  friend Chain operator*(std::int64_t s, Chain a) { return a *= s; }
  friend Chain operator-(Chain a) { return a *= -1; }
  friend bool operator==(const Chain&, const Chain&) = default;

 private:
  std::size_t degree_ = 0;
  Terms terms_;
};

/// Cubical boundary: sum over slots i (0-based) of (-1)^i (face(i,1) - face(i,0)).
Chain boundary(const Graph& g, const CubeCell& cell);
Chain boundary(const Graph& g, const Chain& chain);

/// Relabels every cell, including the orientation sign, so that relabel commutes with boundary.
Chain relabel(const Chain& chain, std::span<const ParticleId> perm);

/// One `coefficient<TAB>record` line per term, preceded by `chain <degree> <terms>`.
std::string to_text(const Chain& chain);

}  // namespace confsink
