#include "confsink/chain.hpp"

#include <sstream>

namespace confsink {

Chain Chain::of(const CubeCell& cell, std::int64_t coefficient) {
  Chain c(cell.dimension());
  c.add(cell, coefficient);
  return c;
}

std::int64_t Chain::coefficient(const CubeCell& cell) const {
  auto it = terms_.find(cell);
  return it == terms_.end() ? 0 : it->second;
}

void Chain::add(const CubeCell& cell, std::int64_t coefficient) {
  if (coefficient == 0) return;
  if (cell.dimension() != degree_) {
    throw InvalidArgument("chain of degree " + std::to_string(degree_) + " cannot hold a " +
                          std::to_string(cell.dimension()) + "-cell");
  }
  auto [it, inserted] = terms_.try_emplace(cell, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

Chain& Chain::operator+=(const Chain& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) degree_ = other.degree_;
  for (const auto& [cell, coef] : other.terms_) add(cell, coef);
  return *this;
}

Chain& Chain::operator-=(const Chain& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) degree_ = other.degree_;
  for (const auto& [cell, coef] : other.terms_) add(cell, -coef);
  return *this;
}

Chain& Chain::operator*=(std::int64_t scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [cell, coef] : terms_) coef *= scalar;
  return *this;
}

Chain boundary(const Graph& g, const CubeCell& cell) {
  const std::size_t dim = cell.dimension();
  Chain out(dim == 0 ? 0 : dim - 1);
  for (std::size_t i = 0; i < dim; ++i) {
    const std::int64_t sign = (i % 2 == 0) ? 1 : -1;
    out.add(face(g, cell, i, 1), sign);
    out.add(face(g, cell, i, 0), -sign);
  }
  return out;
}

Chain boundary(const Graph& g, const Chain& chain) {
  Chain out(chain.degree() == 0 ? 0 : chain.degree() - 1);
  for (const auto& [cell, coef] : chain.terms()) {
    const std::size_t dim = cell.dimension();
    for (std::size_t i = 0; i < dim; ++i) {
      const std::int64_t sign = (i % 2 == 0) ? coef : -coef;
      out.add(face(g, cell, i, 1), sign);
      out.add(face(g, cell, i, 0), -sign);
    }
  }
  return out;
}

Chain relabel(const Chain& chain, std::span<const ParticleId> perm) {
  Chain out(chain.degree());
  for (const auto& [cell, coef] : chain.terms()) out.add(relabel(cell, perm), coef * relabel_sign(cell, perm));
  return out;
}

std::string to_text(const Chain& chain) {
  std::ostringstream out;
  out << "chain " << chain.degree() << ' ' << chain.support_size() << '\n';
  for (const auto& [cell, coef] : chain.terms()) out << coef << '\t' << to_record(cell) << '\n';
  return out.str();
}

}  // namespace confsink
