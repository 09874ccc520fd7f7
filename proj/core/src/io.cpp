#include "confsink/io.hpp"

#include <charconv>
#include <sstream>

namespace confsink {

namespace {

constexpr const char* kComplexHeader = "confsink-complex 1";

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidArgument(message);
}

}  // namespace

std::string export_complex(const CubeComplex& cx, bool with_boundaries) {
  std::ostringstream out;
  out << kComplexHeader << '\n';
  out << "graph " << to_document(cx.graph()) << '\n';
  out << "particles " << cx.particle_count() << '\n';
  out << "dimension " << cx.dimension() << '\n';
  for (std::size_t k = 0; k <= cx.dimension(); ++k) {
    out << "cells " << k << ' ' << cx.cell_count(k) << '\n';
    for (const auto& cell : cx.cells(k)) out << to_record(cell) << '\n';
  }
  if (with_boundaries) {
    for (std::size_t k = 1; k <= cx.dimension(); ++k) {
      const SparseIntMatrix d = cx.boundary_matrix(k);
      out << "boundary " << k << ' ' << d.rows() << ' ' << d.cols() << ' ' << d.nonzeros() << '\n';
      for (const auto& e : d.entries()) out << e.row << ' ' << e.col << ' ' << e.value.get_str() << '\n';
    }
  }
  return out.str();
}

CubeComplex import_complex(const std::string& text, Limits limits) {
  std::istringstream in(text);
  std::string line;
  require(std::getline(in, line) && line == kComplexHeader, "complex export: missing header line");

  std::string word;
  require(std::getline(in, line) && line.rfind("graph ", 0) == 0, "complex export: missing graph line");
  Graph g = graph_from_document(line.substr(6));

  std::size_t particles = 0, dimension = 0;
  require(static_cast<bool>(std::getline(in, line)), "complex export: missing particle count");
  std::istringstream(line) >> word >> particles;
  require(word == "particles", "complex export: expected 'particles'");
  require(static_cast<bool>(std::getline(in, line)), "complex export: missing dimension");
  std::istringstream(line) >> word >> dimension;
  require(word == "dimension", "complex export: expected 'dimension'");

  std::vector<std::vector<CubeCell>> cells(dimension + 1);
  for (std::size_t k = 0; k <= dimension; ++k) {
    std::size_t degree = 0, count = 0;
    require(static_cast<bool>(std::getline(in, line)), "complex export: missing cell section " + std::to_string(k));
    std::istringstream(line) >> word >> degree >> count;
    require(word == "cells" && degree == k, "complex export: expected 'cells " + std::to_string(k) + "'");
    cells[k].reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      require(static_cast<bool>(std::getline(in, line)), "complex export: truncated cell section");
      cells[k].push_back(cell_from_record(line));
    }
  }
  return CubeComplex::from_cells(std::move(g), particles, std::move(cells), limits);
}

std::string export_chains(const std::vector<Chain>& chains) {
  std::string out;
  for (const auto& z : chains) out += to_text(z);
  return out;
}

std::vector<Chain> import_chains(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Chain> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream head(line);
    std::string word;
    std::size_t degree = 0, terms = 0;
    head >> word >> degree >> terms;
    require(word == "chain" && !head.fail(), "chain export: expected 'chain <degree> <terms>', got '" + line + "'");
    Chain z(degree);
    for (std::size_t i = 0; i < terms; ++i) {
      require(static_cast<bool>(std::getline(in, line)), "chain export: truncated chain");
      const auto tab = line.find('\t');
      require(tab != std::string::npos, "chain export: expected 'coefficient<TAB>record'");
      std::int64_t coef = 0;
      const auto [end, ec] = std::from_chars(line.data(), line.data() + tab, coef);
      require(ec == std::errc() && end == line.data() + tab, "chain export: bad coefficient in '" + line + "'");
      z.add(cell_from_record(line.substr(tab + 1)), coef);
    }
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace confsink
