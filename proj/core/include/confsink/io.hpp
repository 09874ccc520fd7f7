#pragma once

#include <string>
#include <vector>

#include "confsink/chain.hpp"
#include "confsink/cube_complex.hpp"

namespace confsink {

/// Text export of a complex: a header, the cells of every dimension as state records, and each
/// boundary matrix as (row, col, value) triples. Layout in docs/formats.md.
std::string export_complex(const CubeComplex& cx, bool with_boundaries = true);

/// Reads the cells back (boundary sections are skipped; they are recomputed on demand).
CubeComplex import_complex(const std::string& text, Limits limits = {});

/// Concatenated to_text blocks of several chains.
std::string export_chains(const std::vector<Chain>& chains);

/// Parses export_chains (or a single to_text block) back into chains.
std::vector<Chain> import_chains(const std::string& text);

}  // namespace confsink
