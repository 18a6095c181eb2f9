#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cpm/graph.hpp"

namespace cpm {

struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;  // DIMACS literals
};

enum class Encoding {
  // k = 2 only: variable v+1 is true iff node v has color 1; for each of
  // its two colors, a node has at least one and pairwise at most one
  // neighbor agreeing with it.
  Binary,
  // Variable v*k + c + 1 means node v has color c (exactly one per node);
  // variable n*k + e + 1 means edge e is monochromatic; every node has
  // exactly one monochromatic incident edge.
  OneHot,
};

struct PmEncoding {
  Encoding kind = Encoding::OneHot;
  int k = 2;
  std::size_t nodes = 0;
  Cnf cnf;

  /// DIMACS literal stating "node v has color c".
  int color_literal(NodeId v, int c) const;
};

PmEncoding encode_pm(const Graph& g, int k, Encoding kind);

/// Binary when k = 2, OneHot otherwise.
Encoding preferred_encoding(const Graph& g, int k);

/// Colors from a model given as the truth value of each variable (index 0
/// is variable 1). Throws PreconditionError when a node does not have
/// exactly one color.
Coloring decode_model(const PmEncoding& enc, const std::vector<bool>& model);

std::string to_dimacs(const Cnf& cnf, const std::vector<std::string>& comments = {});

/// Throws Error naming the 1-based line on malformed input.
Cnf parse_dimacs(std::string_view text);

/// DIMACS text of the one-hot encoding, with a header comment giving the
/// variable layout.
std::string export_cnf(const Graph& g, int k);

}  // namespace cpm
