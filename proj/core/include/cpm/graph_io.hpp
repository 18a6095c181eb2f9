#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "cpm/graph.hpp"

namespace cpm {

// Graph file: a JSON document
//
//   {
//     "format": "cpm-graph",
//     "version": 1,
//     "nodes": [{"id": 0, "role": "variable", "label": "a", "origin": "..."}, ...],
//     "edges": [[u, v], ...],
//     "rotation": [[edge ids counter-clockwise], ...],   (optional)
//     "coloring": {"k": 2, "colors": [c0, c1, ...]}      (optional)
//   }
//
// Node ids are dense and equal to their index; an edge's id is its index.
// Emission is byte-deterministic: one node, edge, or rotation entry per line.

struct GraphFile {
  Graph graph;
  std::optional<RotationSystem> rotation;
  std::optional<Coloring> coloring;
};

std::string emit_graph(const Graph& g, const RotationSystem* rot = nullptr, const Coloring* col = nullptr);

/// Throws GraphFormatError carrying the offending path, e.g. "/nodes/3/role".
GraphFile parse_graph(std::string_view text);

/// Graphviz text; one statement per node (filled by color when a coloring is
/// given) and one per edge, in id order.
std::string emit_dot(const Graph& g, const Coloring* col = nullptr);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace cpm
