#pragma once

#include <cstddef>
#include <vector>

#include "cpm/graph.hpp"

namespace cpm {

bool check_regular(const Graph& g, std::size_t degree);

/// Nodes whose degree differs from `degree`, ascending.
std::vector<NodeId> irregular_nodes(const Graph& g, std::size_t degree);

bool is_connected(const Graph& g);

struct BiconnectivityReport {
  bool biconnected = false;
  std::vector<NodeId> articulation_points;  // ascending
};

/// Lowpoint depth-first search (iterative, so deep graphs are fine).
/// Biconnected means connected, at least 3 nodes, no articulation point.
BiconnectivityReport is_biconnected(const Graph& g);

/// Reference implementation: delete each node in turn and search from one
/// of its neighbors until the others are found. Quadratic in the worst case;
/// used to cross-check is_biconnected.
std::vector<NodeId> articulation_points_brute_force(const Graph& g);

/// A dart is an edge traversed from `from` to the other endpoint.
struct Dart {
  EdgeId edge;
  NodeId from;
};

/// Throws PreconditionError unless every node's cycle lists exactly its
/// incident edges, each once.
void check_rotation(const Graph& g, const RotationSystem& rot);

/// Face boundaries of the embedding. The successor of dart (u->v) is
/// (v->w) where w precedes u in v's counter-clockwise order, so every face
/// is traced with the face on its left.
std::vector<std::vector<Dart>> trace_faces(const Graph& g, const RotationSystem& rot);

struct EmbeddingReport {
  std::size_t faces = 0;
  long euler_characteristic = 0;
  std::size_t face_length_sum = 0;
};

/// V - E + F of the embedding; 2 certifies a planar embedding of a connected
/// graph.
EmbeddingReport embedding_genus(const Graph& g, const RotationSystem& rot);

}  // namespace cpm
