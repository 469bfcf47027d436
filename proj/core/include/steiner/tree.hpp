#pragma once

#include <vector>

#include "steiner/instance.hpp"

namespace steiner {

/// A Steiner tree as an unordered edge set, stored sorted ascending so that
/// equality and lexicographic comparison are canonical. A tree is canonical
/// when every leaf is a terminal.
struct SteinerTree {
  std::vector<Edge> edges;
  friend auto operator<=>(const SteinerTree&, const SteinerTree&) = default;
};

/// Sorts and normalizes; duplicate edges are rejected.
SteinerTree make_tree(std::vector<Edge> edges);

/// Sum of instance weights over the edge set, accumulated in canonical edge
/// order (deterministic arithmetic path).
double tree_weight(const Instance& instance, const SteinerTree& tree);

/// Vertices incident to at least one tree edge, ascending.
std::vector<VertexId> tree_vertices(const SteinerTree& tree);

/// Checks that the edge set is a tree on its incident vertices (connected,
/// acyclic), references only instance vertices, and spans every terminal.
ValidationReport validate_tree(const Instance& instance,
                               const SteinerTree& tree);
bool tree_is_valid(const Instance& instance, const SteinerTree& tree);

/// True when every leaf of the tree is a terminal.
bool is_canonical(const Instance& instance, const SteinerTree& tree);

/// Iteratively removes non-terminal leaves. Weights are strictly positive,
/// so the result never weighs more than the input; idempotent.
SteinerTree canonicalize(const Instance& instance, const SteinerTree& tree);

/// Non-terminal vertices used by the tree, ascending.
std::vector<VertexId> steiner_vertices(const Instance& instance,
                                       const SteinerTree& tree);

/// True when some tree edge joins two non-terminal vertices.
bool has_adjacent_steiner(const Instance& instance, const SteinerTree& tree);

/// Degree of every vertex of the instance in the tree.
std::vector<int> tree_degrees(const Instance& instance,
                              const SteinerTree& tree);

}  // namespace steiner
