#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "steiner/error.hpp"

namespace steiner {

using VertexId = std::uint32_t;

/// Undirected edge with normalized endpoints, u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Normalizes endpoint order; self-loops are rejected.
Edge make_edge(VertexId a, VertexId b);

struct ValidationIssue {
  std::string rule;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> violations;
  bool ok() const { return violations.empty(); }
};

/// A complete weighted instance of the Steiner tree problem. Every unordered
/// vertex pair carries a weight; a subset of vertices is marked terminal.
/// Instances are immutable after construction. Factories (metric_closure,
/// euclidean_instance, the STP parser, perturbation, generators) are the
/// normal construction paths; the raw constructor only checks structural
/// shape so that validate() can report semantic rule violations.
class Instance {
 public:
  /// weights: flat row-major n*n matrix, symmetric with zero diagonal.
  /// coords: empty, or flat n*dim row-major point array.
  Instance(std::size_t n, std::vector<VertexId> terminals,
           std::vector<double> weights, bool metric_flag, bool euclidean_flag,
           std::vector<double> coords = {}, std::size_t dim = 0);

  std::size_t size() const { return n_; }

  double weight(VertexId u, VertexId v) const {
    return weights_[static_cast<std::size_t>(u) * n_ + v];
  }
  double weight(const Edge& e) const { return weight(e.u, e.v); }

  const std::vector<VertexId>& terminals() const { return terminals_; }
  std::size_t terminal_count() const { return terminals_.size(); }
  bool is_terminal(VertexId v) const { return is_terminal_[v]; }

  /// Vertices not marked terminal, ascending.
  std::vector<VertexId> non_terminals() const;

  bool metric() const { return metric_; }
  bool euclidean() const { return euclidean_; }

  bool has_coords() const { return dim_ > 0; }
  std::size_t dim() const { return dim_; }
  std::span<const double> coord(VertexId v) const {
    return {coords_.data() + static_cast<std::size_t>(v) * dim_, dim_};
  }

 private:
  std::size_t n_;
  std::vector<VertexId> terminals_;
  std::vector<char> is_terminal_;
  std::vector<double> weights_;
  std::vector<double> coords_;
  std::size_t dim_;
  bool metric_;
  bool euclidean_;
};

struct WeightedEdge {
  VertexId u;
  VertexId v;
  double w;
};

/// All-pairs shortest paths over an arbitrary positive-weight edge list.
/// Produces a complete metric instance; parallel edges collapse to the
/// lightest. Idempotent on already-complete metric inputs.
Instance metric_closure(std::size_t n, std::vector<VertexId> terminals,
                        const std::vector<WeightedEdge>& edges);

/// Complete instance with pairwise Euclidean distances as weights.
/// points: n rows of identical dimension. Coordinates are retained.
Instance euclidean_instance(const std::vector<std::vector<double>>& points,
                            std::vector<VertexId> terminals);

/// Checks instance invariants: terminal count and range, strictly positive
/// finite weights, the triangle inequality when metric_flag is set, and
/// weight/coordinate consistency when euclidean_flag is set. Tolerances are
/// relative 1e-9.
ValidationReport validate(const Instance& instance);

}  // namespace steiner
