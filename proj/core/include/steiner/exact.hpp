#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>

#include "steiner/instance.hpp"
#include "steiner/tree.hpp"

namespace steiner {

/// Optimal trees and rivals compare within this relative tolerance when
/// deciding uniqueness.
constexpr double kUniqueRelTol = 1e-12;

/// Dreyfus-Wagner state grows as 2^(t-1) * n; refuse beyond this many
/// terminals instead of exhausting memory.
constexpr std::uint32_t kMaxDwTerminals = 16;

struct EnumerationBudget {
  /// Cap on how many non-terminals a candidate tree may use; -1 means all.
  int max_steiner_subset_size = -1;
  /// Stop after visiting this many trees; 0 means unlimited.
  std::uint64_t max_trees = 0;
  /// Hard wall-clock cutoff, checked periodically.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct EnumerationStats {
  std::uint64_t trees_visited = 0;
  /// True when every canonical tree of the instance was visited. False when a
  /// budget tripped or the visitor stopped early.
  bool exhaustive = true;
};

/// Visitor returns false to stop enumeration early.
using TreeVisitor = std::function<bool(const SteinerTree&)>;

/// Visits every canonical tree: each one spans all terminals, uses some
/// subset of non-terminals, and has no non-terminal leaf. Non-terminal
/// subsets are visited smallest first, lexicographic within a size; within a
/// subset, trees follow the lexicographic order of their encoding. The tree
/// reference passed to the visitor is scratch storage, valid only during the
/// call.
EnumerationStats enumerate_canonical_trees(const Instance& instance,
                                           const EnumerationBudget& budget,
                                           const TreeVisitor& visit);

/// Closed-form count of trees on m labelled vertices in which each of a fixed
/// set of k vertices has degree at least two. Matches what
/// enumerate_canonical_trees visits for one non-terminal subset of size k.
std::uint64_t count_canonical_trees(std::uint32_t vertex_count, std::uint32_t steiner_count);

struct OptResult {
  SteinerTree tree;   // lexicographically least among minimum-weight trees
  double weight = 0;  // tree_weight(instance, tree)
  bool unique = true; // no other canonical tree within kUniqueRelTol
  std::uint64_t trees_considered = 0;
};

/// Exhaustive optimum. Throws BudgetExceeded if the budget cuts enumeration
/// short, since optimality could then not be certified.
OptResult brute_force_opt(const Instance& instance, const EnumerationBudget& budget = {});

struct DwResult {
  SteinerTree tree;
  double weight = 0;  // recomputed as tree_weight(instance, tree)
};

/// Dreyfus-Wagner dynamic program over terminal subsets. Exact for any
/// complete instance; cost O(3^t n + 2^t n^2). Throws TooManyTerminals above
/// kMaxDwTerminals.
DwResult dreyfus_wagner(const Instance& instance);

}  // namespace steiner
