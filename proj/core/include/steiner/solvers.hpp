#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "steiner/exact.hpp"
#include "steiner/instance.hpp"
#include "steiner/tree.hpp"

namespace steiner {

/// Minimum spanning tree over the terminal-induced complete subgraph.
/// Kruskal with edges ordered by (weight, u, v), so ties break the same way
/// on every run. Needs at least two terminals.
SteinerTree mst_terminals(const Instance& instance);

/// Forest-growing solver for the high-stability regime. At each step it
/// compares the cheapest terminal-terminal edge joining two components
/// against the minimum-average-weight fan (a fresh non-terminal center with
/// one leaf in each of >= 2 components, edge weights within a factor
/// 1/(gamma-1) of each other, average = sum/(m-1)) and commits whichever is
/// cheaper, preferring the edge on ties. Repeats until the terminals are
/// connected and returns the canonicalized forest.
///
/// Requires gamma > 1.755; below that the fan argument has no backing and
/// the call is refused (PreconditionViolated). The result is only known to
/// be optimal on stable instances whose optimum has no two adjacent
/// non-terminals; elsewhere it is just a feasible tree.
SteinerTree fan_greedy(const Instance& instance, double gamma);

/// Contracts edge (u,v) into a single vertex. The merged vertex keeps id
/// min(u,v), is a terminal iff either endpoint was, and reaches every other
/// vertex x at weight min(w(u,x), w(v,x)). Ids above max(u,v) shift down by
/// one; the returned vector maps each old id to its new id. Coordinates are
/// dropped (the merged point has none). A metric instance stays metric: the
/// min rule is re-validated and, if some triangle broke, re-closed over
/// shortest paths.
std::pair<Instance, std::vector<VertexId>> contract_edge(const Instance& instance,
                                                         Edge edge);

/// Inner approximation routine for contract_solve: must return a valid
/// canonical tree of weight at most (1+eps) times the optimum. Callables are
/// pure so sweeps may invoke them concurrently.
struct InnerOracle {
  std::string label;
  std::function<SteinerTree(const Instance& instance, double eps)> solve;
};

/// Brute-force optimum; the reference oracle.
InnerOracle exact_oracle();

/// Terminal MST. A 2-approximation on metric instances, far outside the
/// (1+eps) contract; used to demonstrate detection of contract violations.
InnerOracle mst_oracle();

/// Picks uniformly at random (seeded, deterministic per instance) among all
/// canonical trees within (1+eps) of optimal. Exercises the contraction
/// argument with every answer the contract permits, not just the best one.
InnerOracle fuzzed_exact_oracle(std::uint64_t seed);

struct ContractionStep {
  Edge contracted;            // in the ids of the instance it was taken from
  Edge contracted_original;   // the same edge in original ids (min-weight preimage pair)
  double weight = 0;          // weight at contraction time
  std::size_t size_before = 0;
  std::vector<VertexId> old_to_new;  // id map from this level to the next
};

struct ContractionTrace {
  Instance original;
  std::vector<ContractionStep> steps;
  SteinerTree base_tree;  // brute-forced remainder, in final-level ids
  std::string oracle_label;
};

struct ContractResult {
  SteinerTree tree;  // on the original instance
  ContractionTrace trace;
};

/// Contraction meta-algorithm: repeatedly run the oracle with
/// eps = (gamma-1)/(2n) for the current vertex count n, contract the
/// maximum-weight edge of its answer (ties broken by canonical edge order),
/// and stop once at most base_size vertices remain; the remainder is solved
/// exactly and the recorded edges are expanded back. On a gamma-stable
/// instance the contracted edge always belongs to the optimum, so the output
/// matches brute_force_opt; stability is not checked here, and violations
/// surface as suboptimal output or a failed expansion.
///
/// With verify_oracle set, every oracle answer is checked against the exact
/// optimum and OracleContractViolated reports any answer heavier than
/// (1+eps) times optimal. Structurally broken answers (invalid or
/// non-canonical trees) are reported the same way regardless.
ContractResult contract_solve(const Instance& instance, double gamma,
                              const InnerOracle& oracle, std::size_t base_size = 4,
                              bool verify_oracle = true);

/// Maps base_tree back through the contraction chain: every base edge is
/// replaced by its minimum-weight preimage pair (ties lexicographic) and the
/// recorded contracted edges are appended. Throws InconsistentTrace when the
/// trace does not fit base_tree or the union fails to be a valid tree, which
/// happens when contraction was applied outside its stability contract.
SteinerTree expand_solution(const ContractionTrace& trace, const SteinerTree& base_tree);

}  // namespace steiner
