#pragma once

#include <cstdint>
#include <vector>

#include "steiner/exact.hpp"
#include "steiner/instance.hpp"
#include "steiner/tree.hpp"

namespace steiner {

/// A symmetric multiplier table with unit diagonal; every off-diagonal entry
/// must lie in [1, gamma]. Applying one scales each edge weight by its
/// multiplier.
struct Perturbation {
  double gamma = 1.0;
  std::vector<double> multipliers;  // flat n*n, row-major
};

/// Scales weights entry-wise. The result keeps coordinates for reference but
/// drops the metric and Euclidean flags, since scaling preserves neither.
Instance apply_perturbation(const Instance& instance, const Perturbation& p);

/// The adversary's best move against a given rival: multiply every optimal
/// edge the rival avoids by gamma, leave the rest alone. Throws SameTree when
/// the rival equals the optimum.
Perturbation worst_case_perturbation(const Instance& instance, const SteinerTree& opt,
                                     const SteinerTree& rival, double gamma);

struct StabilityReport {
  /// Infimum over rival trees S of w(S \ opt) / w(opt \ S); +infinity when the
  /// optimum is the only canonical tree. Exactly 1 when the optimum ties.
  double gamma_star = 0;
  bool opt_unique = true;
  SteinerTree opt;
  double opt_weight = 0;
  /// A rival attaining gamma_star; empty when gamma_star is infinite.
  SteinerTree witness;
  bool exhaustive = true;
  std::uint64_t trees_considered = 0;
};

/// Computes the stability margin by enumerating canonical trees twice: once
/// to pin down the optimum, once to scan rival ratios. When the budget stops
/// enumeration early the report carries exhaustive=false and gamma_star is
/// only an upper bound on the true margin.
StabilityReport gamma_star(const Instance& instance, const EnumerationBudget& budget = {});

struct CertifyResult {
  bool stable = false;
  StabilityReport report;
};

/// Decides gamma-stability: stable exactly when the optimum is unique and
/// gamma < gamma_star. Requires gamma >= 1. Throws BudgetExceeded when the
/// budget prevents a sound verdict in either direction.
CertifyResult certify(const Instance& instance, double gamma,
                      const EnumerationBudget& budget = {});

/// Recomputes the optimum under the perturbed weights and compares: true
/// exactly when the perturbed instance still has the original tree as its
/// unique optimum (ties count as not preserved).
bool is_opt_preserved(const Instance& instance, const Perturbation& p,
                      const EnumerationBudget& budget = {});

struct PreservationCheck {
  bool optimal = false;   // no canonical tree is strictly cheaper after perturbing
  bool unique = false;    // and none ties within kUniqueRelTol
  double opt_weight = 0;  // weight of the reference tree after perturbing
  double best_rival_weight = 0;  // cheapest other tree after perturbing, +inf if none
};

/// Re-solves the perturbed instance and reports whether the reference tree
/// survived as an optimum.
PreservationCheck opt_preserved_under(const Instance& instance, const Perturbation& p,
                                      const SteinerTree& opt,
                                      const EnumerationBudget& budget = {});

}  // namespace steiner
