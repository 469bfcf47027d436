#include "steiner/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "steiner/error.hpp"

namespace steiner {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_gamma_at_least_one(double gamma) {
  if (!(gamma >= 1.0) || !std::isfinite(gamma))
    throw Error(Errc::MultiplierOutOfRange, "gamma must be finite and at least 1");
}

}  // namespace

Instance apply_perturbation(const Instance& instance, const Perturbation& p) {
  require_gamma_at_least_one(p.gamma);
  const std::uint32_t n = instance.size();
  if (p.multipliers.size() != std::size_t(n) * n)
    throw Error(Errc::InvalidArgument, "multiplier table shape mismatch");
  std::vector<double> w(std::size_t(n) * n, 0.0);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (p.multipliers[std::size_t(i) * n + i] != 1.0)
      throw Error(Errc::MultiplierOutOfRange, "diagonal multiplier must be 1");
    for (std::uint32_t j = i + 1; j < n; ++j) {
      double m = p.multipliers[std::size_t(i) * n + j];
      if (m != p.multipliers[std::size_t(j) * n + i])
        throw Error(Errc::InvalidArgument, "multiplier table not symmetric");
      if (!std::isfinite(m) || m < 1.0 || m > p.gamma)
        throw Error(Errc::MultiplierOutOfRange,
                    "multiplier " + std::to_string(m) + " outside [1, gamma]");
      double scaled = instance.weight(i, j) * m;
      w[std::size_t(i) * n + j] = scaled;
      w[std::size_t(j) * n + i] = scaled;
    }
  }
  std::vector<double> coords;
  if (instance.has_coords())
    for (std::uint32_t v = 0; v < n; ++v) {
      auto c = instance.coord(v);
      coords.insert(coords.end(), c.begin(), c.end());
    }
  return Instance(n, instance.terminals(), w, false, false, coords, instance.dim());
}

Perturbation worst_case_perturbation(const Instance& instance, const SteinerTree& opt,
                                     const SteinerTree& rival, double gamma) {
  require_gamma_at_least_one(gamma);
  if (opt.edges == rival.edges) throw Error(Errc::SameTree, "rival equals the optimum");
  const std::uint32_t n = instance.size();
  Perturbation p;
  p.gamma = gamma;
  p.multipliers.assign(std::size_t(n) * n, 1.0);
  for (const Edge& e : opt.edges) {
    if (std::binary_search(rival.edges.begin(), rival.edges.end(), e)) continue;
    if (e.u >= n || e.v >= n) throw Error(Errc::IndexOutOfRange, "tree edge outside instance");
    p.multipliers[std::size_t(e.u) * n + e.v] = gamma;
    p.multipliers[std::size_t(e.v) * n + e.u] = gamma;
  }
  return p;
}

StabilityReport gamma_star(const Instance& instance, const EnumerationBudget& budget) {
  StabilityReport rep;
  bool have_best = false;
  double second_w = kInf;
  SteinerTree second_tree;

  EnumerationStats pass1 = enumerate_canonical_trees(
      instance, budget, [&](const SteinerTree& t) {
        double w = tree_weight(instance, t);
        if (!have_best || w < rep.opt_weight ||
            (w == rep.opt_weight && t.edges < rep.opt.edges)) {
          if (have_best && (rep.opt_weight < second_w ||
                            (rep.opt_weight == second_w && rep.opt.edges < second_tree.edges))) {
            second_w = rep.opt_weight;
            second_tree = rep.opt;
          }
          rep.opt.edges = t.edges;
          rep.opt_weight = w;
          have_best = true;
        } else if (w < second_w || (w == second_w && t.edges < second_tree.edges)) {
          second_w = w;
          second_tree = t;
        }
        return true;
      });

  if (!have_best)
    throw Error(Errc::BudgetExceeded, "budget expired before any candidate tree was seen");
  rep.trees_considered = pass1.trees_visited;
  rep.exhaustive = pass1.exhaustive;
  rep.opt_unique = second_w > rep.opt_weight + kUniqueRelTol * rep.opt_weight;

  if (!rep.opt_unique) {
    // A tie means no perturbation keeps the optimum unique, not even the
    // identity; by convention the margin is exactly 1.
    rep.gamma_star = 1.0;
    rep.witness = second_tree;
    return rep;
  }

  double best_ratio = kInf;
  EnumerationStats pass2 = enumerate_canonical_trees(
      instance, budget, [&](const SteinerTree& t) {
        if (t.edges == rep.opt.edges) return true;
        // Merge walk over both sorted edge lists: a sums rival-only weights,
        // b sums optimum-only weights, shared edges cancel.
        double a = 0.0, b = 0.0;
        std::size_t i = 0, j = 0;
        while (i < t.edges.size() || j < rep.opt.edges.size()) {
          if (j == rep.opt.edges.size() ||
              (i < t.edges.size() && t.edges[i] < rep.opt.edges[j])) {
            a += instance.weight(t.edges[i]);
            ++i;
          } else if (i == t.edges.size() || rep.opt.edges[j] < t.edges[i]) {
            b += instance.weight(rep.opt.edges[j]);
            ++j;
          } else {
            ++i;
            ++j;
          }
        }
        if (!(b > 0.0)) return true;  // cannot happen for a leaf-free rival
        double ratio = a / b;
        if (ratio < best_ratio || (ratio == best_ratio && t.edges < rep.witness.edges)) {
          best_ratio = ratio;
          rep.witness = t;
        }
        return true;
      });

  // A unique optimum forces every rival ratio above 1 (the numerator and
  // denominator differ by the uniqueness gap); the clamp absorbs rounding in
  // the two disjoint edge sums.
  rep.gamma_star = std::max(1.0, best_ratio);
  rep.exhaustive = pass1.exhaustive && pass2.exhaustive;
  return rep;
}

CertifyResult certify(const Instance& instance, double gamma,
                      const EnumerationBudget& budget) {
  if (!(gamma >= 1.0) || !std::isfinite(gamma))
    throw Error(Errc::InvalidArgument, "stability is defined for gamma >= 1");
  CertifyResult out;
  out.report = gamma_star(instance, budget);
  if (!out.report.exhaustive)
    throw Error(Errc::BudgetExceeded,
                "enumeration was cut short; the margin is only an upper bound, so no sound "
                "verdict exists");
  out.stable = out.report.opt_unique && gamma < out.report.gamma_star;
  return out;
}

PreservationCheck opt_preserved_under(const Instance& instance, const Perturbation& p,
                                      const SteinerTree& opt,
                                      const EnumerationBudget& budget) {
  Instance perturbed = apply_perturbation(instance, p);
  PreservationCheck out;
  out.opt_weight = tree_weight(perturbed, opt);
  out.best_rival_weight = kInf;
  EnumerationStats stats = enumerate_canonical_trees(
      perturbed, budget, [&](const SteinerTree& t) {
        if (t.edges == opt.edges) return true;
        out.best_rival_weight = std::min(out.best_rival_weight, tree_weight(perturbed, t));
        return true;
      });
  if (!stats.exhaustive)
    throw Error(Errc::BudgetExceeded, "budget expired before all rivals were checked");
  out.optimal = !(out.best_rival_weight < out.opt_weight);
  out.unique = out.best_rival_weight > out.opt_weight + kUniqueRelTol * out.opt_weight;
  return out;
}

bool is_opt_preserved(const Instance& instance, const Perturbation& p,
                      const EnumerationBudget& budget) {
  OptResult before = brute_force_opt(instance, budget);
  PreservationCheck after = opt_preserved_under(instance, p, before.tree, budget);
  return after.optimal && after.unique;
}

}  // namespace steiner
