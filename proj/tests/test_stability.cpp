#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "steiner/generate.hpp"
#include "steiner/stability.hpp"
#include "support.hpp"

using namespace steiner;
using testsupport::error_code_of;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Perturbation identity_perturbation(const Instance& inst, double gamma = 1.0) {
  Perturbation p;
  p.gamma = gamma;
  p.multipliers.assign(inst.size() * inst.size(), 1.0);
  return p;
}

}  // namespace

TEST_CASE("margins of the hand-pinned fixtures, oracle first") {
  // The independent oracle fixes each value; the library must reproduce it.
  struct Row {
    Instance inst;
    double want;
  };
  const Row rows[] = {
      {fixtures::triangle(), 1.45},
      {fixtures::star(), 4.0 / 3.0},
      {fixtures::detour(), 1.9},
      {fixtures::spoke_star(5), 1.99 * 4.0 / 5.0},
  };
  for (const Row& row : rows) {
    testoracle::StabilityAnswer oracle = testoracle::naive_gamma_star(row.inst);
    CHECK(oracle.gamma_star == doctest::Approx(row.want).epsilon(1e-12));
    CHECK(oracle.unique);

    StabilityReport rep = gamma_star(row.inst);
    CHECK(rep.gamma_star == oracle.gamma_star);
    CHECK(rep.opt_unique);
    CHECK(rep.exhaustive);
    CHECK(rep.opt.edges == oracle.opt.edges);
    CHECK(rep.witness.edges == oracle.witness.edges);
  }
}

TEST_CASE("a rival-free instance has an infinite margin and no witness") {
  StabilityReport rep = gamma_star(fixtures::two_terminal());
  CHECK(rep.gamma_star == kInf);
  CHECK(rep.opt_unique);
  CHECK(rep.witness.edges.empty());
  CHECK(rep.trees_considered == 1);
}

TEST_CASE("a tied optimum pins the margin to exactly 1") {
  std::vector<double> w = {0, 1, 1, 1, 0, 1, 1, 1, 0};
  Instance inst(3, {0, 1, 2}, w, true, false);
  StabilityReport rep = gamma_star(inst);
  CHECK(!rep.opt_unique);
  CHECK(rep.gamma_star == 1.0);
  CHECK(!rep.witness.edges.empty());
  CHECK(tree_weight(inst, rep.witness) == rep.opt_weight);
}

TEST_CASE("library margin matches the naive oracle on random instances") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenSpec spec;
    spec.seed = seed * 7 + 11;
    spec.n = 5 + seed % 3;
    spec.t = 2 + seed % 3;
    spec.model = seed % 2 ? GenModel::kEuclidean : GenModel::kRandomMetric;
    Instance inst = spec.model == GenModel::kEuclidean ? random_euclidean(spec)
                                                       : random_metric(spec);

    testoracle::StabilityAnswer want = testoracle::naive_gamma_star(inst);
    StabilityReport got = gamma_star(inst);
    CHECK(got.gamma_star == want.gamma_star);
    CHECK(got.opt_unique == want.unique);
    CHECK(got.opt.edges == want.opt.edges);
    CHECK(got.opt_weight == want.opt_weight);
    if (std::isfinite(want.gamma_star)) CHECK(got.witness.edges == want.witness.edges);
    CHECK(got.trees_considered == want.tree_count);
  }
}

TEST_CASE("margin is invariant under uniform weight scaling") {
  Instance tri = fixtures::triangle();
  const double factor = 3.7;
  std::vector<double> w(9);
  for (VertexId u = 0; u < 3; ++u)
    for (VertexId v = 0; v < 3; ++v) w[u * 3 + v] = tri.weight(u, v) * factor;
  Instance scaled(3, {0, 1, 2}, w, true, false);
  CHECK(gamma_star(scaled).gamma_star ==
        doctest::Approx(gamma_star(tri).gamma_star).epsilon(1e-14));
}

TEST_CASE("truncated enumeration is flagged, certify refuses it") {
  EnumerationBudget cap;
  cap.max_trees = 4;
  StabilityReport rep = gamma_star(fixtures::star(), cap);
  CHECK(!rep.exhaustive);

  CHECK(error_code_of([&] { certify(fixtures::star(), 1.2, cap); }) ==
        Errc::BudgetExceeded);
}

TEST_CASE("certify verdicts around the triangle's margin") {
  // gamma* = 1.45: stable strictly below, unstable at and above.
  CHECK(certify(fixtures::triangle(), 1.0).stable);
  CHECK(certify(fixtures::triangle(), 1.2).stable);
  CHECK(certify(fixtures::triangle(), 1.4499).stable);
  CHECK(!certify(fixtures::triangle(), 1.45).stable);
  CHECK(!certify(fixtures::triangle(), 1.6).stable);

  // gamma = 1 asks only for uniqueness, which a tie fails.
  std::vector<double> w = {0, 1, 1, 1, 0, 1, 1, 1, 0};
  Instance tie(3, {0, 1, 2}, w, true, false);
  CHECK(!certify(tie, 1.0).stable);

  CHECK(error_code_of([] { certify(fixtures::triangle(), 0.9); }) ==
        Errc::InvalidArgument);
  CHECK(error_code_of([] {
          certify(fixtures::triangle(), std::numeric_limits<double>::infinity());
        }) == Errc::InvalidArgument);
}

TEST_CASE("apply_perturbation scales weights and validates the table") {
  Instance tri = fixtures::triangle();

  Perturbation p = identity_perturbation(tri, 1.5);
  p.multipliers[0 * 3 + 1] = 1.5;
  p.multipliers[1 * 3 + 0] = 1.5;
  Instance out = apply_perturbation(tri, p);
  CHECK(out.weight(0, 1) == 1.5);
  CHECK(out.weight(1, 2) == 2.0);
  CHECK(out.weight(0, 2) == 2.9);
  // Scaling preserves neither claim, so both flags drop.
  CHECK(!out.metric());
  CHECK(!out.euclidean());

  Perturbation bad = identity_perturbation(tri, 1.5);
  bad.multipliers[1] = 1.7;  // above gamma
  bad.multipliers[3] = 1.7;
  CHECK(error_code_of([&] { apply_perturbation(tri, bad); }) ==
        Errc::MultiplierOutOfRange);

  Perturbation below = identity_perturbation(tri, 1.5);
  below.multipliers[1] = 0.9;
  below.multipliers[3] = 0.9;
  CHECK(error_code_of([&] { apply_perturbation(tri, below); }) ==
        Errc::MultiplierOutOfRange);

  Perturbation askew = identity_perturbation(tri, 1.5);
  askew.multipliers[1] = 1.2;  // (0,1) only, transpose left at 1.0
  CHECK(error_code_of([&] { apply_perturbation(tri, askew); }) ==
        Errc::InvalidArgument);

  Perturbation diag = identity_perturbation(tri, 1.5);
  diag.multipliers[0] = 1.1;
  CHECK(error_code_of([&] { apply_perturbation(tri, diag); }) ==
        Errc::MultiplierOutOfRange);

  Perturbation short_table;
  short_table.gamma = 1.5;
  short_table.multipliers.assign(4, 1.0);
  CHECK(error_code_of([&] { apply_perturbation(tri, short_table); }) ==
        Errc::InvalidArgument);

  Perturbation low_gamma = identity_perturbation(tri, 0.5);
  CHECK(error_code_of([&] { apply_perturbation(tri, low_gamma); }) ==
        Errc::MultiplierOutOfRange);
}

TEST_CASE("perturbation keeps coordinates for reference") {
  Instance fermat = fixtures::equilateral_fermat();
  Instance out = apply_perturbation(fermat, identity_perturbation(fermat, 1.2));
  REQUIRE(out.has_coords());
  CHECK(out.coord(3)[0] == fermat.coord(3)[0]);
  CHECK(!out.euclidean());
}

TEST_CASE("worst_case_perturbation inflates exactly the abandoned edges") {
  Instance tri = fixtures::triangle();
  SteinerTree opt = make_tree({{0, 1}, {1, 2}});
  SteinerTree rival = make_tree({{0, 1}, {0, 2}});

  Perturbation p = worst_case_perturbation(tri, opt, rival, 1.4);
  CHECK(p.multipliers[1 * 3 + 2] == 1.4);  // opt-only edge (1,2)
  CHECK(p.multipliers[0 * 3 + 1] == 1.0);  // shared edge untouched
  CHECK(p.multipliers[0 * 3 + 2] == 1.0);  // rival-only edge untouched

  CHECK(error_code_of([&] {
          worst_case_perturbation(tri, opt, opt, 1.4);
        }) == Errc::SameTree);
}

TEST_CASE("preservation flips exactly at the margin") {
  // Against the witness rival, the adversary wins at gamma >= gamma* and
  // loses below; at gamma = gamma* the tie already breaks preservation.
  Instance tri = fixtures::triangle();
  StabilityReport rep = gamma_star(tri);
  REQUIRE(rep.gamma_star == 1.45);

  auto preserved_at = [&](double gamma) {
    Perturbation p = worst_case_perturbation(tri, rep.opt, rep.witness, gamma);
    return is_opt_preserved(tri, p);
  };
  CHECK(preserved_at(1.40));
  CHECK(preserved_at(1.4499));
  CHECK(!preserved_at(1.45));
  CHECK(!preserved_at(1.50));
}

TEST_CASE("preservation details under the identity perturbation") {
  Instance tri = fixtures::triangle();
  SteinerTree opt = make_tree({{0, 1}, {1, 2}});
  PreservationCheck chk = opt_preserved_under(tri, identity_perturbation(tri), opt);
  CHECK(chk.optimal);
  CHECK(chk.unique);
  CHECK(chk.opt_weight == 3.0);
  CHECK(chk.best_rival_weight == 3.9);

  CHECK(is_opt_preserved(tri, identity_perturbation(tri)));

  // A tied instance is never preserved, not even by the identity.
  std::vector<double> w = {0, 1, 1, 1, 0, 1, 1, 1, 0};
  Instance tie(3, {0, 1, 2}, w, true, false);
  CHECK(!is_opt_preserved(tie, identity_perturbation(tie)));
}

TEST_CASE("the worst case dominates random perturbations") {
  // Among all tables bounded by gamma, the one built by
  // worst_case_perturbation minimizes the rival's disadvantage.
  Instance tri = fixtures::triangle();
  StabilityReport rep = gamma_star(tri);
  const double gamma = 1.4;

  Perturbation worst = worst_case_perturbation(tri, rep.opt, rep.witness, gamma);
  Instance worst_inst = apply_perturbation(tri, worst);
  double worst_margin =
      tree_weight(worst_inst, rep.witness) - tree_weight(worst_inst, rep.opt);

  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> mult(1.0, gamma);
  for (int round = 0; round < 40; ++round) {
    Perturbation p = identity_perturbation(tri, gamma);
    for (VertexId u = 0; u < 3; ++u)
      for (VertexId v = u + 1; v < 3; ++v) {
        double m = mult(rng);
        p.multipliers[u * 3 + v] = m;
        p.multipliers[v * 3 + u] = m;
      }
    Instance pi = apply_perturbation(tri, p);
    double margin = tree_weight(pi, rep.witness) - tree_weight(pi, rep.opt);
    CHECK(margin >= worst_margin - 1e-12);
  }
}
