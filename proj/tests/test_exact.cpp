#include <algorithm>
#include <chrono>
#include <set>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "steiner/exact.hpp"
#include "steiner/generate.hpp"
#include "support.hpp"

using namespace steiner;
using testsupport::error_code_of;

namespace {

std::set<std::vector<Edge>> edge_sets(const std::vector<SteinerTree>& trees) {
  std::set<std::vector<Edge>> out;
  for (const auto& t : trees) out.insert(t.edges);
  return out;
}

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

TEST_CASE("count_canonical_trees closed form on hand-checked values") {
  // No internal-degree constraint: Cayley's count of labelled trees.
  CHECK(count_canonical_trees(2, 0) == 1);
  CHECK(count_canonical_trees(3, 0) == 3);
  CHECK(count_canonical_trees(4, 0) == 16);
  CHECK(count_canonical_trees(5, 0) == 125);
  // One constrained vertex: 4-vertex trees where it is internal. Of the 16,
  // it is a leaf in 9.
  CHECK(count_canonical_trees(4, 1) == 7);
  // Both middle slots pinned: only the two paths with that middle pair.
  CHECK(count_canonical_trees(4, 2) == 2);
  CHECK(count_canonical_trees(3, 1) == 1);
}

TEST_CASE("count matches the edge-subset oracle per Steiner subset size") {
  // Sum over subset sizes: C(s, k) * count(t + k, k) must equal the total
  // number of canonical trees the oracle finds.
  for (std::size_t n = 4; n <= 7; ++n) {
    std::vector<double> w(n * n, 1.0);
    for (std::size_t i = 0; i < n; ++i) w[i * n + i] = 0.0;
    const std::size_t t = 3;
    std::vector<VertexId> terms = {0, 1, 2};
    Instance inst(n, terms, w, true, false);

    std::uint64_t expect = 0;
    const std::size_t s = n - t;
    for (std::size_t k = 0; k <= s; ++k)
      expect += choose(s, k) * count_canonical_trees(
                                   static_cast<std::uint32_t>(t + k),
                                   static_cast<std::uint32_t>(k));
    CHECK(testoracle::all_canonical_trees(inst).size() == expect);

    EnumerationStats stats = enumerate_canonical_trees(
        inst, {}, [](const SteinerTree&) { return true; });
    CHECK(stats.exhaustive);
    CHECK(stats.trees_visited == expect);
  }
}

TEST_CASE("enumerator's tree set equals the oracle's tree set") {
  auto compare = [](const Instance& inst) {
    std::vector<SteinerTree> mine;
    enumerate_canonical_trees(inst, {}, [&](const SteinerTree& t) {
      mine.push_back(t);
      return true;
    });
    std::set<std::vector<Edge>> got = edge_sets(mine);
    CHECK(got.size() == mine.size());  // no duplicates
    CHECK(got == edge_sets(testoracle::all_canonical_trees(inst)));
  };

  compare(fixtures::triangle());
  compare(fixtures::star());
  compare(fixtures::two_terminal());
  compare(fixtures::detour());
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    GenSpec spec;
    spec.model = GenModel::kRandomMetric;
    spec.n = 6;
    spec.t = 3 + seed % 2;
    spec.seed = seed;
    compare(random_metric(spec));
  }
}

TEST_CASE("star fixture has exactly 10 canonical trees") {
  Instance star = fixtures::star();
  CHECK(testoracle::all_canonical_trees(star).size() == 10);
  EnumerationStats stats = enumerate_canonical_trees(
      star, {}, [](const SteinerTree&) { return true; });
  CHECK(stats.trees_visited == 10);
}

TEST_CASE("subset-size order: terminal-only trees come first") {
  Instance star = fixtures::star();
  SteinerTree first;
  enumerate_canonical_trees(star, {}, [&](const SteinerTree& t) {
    first = t;
    return false;  // stop immediately
  });
  for (const Edge& e : first.edges) {
    CHECK(star.is_terminal(e.u));
    CHECK(star.is_terminal(e.v));
  }
}

TEST_CASE("visitor stop and budget caps mark the run non-exhaustive") {
  Instance star = fixtures::star();

  EnumerationStats stopped = enumerate_canonical_trees(
      star, {}, [](const SteinerTree&) { return false; });
  CHECK(!stopped.exhaustive);
  CHECK(stopped.trees_visited == 1);

  EnumerationBudget tree_cap;
  tree_cap.max_trees = 4;
  EnumerationStats capped = enumerate_canonical_trees(
      star, tree_cap, [](const SteinerTree&) { return true; });
  CHECK(!capped.exhaustive);
  CHECK(capped.trees_visited == 4);

  // Subset-size cap 0 restricts to terminal spanning trees; for the star
  // that is the 3 spanning trees of the terminal triangle, and the run is
  // reported non-exhaustive because vertex 3 was never offered.
  EnumerationBudget no_steiner;
  no_steiner.max_steiner_subset_size = 0;
  std::uint64_t visited = 0;
  EnumerationStats trimmed =
      enumerate_canonical_trees(star, no_steiner, [&](const SteinerTree& t) {
        ++visited;
        for (const Edge& e : t.edges) CHECK(star.is_terminal(e.u));
        return true;
      });
  CHECK(visited == 3);
  CHECK(!trimmed.exhaustive);

  // The clock is polled every 64k enumeration steps, so an expired deadline
  // only shows on instances with a large tree space.
  const std::size_t big_n = 10;
  std::vector<double> unit(big_n * big_n, 1.0);
  for (std::size_t i = 0; i < big_n; ++i) unit[i * big_n + i] = 0.0;
  Instance big(big_n, {0, 1}, unit, true, false);
  EnumerationBudget expired;
  expired.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  EnumerationStats timed = enumerate_canonical_trees(
      big, expired, [](const SteinerTree&) { return true; });
  CHECK(!timed.exhaustive);
}

TEST_CASE("brute_force_opt on the hand-pinned fixtures") {
  OptResult tri = brute_force_opt(fixtures::triangle());
  CHECK(tri.weight == 3.0);
  CHECK(tri.unique);
  CHECK(tri.tree.edges == std::vector<Edge>{{0, 1}, {1, 2}});

  OptResult star = brute_force_opt(fixtures::star());
  CHECK(star.weight == 3.0);
  CHECK(star.unique);
  CHECK(star.tree.edges == std::vector<Edge>{{0, 3}, {1, 3}, {2, 3}});
  CHECK(star.trees_considered == 10);

  OptResult pair = brute_force_opt(fixtures::two_terminal());
  CHECK(pair.weight == 1.5);
  CHECK(pair.trees_considered == 1);

  OptResult fermat = brute_force_opt(fixtures::equilateral_fermat());
  CHECK(fermat.weight == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(fermat.tree.edges == std::vector<Edge>{{0, 3}, {1, 3}, {2, 3}});
}

TEST_CASE("a tied optimum clears the unique flag") {
  // Equilateral terminal triangle: three spanning trees, all weight 2.
  std::vector<double> w = {0, 1, 1, 1, 0, 1, 1, 1, 0};
  Instance inst(3, {0, 1, 2}, w, true, false);
  OptResult r = brute_force_opt(inst);
  CHECK(!r.unique);
  CHECK(r.weight == 2.0);
  // Lexicographically least among the tied optima.
  CHECK(r.tree.edges == std::vector<Edge>{{0, 1}, {0, 2}});
}

TEST_CASE("brute_force_opt refuses to answer from a truncated enumeration") {
  EnumerationBudget cap;
  cap.max_trees = 3;
  CHECK(error_code_of([&] { brute_force_opt(fixtures::star(), cap); }) ==
        Errc::BudgetExceeded);

  const std::size_t big_n = 10;
  std::vector<double> unit(big_n * big_n, 1.0);
  for (std::size_t i = 0; i < big_n; ++i) unit[i * big_n + i] = 0.0;
  Instance big(big_n, {0, 1}, unit, true, false);
  EnumerationBudget expired;
  expired.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  CHECK(error_code_of([&] { brute_force_opt(big, expired); }) ==
        Errc::BudgetExceeded);
}

TEST_CASE("brute_force_opt agrees with the naive oracle on random instances") {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    GenSpec spec;
    spec.model = GenModel::kRandomMetric;
    spec.n = 5 + seed % 3;
    spec.t = 2 + seed % 3;
    spec.seed = seed;
    Instance inst = random_metric(spec);

    testoracle::StabilityAnswer want = testoracle::naive_gamma_star(inst);
    OptResult got = brute_force_opt(inst);
    CHECK(got.weight == want.opt_weight);
    CHECK(got.unique == want.unique);
    if (got.unique) CHECK(got.tree.edges == want.opt.edges);
    CHECK(got.trees_considered == want.tree_count);
  }
}

TEST_CASE("dreyfus_wagner equals brute force across models") {
  auto agree = [](const Instance& inst) {
    OptResult brute = brute_force_opt(inst);
    DwResult dw = dreyfus_wagner(inst);
    CHECK(dw.weight == doctest::Approx(brute.weight).epsilon(1e-12));
    if (brute.unique) CHECK(dw.tree.edges == brute.tree.edges);
  };

  agree(fixtures::triangle());
  agree(fixtures::star());
  agree(fixtures::two_terminal());
  agree(fixtures::equilateral_fermat());
  agree(fixtures::detour());

  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    GenSpec spec;
    spec.seed = seed + 1000;
    spec.n = 6 + seed % 3;
    spec.t = 2 + seed % 3;
    spec.model = seed % 2 ? GenModel::kRandomMetric : GenModel::kEuclidean;
    spec.dim = 2 + seed % 2;
    Instance inst = spec.model == GenModel::kEuclidean ? random_euclidean(spec)
                                                       : random_metric(spec);
    agree(inst);
  }
}

TEST_CASE("dreyfus_wagner handles stars too large to enumerate") {
  // 11 spokes: ~2^10 terminal subsets is fine for the DP, hopeless for
  // canonical-tree enumeration.
  Instance big = fixtures::spoke_star(11);
  DwResult dw = dreyfus_wagner(big);
  CHECK(dw.weight == doctest::Approx(11.0).epsilon(1e-12));
  CHECK(dw.tree.edges.size() == 11);
  for (const Edge& e : dw.tree.edges) CHECK(e.v == 11);
}

TEST_CASE("dreyfus_wagner refuses too many terminals") {
  const std::size_t n = 17;
  std::vector<double> w(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i) w[i * n + i] = 0.0;
  std::vector<VertexId> terms;
  for (std::size_t i = 0; i < n; ++i) terms.push_back(static_cast<VertexId>(i));
  Instance inst(n, terms, w, true, false);
  CHECK(error_code_of([&] { dreyfus_wagner(inst); }) == Errc::TooManyTerminals);
}
