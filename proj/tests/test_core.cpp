#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "steiner/instance.hpp"
#include "steiner/tree.hpp"
#include "support.hpp"

using namespace steiner;
using testsupport::error_code_of;

TEST_CASE("make_edge normalizes endpoint order and refuses loops") {
  Edge e = make_edge(7, 3);
  CHECK(e.u == 3);
  CHECK(e.v == 7);
  CHECK(make_edge(3, 7) == e);
  CHECK(error_code_of([] { make_edge(5, 5); }) == Errc::InvalidArgument);
}

TEST_CASE("instance constructor rejects malformed shapes") {
  std::vector<double> ok = {0, 1, 1, 0};

  CHECK(error_code_of([&] { Instance(0, {}, {}, false, false); }) ==
        Errc::InvalidArgument);
  CHECK(error_code_of([&] { Instance(2, {0, 1}, {0, 1, 1}, false, false); }) ==
        Errc::InvalidArgument);
  // asymmetric
  CHECK(error_code_of([&] {
          Instance(2, {0, 1}, {0, 1, 2, 0}, false, false);
        }) == Errc::InvalidArgument);
  // nonzero diagonal
  CHECK(error_code_of([&] {
          Instance(2, {0, 1}, {0.5, 1, 1, 0}, false, false);
        }) == Errc::InvalidArgument);
  CHECK(error_code_of([&] { Instance(2, {0, 0}, ok, false, false); }) ==
        Errc::InvalidArgument);
  CHECK(error_code_of([&] { Instance(2, {0, 2}, ok, false, false); }) ==
        Errc::InvalidArgument);
  // coords present but shaped wrong
  CHECK(error_code_of([&] {
          Instance(2, {0, 1}, ok, false, false, {1.0, 2.0, 3.0}, 2);
        }) == Errc::InvalidArgument);
  CHECK(error_code_of([&] {
          Instance(2, {0, 1}, ok, false, false, {1.0, 2.0}, 0);
        }) == Errc::InvalidArgument);
}

TEST_CASE("instance accessors") {
  Instance inst = fixtures::star();
  CHECK(inst.size() == 4);
  CHECK(inst.terminal_count() == 3);
  CHECK(inst.terminals() == std::vector<VertexId>{0, 1, 2});
  CHECK(inst.non_terminals() == std::vector<VertexId>{3});
  CHECK(inst.is_terminal(0));
  CHECK(!inst.is_terminal(3));
  CHECK(inst.weight(0, 3) == 1.0);
  CHECK(inst.weight(3, 0) == 1.0);
  CHECK(inst.weight(make_edge(2, 0)) == 2.0);
  CHECK(inst.metric());
  CHECK(!inst.euclidean());
  CHECK(!inst.has_coords());

  // terminal list comes back sorted no matter the input order
  Instance shuffled(3, {2, 0}, std::vector<double>{0, 1, 1, 1, 0, 1, 1, 1, 0},
                    false, false);
  CHECK(shuffled.terminals() == std::vector<VertexId>{0, 2});
}

TEST_CASE("metric_closure matches an independent Dijkstra oracle") {
  // Sparse graph: a 6-cycle with one chord and one parallel edge.
  std::vector<WeightedEdge> edges = {
      {0, 1, 1.0}, {1, 2, 2.0}, {2, 3, 1.5}, {3, 4, 1.0},
      {4, 5, 2.5}, {5, 0, 1.0}, {1, 4, 0.7}, {1, 4, 0.9},  // parallel, heavier
  };
  Instance closed = metric_closure(6, {0, 2, 4}, edges);
  std::vector<double> want = testoracle::dijkstra_closure(6, edges);
  for (VertexId u = 0; u < 6; ++u)
    for (VertexId v = 0; v < 6; ++v)
      CHECK(closed.weight(u, v) == doctest::Approx(want[u * 6 + v]).epsilon(1e-15));
  CHECK(closed.metric());
  CHECK(validate(closed).ok());
  // The parallel pair collapsed to the lighter copy.
  CHECK(closed.weight(1, 4) == 0.7);
}

TEST_CASE("metric_closure is idempotent on complete metric input") {
  Instance tri = fixtures::triangle();
  std::vector<WeightedEdge> edges;
  for (VertexId u = 0; u < 3; ++u)
    for (VertexId v = u + 1; v < 3; ++v)
      edges.push_back({u, v, tri.weight(u, v)});
  Instance again = metric_closure(3, {0, 1, 2}, edges);
  for (VertexId u = 0; u < 3; ++u)
    for (VertexId v = 0; v < 3; ++v) CHECK(again.weight(u, v) == tri.weight(u, v));
}

TEST_CASE("metric_closure input errors") {
  CHECK(error_code_of([] {
          metric_closure(4, {0, 3}, {{0, 1, 1.0}, {2, 3, 1.0}});
        }) == Errc::DisconnectedGraph);
  CHECK(error_code_of([] { metric_closure(3, {0, 1}, {{0, 1, -2.0}}); }) ==
        Errc::NonPositiveWeight);
  CHECK(error_code_of([] { metric_closure(3, {0, 1}, {{0, 3, 1.0}}); }) ==
        Errc::InvalidArgument);
  CHECK(error_code_of([] { metric_closure(3, {0}, {{0, 1, 1.0}}); }) ==
        Errc::TooFewTerminals);
}

TEST_CASE("euclidean_instance computes pairwise distances and keeps coords") {
  Instance inst = euclidean_instance({{0, 0}, {3, 0}, {3, 4}}, {0, 1, 2});
  CHECK(inst.weight(0, 1) == 3.0);
  CHECK(inst.weight(1, 2) == 4.0);
  CHECK(inst.weight(0, 2) == 5.0);
  CHECK(inst.euclidean());
  CHECK(inst.metric());
  CHECK(inst.dim() == 2);
  CHECK(inst.coord(2)[0] == 3.0);
  CHECK(inst.coord(2)[1] == 4.0);
  CHECK(validate(inst).ok());

  CHECK(error_code_of([] {
          euclidean_instance({{0, 0}, {0, 0}, {1, 1}}, {0, 1});
        }) == Errc::DuplicatePoint);
  CHECK(error_code_of([] {
          euclidean_instance({{0, 0}, {1, 1, 1}}, {0, 1});
        }) == Errc::InvalidArgument);
}

TEST_CASE("validate reports semantic violations the constructor tolerates") {
  // Raw constructor happily holds a broken triangle; validate names it.
  Instance broken(3, {0, 1, 2},
                  std::vector<double>{0, 1, 3, 1, 0, 1, 3, 1, 0}, true, false);
  ValidationReport rep = validate(broken);
  REQUIRE(!rep.ok());
  CHECK(rep.violations.front().rule == "metric-triangle");

  // Same weights without the metric claim pass.
  Instance unclaimed(3, {0, 1, 2},
                     std::vector<double>{0, 1, 3, 1, 0, 1, 3, 1, 0}, false, false);
  CHECK(validate(unclaimed).ok());

  Instance lonely(2, {0}, std::vector<double>{0, 1, 1, 0}, false, false);
  ValidationReport lonely_rep = validate(lonely);
  REQUIRE(!lonely_rep.ok());
  CHECK(lonely_rep.violations.front().rule == "terminal-count");

  // Euclidean claim with a tampered weight.
  Instance skewed(2, {0, 1}, std::vector<double>{0, 2.5, 2.5, 0}, false, true,
                  {0.0, 0.0, 1.0, 0.0}, 2);
  ValidationReport skew_rep = validate(skewed);
  REQUIRE(!skew_rep.ok());
  CHECK(skew_rep.violations.front().rule == "euclidean-consistency");
}

TEST_CASE("make_tree sorts, normalizes, and rejects duplicates") {
  SteinerTree t = make_tree({{2, 1}, {0, 1}});
  CHECK(t.edges == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(error_code_of([] { make_tree({{0, 1}, {1, 0}}); }) ==
        Errc::InvalidArgument);
}

TEST_CASE("tree_weight accumulates and range-checks") {
  Instance tri = fixtures::triangle();
  SteinerTree opt = make_tree({{0, 1}, {1, 2}});
  CHECK(tree_weight(tri, opt) == 3.0);
  SteinerTree stray = make_tree({{0, 5}});
  CHECK(error_code_of([&] { tree_weight(tri, stray); }) == Errc::UnknownEdge);
}

TEST_CASE("validate_tree catches each failure mode") {
  Instance star = fixtures::star();
  auto rule_of = [&](const SteinerTree& t) {
    ValidationReport r = validate_tree(star, t);
    return r.ok() ? std::string("ok") : r.violations.front().rule;
  };

  CHECK(rule_of(make_tree({{0, 3}, {1, 3}, {2, 3}})) == "ok");
  CHECK(rule_of(make_tree({{0, 1}, {1, 2}, {0, 2}})) == "acyclic");
  CHECK(rule_of(make_tree({{0, 1}})) == "spans-terminals");
  CHECK(rule_of(make_tree({{0, 1}, {0, 2}, {1, 2}, {0, 3}})) == "acyclic");
  CHECK(rule_of(make_tree({{0, 9}})) == "edge-range");
  // Terminals all present but split across two components.
  std::vector<double> unit(16, 1.0);
  for (int i = 0; i < 4; ++i) unit[i * 4 + i] = 0.0;
  Instance path4(4, {0, 1, 2, 3}, unit, false, false);
  // Both the vertex-count invariant and connectivity fire on a split forest.
  ValidationReport split = validate_tree(path4, make_tree({{0, 1}, {2, 3}}));
  REQUIRE(!split.ok());
  bool flagged_connected = false;
  for (const auto& v : split.violations)
    if (v.rule == "connected") flagged_connected = true;
  CHECK(flagged_connected);
}

TEST_CASE("canonicalize strips non-terminal leaf chains") {
  // K4, terminals {0,1}: the path 0-2-3 dangles off vertex 0.
  std::vector<double> w(16, 1.0);
  for (int i = 0; i < 4; ++i) w[i * 4 + i] = 0.0;
  Instance inst(4, {0, 1}, w, true, false);

  SteinerTree messy = make_tree({{0, 1}, {0, 2}, {2, 3}});
  CHECK(!is_canonical(inst, messy));
  SteinerTree clean = canonicalize(inst, messy);
  CHECK(clean.edges == std::vector<Edge>{{0, 1}});
  CHECK(is_canonical(inst, clean));
  CHECK(tree_weight(inst, clean) <= tree_weight(inst, messy));
  // idempotent
  CHECK(canonicalize(inst, clean) == clean);
}

TEST_CASE("steiner vertex helpers") {
  Instance star = fixtures::star();
  SteinerTree hub = make_tree({{0, 3}, {1, 3}, {2, 3}});
  CHECK(steiner_vertices(star, hub) == std::vector<VertexId>{3});
  CHECK(!has_adjacent_steiner(star, hub));
  CHECK(tree_degrees(star, hub) == std::vector<int>{1, 1, 1, 3});

  // Two adjacent non-terminals.
  std::vector<double> w(25, 1.0);
  for (int i = 0; i < 5; ++i) w[i * 5 + i] = 0.0;
  Instance inst(5, {0, 1}, w, true, false);
  SteinerTree chain = make_tree({{0, 2}, {2, 3}, {1, 3}});
  CHECK(has_adjacent_steiner(inst, chain));
  CHECK(is_canonical(inst, chain));
}

TEST_CASE("random complete graphs: closure of a complete graph preserves "
          "shortest-path distances") {
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> dist(0.5, 3.0);
  for (int round = 0; round < 20; ++round) {
    const std::size_t n = 5 + round % 3;
    std::vector<WeightedEdge> edges;
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = u + 1; v < n; ++v)
        edges.push_back({u, v, dist(rng)});
    Instance closed = metric_closure(n, {0, 1, 2}, edges);
    std::vector<double> want = testoracle::dijkstra_closure(n, edges);
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = 0; v < n; ++v)
        CHECK(closed.weight(u, v) ==
              doctest::Approx(want[u * n + v]).epsilon(1e-12));
    CHECK(validate(closed).ok());
  }
}
