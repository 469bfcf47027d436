#include "steiner/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <tuple>

#include "steiner/error.hpp"
#include "steiner/rng.hpp"
#include "steiner/stp.hpp"

namespace steiner {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Matches the fan lemma's applicability gate.
constexpr double kFanGammaGate = 1.755;

struct Dsu {
  std::vector<VertexId> root;
  explicit Dsu(std::size_t n) : root(n) {
    std::iota(root.begin(), root.end(), VertexId{0});
  }
  VertexId find(VertexId x) {
    while (root[x] != x) {
      root[x] = root[root[x]];
      x = root[x];
    }
    return x;
  }
  void unite(VertexId a, VertexId b) { root[find(a)] = find(b); }
};

}  // namespace

SteinerTree mst_terminals(const Instance& instance) {
  const auto& terms = instance.terminals();
  if (terms.size() < 2)
    throw Error(Errc::TooFewTerminals, "spanning tree needs at least two terminals");

  std::vector<WeightedEdge> pool;
  pool.reserve(terms.size() * (terms.size() - 1) / 2);
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j)
      pool.push_back(WeightedEdge{terms[i], terms[j], instance.weight(terms[i], terms[j])});
  std::sort(pool.begin(), pool.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return std::tie(a.w, a.u, a.v) < std::tie(b.w, b.u, b.v);
  });

  Dsu dsu(instance.size());
  std::vector<Edge> edges;
  edges.reserve(terms.size() - 1);
  for (const WeightedEdge& e : pool) {
    if (dsu.find(e.u) == dsu.find(e.v)) continue;
    dsu.unite(e.u, e.v);
    edges.push_back(make_edge(e.u, e.v));
    if (edges.size() + 1 == terms.size()) break;
  }
  return make_tree(std::move(edges));
}

namespace {

struct FanPick {
  bool found = false;
  double avg = kInf;
  VertexId center = 0;
  std::vector<VertexId> leaves;  // one per chosen component
};

// Minimum-average fan over all fresh non-terminal centers: one leaf from
// each component of some subset of size >= 2, every edge within a factor
// spread_cap of the others, average taken as sum/(m-1). Ties fall to the
// smaller (center, leaves) pair.
FanPick cheapest_fan(const Instance& instance, const std::vector<std::vector<VertexId>>& comps,
                     const std::vector<char>& in_forest, double spread_cap) {
  FanPick best;
  std::uint64_t seen = 0;
  VertexId center = 0;
  std::vector<VertexId> cur;
  double sum = 0, min_w = kInf, max_w = 0;

  auto consider = [&]() {
    if (cur.size() < 2) return;
    if (++seen > 5'000'000)
      throw Error(Errc::BudgetExceeded, "too many fans to enumerate");
    if (!(max_w <= spread_cap * min_w)) return;
    double avg = sum / static_cast<double>(cur.size() - 1);
    if (avg < best.avg || (avg == best.avg &&
                           std::tie(center, cur) < std::tie(best.center, best.leaves))) {
      best.found = true;
      best.avg = avg;
      best.center = center;
      best.leaves = cur;
    }
  };
  auto descend = [&](auto&& self, std::size_t ci) -> void {
    if (ci == comps.size()) {
      consider();
      return;
    }
    self(self, ci + 1);
    for (VertexId b : comps[ci]) {
      double w = instance.weight(center, b);
      double s_min = min_w, s_max = max_w;
      cur.push_back(b);
      sum += w;
      min_w = std::min(min_w, w);
      max_w = std::max(max_w, w);
      self(self, ci + 1);
      cur.pop_back();
      sum -= w;
      min_w = s_min;
      max_w = s_max;
    }
  };

  for (VertexId a = 0; a < instance.size(); ++a) {
    if (instance.is_terminal(a) || in_forest[a]) continue;
    center = a;
    cur.clear();
    sum = 0;
    min_w = kInf;
    max_w = 0;
    descend(descend, 0);
  }
  return best;
}

}  // namespace

SteinerTree fan_greedy(const Instance& instance, double gamma) {
  if (!(gamma > kFanGammaGate))
    throw Error(Errc::PreconditionViolated, "fan growth is only justified for gamma > 1.755");
  if (instance.terminal_count() < 2)
    throw Error(Errc::TooFewTerminals, "nothing to connect");

  const std::size_t n = instance.size();
  const double spread_cap = 1.0 / (gamma - 1.0);
  Dsu dsu(n);
  std::vector<char> in_forest(n, 0);
  std::vector<Edge> committed;

  for (;;) {
    // Components of the forest so far; untouched terminals count as
    // singletons, untouched non-terminals belong to nothing.
    std::vector<std::vector<VertexId>> comps;
    std::vector<std::size_t> comp_of(n, static_cast<std::size_t>(-1));
    std::vector<std::size_t> comp_of_root(n, static_cast<std::size_t>(-1));
    for (VertexId v = 0; v < n; ++v) {
      if (!in_forest[v] && !instance.is_terminal(v)) continue;
      VertexId r = dsu.find(v);
      if (comp_of_root[r] == static_cast<std::size_t>(-1)) {
        comp_of_root[r] = comps.size();
        comps.emplace_back();
      }
      comp_of[v] = comp_of_root[r];
      comps[comp_of_root[r]].push_back(v);
    }
    if (comps.size() < 2) break;

    // Cheapest terminal-terminal edge between two components.
    double edge_w = kInf;
    Edge edge_pick{0, 0};
    for (VertexId u : instance.terminals())
      for (VertexId v : instance.terminals()) {
        if (v <= u || comp_of[u] == comp_of[v]) continue;
        double w = instance.weight(u, v);
        if (w < edge_w) {
          edge_w = w;
          edge_pick = Edge{u, v};
        }
      }

    FanPick fan = cheapest_fan(instance, comps, in_forest, spread_cap);

    if (fan.found && fan.avg < edge_w) {
      in_forest[fan.center] = 1;
      for (VertexId b : fan.leaves) {
        committed.push_back(make_edge(fan.center, b));
        in_forest[b] = 1;
        dsu.unite(fan.center, b);
      }
    } else if (edge_w < kInf) {
      committed.push_back(make_edge(edge_pick.u, edge_pick.v));
      in_forest[edge_pick.u] = in_forest[edge_pick.v] = 1;
      dsu.unite(edge_pick.u, edge_pick.v);
    } else {
      throw Error(Errc::NoFeasibleStep, "no edge and no fan can extend the forest");
    }
  }
  return canonicalize(instance, make_tree(std::move(committed)));
}

std::pair<Instance, std::vector<VertexId>> contract_edge(const Instance& instance, Edge edge) {
  const std::size_t n = instance.size();
  Edge e = make_edge(edge.u, edge.v);
  if (e.v >= n)
    throw Error(Errc::IndexOutOfRange, "contracted edge endpoint " + std::to_string(e.v + 1));

  const std::size_t m = n - 1;
  std::vector<VertexId> old_to_new(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (x == e.v)
      old_to_new[x] = e.u;
    else
      old_to_new[x] = static_cast<VertexId>(x > e.v ? x - 1 : x);
  }

  // Min rule over the parallel pair created by the merge; all other weights
  // carry over unchanged.
  std::vector<double> w(m * m, kInf);
  for (std::size_t i = 0; i < m; ++i) w[i * m + i] = 0.0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      VertexId a = old_to_new[x], b = old_to_new[y];
      if (a == b) continue;
      double cand = instance.weight(static_cast<VertexId>(x), static_cast<VertexId>(y));
      double& slot = w[std::size_t(a) * m + b];
      slot = std::min(slot, cand);
      w[std::size_t(b) * m + a] = slot;
    }

  std::vector<VertexId> terms;
  for (VertexId t : instance.terminals()) terms.push_back(old_to_new[t]);
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());

  bool metric = instance.metric();
  if (metric && m >= 3) {
    // The min rule usually survives, but merging distant endpoints can dent
    // a triangle; repair by closing over shortest paths.
    constexpr double kRelTol = 1e-9;
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i)
      for (std::size_t j = i + 1; j < m && ok; ++j)
        for (std::size_t k = 0; k < m; ++k) {
          if (k == i || k == j) continue;
          if (w[i * m + j] > (w[i * m + k] + w[k * m + j]) * (1.0 + kRelTol)) {
            ok = false;
            break;
          }
        }
    if (!ok)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j)
            w[i * m + j] = std::min(w[i * m + j], w[i * m + k] + w[k * m + j]);
  }

  return {Instance(m, std::move(terms), std::move(w), metric, false), std::move(old_to_new)};
}

InnerOracle exact_oracle() {
  return InnerOracle{"exact", [](const Instance& inst, double) {
                       return brute_force_opt(inst).tree;
                     }};
}

InnerOracle mst_oracle() {
  return InnerOracle{"mst", [](const Instance& inst, double) { return mst_terminals(inst); }};
}

InnerOracle fuzzed_exact_oracle(std::uint64_t seed) {
  return InnerOracle{
      "fuzzed-exact", [seed](const Instance& inst, double eps) {
        OptResult opt = brute_force_opt(inst);
        double bound = (1.0 + eps) * opt.weight;
        // Reservoir pick among every canonical tree inside the bound; the
        // stream is keyed to the instance so repeat calls are reproducible
        // and independent of call order.
        std::uint64_t key = seed ^ stp_digest(inst);
        std::mt19937_64 rng(splitmix64(key));
        SteinerTree pick = opt.tree;
        std::uint64_t qualifying = 0;
        enumerate_canonical_trees(inst, {}, [&](const SteinerTree& t) {
          if (tree_weight(inst, t) <= bound) {
            ++qualifying;
            if (rng() % qualifying == 0) pick = t;
          }
          return true;
        });
        return pick;
      }};
}

ContractResult contract_solve(const Instance& instance, double gamma,
                              const InnerOracle& oracle, std::size_t base_size,
                              bool verify_oracle) {
  if (!(gamma > 1.0) || !std::isfinite(gamma))
    throw Error(Errc::InvalidArgument, "contraction argument needs gamma > 1");
  if (base_size < 1)
    throw Error(Errc::InvalidArgument, "base_size must be at least 1");
  if (!oracle.solve)
    throw Error(Errc::InvalidArgument, "oracle has no callable");
  if (instance.terminal_count() < 2)
    throw Error(Errc::TooFewTerminals, "nothing to connect");

  ContractionTrace trace{instance, {}, {}, oracle.label};
  Instance cur = instance;
  std::vector<VertexId> to_cur(instance.size());
  std::iota(to_cur.begin(), to_cur.end(), VertexId{0});

  while (cur.size() > base_size && cur.terminal_count() >= 2) {
    double eps = (gamma - 1.0) / (2.0 * static_cast<double>(cur.size()));
    SteinerTree answer = oracle.solve(cur, eps);
    if (!tree_is_valid(cur, answer) || !is_canonical(cur, answer))
      throw Error(Errc::OracleContractViolated,
                  "oracle \"" + oracle.label + "\" returned a malformed tree");
    if (verify_oracle) {
      OptResult exact = brute_force_opt(cur);
      double got = tree_weight(cur, answer);
      if (got > (1.0 + eps) * exact.weight * (1.0 + 1e-12))
        throw Error(Errc::OracleContractViolated,
                    "oracle \"" + oracle.label + "\" weight " + std::to_string(got) +
                        " exceeds (1+eps) * " + std::to_string(exact.weight));
    }

    // Heaviest edge of the answer; the sorted edge order makes the first
    // maximum the canonical tie-break.
    Edge heavy = answer.edges.front();
    double heavy_w = cur.weight(heavy);
    for (const Edge& e : answer.edges)
      if (cur.weight(e) > heavy_w) {
        heavy = e;
        heavy_w = cur.weight(e);
      }

    // Cheapest original-id pair mapping onto the contracted edge.
    Edge orig_pick{0, 0};
    double orig_w = kInf;
    for (VertexId x = 0; x < instance.size(); ++x) {
      if (to_cur[x] != heavy.u) continue;
      for (VertexId y = 0; y < instance.size(); ++y) {
        if (to_cur[y] != heavy.v) continue;
        Edge cand = make_edge(x, y);
        double wxy = instance.weight(cand);
        if (wxy < orig_w || (wxy == orig_w && cand < orig_pick)) {
          orig_w = wxy;
          orig_pick = cand;
        }
      }
    }

    auto [next, old_to_new] = contract_edge(cur, heavy);
    trace.steps.push_back(
        ContractionStep{heavy, orig_pick, heavy_w, cur.size(), old_to_new});
    for (VertexId& c : to_cur) c = old_to_new[c];
    cur = std::move(next);
  }

  if (cur.terminal_count() >= 2) trace.base_tree = brute_force_opt(cur).tree;
  ContractResult out{expand_solution(trace, trace.base_tree), std::move(trace)};
  return out;
}

SteinerTree expand_solution(const ContractionTrace& trace, const SteinerTree& base_tree) {
  const Instance& inst = trace.original;
  std::size_t level_size = inst.size();
  std::vector<VertexId> to_cur(level_size);
  std::iota(to_cur.begin(), to_cur.end(), VertexId{0});

  std::vector<Edge> edges;
  for (const ContractionStep& step : trace.steps) {
    if (step.size_before != level_size || step.old_to_new.size() != level_size ||
        step.contracted.u >= level_size || step.contracted.v >= level_size)
      throw Error(Errc::InconsistentTrace, "contraction step does not fit its level");
    for (VertexId target : step.old_to_new)
      if (target >= level_size - 1)
        throw Error(Errc::InconsistentTrace, "id map points beyond the next level");
    Edge mapped = make_edge(to_cur[step.contracted_original.u],
                            to_cur[step.contracted_original.v]);
    if (mapped != make_edge(step.contracted.u, step.contracted.v))
      throw Error(Errc::InconsistentTrace, "recorded original edge maps elsewhere");
    edges.push_back(make_edge(step.contracted_original.u, step.contracted_original.v));
    for (VertexId& c : to_cur) c = step.old_to_new[c];
    --level_size;
  }

  std::vector<std::vector<VertexId>> preimage(level_size);
  for (VertexId x = 0; x < inst.size(); ++x) preimage[to_cur[x]].push_back(x);

  for (const Edge& e : base_tree.edges) {
    if (e.u >= level_size || e.v >= level_size)
      throw Error(Errc::InconsistentTrace, "base tree uses a vertex beyond the final level");
    Edge pick{0, 0};
    double pick_w = kInf;
    for (VertexId x : preimage[e.u])
      for (VertexId y : preimage[e.v]) {
        Edge cand = make_edge(x, y);
        double wxy = inst.weight(cand);
        if (wxy < pick_w || (wxy == pick_w && cand < pick)) {
          pick_w = wxy;
          pick = cand;
        }
      }
    edges.push_back(pick);
  }

  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw Error(Errc::InconsistentTrace, "expansion produced a duplicate edge");
  SteinerTree tree = make_tree(std::move(edges));
  if (!tree_is_valid(inst, tree))
    throw Error(Errc::InconsistentTrace,
                "expanded edges do not form a Steiner tree of the original instance");
  return canonicalize(inst, tree);
}

}  // namespace steiner
