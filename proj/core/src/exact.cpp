#include "steiner/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "steiner/error.hpp"

namespace steiner {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Decodes a Pruefer-style sequence over local ids 0..m-1 into tree edges.
/// Linear-time: ptr sweeps for the smallest available leaf, and a leaf freed
/// below ptr is consumed immediately.
void decode_sequence(const std::vector<VertexId>& seq, std::uint32_t m,
                     std::vector<std::uint32_t>& deg, std::vector<Edge>& out) {
  deg.assign(m, 1);
  for (VertexId s : seq) ++deg[s];
  std::uint32_t ptr = 0;
  while (deg[ptr] != 1) ++ptr;
  std::uint32_t leaf = ptr;
  out.clear();
  for (VertexId s : seq) {
    out.push_back(Edge{std::min<VertexId>(leaf, s), std::max<VertexId>(leaf, s)});
    if (--deg[s] == 1 && s < ptr) {
      leaf = s;
    } else {
      ++ptr;
      while (deg[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  out.push_back(Edge{std::min<VertexId>(leaf, m - 1), std::max<VertexId>(leaf, m - 1)});
}

struct Enumerator {
  const Instance& instance;
  const EnumerationBudget& budget;
  const TreeVisitor& visit;
  EnumerationStats stats;
  bool stopped = false;

  std::vector<VertexId> verts;        // global ids of the current vertex set
  std::vector<char> steiner_local;    // per local id
  std::vector<VertexId> seq;          // current sequence
  std::vector<std::uint32_t> occ;     // occurrences per local id
  std::vector<std::uint32_t> deg;     // decode scratch
  std::vector<Edge> local_edges;
  SteinerTree scratch;
  std::uint64_t steps_since_clock = 0;

  bool out_of_time() {
    if (!budget.deadline) return false;
    if (++steps_since_clock < 65536) return false;
    steps_since_clock = 0;
    return std::chrono::steady_clock::now() >= *budget.deadline;
  }

  /// Returns false when enumeration must halt.
  bool emit() {
    const std::uint32_t m = static_cast<std::uint32_t>(verts.size());
    decode_sequence(seq, m, deg, local_edges);
    scratch.edges.clear();
    for (const Edge& e : local_edges)
      scratch.edges.push_back(make_edge(verts[e.u], verts[e.v]));
    std::sort(scratch.edges.begin(), scratch.edges.end());
    ++stats.trees_visited;
    if (!visit(scratch)) {
      stopped = true;
      stats.exhaustive = false;
      return false;
    }
    if (budget.max_trees && stats.trees_visited >= budget.max_trees) {
      stats.exhaustive = false;
      return false;
    }
    return true;
  }

  bool emit_single_edge(VertexId a, VertexId b) {
    scratch.edges.clear();
    scratch.edges.push_back(make_edge(a, b));
    ++stats.trees_visited;
    if (!visit(scratch)) {
      stopped = true;
      stats.exhaustive = false;
      return false;
    }
    if (budget.max_trees && stats.trees_visited >= budget.max_trees) {
      stats.exhaustive = false;
      return false;
    }
    return true;
  }

  /// Walks every sequence for the current vertex set, skipping those in which
  /// some non-terminal never occurs (its degree would be one). Occurrence
  /// counts update incrementally as the sequence steps in lexicographic
  /// order; `missing` tracks how many non-terminals are absent.
  bool run_subset() {
    const std::uint32_t m = static_cast<std::uint32_t>(verts.size());
    if (m == 2) return emit_single_edge(verts[0], verts[1]);
    const std::uint32_t len = m - 2;
    seq.assign(len, 0);
    occ.assign(m, 0);
    occ[0] = len;
    std::uint32_t missing = 0;
    for (std::uint32_t i = 0; i < m; ++i)
      if (steiner_local[i] && occ[i] == 0) ++missing;

    for (;;) {
      if (missing == 0 && !emit()) return false;
      if (out_of_time()) {
        stats.exhaustive = false;
        return false;
      }
      // Increment the sequence as a base-m odometer.
      std::uint32_t i = len;
      while (i > 0) {
        --i;
        VertexId a = seq[i];
        if (--occ[a] == 0 && steiner_local[a]) ++missing;
        if (a + 1 < m) {
          seq[i] = a + 1;
          if (occ[a + 1]++ == 0 && steiner_local[a + 1]) --missing;
          break;
        }
        seq[i] = 0;
        if (occ[0]++ == 0 && steiner_local[0]) --missing;
        if (i == 0) return true;  // wrapped: subset done
      }
    }
  }
};

}  // namespace

EnumerationStats enumerate_canonical_trees(const Instance& instance,
                                           const EnumerationBudget& budget,
                                           const TreeVisitor& visit) {
  if (instance.terminal_count() < 2)
    throw Error(Errc::TooFewTerminals, "enumeration needs at least two terminals");

  Enumerator en{instance, budget, visit, {}};
  const std::vector<VertexId>& terminals = instance.terminals();
  const std::vector<VertexId> pool = instance.non_terminals();
  const std::uint32_t cap =
      budget.max_steiner_subset_size < 0
          ? static_cast<std::uint32_t>(pool.size())
          : std::min<std::uint32_t>(static_cast<std::uint32_t>(budget.max_steiner_subset_size),
                                    static_cast<std::uint32_t>(pool.size()));
  if (cap < pool.size()) en.stats.exhaustive = false;

  std::vector<std::uint32_t> pick;
  for (std::uint32_t k = 0; k <= cap; ++k) {
    pick.resize(k);
    for (std::uint32_t i = 0; i < k; ++i) pick[i] = i;
    for (;;) {
      // Merge terminals with the chosen non-terminals, both already sorted.
      en.verts.clear();
      en.steiner_local.clear();
      std::size_t ti = 0, pi = 0;
      while (ti < terminals.size() || pi < k) {
        bool take_term = pi == k || (ti < terminals.size() && terminals[ti] < pool[pick[pi]]);
        if (take_term) {
          en.verts.push_back(terminals[ti++]);
          en.steiner_local.push_back(0);
        } else {
          en.verts.push_back(pool[pick[pi++]]);
          en.steiner_local.push_back(1);
        }
      }
      if (!en.run_subset()) return en.stats;

      // Next k-combination in lexicographic order.
      if (k == 0) break;
      std::uint32_t j = k;
      while (j > 0 && pick[j - 1] == pool.size() - (k - (j - 1))) --j;
      if (j == 0) break;
      ++pick[j - 1];
      for (std::uint32_t i = j; i < k; ++i) pick[i] = pick[i - 1] + 1;
    }
  }
  return en.stats;
}

std::uint64_t count_canonical_trees(std::uint32_t vertex_count, std::uint32_t steiner_count) {
  if (vertex_count < 2 || vertex_count > 26)
    throw Error(Errc::InvalidArgument, "vertex count outside 2..26");
  if (steiner_count > vertex_count)
    throw Error(Errc::InvalidArgument, "more constrained vertices than vertices");
  const std::uint32_t m = vertex_count, k = steiner_count;
  // Inclusion-exclusion over which constrained vertices are absent from the
  // Pruefer sequence: sum over j of (-1)^j C(k,j) (m-j)^(m-2).
  __int128 total = 0;
  __int128 binom = 1;
  for (std::uint32_t j = 0; j <= k; ++j) {
    __int128 pw = 1;
    for (std::uint32_t e = 0; e + 2 < m; ++e) pw *= (m - j);
    total += (j % 2 == 0 ? binom * pw : -binom * pw);
    binom = binom * (k - j) / (j + 1);
  }
  if (total < 0) throw Error(Errc::InvalidArgument, "count underflow");
  return static_cast<std::uint64_t>(total);
}

OptResult brute_force_opt(const Instance& instance, const EnumerationBudget& budget) {
  OptResult best;
  bool have_best = false;
  double second_w = kInf;

  EnumerationStats stats = enumerate_canonical_trees(
      instance, budget, [&](const SteinerTree& t) {
        double w = tree_weight(instance, t);
        if (!have_best || w < best.weight ||
            (w == best.weight && t.edges < best.tree.edges)) {
          if (have_best) second_w = std::min(second_w, best.weight);
          best.tree = t;
          best.weight = w;
          have_best = true;
        } else {
          second_w = std::min(second_w, w);
        }
        return true;
      });

  if (!stats.exhaustive)
    throw Error(Errc::BudgetExceeded, "enumeration budget hit before optimality was certain");
  if (!have_best) throw Error(Errc::DisconnectedGraph, "no candidate tree found");
  best.unique = second_w > best.weight + kUniqueRelTol * best.weight;
  best.trees_considered = stats.trees_visited;
  return best;
}

namespace {

enum class DwTag : std::uint8_t { kNone, kLeaf, kGrow, kMerge };

struct DwChoice {
  DwTag tag = DwTag::kNone;
  std::uint32_t aux = 0;  // grow: predecessor vertex; merge: submask
};

}  // namespace

DwResult dreyfus_wagner(const Instance& instance) {
  const std::uint32_t n = instance.size();
  const std::vector<VertexId>& ts = instance.terminals();
  const std::uint32_t t = static_cast<std::uint32_t>(ts.size());
  if (t < 2) throw Error(Errc::TooFewTerminals, "needs at least two terminals");
  if (t > kMaxDwTerminals)
    throw Error(Errc::TooManyTerminals,
                std::to_string(t) + " terminals exceeds the limit of " +
                    std::to_string(kMaxDwTerminals));

  const std::uint32_t bits = t - 1;  // ts[t-1] is the root
  const std::uint32_t full = (1u << bits) - 1;
  const VertexId root = ts[t - 1];
  std::vector<double> dp(std::size_t(full + 1) * n, kInf);
  std::vector<DwChoice> choice(std::size_t(full + 1) * n);
  auto at = [n](std::uint32_t mask, std::uint32_t v) { return std::size_t(mask) * n + v; };

  for (std::uint32_t i = 0; i < bits; ++i) {
    dp[at(1u << i, ts[i])] = 0.0;
    choice[at(1u << i, ts[i])] = DwChoice{DwTag::kLeaf, i};
  }

  std::vector<char> done(n);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    double* row = &dp[at(mask, 0)];
    DwChoice* ch = &choice[at(mask, 0)];
    const std::uint32_t low = mask & (~mask + 1);
    if (mask != low) {
      // Merge two complementary terminal groups at a shared vertex. Only
      // submasks containing the lowest bit, so each split is tried once.
      for (std::uint32_t sub = (mask - 1) & mask; sub; sub = (sub - 1) & mask) {
        if (!(sub & low)) continue;
        const double* a = &dp[at(sub, 0)];
        const double* b = &dp[at(mask ^ sub, 0)];
        for (std::uint32_t v = 0; v < n; ++v) {
          double cand = a[v] + b[v];
          if (cand < row[v]) {
            row[v] = cand;
            ch[v] = DwChoice{DwTag::kMerge, sub};
          }
        }
      }
    }
    // Grow along graph edges: dense Dijkstra over the row. Only strictly
    // improving relaxations record a predecessor, so backtracking cannot
    // cycle.
    std::fill(done.begin(), done.end(), 0);
    for (std::uint32_t round = 0; round < n; ++round) {
      std::uint32_t u = n;
      double bestv = kInf;
      for (std::uint32_t v = 0; v < n; ++v)
        if (!done[v] && row[v] < bestv) {
          bestv = row[v];
          u = v;
        }
      if (u == n) break;
      done[u] = 1;
      for (std::uint32_t v = 0; v < n; ++v) {
        if (done[v]) continue;
        double cand = row[u] + instance.weight(u, v);
        if (cand < row[v]) {
          row[v] = cand;
          ch[v] = DwChoice{DwTag::kGrow, u};
        }
      }
    }
  }

  if (!std::isfinite(dp[at(full, root)]))
    throw Error(Errc::DisconnectedGraph, "terminals unreachable");

  // Backtrack the choice tags into an edge set.
  std::set<Edge> edges;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack{{full, root}};
  while (!stack.empty()) {
    auto [mask, v] = stack.back();
    stack.pop_back();
    const DwChoice c = choice[at(mask, v)];
    switch (c.tag) {
      case DwTag::kLeaf:
        break;
      case DwTag::kGrow:
        edges.insert(make_edge(c.aux, v));
        stack.emplace_back(mask, c.aux);
        break;
      case DwTag::kMerge:
        stack.emplace_back(c.aux, v);
        stack.emplace_back(mask ^ c.aux, v);
        break;
      case DwTag::kNone:
        throw Error(Errc::InconsistentTrace, "no decision recorded for a reached state");
    }
  }

  DwResult out;
  out.tree = canonicalize(instance, make_tree(std::vector<Edge>(edges.begin(), edges.end())));
  ValidationReport rep = validate_tree(instance, out.tree);
  if (!rep.ok())
    throw Error(Errc::InconsistentTrace, "reconstructed tree invalid: " + rep.violations[0].detail);
  out.weight = tree_weight(instance, out.tree);
  return out;
}

}  // namespace steiner
