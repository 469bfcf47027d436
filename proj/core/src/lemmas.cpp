#include "steiner/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "steiner/error.hpp"
#include "steiner/solvers.hpp"

namespace steiner {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFanGammaGate = 1.755;

bool in_tree(const SteinerTree& t, VertexId a, VertexId b) {
  return std::binary_search(t.edges.begin(), t.edges.end(), make_edge(a, b));
}

std::vector<std::vector<VertexId>> adjacency(const SteinerTree& t, std::size_t n) {
  std::vector<std::vector<VertexId>> adj(n);
  for (const Edge& e : t.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

LemmaReport gated(LemmaId id, double gamma, std::string why) {
  LemmaReport rep;
  rep.lemma = id;
  rep.gamma = gamma;
  rep.applicable = false;
  rep.gate = std::move(why);
  return rep;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

const char* lemma_name(LemmaId id) {
  switch (id) {
    case LemmaId::kSteinerDegreeLower: return "steiner-degree-lower";
    case LemmaId::kNearestNeighbor: return "nearest-neighbor";
    case LemmaId::kAdjacentEdgeProps: return "adjacent-edge-props";
    case LemmaId::kClose: return "close";
    case LemmaId::kFar: return "far";
    case LemmaId::kCloseIff: return "close2-iff";
    case LemmaId::kFan: return "fan";
    case LemmaId::kAngleLower: return "angle-lower";
    case LemmaId::kSteinerDegreeUpper: return "steiner-degree-upper";
  }
  return "?";
}

std::string serialize(const LemmaReport& report, std::uint32_t index_base) {
  std::string out;
  for (const LemmaViolation& v : report.violations) {
    out += lemma_name(report.lemma);
    if (!v.part.empty()) {
      out += ':';
      out += v.part;
    }
    out += '\t';
    out += fmt(report.gamma);
    out += '\t';
    for (std::size_t i = 0; i < v.tuple.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(v.tuple[i] + index_base);
    }
    out += '\t';
    out += fmt(v.lhs);
    out += '\t';
    out += fmt(v.rhs);
    out += '\t';
    out += fmt(v.slack);
    out += '\n';
  }
  return out;
}

LemmaReport check_steiner_degree_lower(const Instance& instance, const SteinerTree& opt,
                                       double gamma) {
  if (!(gamma > 1.0 && gamma < 2.0))
    return gated(LemmaId::kSteinerDegreeLower, gamma, "needs gamma in (1,2)");
  LemmaReport rep;
  rep.lemma = LemmaId::kSteinerDegreeLower;
  rep.gamma = gamma;
  const double threshold = 2.0 / (2.0 - gamma);
  std::vector<int> deg = tree_degrees(instance, opt);
  for (VertexId s : steiner_vertices(instance, opt)) {
    ++rep.tuples_checked;
    double d = deg[s];
    if (!(d > threshold))
      rep.violations.push_back(LemmaViolation{{s}, "", d, threshold, threshold - d});
  }
  return rep;
}

LemmaReport check_nearest_neighbor_edge(const Instance& instance, const SteinerTree& opt) {
  LemmaReport rep;
  rep.lemma = LemmaId::kNearestNeighbor;
  rep.gamma = 0;
  const std::vector<VertexId> verts = tree_vertices(opt);
  const std::size_t k = verts.size();
  // nn[i] = index of the unique nearest other tree vertex, or k on a tie.
  std::vector<std::size_t> nn(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    double best = kInf;
    std::size_t arg = k;
    bool tie = false;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      double w = instance.weight(verts[i], verts[j]);
      if (w < best) {
        best = w;
        arg = j;
        tie = false;
      } else if (w == best) {
        tie = true;
      }
    }
    nn[i] = tie ? k : arg;
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      if (nn[i] != j || nn[j] != i) continue;
      ++rep.tuples_checked;
      if (!in_tree(opt, verts[i], verts[j])) {
        double w = instance.weight(verts[i], verts[j]);
        rep.violations.push_back(
            LemmaViolation{{verts[i], verts[j]}, "membership", w, w, 0.0});
      }
    }
  return rep;
}

LemmaReport check_adjacent_edge_props(const Instance& instance, const SteinerTree& opt,
                                      double gamma) {
  if (!(gamma > 1.0))
    return gated(LemmaId::kAdjacentEdgeProps, gamma, "needs gamma > 1");
  LemmaReport rep;
  rep.lemma = LemmaId::kAdjacentEdgeProps;
  rep.gamma = gamma;
  const auto adj = adjacency(opt, instance.size());
  for (VertexId b = 0; b < instance.size(); ++b) {
    const auto& nb = adj[b];
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        VertexId a = nb[i], c = nb[j];
        ++rep.tuples_checked;
        const double wab = instance.weight(a, b);
        const double wbc = instance.weight(b, c);
        const double wac = instance.weight(a, c);
        std::vector<VertexId> tuple{a, b, c};
        double rhs1 = gamma * std::max(wab, wbc);
        if (!(wac > rhs1))
          rep.violations.push_back(LemmaViolation{tuple, "1", wac, rhs1, rhs1 - wac});
        double lhs2 = (2.0 / gamma) * wac;
        double rhs2 = wab + wbc;
        if (!(lhs2 > rhs2))
          rep.violations.push_back(LemmaViolation{tuple, "2", lhs2, rhs2, rhs2 - lhs2});
        double lhs3a = (gamma - 1.0) * wab;
        if (!(lhs3a < wbc))
          rep.violations.push_back(LemmaViolation{tuple, "3a", lhs3a, wbc, wbc - lhs3a});
        double lhs3b = (gamma - 1.0) * wbc;
        if (!(lhs3b < wab))
          rep.violations.push_back(LemmaViolation{tuple, "3b", lhs3b, wab, wab - lhs3b});
      }
  }
  return rep;
}

LemmaReport check_close_lemma(const Instance& instance, const SteinerTree& opt, double gamma) {
  if (!(gamma > 1.0)) return gated(LemmaId::kClose, gamma, "needs gamma > 1");
  LemmaReport rep;
  rep.lemma = LemmaId::kClose;
  rep.gamma = gamma;
  const std::vector<VertexId> verts = tree_vertices(opt);
  const double factor = gamma * (gamma - 1.0);
  for (const Edge& e : opt.edges) {
    for (int orient = 0; orient < 2; ++orient) {
      VertexId a = orient ? e.v : e.u;
      VertexId b = orient ? e.u : e.v;
      double bound = factor * instance.weight(a, b);
      for (VertexId c : verts) {
        if (c == a || c == b) continue;
        ++rep.tuples_checked;
        double wca = instance.weight(c, a);
        if (wca <= bound && !in_tree(opt, c, a))
          rep.violations.push_back(
              LemmaViolation{{a, b, c}, "membership", wca, bound, bound - wca});
      }
    }
  }
  return rep;
}

LemmaReport check_far_lemma(const Instance& instance, const SteinerTree& opt, double gamma) {
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  if (!(gamma > golden))
    return gated(LemmaId::kFar, gamma, "needs gamma > (1+sqrt(5))/2");
  LemmaReport rep;
  rep.lemma = LemmaId::kFar;
  rep.gamma = gamma;
  for (const Edge& e : opt.edges) {
    for (int orient = 0; orient < 2; ++orient) {
      VertexId a = orient ? e.v : e.u;
      VertexId b = orient ? e.u : e.v;
      double bound = gamma * instance.weight(a, b);
      for (VertexId c = 0; c < instance.size(); ++c) {
        if (c == a || c == b) continue;
        ++rep.tuples_checked;
        double wca = instance.weight(c, a);
        if (wca >= bound && in_tree(opt, c, a))
          rep.violations.push_back(
              LemmaViolation{{a, b, c}, "membership", wca, bound, bound - wca});
      }
    }
  }
  return rep;
}

LemmaReport check_close2_iff(const Instance& instance, const SteinerTree& opt, double gamma) {
  if (!(gamma * (gamma - 1.0) * (gamma - 1.0) > 1.0))
    return gated(LemmaId::kCloseIff, gamma, "needs gamma*(gamma-1)^2 > 1");
  LemmaReport rep;
  rep.lemma = LemmaId::kCloseIff;
  rep.gamma = gamma;
  const std::vector<VertexId> verts = tree_vertices(opt);
  for (const Edge& e : opt.edges) {
    for (int orient = 0; orient < 2; ++orient) {
      VertexId a = orient ? e.v : e.u;
      VertexId b = orient ? e.u : e.v;
      double bound = instance.weight(a, b) / (gamma - 1.0);
      for (VertexId c : verts) {
        if (c == a || c == b) continue;
        ++rep.tuples_checked;
        double wca = instance.weight(c, a);
        bool below = wca < bound;
        bool member = in_tree(opt, c, a);
        if (below && !member)
          rep.violations.push_back(
              LemmaViolation{{a, b, c}, "forward", wca, bound, bound - wca});
        else if (member && !below)
          rep.violations.push_back(
              LemmaViolation{{a, b, c}, "reverse", wca, bound, bound - wca});
      }
    }
  }
  return rep;
}

namespace {

struct FanCandidate {
  VertexId center = 0;
  std::vector<VertexId> leaves;
  double sum = 0;
  double min_w = kInf;
  double max_w = 0;
};

}  // namespace

LemmaReport check_fan_lemma(const Instance& instance, const SteinerTree& opt, double gamma,
                            const std::vector<Edge>& partial) {
  if (!(gamma > kFanGammaGate))
    return gated(LemmaId::kFan, gamma, "needs gamma > 1.755");
  if (has_adjacent_steiner(instance, opt))
    throw Error(Errc::PreconditionViolated, "optimal tree has two adjacent non-terminals");
  for (const Edge& e : partial)
    if (!std::binary_search(opt.edges.begin(), opt.edges.end(), make_edge(e.u, e.v)))
      throw Error(Errc::PreconditionViolated, "partial forest edge not in the optimal tree");

  LemmaReport rep;
  rep.lemma = LemmaId::kFan;
  rep.gamma = gamma;

  const std::size_t n = instance.size();
  // Terminal components: connected components of the partial forest, plus
  // every terminal it does not touch as a singleton.
  std::vector<VertexId> root(n);
  for (std::size_t v = 0; v < n; ++v) root[v] = static_cast<VertexId>(v);
  auto find = [&root](VertexId x) {
    while (root[x] != x) {
      root[x] = root[root[x]];
      x = root[x];
    }
    return x;
  };
  for (const Edge& e : partial) root[find(e.u)] = find(e.v);

  std::vector<char> in_forest(n, 0);
  for (const Edge& e : partial) in_forest[e.u] = in_forest[e.v] = 1;

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp_of(n, kNone);
  std::vector<std::vector<VertexId>> comps;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!in_forest[v] && !instance.is_terminal(v)) continue;
    VertexId r = find(v);
    // Index components by their root on first sight.
    std::size_t idx = kNone;
    for (std::size_t i = 0; i < comps.size(); ++i)
      if (find(comps[i][0]) == r) {
        idx = i;
        break;
      }
    if (idx == kNone) {
      idx = comps.size();
      comps.emplace_back();
    }
    comps[idx].push_back(v);
    comp_of[v] = idx;
  }

  if (comps.size() < 2) {
    rep.notes.push_back("fewer than two terminal components; no fans exist");
    return rep;
  }

  // Cheapest non-forest edge joining two different terminal components.
  double min_cross = kInf;
  for (std::uint32_t u = 0; u < n; ++u) {
    if (comp_of[u] == kNone) continue;
    for (std::uint32_t v = u + 1; v < n; ++v) {
      if (comp_of[v] == kNone || comp_of[v] == comp_of[u]) continue;
      min_cross = std::min(min_cross, instance.weight(u, v));
    }
  }

  // Enumerate every fan exactly: a non-terminal center outside the forest
  // and one leaf from each component of some subset of size >= 2. Keep only
  // the fans of globally minimal average weight, sum/(m-1).
  double min_avg = kInf;
  std::vector<FanCandidate> best;
  std::uint64_t fans_seen = 0;
  FanCandidate cur;
  auto descend = [&](auto&& self, std::size_t ci) -> void {
    if (ci == comps.size()) {
      if (cur.leaves.size() < 2) return;
      ++fans_seen;
      if (fans_seen > 5'000'000)
        throw Error(Errc::BudgetExceeded, "too many fans to enumerate");
      double avg = cur.sum / static_cast<double>(cur.leaves.size() - 1);
      if (avg < min_avg) {
        min_avg = avg;
        best.clear();
      }
      if (avg == min_avg) best.push_back(cur);
      return;
    }
    self(self, ci + 1);  // skip this component
    for (VertexId b : comps[ci]) {
      double w = instance.weight(cur.center, b);
      FanCandidate saved = cur;
      cur.leaves.push_back(b);
      cur.sum += w;
      cur.min_w = std::min(cur.min_w, w);
      cur.max_w = std::max(cur.max_w, w);
      self(self, ci + 1);
      cur = saved;
    }
  };
  for (std::uint32_t a = 0; a < n; ++a) {
    if (instance.is_terminal(a) || in_forest[a]) continue;
    cur = FanCandidate{};
    cur.center = a;
    descend(descend, 0);
  }
  rep.tuples_checked = fans_seen;

  const double spread_cap = 1.0 / (gamma - 1.0);
  for (const FanCandidate& f : best) {
    if (!(f.sum / (f.leaves.size() - 1) < min_cross)) continue;  // bullet 1
    if (!(f.max_w <= spread_cap * f.min_w)) continue;            // bullet 3
    double avg = f.sum / (f.leaves.size() - 1);
    double alt = f.sum / f.leaves.size();
    rep.notes.push_back("selected fan at " + std::to_string(f.center + 1) + ": avg " +
                        fmt(avg) + ", per-edge mean " + fmt(alt) + ", cheapest crossing edge " +
                        fmt(min_cross));
    bool inside = true;
    for (VertexId b : f.leaves)
      if (!in_tree(opt, f.center, b)) inside = false;
    if (!inside) {
      std::vector<VertexId> tuple{f.center};
      tuple.insert(tuple.end(), f.leaves.begin(), f.leaves.end());
      rep.violations.push_back(
          LemmaViolation{tuple, "membership", avg, min_cross, min_cross - avg});
    }
  }
  return rep;
}

LemmaReport check_angle_lower(const Instance& instance, const SteinerTree& opt, double gamma,
                              bool all_neighbors) {
  if (!instance.euclidean())
    return gated(LemmaId::kAngleLower, gamma, "needs a Euclidean instance");
  if (!(gamma > 1.0 && gamma < 2.0))
    return gated(LemmaId::kAngleLower, gamma, "needs gamma in (1,2)");
  if (!instance.has_coords())
    throw Error(Errc::MissingCoordinates, "euclidean instance without coordinates");

  LemmaReport rep;
  rep.lemma = LemmaId::kAngleLower;
  rep.gamma = gamma;
  const double threshold = angle_lower_threshold(gamma);
  const auto adj = adjacency(opt, instance.size());
  for (VertexId s : steiner_vertices(instance, opt)) {
    std::vector<VertexId> around;
    for (VertexId v : adj[s])
      if (all_neighbors || instance.is_terminal(v)) around.push_back(v);
    auto cs = instance.coord(s);
    for (std::size_t i = 0; i < around.size(); ++i)
      for (std::size_t j = i + 1; j < around.size(); ++j) {
        ++rep.tuples_checked;
        auto ca = instance.coord(around[i]);
        auto cb = instance.coord(around[j]);
        double dot = 0, na = 0, nb = 0;
        for (std::size_t d = 0; d < cs.size(); ++d) {
          double xa = ca[d] - cs[d], xb = cb[d] - cs[d];
          dot += xa * xb;
          na += xa * xa;
          nb += xb * xb;
        }
        double denom = std::sqrt(na) * std::sqrt(nb);
        double cosv = denom > 0 ? std::clamp(dot / denom, -1.0, 1.0) : 1.0;
        double angle = std::acos(cosv);
        if (!(angle > threshold))
          rep.violations.push_back(LemmaViolation{
              {around[i], s, around[j]}, "", angle, threshold, threshold - angle});
      }
  }
  return rep;
}

LemmaReport check_steiner_degree_upper(const Instance& instance, const SteinerTree& opt,
                                       double gamma) {
  if (!instance.euclidean())
    return gated(LemmaId::kSteinerDegreeUpper, gamma, "needs a Euclidean instance");
  if (!(gamma > std::numbers::sqrt2))
    return gated(LemmaId::kSteinerDegreeUpper, gamma, "needs gamma > sqrt(2)");
  LemmaReport rep;
  rep.lemma = LemmaId::kSteinerDegreeUpper;
  rep.gamma = gamma;
  const double bound = -2.0 / (2.0 - gamma * gamma);
  std::vector<int> deg = tree_degrees(instance, opt);
  for (VertexId s : steiner_vertices(instance, opt)) {
    ++rep.tuples_checked;
    double d = deg[s];
    if (!(d <= bound))
      rep.violations.push_back(LemmaViolation{{s}, "", d, bound, bound - d});
  }
  return rep;
}

std::uint64_t max_packing_count(double theta) {
  if (!(theta > std::numbers::pi / 2.0))
    throw Error(Errc::ThetaOutOfRange, "theta must exceed pi/2");
  double c = std::cos(theta);
  if (!(c < 0.0)) throw Error(Errc::ThetaOutOfRange, "cos(theta) not negative");
  double v = -1.0 / c;
  constexpr double kCap = 1e15;
  if (v >= kCap) return static_cast<std::uint64_t>(kCap);
  // Nudge absorbs the last-ulp error of cos at exact thresholds like 2*pi/3.
  return static_cast<std::uint64_t>(std::floor(v + 1e-9));
}

double no_steiner_threshold() { return (std::sqrt(17.0) - 1.0) / 2.0; }

double angle_lower_threshold(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 2.0))
    throw Error(Errc::InvalidArgument, "gamma outside [0,2]");
  return 2.0 * std::asin(gamma / 2.0);
}

double steiner_ratio(const Instance& instance, const EnumerationBudget& budget) {
  SteinerTree mst = mst_terminals(instance);
  OptResult opt = brute_force_opt(instance, budget);
  return tree_weight(instance, mst) / opt.weight;
}

std::vector<LemmaReport> run_all_checkers(const Instance& instance, const SteinerTree& opt,
                                          double gamma, const std::vector<Edge>& partial) {
  std::vector<LemmaReport> out;
  out.push_back(check_steiner_degree_lower(instance, opt, gamma));
  out.push_back(check_nearest_neighbor_edge(instance, opt));
  out.push_back(check_adjacent_edge_props(instance, opt, gamma));
  out.push_back(check_close_lemma(instance, opt, gamma));
  out.push_back(check_far_lemma(instance, opt, gamma));
  out.push_back(check_close2_iff(instance, opt, gamma));
  try {
    out.push_back(check_fan_lemma(instance, opt, gamma, partial));
  } catch (const Error& e) {
    if (e.code() != Errc::PreconditionViolated) throw;
    out.push_back(gated(LemmaId::kFan, gamma, e.what()));
  }
  out.push_back(check_angle_lower(instance, opt, gamma));
  out.push_back(check_steiner_degree_upper(instance, opt, gamma));
  return out;
}

}  // namespace steiner
