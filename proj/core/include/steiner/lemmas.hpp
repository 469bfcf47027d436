#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "steiner/exact.hpp"
#include "steiner/instance.hpp"
#include "steiner/tree.hpp"

namespace steiner {

enum class LemmaId {
  kSteinerDegreeLower,
  kNearestNeighbor,
  kAdjacentEdgeProps,
  kClose,
  kFar,
  kCloseIff,
  kFan,
  kAngleLower,
  kSteinerDegreeUpper,
};

const char* lemma_name(LemmaId id);

/// One failed claim. lhs and rhs are the two sides of the decisive inequality
/// in the orientation the claim states it; slack = rhs - lhs, so its sign
/// tells which way the comparison went. For membership claims the inequality
/// is the hypothesis that triggered the check.
struct LemmaViolation {
  std::vector<VertexId> tuple;  // vertices in claim order
  std::string part;             // sub-claim id when a check has several
  double lhs = 0;
  double rhs = 0;
  double slack = 0;  // rhs - lhs
};

struct LemmaReport {
  LemmaId lemma = LemmaId::kSteinerDegreeLower;
  double gamma = 0;
  bool applicable = true;        // preconditions met; no violations otherwise
  std::string gate;              // why not applicable, empty when it is
  std::vector<LemmaViolation> violations;
  std::uint64_t tuples_checked = 0;
  std::vector<std::string> notes;  // informational, e.g. both fan averages
  bool ok() const { return violations.empty(); }
};

/// One line per violation: lemma gamma tuple lhs rhs slack, tab-separated.
/// Vertex ids are printed with the given base (1 for user-facing output).
std::string serialize(const LemmaReport& report, std::uint32_t index_base = 1);

/// Every non-terminal vertex of opt must have degree strictly above
/// 2/(2-gamma). Gate: gamma in (1,2).
LemmaReport check_steiner_degree_lower(const Instance& instance, const SteinerTree& opt,
                                       double gamma);

/// If a and b are each other's unique nearest neighbor within V(opt), the
/// edge ab must be in opt. No gamma gate; assumes opt is the unique optimum.
LemmaReport check_nearest_neighbor_edge(const Instance& instance, const SteinerTree& opt);

/// For every 2-path a-b-c in opt: (1) w_ac > gamma*max(w_ab,w_bc);
/// (2) (2/gamma)*w_ac > w_ab + w_bc; (3) (gamma-1)*w_ab < w_bc and
/// (gamma-1)*w_bc < w_ab. One violation per failed inequality. Gate: gamma>1.
LemmaReport check_adjacent_edge_props(const Instance& instance, const SteinerTree& opt,
                                      double gamma);

/// Taking H = {ab} for each opt edge and both endpoint roles: any vertex c of
/// opt outside {a,b} with w_ca <= gamma*(gamma-1)*w_ab must have ca in opt.
/// Gate: gamma > 1.
LemmaReport check_close_lemma(const Instance& instance, const SteinerTree& opt, double gamma);

/// For each opt edge ab and any instance vertex c with w_ca >= gamma*w_ab,
/// the edge ca must not be in opt. Gate: gamma > (1+sqrt(5))/2.
LemmaReport check_far_lemma(const Instance& instance, const SteinerTree& opt, double gamma);

/// For each opt edge ab and vertex c of opt outside {a,b}:
/// w_ca < w_ab/(gamma-1) holds exactly when ca is in opt; both directions
/// are checked. Gate: gamma*(gamma-1)^2 > 1.
LemmaReport check_close2_iff(const Instance& instance, const SteinerTree& opt, double gamma);

/// Terminal component fans relative to a partial forest H (a subset of opt's
/// edges): center a is a non-terminal outside V(H), the leaves are one vertex
/// from each of at least two distinct terminal components. A fan whose
/// average weight (sum/(m-1)) is minimal among all fans, lies below every
/// non-H edge joining two terminal components, and whose edge weights stay
/// within a factor 1/(gamma-1) of each other must be a subgraph of opt.
/// Gate: gamma > 1.755. Throws PreconditionViolated when opt contains two
/// adjacent non-terminals or H is not a subset of opt's edges. The sum/m
/// average is reported in notes alongside, since the source inequalities can
/// be read either way; selection uses sum/(m-1), the definition that keeps
/// the claim sound.
LemmaReport check_fan_lemma(const Instance& instance, const SteinerTree& opt, double gamma,
                            const std::vector<Edge>& partial = {});

/// At every non-terminal s of opt, the angle between edges to two of its
/// terminal neighbors exceeds 2*arcsin(gamma/2). Setting all_neighbors checks
/// every neighbor pair, not just terminal ones. Gate: euclidean instance and
/// gamma in (1,2). Throws MissingCoordinates when coordinates are absent.
LemmaReport check_angle_lower(const Instance& instance, const SteinerTree& opt, double gamma,
                              bool all_neighbors = false);

/// Every non-terminal vertex of opt has degree at most -2/(2-gamma^2).
/// Gate: euclidean instance and gamma > sqrt(2).
LemmaReport check_steiner_degree_upper(const Instance& instance, const SteinerTree& opt,
                                       double gamma);

/// Maximum number of rays from a point with pairwise angles strictly greater
/// than theta: floor(-1/cos(theta)). Requires theta > pi/2, else
/// ThetaOutOfRange. Values are clamped to 10^15 as theta approaches pi/2.
std::uint64_t max_packing_count(double theta);

/// The gamma at which the Steiner degree lower and upper bounds cross,
/// (sqrt(17)-1)/2: above it a stable optimum uses no Steiner vertex at all.
double no_steiner_threshold();

/// 2*arcsin(gamma/2), the angle bound used by check_angle_lower. Requires
/// 0 <= gamma <= 2.
double angle_lower_threshold(double gamma);

/// Weight of the terminal-only minimum spanning tree divided by the exact
/// optimum weight; always >= 1. Propagates BudgetExceeded from the exact
/// solve.
double steiner_ratio(const Instance& instance, const EnumerationBudget& budget = {});

/// Runs every checker above (fan with the given partial forest). Reports come
/// back in LemmaId order.
std::vector<LemmaReport> run_all_checkers(const Instance& instance, const SteinerTree& opt,
                                          double gamma, const std::vector<Edge>& partial = {});

}  // namespace steiner
