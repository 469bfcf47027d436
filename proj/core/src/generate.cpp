#include "steiner/generate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "steiner/error.hpp"
#include "steiner/exact.hpp"
#include "steiner/rng.hpp"
#include "steiner/tree.hpp"

namespace steiner {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr char kRngId[] = "mt19937_64/u53 v1";

void check_spec(const GenSpec& spec) {
  if (spec.t < 2 || spec.t > spec.n)
    throw Error(Errc::InvalidArgument, "need 2 <= t <= n");
  if (spec.model == GenModel::kEuclidean && spec.dim < 1)
    throw Error(Errc::InvalidArgument, "dim must be at least 1");
  if (!(spec.scale > 0.0) || !std::isfinite(spec.scale))
    throw Error(Errc::InvalidArgument, "scale must be positive");
  if (spec.target_gamma && !(*spec.target_gamma > 1.0 && *spec.target_gamma < 2.0))
    throw Error(Errc::InvalidArgument, "target_gamma must lie in (1, 2)");
}

std::vector<VertexId> leading_terminals(std::size_t t) {
  std::vector<VertexId> out(t);
  for (std::size_t i = 0; i < t; ++i) out[i] = static_cast<VertexId>(i);
  return out;
}

double unit_draw(std::mt19937_64& rng) { return u53(rng()); }

bool coincides(const std::vector<std::vector<double>>& pts,
               const std::vector<double>& p, std::size_t upto) {
  for (std::size_t i = 0; i < upto; ++i)
    if (pts[i] == p) return true;
  return false;
}

std::string fmt_gamma(double g) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", g);
  return buf;
}

}  // namespace

Instance random_euclidean(const GenSpec& spec) {
  check_spec(spec);
  if (spec.model != GenModel::kEuclidean)
    throw Error(Errc::InvalidArgument, "spec.model is not euclidean");

  std::uint64_t state = spec.seed;
  std::mt19937_64 rng(splitmix64(state));
  std::vector<std::vector<double>> pts(spec.n, std::vector<double>(spec.dim));
  std::uint32_t redraws = 0;
  for (std::size_t i = 0; i < spec.n; ++i) {
    for (;;) {
      for (std::size_t d = 0; d < spec.dim; ++d)
        pts[i][d] = unit_draw(rng) * spec.scale;
      if (!coincides(pts, pts[i], i)) break;
      if (++redraws > spec.max_tries)
        throw Error(Errc::DuplicatePoint, "could not separate sampled points");
    }
  }
  return euclidean_instance(pts, leading_terminals(spec.t));
}

Instance random_metric(const GenSpec& spec) {
  check_spec(spec);
  if (spec.model != GenModel::kRandomMetric)
    throw Error(Errc::InvalidArgument, "spec.model is not random-metric");

  std::uint64_t state = spec.seed;
  std::mt19937_64 rng(splitmix64(state));
  std::vector<WeightedEdge> edges;
  edges.reserve(spec.n * (spec.n - 1) / 2);
  for (std::size_t u = 0; u < spec.n; ++u)
    for (std::size_t v = u + 1; v < spec.n; ++v) {
      double w = 0.0;
      while (!(w > 0.0)) w = unit_draw(rng) * spec.scale;
      edges.push_back(
          WeightedEdge{static_cast<VertexId>(u), static_cast<VertexId>(v), w});
    }
  return metric_closure(spec.n, leading_terminals(spec.t), edges);
}

std::pair<Instance, StabilityReport> stable_instance_search(const GenSpec& spec) {
  check_spec(spec);
  if (!spec.target_gamma)
    throw Error(Errc::InvalidArgument, "search needs a target_gamma");

  std::uint64_t state = spec.seed;
  double best = 0.0;
  for (std::uint32_t attempt = 0; attempt < spec.max_tries; ++attempt) {
    GenSpec sub = spec;
    sub.seed = splitmix64(state);
    Instance inst = spec.model == GenModel::kEuclidean ? random_euclidean(sub)
                                                       : random_metric(sub);
    StabilityReport rep = gamma_star(inst);
    if (rep.opt_unique && rep.gamma_star >= *spec.target_gamma)
      return {std::move(inst), std::move(rep)};
    if (std::isfinite(rep.gamma_star)) best = std::max(best, rep.gamma_star);
  }
  throw Error(Errc::SearchExhausted,
              "no instance reached gamma_star " + fmt_gamma(*spec.target_gamma) + " in " +
                  std::to_string(spec.max_tries) + " tries; best " + fmt_gamma(best));
}

Instance planted_no_steiner(const GenSpec& spec) {
  check_spec(spec);
  if (spec.model != GenModel::kEuclidean)
    throw Error(Errc::PreconditionViolated, "planting works on the euclidean model");

  const double sep = 0.2 * spec.scale;
  const double side = std::sqrt(static_cast<double>(spec.dim));
  // Far enough that any tree through a candidate costs more than the whole
  // terminal spanning tree.
  const double offset = (static_cast<double>(spec.t) + 3.0) * spec.scale * side;

  std::uint64_t state = spec.seed;
  for (std::uint32_t attempt = 0; attempt < spec.max_tries; ++attempt) {
    std::mt19937_64 rng(splitmix64(state));
    std::vector<std::vector<double>> pts(spec.n, std::vector<double>(spec.dim));
    bool placed = true;
    for (std::size_t i = 0; i < spec.t && placed; ++i) {
      std::uint32_t redraws = 0;
      for (;;) {
        for (std::size_t d = 0; d < spec.dim; ++d)
          pts[i][d] = unit_draw(rng) * spec.scale;
        double nearest = kInf;
        for (std::size_t j = 0; j < i; ++j) {
          double s = 0.0;
          for (std::size_t d = 0; d < spec.dim; ++d) {
            double diff = pts[i][d] - pts[j][d];
            s += diff * diff;
          }
          nearest = std::min(nearest, std::sqrt(s));
        }
        if (nearest >= sep) break;
        if (++redraws > 200) {
          placed = false;
          break;
        }
      }
    }
    if (placed) {
      for (std::size_t i = spec.t; i < spec.n; ++i) {
        for (std::size_t d = 0; d < spec.dim; ++d)
          pts[i][d] = offset + unit_draw(rng) * spec.scale;
        if (coincides(pts, pts[i], i)) placed = false;
      }
    }
    if (placed) {
      Instance inst = euclidean_instance(pts, leading_terminals(spec.t));
      OptResult opt = brute_force_opt(inst);
      if (steiner_vertices(inst, opt.tree).empty()) {
        if (!spec.target_gamma) return inst;
        StabilityReport rep = gamma_star(inst);
        if (rep.gamma_star >= *spec.target_gamma) return inst;
      }
    }
  }
  throw Error(Errc::SearchExhausted,
              "no planted layout validated in " + std::to_string(spec.max_tries) + " tries");
}

std::vector<std::string> gen_provenance(const GenSpec& spec) {
  std::vector<std::string> out;
  out.push_back(std::string("generator rng ") + kRngId);
  out.push_back(std::string("model ") +
                (spec.model == GenModel::kEuclidean
                     ? "euclidean dim=" + std::to_string(spec.dim)
                     : "random-metric"));
  out.push_back("n=" + std::to_string(spec.n) + " t=" + std::to_string(spec.t) +
                " seed=" + std::to_string(spec.seed) + " scale=" + fmt_gamma(spec.scale));
  if (spec.target_gamma) out.push_back("target_gamma=" + fmt_gamma(*spec.target_gamma));
  return out;
}

std::string corpus_path(const GenSpec& spec) {
  std::string model = spec.model == GenModel::kEuclidean ? "euclidean" : "random-metric";
  std::string gamma = spec.target_gamma ? fmt_gamma(*spec.target_gamma) : "any";
  return model + "/" + gamma + "/" + std::to_string(spec.seed) + ".stp";
}

}  // namespace steiner
