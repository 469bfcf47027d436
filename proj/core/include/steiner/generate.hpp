#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "steiner/instance.hpp"
#include "steiner/stability.hpp"

namespace steiner {

enum class GenModel { kEuclidean, kRandomMetric };

/// Everything a generator run depends on. Identical specs produce identical
/// instances, bit for bit.
struct GenSpec {
  GenModel model = GenModel::kEuclidean;
  std::size_t dim = 2;  // euclidean only
  std::size_t n = 6;
  std::size_t t = 4;  // terminals are ids 0..t-1
  std::uint64_t seed = 0;
  std::optional<double> target_gamma;  // stability goal for the searches
  std::uint32_t max_tries = 10000;
  double scale = 1.0;
};

/// n points uniform in [0, scale]^dim. Coinciding points are redrawn; if the
/// redraw budget runs out the call fails with DuplicatePoint.
Instance random_euclidean(const GenSpec& spec);

/// Uniform complete-graph weights pushed through the metric closure.
Instance random_metric(const GenSpec& spec);

/// Rejection-samples the base model until gamma_star reaches
/// spec.target_gamma, returning the instance with its certificate. Throws
/// SearchExhausted after max_tries, reporting the best margin seen.
std::pair<Instance, StabilityReport> stable_instance_search(const GenSpec& spec);

/// Euclidean instances built so that no Steiner candidate can help: spread
/// terminals, candidates banished far outside their bounding box. Each try
/// is post-validated (optimum uses no non-terminals; gamma_star meets
/// target_gamma when set) and rejected otherwise.
Instance planted_no_steiner(const GenSpec& spec);

/// Comment lines describing spec and the random-source identifier, suitable
/// for embedding in an STP file so corpora stay reproducible.
std::vector<std::string> gen_provenance(const GenSpec& spec);

/// Relative corpus path for a generated file: <model>/<gamma or "any">/<seed>.stp
std::string corpus_path(const GenSpec& spec);

}  // namespace steiner
