#include "steiner/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace steiner {

namespace {

std::string vertex_pair(VertexId u, VertexId v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

constexpr double kRelTol = 1e-9;

}  // namespace

Edge make_edge(VertexId a, VertexId b) {
  if (a == b)
    throw Error(Errc::InvalidArgument,
                "self-loop at vertex " + std::to_string(a));
  return a < b ? Edge{a, b} : Edge{b, a};
}

Instance::Instance(std::size_t n, std::vector<VertexId> terminals,
                   std::vector<double> weights, bool metric_flag,
                   bool euclidean_flag, std::vector<double> coords,
                   std::size_t dim)
    : n_(n),
      terminals_(std::move(terminals)),
      weights_(std::move(weights)),
      coords_(std::move(coords)),
      dim_(dim),
      metric_(metric_flag),
      euclidean_(euclidean_flag) {
  // A single vertex is a legal (empty) problem: contracting the only edge of
  // a two-vertex instance must land somewhere representable.
  if (n_ < 1)
    throw Error(Errc::InvalidArgument, "instance needs at least one vertex");
  if (weights_.size() != n_ * n_)
    throw Error(Errc::InvalidArgument, "weight matrix shape mismatch");
  for (std::size_t u = 0; u < n_; ++u) {
    if (weights_[u * n_ + u] != 0.0)
      throw Error(Errc::InvalidArgument, "nonzero weight matrix diagonal");
    for (std::size_t v = u + 1; v < n_; ++v)
      if (weights_[u * n_ + v] != weights_[v * n_ + u])
        throw Error(Errc::InvalidArgument, "asymmetric weight matrix");
  }
  std::sort(terminals_.begin(), terminals_.end());
  if (std::adjacent_find(terminals_.begin(), terminals_.end()) !=
      terminals_.end())
    throw Error(Errc::InvalidArgument, "duplicate terminal id");
  is_terminal_.assign(n_, 0);
  for (VertexId t : terminals_) {
    if (t >= n_)
      throw Error(Errc::InvalidArgument,
                  "terminal id " + std::to_string(t) + " out of range");
    is_terminal_[t] = 1;
  }
  if (!coords_.empty() || dim_ != 0) {
    if (dim_ == 0 || coords_.size() != n_ * dim_)
      throw Error(Errc::InvalidArgument, "coordinate array shape mismatch");
  }
}

std::vector<VertexId> Instance::non_terminals() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < n_; ++v)
    if (!is_terminal_[v]) out.push_back(v);
  return out;
}

Instance metric_closure(std::size_t n, std::vector<VertexId> terminals,
                        const std::vector<WeightedEdge>& edges) {
  if (n < 2 || terminals.size() < 2)
    throw Error(Errc::TooFewTerminals,
                "need at least two vertices and two terminals");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> d(n * n, kInf);
  for (std::size_t v = 0; v < n; ++v) d[v * n + v] = 0.0;
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n || e.u == e.v)
      throw Error(Errc::InvalidArgument,
                  "bad edge endpoints " + vertex_pair(e.u, e.v));
    if (!(e.w > 0.0) || !std::isfinite(e.w))
      throw Error(Errc::NonPositiveWeight,
                  "edge " + vertex_pair(e.u, e.v) + " has weight " +
                      std::to_string(e.w));
    std::size_t a = e.u, b = e.v;
    if (e.w < d[a * n + b]) {
      d[a * n + b] = e.w;
      d[b * n + a] = e.w;
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      double dik = d[i * n + k];
      if (dik == kInf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        double via = dik + d[k * n + j];
        if (via < d[i * n + j]) d[i * n + j] = via;
      }
    }
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (d[u * n + v] == kInf)
        throw Error(Errc::DisconnectedGraph,
                    "no path between " + vertex_pair(static_cast<VertexId>(u),
                                                     static_cast<VertexId>(v)));
  return Instance(n, std::move(terminals), std::move(d), true, false);
}

Instance euclidean_instance(const std::vector<std::vector<double>>& points,
                            std::vector<VertexId> terminals) {
  std::size_t n = points.size();
  if (n < 2 || terminals.size() < 2)
    throw Error(Errc::TooFewTerminals,
                "need at least two points and two terminals");
  std::size_t dim = points[0].size();
  if (dim == 0)
    throw Error(Errc::InvalidArgument, "zero-dimensional points");
  for (const auto& p : points)
    if (p.size() != dim)
      throw Error(Errc::InvalidArgument, "mixed point dimensions");
  std::vector<double> coords;
  coords.reserve(n * dim);
  for (const auto& p : points) coords.insert(coords.end(), p.begin(), p.end());
  std::vector<double> w(n * n, 0.0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        double diff = points[u][k] - points[v][k];
        s += diff * diff;
      }
      double dist = std::sqrt(s);
      if (dist == 0.0)
        throw Error(Errc::DuplicatePoint,
                    "points " + vertex_pair(static_cast<VertexId>(u),
                                            static_cast<VertexId>(v)) +
                        " coincide");
      w[u * n + v] = dist;
      w[v * n + u] = dist;
    }
  return Instance(n, std::move(terminals), std::move(w), true, true,
                  std::move(coords), dim);
}

ValidationReport validate(const Instance& instance) {
  ValidationReport report;
  std::size_t n = instance.size();
  if (instance.terminal_count() < 2)
    report.violations.push_back(
        {"terminal-count", "instance has " +
                               std::to_string(instance.terminal_count()) +
                               " terminals, need at least 2"});
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) {
      double w = instance.weight(u, v);
      if (!(w > 0.0) || !std::isfinite(w))
        report.violations.push_back(
            {"weight-positive",
             "pair " + vertex_pair(u, v) + " has weight " + std::to_string(w)});
    }
  if (instance.metric()) {
    for (VertexId i = 0; i < n; ++i)
      for (VertexId j = 0; j < n; ++j) {
        if (j == i) continue;
        for (VertexId k = 0; k < n; ++k) {
          if (k == i || k == j) continue;
          double direct = instance.weight(i, j);
          double via = instance.weight(i, k) + instance.weight(k, j);
          if (direct > via + kRelTol * direct) {
            report.violations.push_back(
                {"metric-triangle",
                 "w" + vertex_pair(i, j) + " > w" + vertex_pair(i, k) + " + w" +
                     vertex_pair(k, j)});
          }
        }
      }
  }
  if (instance.euclidean()) {
    if (!instance.has_coords()) {
      report.violations.push_back(
          {"euclidean-coords", "euclidean flag set but no coordinates"});
    } else {
      for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v) {
          auto pu = instance.coord(u);
          auto pv = instance.coord(v);
          double s = 0.0;
          for (std::size_t k = 0; k < pu.size(); ++k) {
            double diff = pu[k] - pv[k];
            s += diff * diff;
          }
          double dist = std::sqrt(s);
          double w = instance.weight(u, v);
          if (std::abs(dist - w) > kRelTol * std::max(1.0, std::abs(w)))
            report.violations.push_back(
                {"euclidean-consistency",
                 "pair " + vertex_pair(u, v) + " weight " + std::to_string(w) +
                     " vs distance " + std::to_string(dist)});
        }
    }
  }
  return report;
}

}  // namespace steiner
