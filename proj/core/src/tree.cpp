#include "steiner/tree.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace steiner {

namespace {

std::string edge_str(const Edge& e) {
  return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

// Union-find over a small dense id range.
struct Dsu {
  std::vector<VertexId> parent;
  explicit Dsu(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  VertexId find(VertexId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

SteinerTree make_tree(std::vector<Edge> edges) {
  for (auto& e : edges) e = make_edge(e.u, e.v);
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end())
    throw Error(Errc::InvalidArgument, "duplicate edge " + edge_str(*dup));
  return SteinerTree{std::move(edges)};
}

double tree_weight(const Instance& instance, const SteinerTree& tree) {
  double total = 0.0;
  for (const Edge& e : tree.edges) {
    if (e.u >= instance.size() || e.v >= instance.size())
      throw Error(Errc::UnknownEdge,
                  "edge " + edge_str(e) + " outside instance of size " +
                      std::to_string(instance.size()));
    total += instance.weight(e);
  }
  return total;
}

std::vector<VertexId> tree_vertices(const SteinerTree& tree) {
  std::vector<VertexId> verts;
  verts.reserve(tree.edges.size() * 2);
  for (const Edge& e : tree.edges) {
    verts.push_back(e.u);
    verts.push_back(e.v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return verts;
}

ValidationReport validate_tree(const Instance& instance,
                               const SteinerTree& tree) {
  ValidationReport report;
  for (const Edge& e : tree.edges) {
    if (e.u >= instance.size() || e.v >= instance.size()) {
      report.violations.push_back(
          {"edge-range", "edge " + edge_str(e) + " outside instance"});
      return report;
    }
    if (e.u >= e.v) {
      report.violations.push_back(
          {"edge-normalized", "edge " + edge_str(e) + " not normalized"});
      return report;
    }
  }
  if (!std::is_sorted(tree.edges.begin(), tree.edges.end()) ||
      std::adjacent_find(tree.edges.begin(), tree.edges.end()) !=
          tree.edges.end()) {
    report.violations.push_back({"edge-order", "edges not sorted unique"});
    return report;
  }
  auto verts = tree_vertices(tree);
  if (!verts.empty() && tree.edges.size() != verts.size() - 1) {
    report.violations.push_back(
        {"acyclic", std::to_string(tree.edges.size()) + " edges over " +
                        std::to_string(verts.size()) + " vertices"});
  }
  Dsu dsu(instance.size());
  std::size_t merges = 0;
  for (const Edge& e : tree.edges)
    if (dsu.unite(e.u, e.v)) ++merges;
  if (merges != tree.edges.size())
    report.violations.push_back({"acyclic", "edge set contains a cycle"});
  const auto& terminals = instance.terminals();
  for (VertexId t : terminals) {
    if (!std::binary_search(verts.begin(), verts.end(), t)) {
      report.violations.push_back(
          {"spans-terminals", "terminal " + std::to_string(t) + " not in tree"});
      return report;
    }
  }
  for (VertexId t : terminals)
    if (dsu.find(t) != dsu.find(terminals[0])) {
      report.violations.push_back(
          {"connected", "terminals split across components"});
      return report;
    }
  // Isolated extra components (edges disconnected from the terminals).
  for (VertexId v : verts)
    if (dsu.find(v) != dsu.find(terminals[0])) {
      report.violations.push_back(
          {"connected", "vertex " + std::to_string(v) +
                            " disconnected from the terminals"});
      return report;
    }
  return report;
}

bool tree_is_valid(const Instance& instance, const SteinerTree& tree) {
  return validate_tree(instance, tree).ok();
}

std::vector<int> tree_degrees(const Instance& instance,
                              const SteinerTree& tree) {
  std::vector<int> deg(instance.size(), 0);
  for (const Edge& e : tree.edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

bool is_canonical(const Instance& instance, const SteinerTree& tree) {
  auto deg = tree_degrees(instance, tree);
  for (VertexId v = 0; v < instance.size(); ++v)
    if (deg[v] == 1 && !instance.is_terminal(v)) return false;
  return true;
}

SteinerTree canonicalize(const Instance& instance, const SteinerTree& tree) {
  std::vector<Edge> edges = tree.edges;
  auto deg = tree_degrees(instance, tree);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = edges.begin(); it != edges.end();) {
      VertexId leaf = instance.size();
      if (deg[it->u] == 1 && !instance.is_terminal(it->u)) leaf = it->u;
      else if (deg[it->v] == 1 && !instance.is_terminal(it->v)) leaf = it->v;
      if (leaf != instance.size()) {
        --deg[it->u];
        --deg[it->v];
        it = edges.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  return SteinerTree{std::move(edges)};
}

std::vector<VertexId> steiner_vertices(const Instance& instance,
                                       const SteinerTree& tree) {
  std::vector<VertexId> out;
  for (VertexId v : tree_vertices(tree))
    if (!instance.is_terminal(v)) out.push_back(v);
  return out;
}

bool has_adjacent_steiner(const Instance& instance, const SteinerTree& tree) {
  for (const Edge& e : tree.edges)
    if (!instance.is_terminal(e.u) && !instance.is_terminal(e.v)) return true;
  return false;
}

}  // namespace steiner
