#include "steiner/stp.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <utility>

#include "steiner/error.hpp"

namespace steiner {
namespace {

constexpr const char* kMagicPrefix = "33D32945 STP File, STP Format Version";

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void syntax_error(int line, const std::string& what) {
  throw Error(Errc::SyntaxError, "line " + std::to_string(line) + ": " + what);
}

std::uint64_t parse_count(const std::string& tok, int line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    syntax_error(line, "expected a non-negative integer, got '" + tok + "'");
  return value;
}

VertexId parse_vertex(const std::string& tok, std::uint32_t n, int line) {
  std::uint64_t id = parse_count(tok, line);
  if (id == 0 || id > n)
    throw Error(Errc::IndexOutOfRange,
                "line " + std::to_string(line) + ": vertex id " + tok +
                    " outside 1.." + std::to_string(n));
  return static_cast<VertexId>(id - 1);  // to 0-based
}

double parse_real(const std::string& tok, int line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    syntax_error(line, "expected a real number, got '" + tok + "'");
  return value;
}

std::string fmt_real(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

const StpSection* find_section(const StpDocument& doc, const std::string& name) {
  std::string want = lower(name);
  for (const auto& sec : doc.sections)
    if (lower(sec.name) == want) return &sec;
  return nullptr;
}

}  // namespace

StpDocument parse_stp_document(const std::string& text) {
  StpDocument doc;
  std::vector<std::pair<int, std::string>> lines;
  {
    std::size_t start = 0;
    int number = 1;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      std::string raw = end == std::string::npos ? text.substr(start)
                                                 : text.substr(start, end - start);
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      lines.emplace_back(number++, raw);
      if (end == std::string::npos) break;
      start = end + 1;
    }
  }

  std::size_t idx = 0;
  while (idx < lines.size() && trim(lines[idx].second).empty()) ++idx;
  if (idx == lines.size()) throw Error(Errc::SyntaxError, "empty document");
  {
    std::string first = trim(lines[idx].second);
    if (lower(first).rfind(lower(kMagicPrefix), 0) != 0)
      syntax_error(lines[idx].first, "missing STP magic line");
    doc.magic = first;
    ++idx;
  }

  bool saw_eof = false;
  while (idx < lines.size()) {
    int number = lines[idx].first;
    std::string line = trim(lines[idx].second);
    ++idx;
    if (line.empty()) continue;
    std::vector<std::string> toks = tokens_of(line);
    std::string head = lower(toks[0]);
    if (head == "eof") {
      saw_eof = true;
      break;  // anything after EOF is ignored
    }
    if (head != "section" || toks.size() < 2)
      syntax_error(number, "expected SECTION or EOF, got '" + line + "'");
    StpSection sec;
    sec.name = toks[1];
    for (const auto& existing : doc.sections)
      if (lower(existing.name) == lower(sec.name))
        syntax_error(number, "duplicate section " + sec.name);
    bool closed = false;
    while (idx < lines.size()) {
      int body_number = lines[idx].first;
      std::string body = trim(lines[idx].second);
      ++idx;
      if (body.empty()) continue;
      if (lower(body) == "end") {
        closed = true;
        break;
      }
      sec.lines.push_back(StpLine{body_number, body});
    }
    if (!closed) syntax_error(number, "section " + sec.name + " is never closed");
    doc.sections.push_back(std::move(sec));
  }
  if (!saw_eof) throw Error(Errc::SyntaxError, "missing EOF terminator");
  return doc;
}

namespace {

struct GraphData {
  std::uint32_t nodes = 0;
  std::vector<WeightedEdge> edges;
};

GraphData read_graph(const StpSection& sec) {
  GraphData g;
  bool have_nodes = false;
  std::optional<std::uint64_t> declared_edges;
  std::uint64_t edge_lines = 0;
  for (const StpLine& ln : sec.lines) {
    std::vector<std::string> toks = tokens_of(ln.text);
    std::string head = lower(toks[0]);
    if (head == "nodes") {
      if (toks.size() != 2) syntax_error(ln.number, "Nodes takes one argument");
      std::uint64_t n = parse_count(toks[1], ln.number);
      if (n < 2) throw Error(Errc::TooFewTerminals, "fewer than two vertices");
      if (n > 100000) syntax_error(ln.number, "vertex count too large");
      g.nodes = static_cast<std::uint32_t>(n);
      have_nodes = true;
    } else if (head == "edges") {
      if (toks.size() != 2) syntax_error(ln.number, "Edges takes one argument");
      declared_edges = parse_count(toks[1], ln.number);
    } else if (head == "e") {
      if (!have_nodes) syntax_error(ln.number, "E line before Nodes");
      if (toks.size() != 4) syntax_error(ln.number, "E takes endpoints and a weight");
      VertexId u = parse_vertex(toks[1], g.nodes, ln.number);
      VertexId v = parse_vertex(toks[2], g.nodes, ln.number);
      if (u == v) syntax_error(ln.number, "self-loop on vertex " + toks[1]);
      double w = parse_real(toks[3], ln.number);
      if (!(w > 0.0) || !std::isfinite(w))
        throw Error(Errc::NonPositiveWeight,
                    "line " + std::to_string(ln.number) + ": edge weight " + toks[3]);
      g.edges.push_back(WeightedEdge{u, v, w});
      ++edge_lines;
    } else {
      syntax_error(ln.number, "unexpected '" + toks[0] + "' in Graph section");
    }
  }
  if (!have_nodes) throw Error(Errc::MissingSection, "Graph section lacks Nodes");
  if (declared_edges && *declared_edges != edge_lines)
    throw Error(Errc::SyntaxError,
                "Graph declares " + std::to_string(*declared_edges) + " edges but lists " +
                    std::to_string(edge_lines));
  return g;
}

std::vector<VertexId> read_terminals(const StpSection& sec, std::uint32_t n) {
  std::vector<VertexId> terminals;
  std::optional<std::uint64_t> declared;
  for (const StpLine& ln : sec.lines) {
    std::vector<std::string> toks = tokens_of(ln.text);
    std::string head = lower(toks[0]);
    if (head == "terminals") {
      if (toks.size() != 2) syntax_error(ln.number, "Terminals takes one argument");
      declared = parse_count(toks[1], ln.number);
    } else if (head == "t") {
      if (toks.size() != 2) syntax_error(ln.number, "T takes one vertex id");
      VertexId t = parse_vertex(toks[1], n, ln.number);
      if (std::find(terminals.begin(), terminals.end(), t) != terminals.end())
        syntax_error(ln.number, "duplicate terminal " + toks[1]);
      terminals.push_back(t);
    } else {
      syntax_error(ln.number, "unexpected '" + toks[0] + "' in Terminals section");
    }
  }
  if (declared && *declared != terminals.size())
    throw Error(Errc::SyntaxError,
                "Terminals declares " + std::to_string(*declared) + " but lists " +
                    std::to_string(terminals.size()));
  if (terminals.size() < 2) throw Error(Errc::TooFewTerminals, "fewer than two terminals");
  std::sort(terminals.begin(), terminals.end());
  return terminals;
}

std::vector<std::vector<double>> read_coordinates(const StpSection& sec, std::uint32_t n,
                                                  std::uint32_t& dim_out) {
  std::vector<std::vector<double>> coords(n);
  std::uint32_t dim = 0;
  for (const StpLine& ln : sec.lines) {
    std::vector<std::string> toks = tokens_of(ln.text);
    if (lower(toks[0]) != "dd")
      syntax_error(ln.number, "unexpected '" + toks[0] + "' in Coordinates section");
    if (toks.size() < 3) syntax_error(ln.number, "DD takes a vertex id and coordinates");
    VertexId v = parse_vertex(toks[1], n, ln.number);
    std::uint32_t d = static_cast<std::uint32_t>(toks.size() - 2);
    if (dim == 0)
      dim = d;
    else if (d != dim)
      syntax_error(ln.number, "coordinate dimension changes mid-section");
    if (!coords[v].empty()) syntax_error(ln.number, "duplicate coordinates for vertex " + toks[1]);
    std::vector<double> point(d);
    for (std::uint32_t k = 0; k < d; ++k) point[k] = parse_real(toks[2 + k], ln.number);
    coords[v] = std::move(point);
  }
  for (std::uint32_t v = 0; v < n; ++v)
    if (coords[v].empty())
      throw Error(Errc::MissingCoordinates, "vertex " + std::to_string(v + 1) + " has no DD line");
  dim_out = dim;
  return coords;
}

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

bool triangle_holds(const Instance& inst) {
  const std::uint32_t n = inst.size();
  constexpr double kRelTol = 1e-9;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) {
      double wij = inst.weight(i, j);
      for (std::uint32_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        double detour = inst.weight(i, k) + inst.weight(k, j);
        if (wij > detour * (1.0 + kRelTol)) return false;
      }
    }
  return true;
}

bool matches_coords(const Instance& inst, const std::vector<std::vector<double>>& coords) {
  const std::uint32_t n = inst.size();
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) {
      double geo = std::sqrt(sq_dist(coords[i], coords[j]));
      double tol = std::max(1.0, std::abs(geo)) * 1e-9;
      if (std::abs(inst.weight(i, j) - geo) > tol) return false;
    }
  return true;
}

}  // namespace

ParsedStp instance_from_document(const StpDocument& doc) {
  const StpSection* graph = find_section(doc, "Graph");
  if (!graph) throw Error(Errc::MissingSection, "Graph");
  const StpSection* terms = find_section(doc, "Terminals");
  if (!terms) throw Error(Errc::MissingSection, "Terminals");

  GraphData g = read_graph(*graph);
  std::vector<VertexId> terminals = read_terminals(*terms, g.nodes);

  std::uint32_t dim = 0;
  std::vector<std::vector<double>> coords;
  if (const StpSection* cs = find_section(doc, "Coordinates"))
    coords = read_coordinates(*cs, g.nodes, dim);

  // Deduplicate edges; equal-weight repeats are tolerated, conflicts are not.
  std::map<std::pair<VertexId, VertexId>, double> by_pair;
  for (const WeightedEdge& e : g.edges) {
    auto key = std::minmax(e.u, e.v);
    auto [it, fresh] = by_pair.emplace(key, e.w);
    if (!fresh && it->second != e.w)
      throw Error(Errc::DuplicateEdge,
                  "edge " + std::to_string(key.first + 1) + "-" + std::to_string(key.second + 1) +
                      " listed twice with different weights");
  }

  const std::uint32_t n = g.nodes;
  const std::uint64_t complete_count = std::uint64_t(n) * (n - 1) / 2;
  ParsedStp out{Instance(2, {0, 1}, {0, 1, 1, 0}, false, false), false, {}};

  std::vector<double> flat_coords;
  if (!coords.empty())
    for (const auto& p : coords) flat_coords.insert(flat_coords.end(), p.begin(), p.end());

  if (by_pair.size() == complete_count) {
    std::vector<double> w(std::size_t(n) * n, 0.0);
    for (const auto& [key, weight] : by_pair) {
      w[std::size_t(key.first) * n + key.second] = weight;
      w[std::size_t(key.second) * n + key.first] = weight;
    }
    Instance inst(n, terminals, w, false, false, flat_coords, dim);
    bool metric = triangle_holds(inst);
    bool euclid = metric && !coords.empty() && matches_coords(inst, coords);
    out.instance = Instance(n, terminals, w, metric, euclid, flat_coords, dim);
  } else {
    std::vector<WeightedEdge> edges;
    edges.reserve(by_pair.size());
    for (const auto& [key, weight] : by_pair)
      edges.push_back(WeightedEdge{key.first, key.second, weight});
    Instance closed = metric_closure(n, terminals, edges);
    bool euclid = !coords.empty() && matches_coords(closed, coords);
    std::vector<double> w;
    w.reserve(std::size_t(n) * n);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j) w.push_back(i == j ? 0.0 : closed.weight(i, j));
    out.instance = Instance(n, terminals, w, true, euclid, flat_coords, dim);
    out.closure_applied = true;
  }

  if (const StpSection* cs = find_section(doc, "Comment"))
    for (const StpLine& ln : cs->lines) out.comment.push_back(ln.text);
  return out;
}

ParsedStp parse_stp(const std::string& text) {
  return instance_from_document(parse_stp_document(text));
}

std::string write_stp(const Instance& instance, const std::vector<std::string>& comment_lines) {
  const std::uint32_t n = instance.size();
  std::string out;
  out.reserve(64 + std::size_t(n) * n * 12);
  out += kMagicPrefix;
  out += " 1.0\n\n";

  if (!comment_lines.empty()) {
    out += "SECTION Comment\n";
    for (const std::string& line : comment_lines) {
      out += line;
      out += '\n';
    }
    out += "END\n\n";
  }

  out += "SECTION Graph\n";
  out += "Nodes " + std::to_string(n) + '\n';
  out += "Edges " + std::to_string(std::uint64_t(n) * (n - 1) / 2) + '\n';
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) {
      out += "E " + std::to_string(i + 1) + ' ' + std::to_string(j + 1) + ' ' +
             fmt_real(instance.weight(i, j), 12) + '\n';
    }
  out += "END\n\nSECTION Terminals\n";
  out += "Terminals " + std::to_string(instance.terminal_count()) + '\n';
  for (VertexId t : instance.terminals()) out += "T " + std::to_string(t + 1) + '\n';
  out += "END\n\n";

  if (instance.has_coords()) {
    out += "SECTION Coordinates\n";
    for (std::uint32_t v = 0; v < n; ++v) {
      out += "DD " + std::to_string(v + 1);
      for (double c : instance.coord(v)) out += ' ' + fmt_real(c, 17);
      out += '\n';
    }
    out += "END\n\n";
  }

  out += "EOF\n";
  return out;
}

std::uint64_t stp_digest(const Instance& instance) {
  std::string bytes = write_stp(instance);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string digest_hex(std::uint64_t digest) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

}  // namespace steiner
