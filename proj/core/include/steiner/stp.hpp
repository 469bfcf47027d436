#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "steiner/instance.hpp"

namespace steiner {

/// Lexical layer of an STP document: magic line plus ordered sections of raw
/// lines. Unknown sections survive parsing and are ignored by the instance
/// builder.
struct StpLine {
  int number = 0;  // 1-based line number in the source text
  std::string text;
};

struct StpSection {
  std::string name;  // as written, e.g. "Graph"
  std::vector<StpLine> lines;
};

struct StpDocument {
  std::string magic;
  std::vector<StpSection> sections;
  std::string provenance;  // source path or "generated"
};

struct ParsedStp {
  Instance instance;
  bool closure_applied = false;  // edge list was incomplete, closure filled it
  std::vector<std::string> comment;  // raw Comment section lines, if any
};

/// Splits text into sections; tolerates CRLF and requires the EOF terminator.
StpDocument parse_stp_document(const std::string& text);

/// Interprets Graph/Terminals/Coordinates sections. Incomplete edge lists go
/// through the metric closure; complete ones are taken verbatim (so perturbed,
/// non-metric instances round-trip). Metric and Euclidean flags are derived
/// from the data within relative tolerance 1e-9.
ParsedStp instance_from_document(const StpDocument& doc);

ParsedStp parse_stp(const std::string& text);

/// Serializes with fixed section order (Comment when given, Graph, Terminals,
/// Coordinates when present), 1-based ids, 12 significant digits for weights,
/// 17 for coordinates, LF line endings, EOF terminator. Deterministic:
/// identical instances give identical bytes.
std::string write_stp(const Instance& instance,
                      const std::vector<std::string>& comment_lines = {});

/// FNV-1a 64-bit digest of the comment-free serialization.
std::uint64_t stp_digest(const Instance& instance);
std::string digest_hex(std::uint64_t digest);

}  // namespace steiner
