// Small helpers shared by the suites: error-code capture and scratch
// directories that clean up after themselves.
#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "steiner/error.hpp"

namespace testsupport {

/// Runs fn and reports the steiner error code it threw, if any. Lets a test
/// assert on the code rather than the message text.
template <typename Fn>
std::optional<steiner::Errc> error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const steiner::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

/// Unique scratch directory under the system temp root, removed on scope
/// exit.
struct TempDir {
  std::filesystem::path path;

  TempDir() {
    std::random_device rd;
    std::uniform_int_distribution<std::uint64_t> any;
    std::ostringstream name;
    name << "steiner-test-" << std::hex << any(rd);
    path = std::filesystem::temp_directory_path() / name.str();
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

inline std::string slurp(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void spit(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  out << text;
}

}  // namespace testsupport
