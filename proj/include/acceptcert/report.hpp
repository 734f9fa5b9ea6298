#pragma once

#include <string>
#include <vector>

#include "acceptcert/certificates.hpp"

namespace acceptcert {

inline constexpr int kReportSchema = 1;

const char* tool_version();

/// Top-level output of one CLI invocation.
struct Report {
  std::string version = tool_version();
  /// Command name and its arguments.
  Json invocation = Json::object();
  std::vector<RunResult> results;
  double seconds = 0;

  bool pass() const;
  std::size_t passed() const;

  /// Field order is fixed. Without timing the output is deterministic.
  Json to_json(bool with_timing = true) const;
  /// Throws std::invalid_argument on a wrong schema version or missing fields.
  static Report from_json(const Json& j);

  /// Equality ignores timing.
  friend bool operator==(const Report& a, const Report& b);
};

/// Human-readable rendering of the same content.
std::string format_text(const Report& r);

}  // namespace acceptcert
