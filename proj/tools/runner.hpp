#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "json.hpp"

namespace shk::cli {

// Seed used by sampling commands unless the caller overrides it; fixed so that
// repeated runs of the same request produce identical reports.
inline constexpr uint64_t kDefaultSeed = 987654321ull;

// A fully resolved command invocation, independent of how it was parsed.
// Optional fields that are left empty fall back to per-command defaults; for
// grid-style commands an empty field means "iterate over the standard range".
struct CheckRequest {
  std::string command;
  std::optional<int> r;
  std::optional<int> n;
  std::optional<int> k;
  std::optional<std::string> family;
  std::optional<std::pair<long, long>> us;
  int samples = 10;
  uint64_t seed = kDefaultSeed;
  std::string format = "text";
};

// Result of running one check: a status string, structured details, timing,
// and the process exit code the CLI should return.
struct CheckReport {
  std::string command;
  std::string status;
  nlohmann::ordered_json details;
  long long elapsed_ms = 0;
  int exit_code = 1;
};

CheckReport run_check(const CheckRequest& req);

// Canonical JSON form of a report; excludes timing so output is reproducible.
nlohmann::ordered_json report_json(const CheckReport& rep);

// Human-readable form of a report, including elapsed time.
std::string report_text(const CheckReport& rep);

}  // namespace shk::cli
