#pragma once

// Verification campaigns: each target sweeps a parameter box, checks a
// property case by case and collects replayable counterexamples.

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dioph::campaign {

inline constexpr const char* kVersion = "1.0.0";

struct Range {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

struct CampaignSpec {
  std::string target;
  std::map<std::string, Range> ranges;  // overrides of the target's defaults
  bool oracle = false;                  // also run the slow independent oracles
  std::uint64_t budget = 0;             // max cases, 0 = unlimited
  std::uint64_t seed = 1;
};

struct Report {
  std::string target;
  nlohmann::json parameters;
  std::uint64_t cases = 0;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  std::vector<nlohmann::json> counterexamples;  // {"input": ..., "detail": ...}
  double wall_time_s = 0;
  std::string version = kVersion;

  bool ok() const { return failed == 0; }
};

struct TargetInfo {
  std::string name;
  std::string summary;
  std::map<std::string, Range> defaults;
};

const std::vector<TargetInfo>& targets();

/// "k=lo..hi" or "k=v".
std::pair<std::string, Range> parse_range(const std::string& text);

/// Throws DomainError for an unknown target or range key and BudgetExceeded
/// when the case budget runs out.
Report run_campaign(const CampaignSpec& spec);

nlohmann::json to_json(const Report& report);

}  // namespace dioph::campaign
