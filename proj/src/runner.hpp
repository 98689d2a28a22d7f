#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace orlicz {

struct RunOptions {
  /// 0 keeps the config value.
  unsigned workers = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> grid_policy;
};

struct Artifact {
  std::string name;
  std::string content;
};

/// What the command found, as opposed to whether it ran.
enum class Finding { None = 0, BoundViolation = 2, Divergence = 3, Inconsistent = 5 };

const char* to_string(Finding f) noexcept;

struct RunResult {
  nlohmann::json report;
  std::vector<Artifact> artifacts;
  Finding finding = Finding::None;
};

/// Commands: norm, constant, verify, example, check-young, complementary.
/// The report embeds the resolved config; identical inputs give identical
/// reports regardless of the worker count.
RunResult run_command(const std::string& command, const std::string& config_json, const RunOptions& opt = {});

/// Serialized report: two-space indentation, sorted keys, trailing newline.
std::string dump_report(const nlohmann::json& report);

/// Reads ORLICZKIT_LOG (trace, debug, info, warn, error, off) once.
void configure_logging_from_env();

}  // namespace orlicz
