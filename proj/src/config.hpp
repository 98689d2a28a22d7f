#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "constants.hpp"
#include "functions.hpp"
#include "measure.hpp"
#include "young.hpp"

namespace orlicz::config {

using nlohmann::json;

/// Reads fields of one JSON object, filling defaults into a resolved copy and
/// reporting errors with the dotted path of the offending field.
class Reader {
 public:
  Reader(const json& node, std::string path);

  const std::string& path() const noexcept { return path_; }
  bool has(const std::string& key) const;
  const json& raw(const std::string& key) const;
  std::string child_path(const std::string& key) const;

  double number(const std::string& key) const;
  double number(const std::string& key, double fallback);
  std::uint64_t integer(const std::string& key, std::uint64_t fallback);
  bool boolean(const std::string& key, bool fallback);
  std::string string(const std::string& key) const;
  std::string string(const std::string& key, const std::string& fallback);
  std::vector<double> numbers(const std::string& key) const;
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback);

  /// Rejects keys outside `allowed`.
  void only(std::initializer_list<const char*> allowed) const;

  json& resolved() noexcept { return resolved_; }
  const json& resolved() const noexcept { return resolved_; }
  void set(const std::string& key, json value) { resolved_[key] = std::move(value); }

 private:
  const json& node_;
  std::string path_;
  json resolved_;
};

[[noreturn]] void config_error(const std::string& path, const std::string& message);

/// JSON numbers cannot hold inf or NaN; they are written as strings.
json number_json(double x);

json parse_document(const std::string& text);

YoungFunction parse_young(const json& node, const std::string& path, json& resolved);
MeasureSpec parse_measure(const json& node, const std::string& path, json& resolved);
PiecewiseLinearFunction parse_pl_function(const json& node, const std::string& path, json& resolved);

/// A piecewise-linear or step function (step functions keep their jumps).
struct AnyFunction {
  std::optional<PiecewiseLinearFunction> pl;
  std::optional<StepFunction> step;
};
AnyFunction parse_function(const json& node, const std::string& path, json& resolved);

ScanGrid parse_grid(const json* node, const std::string& path, json& resolved);
QuadratureConfig parse_quadrature(const json* node, const std::string& path, json& resolved);

}  // namespace orlicz::config
