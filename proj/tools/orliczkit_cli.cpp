#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "orliczkit/orliczkit.h"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 4;

struct Flags {
  std::string config;
  std::string out;
  unsigned workers = 0;
  long long seed = -1;
  std::string grid;
};

bool read_text(const std::string& path, std::string& text) {
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return true;
}

bool write_text(const std::filesystem::path& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

int exit_for_status(ok_status s) {
  switch (s) {
    case OK_ERR_CONFIG:
    case OK_ERR_INVALID_ARGUMENT:
    case OK_ERR_BAD_ALPHA:
      return kExitConfig;
    default:
      return kExitRuntime;
  }
}

int run(const std::string& command, const Flags& flags) {
  std::string text = "{}";
  if (!flags.config.empty() && !read_text(flags.config, text)) {
    std::fprintf(stderr, "error: cannot read config '%s'\n", flags.config.c_str());
    return kExitConfig;
  }

  ok_options* opts = nullptr;
  ok_options_create(&opts);
  if (flags.workers > 0) ok_options_set_workers(opts, flags.workers);
  if (flags.seed >= 0) ok_options_set_seed(opts, static_cast<uint64_t>(flags.seed));
  if (!flags.grid.empty() && ok_options_set_grid_policy(opts, flags.grid.c_str()) != OK_SUCCESS) {
    std::fprintf(stderr, "error: --grid: %s\n", ok_last_error());
    ok_options_destroy(opts);
    return kExitConfig;
  }

  ok_result* result = nullptr;
  const ok_status status = ok_run(command.c_str(), text.c_str(), opts, &result);
  ok_options_destroy(opts);
  if (status != OK_SUCCESS) {
    std::fprintf(stderr, "error (%s): %s\n", ok_status_string(status), ok_last_error());
    return exit_for_status(status);
  }

  std::fputs(ok_result_json(result), stdout);
  int code = static_cast<int>(ok_result_finding(result));
  if (!flags.out.empty()) {
    std::error_code ec;
    const std::filesystem::path dir(flags.out);
    std::filesystem::create_directories(dir, ec);
    bool ok = !ec && write_text(dir / (command + ".json"), ok_result_json(result));
    for (size_t i = 0; ok && i < ok_result_artifact_count(result); ++i)
      ok = write_text(dir / ok_result_artifact_name(result, i), ok_result_artifact_data(result, i));
    if (!ok) {
      std::fprintf(stderr, "error: cannot write outputs to '%s'\n", flags.out.c_str());
      code = kExitRuntime;
    }
  }
  ok_result_destroy(result);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Orlicz-Poincare toolkit"};
  app.set_version_flag("--version", std::string(ok_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  app.add_option("--config", flags.config, "JSON config file ('-' reads stdin)");
  app.add_option("--out", flags.out, "Directory for the JSON report and CSV traces");
  app.add_option("--workers", flags.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", flags.seed, "Seed for random test families")->check(CLI::NonNegativeNumber);
  app.add_option("--grid", flags.grid, "Scan grid policy: uniform, geometric-a, geometric-b, union");

  const char* commands[][2] = {
      {"norm", "Gauge norm of a function"},
      {"constant", "A characterizing constant with its supremand trace"},
      {"verify", "Poincare ratios of random and extremal functions against the bound"},
      {"example", "The degenerate-weight example report"},
      {"check-young", "Young function certificates"},
      {"complementary", "Table of the complementary function"},
  };
  for (const auto& c : commands) app.add_subcommand(c[0], c[1]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }
  return run(app.get_subcommands().front()->get_name(), flags);
}
