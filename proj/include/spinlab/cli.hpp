#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spinlab::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2, kConvergenceError = 3 };

/// Bad configuration. `line` is 0 when the source has no line structure.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::string key = {}, int line = 0)
      : std::runtime_error(what), key_(std::move(key)), line_(line) {}
  const std::string& key() const noexcept { return key_; }
  int line() const noexcept { return line_; }

 private:
  std::string key_;
  int line_;
};

enum class ParamType { Real, Integer, Text, RealList, TextList };

struct ParamSpec {
  std::string key;
  ParamType type;
  std::string default_value;
  std::string help;
  std::optional<double> min;  // inclusive lower bound for numbers and list entries
  bool positive = false;      // strictly > 0
  std::vector<std::string> choices;
};

/// Keys shared by every subcommand: seed, samples, out, format.
const std::vector<ParamSpec>& common_params();
/// Subcommand-specific keys; throws ConfigError for unknown subcommands.
const std::vector<ParamSpec>& subcommand_params(std::string_view subcommand);
const std::vector<std::string>& subcommands();

/// Raw key/value pairs with the line each came from.
struct RawEntry {
  std::string value;
  int line = 0;
};
using RawConfig = std::map<std::string, RawEntry>;

/// `key = value` lines with '#' comments, or a flat JSON object when the
/// first non-blank character is '{'.
RawConfig parse_config_text(std::string_view text);
RawConfig parse_config_file(const std::string& path);

class RunConfig {
 public:
  /// Applies defaults, then `file`, then `flags`; validates every value.
  /// Unknown keys are rejected.
  static RunConfig resolve(const std::string& subcommand, const RawConfig& file, const RawConfig& flags);

  const std::string& subcommand() const noexcept { return subcommand_; }
  double real(const std::string& key) const;
  std::int64_t integer(const std::string& key) const;
  std::uint64_t seed() const;
  std::uint64_t samples() const;
  const std::string& text(const std::string& key) const;
  /// Comma separated numbers, or start:stop:step (inclusive).
  std::vector<double> real_list(const std::string& key) const;
  std::vector<std::string> text_list(const std::string& key) const;
  std::string out_dir() const { return text("out"); }
  std::string format() const { return text("format"); }

  /// Resolved values in key order.
  const std::map<std::string, std::string>& values() const noexcept { return values_; }
  void set_out_dir(std::string dir) { values_["out"] = std::move(dir); }

 private:
  std::string subcommand_;
  std::map<std::string, std::string> values_;
  std::map<std::string, ParamSpec> specs_;
};

struct RunResult {
  std::vector<std::string> outputs;  // file names inside out_dir
  std::string summary_json;          // JSON object text
  bool passed = true;                // false when a built-in check failed
};

/// Runs one subcommand, writing result files and manifest.json into
/// config.out_dir(). Numerical non-convergence propagates as
/// ConvergenceError / NumericalBreakdown.
RunResult run(const RunConfig& config);

/// Full command-line entry point; returns the process exit status.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace spinlab::cli
