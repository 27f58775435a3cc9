#pragma once

// gauss-ent <command> [--config FILE] [--set key=value ...] [--out PATH]
//           [--format csv|json] [--strict] [--dump-config]

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gaussent/core_types.hpp"

namespace gaussent::cli {

enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 2,
  kPhysicalityError = 3,
  kNumericalError = 4,
};

class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

inline constexpr std::array<std::string_view, 6> kCommands = {
    "evolve", "steady", "metrics", "sweep", "classify", "phase-diagram"};

/// Fully resolved run. Defaults reproduce the figure-1 environment at C = 1.
struct RunConfig {
  std::string command;

  double lambda = 0.1;
  double omega = 1.0;
  double mass = 1.0;
  std::optional<double> c;            // exactly one of c / temperature
  std::optional<double> temperature;
  double d_xy = 0.0;
  double d_xpy = 0.049;

  std::string initial = "fig1";
  std::optional<std::array<double, 10>> sigma;  // overrides initial

  double t = 0.0;        // metrics
  double t_max = 50.0;   // evolve, sweep, classify
  int n_t = 501;         // samples on [0, t_max]
  double c_min = 1.0;
  double c_max = 1.5;
  int n_c = 11;
  double d_xpy_min = 0.0;  // phase-diagram rows
  double d_xpy_max = 0.05;
  int n_d = 11;

  std::string format = "csv";
  bool strict = false;
  std::string out;

  double thermal_c() const;
};

/// Sets one key. Throws ConfigError for unknown keys or malformed values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Applies a flat "key = value" text ('#' starts a comment). Within one text
/// c and temperature are mutually exclusive; setting one clears the other.
void apply_config_text(RunConfig& config, std::string_view text);

/// Canonical key=value listing that apply_config_text re-reads to the same run.
std::string dump_config(const RunConfig& config);

/// "%.17g"
std::string format_double(double value);

/// Executes the command, writing to config.out (or `out` when empty).
/// Diagnostics and warnings go to `err`. Returns an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command-line entry point (args excludes the program name).
int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gaussent::cli
