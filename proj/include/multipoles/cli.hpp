#pragma once

// Command implementations behind the `multipoles` executable. Each command
// writes CSV (and optionally JSON) to caller-supplied streams so it can be
// driven from tests without touching the filesystem.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "multipoles/analytic.hpp"

namespace multipoles::cli {

inline constexpr int kMaxEll = 200;

struct RunConfig {
  std::string subcommand;
  int ell = 10;
  std::uint64_t seed = 1;
  std::uint64_t n_realizations = 10000;
  int n_bins = 60;
  // rho2 grid, degrees
  double theta_min = 1.0;
  double theta_max = 179.0;
  int theta_steps = 179;
  bool normalized = false;
  // function-grid
  int n_theta = 91;
  int n_phi = 180;
  // limit study
  std::vector<int> ells{25, 50, 100, 200};
  double r_min = 0.2;
  double r_max = 4.0;
  int r_steps = 96;
  unsigned precision_bits = kDefaultPrecisionBits;
  int workers = 1;
  std::optional<std::string> coeffs_path;
  std::optional<std::string> out_path;
  std::optional<std::string> json_out_path;
  std::optional<std::string> g_out_path;
};

/// Throws FormatError when a parameter the subcommand uses is out of range.
void validate(const RunConfig& config);

/// Shortest decimal text that reads back to the same binary64 value,
/// independent of the global locale.
std::string format_number(double value);

/// Evenly spaced values lo..hi inclusive; a single value when steps == 1.
std::vector<double> linear_grid(double lo, double hi, int steps);

void cmd_sample(const RunConfig& config, std::ostream& axes_csv, std::ostream* coeffs_json);
void cmd_function_grid(const RunConfig& config, std::ostream& csv);
void cmd_rho2(const RunConfig& config, std::ostream& csv);
void cmd_mc(const RunConfig& config, std::ostream& histogram_csv, std::ostream* report_json);
void cmd_limit(const RunConfig& config, std::ostream& deviations_csv, std::ostream& g_csv);

/// Opens the configured outputs (stdout when unset), runs the subcommand
/// and maps errors to a nonzero exit code with a message on stderr.
int run(const RunConfig& config);

}  // namespace multipoles::cli
