#include "multipoles/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "multipoles/ensemble.hpp"
#include "multipoles/error.hpp"
#include "multipoles/majorana.hpp"
#include "multipoles/montecarlo.hpp"
#include "multipoles/sphere.hpp"

namespace multipoles::cli {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

void require(bool ok, const std::string& what) {
  if (!ok) throw FormatError(what);
}

CoefficientVector load_or_sample(const RunConfig& config) {
  if (config.coeffs_path) {
    std::ifstream in(*config.coeffs_path);
    if (!in) throw FormatError("cannot open coefficient file " + *config.coeffs_path);
    auto cv = read_coefficients(in);
    require(cv.ell() >= 1 && cv.ell() <= kMaxEll, "coefficient file degree must be in [1, 200]");
    return cv;
  }
  Rng rng = make_stream(config.seed, 0);
  return sample_coefficients(config.ell, rng);
}

std::ofstream open_file(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open output file " + path);
  return out;
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

std::vector<double> linear_grid(double lo, double hi, int steps) {
  require(steps >= 1, "grid needs at least one step");
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    grid[static_cast<std::size_t>(i)] = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
  }
  return grid;
}

void validate(const RunConfig& c) {
  const auto& s = c.subcommand;
  require(s == "sample" || s == "function-grid" || s == "rho2" || s == "mc" || s == "limit",
          "unknown subcommand '" + s + "'");
  require(c.ell >= 1 && c.ell <= kMaxEll, "--ell must be in [1, 200]");
  require(c.precision_bits >= 53 && c.precision_bits <= 65536, "--precision-bits must be in [53, 65536]");
  require(c.workers >= 1 && c.workers <= 256, "--workers must be in [1, 256]");
  if (s == "function-grid") {
    require(c.n_theta >= 2 && c.n_phi >= 1, "grid needs --n-theta >= 2 and --n-phi >= 1");
  }
  if (s == "rho2") {
    require(c.ell >= 2, "rho2 needs --ell >= 2");
    require(c.theta_min > 0.0 && c.theta_max < 180.0 && c.theta_min <= c.theta_max,
            "rho2 needs 0 < --theta-min <= --theta-max < 180");
    require(c.theta_steps >= 1, "--theta-steps must be positive");
  }
  if (s == "mc") {
    require(c.ell >= 2, "mc needs --ell >= 2");
    require(c.n_realizations >= 1, "--realizations must be positive");
    require(c.n_bins >= 4 && c.n_bins <= 100000, "--bins must be in [4, 100000]");
  }
  if (s == "limit") {
    require(!c.ells.empty(), "--ells must not be empty");
    for (int l : c.ells) require(l >= 10 && l <= kMaxEll, "--ells entries must be in [10, 200]");
    require(c.r_min > 0.0 && c.r_min <= c.r_max && c.r_steps >= 1, "limit needs 0 < --r-min <= --r-max");
  }
}

void cmd_sample(const RunConfig& config, std::ostream& axes_csv, std::ostream* coeffs_json) {
  const auto cv = load_or_sample(config);
  const auto set = multipoles(cv);
  axes_csv << "x,y,z\n";
  for (const auto& axis : set.axes) {
    axes_csv << format_number(axis.x()) << ',' << format_number(axis.y()) << ',' << format_number(axis.z())
             << '\n';
  }
  if (coeffs_json) write_coefficients(cv, *coeffs_json);
}

void cmd_function_grid(const RunConfig& config, std::ostream& csv) {
  const auto cv = load_or_sample(config);
  csv << "theta_deg,phi_deg,value\n";
  for (int i = 0; i < config.n_theta; ++i) {
    const double theta_deg = 180.0 * i / (config.n_theta - 1);
    for (int j = 0; j < config.n_phi; ++j) {
      const double phi_deg = 360.0 * j / config.n_phi;
      const double value = evaluate_function(cv, theta_deg * kDeg, phi_deg * kDeg);
      csv << format_number(theta_deg) << ',' << format_number(phi_deg) << ',' << format_number(value) << '\n';
    }
  }
}

void cmd_rho2(const RunConfig& config, std::ostream& csv) {
  csv << "theta_deg,rho\n";
  for (double theta_deg : linear_grid(config.theta_min, config.theta_max, config.theta_steps)) {
    const double rho = rho_sphere(config.ell, theta_deg * kDeg, config.normalized, config.precision_bits);
    csv << format_number(theta_deg) << ',' << format_number(rho) << '\n';
  }
}

void cmd_mc(const RunConfig& config, std::ostream& histogram_csv, std::ostream* report_json) {
  EstimateOptions options;
  options.workers = config.workers;
  const auto result = estimate(config.ell, config.n_realizations, config.n_bins, config.seed, options);
  const auto& hist = result.histogram;
  const auto report = compare(hist, 0, config.precision_bits);

  histogram_csv << "theta_lo_deg,theta_hi_deg,count,g_hat,stderr,g_analytic,z\n";
  for (int b = 0; b < hist.n_bins(); ++b) {
    histogram_csv << format_number(hist.edge(b) / kDeg) << ',' << format_number(hist.edge(b + 1) / kDeg) << ','
                  << hist.count(b) << ',' << format_number(hist.g_hat(b)) << ','
                  << format_number(hist.stderr_of(b)) << ','
                  << format_number(report.g_analytic[static_cast<std::size_t>(b)]) << ','
                  << format_number(report.z[static_cast<std::size_t>(b)]) << '\n';
  }
  if (report_json) {
    nlohmann::json doc;
    doc["ell"] = config.ell;
    doc["realizations"] = hist.n_realizations();
    doc["failures"] = result.failures;
    doc["bins"] = hist.n_bins();
    doc["seed"] = config.seed;
    doc["coverage"] = report.coverage;
    doc["empty_bins"] = report.empty_bins;
    doc["chi_square"] = report.chi_square;
    doc["dof"] = report.dof;
    doc["p_value"] = report.p_value;
    *report_json << doc.dump(2) << '\n';
  }
}

void cmd_limit(const RunConfig& config, std::ostream& deviations_csv, std::ostream& g_csv) {
  const auto grid = linear_grid(config.r_min, config.r_max, config.r_steps);
  deviations_csv << "ell,deviation\n";
  for (int l : config.ells) {
    deviations_csv << l << ',' << format_number(limit_deviation(l, grid, config.precision_bits)) << '\n';
  }

  std::vector<double> g_rows{0.0};
  g_rows.insert(g_rows.end(), grid.begin(), grid.end());
  const auto peak = g_maximum();
  g_rows.push_back(peak.R);
  std::sort(g_rows.begin(), g_rows.end());
  g_csv << "R,g\n";
  for (double R : g_rows) g_csv << format_number(R) << ',' << format_number(hannay_g(R)) << '\n';
}

int run(const RunConfig& config) {
  try {
    validate(config);
    std::optional<std::ofstream> out_file;
    std::optional<std::ofstream> json_file;
    if (config.out_path) out_file = open_file(*config.out_path);
    if (config.json_out_path) json_file = open_file(*config.json_out_path);
    std::ostream& out = out_file ? *out_file : std::cout;
    std::ostream* json = json_file ? &*json_file : nullptr;

    const auto& s = config.subcommand;
    if (s == "sample") {
      cmd_sample(config, out, json);
    } else if (s == "function-grid") {
      cmd_function_grid(config, out);
    } else if (s == "rho2") {
      cmd_rho2(config, out);
    } else if (s == "mc") {
      cmd_mc(config, out, json);
    } else if (s == "limit") {
      if (config.g_out_path) {
        auto g_file = open_file(*config.g_out_path);
        cmd_limit(config, out, g_file);
      } else {
        std::ostringstream g_table;
        cmd_limit(config, out, g_table);
        out << '\n' << g_table.str();
      }
    }
    out.flush();
    if (!out) throw FormatError("failed writing output");
    return 0;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace multipoles::cli
