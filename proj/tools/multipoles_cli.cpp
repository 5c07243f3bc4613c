// Command-line front end: multipole axes of sampled or supplied functions,
// function grids, two-point correlation tables, Monte Carlo histograms and
// large-l limit studies, all as CSV.

#include <CLI11.hpp>

#include "multipoles/cli.hpp"

int main(int argc, char** argv) {
  using multipoles::cli::RunConfig;
  RunConfig config;

  CLI::App app{"Maxwell multipoles of Gaussian random spherical functions"};
  app.require_subcommand(1);

  auto add_common = [&config](CLI::App* sub) {
    sub->add_option("--ell", config.ell, "degree l");
    sub->add_option("--seed", config.seed, "master random seed");
    sub->add_option("--out", config.out_path, "primary output file (default stdout)");
    sub->add_option("--workers", config.workers, "worker threads");
    sub->add_option("--precision-bits", config.precision_bits, "MPFR significand bits for extended precision");
    sub->add_option("--coeffs", config.coeffs_path, "coefficient JSON file instead of sampling");
  };

  auto* sample = app.add_subcommand("sample", "one realization: axes CSV and coefficient JSON");
  add_common(sample);
  sample->add_option("--json-out", config.json_out_path, "coefficient JSON output");

  auto* grid = app.add_subcommand("function-grid", "function values on a latitude-longitude grid");
  add_common(grid);
  grid->add_option("--n-theta", config.n_theta, "polar samples, poles included");
  grid->add_option("--n-phi", config.n_phi, "azimuthal samples");

  auto* rho2 = app.add_subcommand("rho2", "two-point correlation on the sphere against theta");
  add_common(rho2);
  rho2->add_option("--theta-min", config.theta_min, "degrees");
  rho2->add_option("--theta-max", config.theta_max, "degrees");
  rho2->add_option("--theta-steps", config.theta_steps, "grid points");
  rho2->add_flag("--normalized", config.normalized, "divide by the squared one-point density");

  auto* mc = app.add_subcommand("mc", "Monte Carlo pair histogram compared with the closed form");
  add_common(mc);
  mc->add_option("--realizations", config.n_realizations, "number of sampled functions");
  mc->add_option("--bins", config.n_bins, "equal-width theta bins on (0, 180)");
  mc->add_option("--json-out", config.json_out_path, "comparison report JSON output");

  auto* limit = app.add_subcommand("limit", "deviation from the large-l limit g(R)");
  add_common(limit);
  limit->add_option("--ells", config.ells, "degrees to study")->delimiter(',');
  limit->add_option("--r-min", config.r_min, "smallest R");
  limit->add_option("--r-max", config.r_max, "largest R");
  limit->add_option("--r-steps", config.r_steps, "grid points in R");
  limit->add_option("--g-out", config.g_out_path, "g(R) table output (default: appended to --out)");

  CLI11_PARSE(app, argc, argv);
  config.subcommand = app.get_subcommands().front()->get_name();
  return multipoles::cli::run(config);
}
