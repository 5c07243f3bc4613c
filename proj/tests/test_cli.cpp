#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "multipoles/cli.hpp"
#include "multipoles/error.hpp"

using namespace multipoles;
using namespace multipoles::cli;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

RunConfig config_for(const std::string& sub) {
  RunConfig c;
  c.subcommand = sub;
  return c;
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(-3.0) == "-3");
  const double third = 1.0 / 3.0;
  CHECK(std::stod(format_number(third)) == third);
}

TEST_CASE("linear grid") {
  CHECK(linear_grid(1.0, 3.0, 3) == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(linear_grid(2.0, 5.0, 1) == std::vector<double>{2.0});
  CHECK_THROWS_AS(linear_grid(0.0, 1.0, 0), FormatError);
}

TEST_CASE("validation") {
  auto c = config_for("nope");
  CHECK_THROWS_AS(validate(c), FormatError);
  c = config_for("sample");
  c.ell = 0;
  CHECK_THROWS_AS(validate(c), FormatError);
  c.ell = 201;
  CHECK_THROWS_AS(validate(c), FormatError);
  c = config_for("rho2");
  c.theta_min = 0.0;
  CHECK_THROWS_AS(validate(c), FormatError);
  c = config_for("limit");
  c.ells = {5};
  CHECK_THROWS_AS(validate(c), FormatError);
  c = config_for("mc");
  c.n_bins = 2;
  CHECK_THROWS_AS(validate(c), FormatError);
  CHECK(run(c) == 2);
}

TEST_CASE("sample defaults give l rows") {
  auto c = config_for("sample");
  std::ostringstream csv;
  cmd_sample(c, csv, nullptr);
  CHECK(lines_of(csv.str()).size() == 11);  // header + 10 axes at the default l = 10, seed 1
}

TEST_CASE("sample") {
  auto c = config_for("sample");
  c.ell = 6;
  c.seed = 19;
  std::ostringstream csv;
  std::ostringstream json;
  cmd_sample(c, csv, &json);
  const auto rows = lines_of(csv.str());
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == "x,y,z");

  std::ostringstream again;
  cmd_sample(c, again, nullptr);
  CHECK(again.str() == csv.str());

  // Reading the written coefficients back reproduces the axes.
  const auto path = std::filesystem::temp_directory_path() / "multipoles_test_coeffs.json";
  {
    std::ofstream f(path);
    f << json.str();
  }
  auto from_file = config_for("sample");
  from_file.coeffs_path = path.string();
  std::ostringstream replay;
  cmd_sample(from_file, replay, nullptr);
  CHECK(replay.str() == csv.str());

  {
    std::ofstream f(path);
    f << R"({"l":1,"a":[[1.0,0.0],[0.0,0.0]]})";
  }
  std::ostringstream dipole;
  cmd_sample(from_file, dipole, nullptr);
  CHECK(dipole.str() == "x,y,z\n0,0,1\n");
  std::filesystem::remove(path);
}

TEST_CASE("function grid") {
  auto c = config_for("function-grid");
  c.ell = 3;
  c.n_theta = 5;
  c.n_phi = 4;
  std::ostringstream csv;
  cmd_function_grid(c, csv);
  const auto rows = lines_of(csv.str());
  REQUIRE(rows.size() == 1 + 5 * 4);
  CHECK(rows[0] == "theta_deg,phi_deg,value");
  CHECK(rows[1].rfind("0,0,", 0) == 0);
  CHECK(rows.back().rfind("180,270,", 0) == 0);
}

TEST_CASE("function grid of a supplied dipole") {
  const auto path = std::filesystem::temp_directory_path() / "multipoles_test_dipole.json";
  {
    std::ofstream f(path);
    f << R"({"l":1,"a":[[1.0,0.0],[0.0,0.0]]})";
  }
  auto c = config_for("function-grid");
  c.coeffs_path = path.string();
  c.n_theta = 3;
  c.n_phi = 2;
  std::ostringstream csv;
  cmd_function_grid(c, csv);
  const auto rows = lines_of(csv.str());
  const double north = std::stod(rows[1].substr(rows[1].rfind(',') + 1));
  CHECK(north == doctest::Approx(0.48860).epsilon(1e-5));
  std::filesystem::remove(path);
}

TEST_CASE("rho2 at l = 2 reproduces the closed form and l = 100 stays finite") {
  auto c = config_for("rho2");
  c.ell = 2;
  std::ostringstream csv;
  cmd_rho2(c, csv);
  const auto rows = lines_of(csv.str());
  REQUIRE(rows.size() == 180);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double deg = std::stod(rows[i]);
    const double value = std::stod(rows[i].substr(rows[i].find(',') + 1));
    CHECK(std::abs(value - rho_sphere_l2(deg * std::numbers::pi / 180.0, false)) <= 1e-9);
  }

  c.ell = 100;
  c.normalized = true;
  std::ostringstream big;
  cmd_rho2(c, big);
  for (const auto& row : lines_of(big.str())) {
    if (row.rfind("theta", 0) == 0) continue;
    CHECK(std::isfinite(std::stod(row.substr(row.find(',') + 1))));
  }
}

TEST_CASE("rho2 table") {
  auto c = config_for("rho2");
  c.ell = 2;
  c.theta_min = 90.0;
  c.theta_max = 90.0;
  c.theta_steps = 1;
  c.normalized = true;
  std::ostringstream csv;
  cmd_rho2(c, csv);
  const auto rows = lines_of(csv.str());
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "theta_deg,rho");
  const double value = std::stod(rows[1].substr(rows[1].find(',') + 1));
  CHECK(value == doctest::Approx(0.8660254).epsilon(1e-7));
}

TEST_CASE("Monte Carlo command") {
  auto c = config_for("mc");
  c.ell = 3;
  c.n_realizations = 300;
  c.n_bins = 12;
  std::ostringstream csv;
  std::ostringstream json;
  cmd_mc(c, csv, &json);
  const auto rows = lines_of(csv.str());
  REQUIRE(rows.size() == 13);
  CHECK(rows[0] == "theta_lo_deg,theta_hi_deg,count,g_hat,stderr,g_analytic,z");
  CHECK(json.str().find("\"realizations\": 300") != std::string::npos);
  CHECK(json.str().find("\"p_value\"") != std::string::npos);
}

TEST_CASE("limit command") {
  auto c = config_for("limit");
  c.ells = {10, 20};
  c.r_min = 0.5;
  c.r_max = 2.0;
  c.r_steps = 4;
  std::ostringstream dev;
  std::ostringstream g;
  cmd_limit(c, dev, g);
  const auto dev_rows = lines_of(dev.str());
  REQUIRE(dev_rows.size() == 3);
  CHECK(dev_rows[0] == "ell,deviation");
  CHECK(dev_rows[1].rfind("10,", 0) == 0);
  const auto g_rows = lines_of(g.str());
  REQUIRE(g_rows.size() == 1 + 1 + 4 + 1);  // header, R = 0, grid, peak
  CHECK(g_rows[0] == "R,g");
  CHECK(g_rows[1] == "0,0");
  CHECK(g_rows[4].rfind("1.49852", 0) == 0);  // peak falls between 1 and 1.5
  const double g_peak = std::stod(g_rows[4].substr(g_rows[4].find(',') + 1));
  CHECK(std::abs(g_peak - 1.0531) <= 0.0005);
  const double d10 = std::stod(dev_rows[1].substr(3));
  const double d20 = std::stod(dev_rows[2].substr(3));
  CHECK(d20 < d10);
}
