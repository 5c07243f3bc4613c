#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "multipoles/ensemble.hpp"
#include "multipoles/polyroots.hpp"

using namespace multipoles;
using namespace multipoles::polyroots;

namespace {

std::vector<complex> poly_from_roots(const std::vector<complex>& roots) {
  std::vector<complex> c{1.0};
  for (const auto& r : roots) {
    std::vector<complex> next(c.size() + 1, 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) {
      next[j + 1] += c[j];
      next[j] -= r * c[j];
    }
    c = std::move(next);
  }
  return c;
}

// Every expected root has a distinct found root within tol.
bool matches(std::vector<complex> found, const std::vector<complex>& expected, double tol) {
  if (found.size() != expected.size()) return false;
  for (const auto& e : expected) {
    auto it = std::min_element(found.begin(), found.end(),
                               [&](complex a, complex b) { return std::abs(a - e) < std::abs(b - e); });
    if (std::abs(*it - e) > tol) return false;
    found.erase(it);
  }
  return true;
}

std::vector<complex> kostlan(int degree, Rng& rng) {
  std::normal_distribution<double> g;
  std::vector<complex> c(static_cast<std::size_t>(degree) + 1);
  for (int j = 0; j <= degree; ++j) {
    const double w = std::exp(0.5 * (std::lgamma(degree + 1.0) - std::lgamma(j + 1.0) - std::lgamma(degree - j + 1.0)));
    c[static_cast<std::size_t>(j)] = w * complex(g(rng), g(rng));
  }
  return c;
}

}  // namespace

TEST_CASE("evaluation helpers") {
  const std::vector<complex> c{-1.0, 0.0, 1.0};  // z^2 - 1
  const auto e = evaluate(c, 3.0);
  CHECK(e.value == complex(8.0));
  CHECK(e.derivative == complex(6.0));
  CHECK(backward_error(c, 1.0) == 0.0);
  CHECK(backward_error(c, -1.0) == 0.0);
  CHECK(backward_error(c, 2.0) == doctest::Approx(3.0 / 5.0));

  // Both branches of the Newton correction agree with p / p'.
  const std::vector<complex> cubic{complex(1, 2), complex(-3, 0.5), 2.0, complex(0.5, -1)};
  for (complex z : {complex(0.3, 0.1), complex(4.0, -2.0), complex(-30.0, 7.0)}) {
    const auto ev = evaluate(cubic, z);
    CHECK(std::abs(newton_correction(cubic, z) - ev.value / ev.derivative) < 1e-12 * std::abs(z));
  }
}

TEST_CASE("companion matrix roots") {
  const std::vector<complex> expected{1.0, 2.0, complex(0.0, -3.0), complex(-0.5, 0.25)};
  CHECK(matches(companion_roots(poly_from_roots(expected)), expected, 1e-12));
  CHECK_THROWS_AS(companion_roots(std::vector<complex>{1.0, 0.0}), DegenerateInput);
}

TEST_CASE("Newton polygon starting points") {
  Rng rng = make_stream(1);
  const auto c = kostlan(30, rng);
  CHECK(newton_polygon_guesses(c).size() == 30);
  // A gap in the coefficient list still yields the full count.
  const std::vector<complex> sparse{1.0, 0.0, 0.0, 0.0, 1.0};
  CHECK(newton_polygon_guesses(sparse).size() == 4);
}

TEST_CASE("Aberth-Ehrlich iteration") {
  SUBCASE("known roots") {
    const std::vector<complex> expected{1.0, 2.0, complex(0.0, -3.0), complex(-0.5, 0.25), complex(1e3, 1.0),
                                        complex(1e-3, -1e-3)};
    CHECK(matches(aberth_roots(poly_from_roots(expected)), expected, 1e-10));
  }
  SUBCASE("agrees with the companion solver") {
    Rng rng = make_stream(2);
    const auto c = kostlan(40, rng);
    auto a = aberth_roots(c);
    auto b = companion_roots(c);
    polish(c, b);
    CHECK(matches(a, b, 1e-9));
  }
  SUBCASE("degree 200 with coefficients spanning 60 decades") {
    Rng rng = make_stream(3);
    const auto c = kostlan(200, rng);
    const auto roots = aberth_roots(c);
    REQUIRE(roots.size() == 200);
    double worst = 0.0;
    for (const auto& z : roots) worst = std::max(worst, backward_error(c, z));
    // Converged roots stop at a backward error of about n * eps.
    CHECK(worst < 8 * 200 * std::numeric_limits<double>::epsilon());
  }
  CHECK_THROWS_AS(aberth_roots(std::vector<complex>{0.0, 1.0}), DegenerateInput);
}

TEST_CASE("polishing never merges distinct roots") {
  const std::vector<complex> expected{1.0, 1.0 + 1e-7, -2.0};
  const auto c = poly_from_roots(expected);
  std::vector<complex> roots{1.0 - 1e-9, 1.0 + 1e-7 + 1e-9, -2.0 + 1e-9};
  polish(c, roots);
  CHECK(std::abs(roots[0] - roots[1]) > 5e-8);
  CHECK(matches(roots, expected, 1e-8));
}
