#include "multipoles/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "multipoles/error.hpp"

namespace multipoles::polyroots {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Parlett-Reinsch balancing with radix-2 scale factors.
void balance(Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double r = 0.0;
      double c = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

}  // namespace

Evaluation evaluate(std::span<const complex> c, complex z) {
  complex p = 0.0;
  complex dp = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

double backward_error(std::span<const complex> c, complex z) {
  const double az = std::abs(z);
  complex p = 0.0;
  double scale = 0.0;
  if (az <= 1.0) {
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      p = p * z + *it;
      scale = scale * az + std::abs(*it);
    }
  } else {
    const complex w = 1.0 / z;
    const double aw = 1.0 / az;
    for (const auto& cj : c) {
      p = p * w + cj;
      scale = scale * aw + std::abs(cj);
    }
  }
  return scale > 0.0 ? std::abs(p) / scale : 0.0;
}

complex newton_correction(std::span<const complex> c, complex z) {
  if (std::abs(z) <= 1.0) {
    const auto [p, dp] = evaluate(c, z);
    return p / dp;
  }
  const complex w = 1.0 / z;
  complex g = 0.0;
  complex dg = 0.0;
  for (const auto& cj : c) {
    dg = dg * w + g;
    g = g * w + cj;
  }
  const double n = static_cast<double>(c.size() - 1);
  return z * g / (n * g - w * dg);
}

std::vector<complex> companion_roots(std::span<const complex> c) {
  const auto n = static_cast<Eigen::Index>(c.size()) - 1;
  if (n < 1) return {};
  if (c.back() == complex(0.0)) throw DegenerateInput("companion matrix needs a nonzero leading coefficient");
  if (n == 1) return {-c[0] / c[1]};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  balance(companion);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw ToleranceError("companion eigenvalue iteration did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<complex> newton_polygon_guesses(std::span<const complex> c) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<int> hull;
  std::vector<double> logs(c.size(), -std::numeric_limits<double>::infinity());
  for (int j = 0; j <= n; ++j) {
    const double a = std::abs(c[static_cast<std::size_t>(j)]);
    if (a == 0.0) continue;
    logs[static_cast<std::size_t>(j)] = std::log(a);
    // Upper hull by monotone chain.
    while (hull.size() >= 2) {
      const int i0 = hull[hull.size() - 2];
      const int i1 = hull.back();
      const double cross = (i1 - i0) * (logs[static_cast<std::size_t>(j)] - logs[static_cast<std::size_t>(i0)]) -
                           (j - i0) * (logs[static_cast<std::size_t>(i1)] - logs[static_cast<std::size_t>(i0)]);
      if (cross >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(j);
  }

  constexpr double sigma = 0.7;
  std::vector<complex> guesses;
  guesses.reserve(static_cast<std::size_t>(n));
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const int k0 = hull[h];
    const int k1 = hull[h + 1];
    const int mult = k1 - k0;
    const double radius =
        std::exp((logs[static_cast<std::size_t>(k0)] - logs[static_cast<std::size_t>(k1)]) / mult);
    for (int j = 0; j < mult; ++j) {
      const double angle = 2.0 * std::numbers::pi * (double(j) / mult + double(k0) / n) + sigma;
      guesses.push_back(std::polar(radius, angle));
    }
  }
  return guesses;
}

std::vector<complex> aberth_roots(std::span<const complex> c, int max_iterations) {
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return {};
  if (c.front() == complex(0.0) || c.back() == complex(0.0)) {
    throw DegenerateInput("Aberth iteration needs nonzero end coefficients");
  }
  std::vector<complex> z = newton_polygon_guesses(c);
  std::vector<bool> converged(static_cast<std::size_t>(n), false);
  const double noise = 4.0 * n * kEps;
  int remaining = n;
  for (int iter = 0; iter < max_iterations && remaining > 0; ++iter) {
    for (int i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      if (converged[ui]) continue;
      if (backward_error(c, z[ui]) <= noise) {
        converged[ui] = true;
        --remaining;
        continue;
      }
      const complex ratio = newton_correction(c, z[ui]);
      complex sum = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j != i) sum += 1.0 / (z[ui] - z[static_cast<std::size_t>(j)]);
      }
      const complex step = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[ui] -= step;
      if (std::abs(step) <= 2.0 * kEps * std::abs(z[ui])) {
        converged[ui] = true;
        --remaining;
      }
    }
  }
  if (remaining > 0) throw ToleranceError("Aberth iteration did not converge");
  return z;
}

void polish(std::span<const complex> c, std::vector<complex>& roots, int steps) {
  const std::size_t n = roots.size();
  for (std::size_t i = 0; i < n; ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) nearest = std::min(nearest, std::abs(roots[i] - roots[j]));
    }
    double err = backward_error(c, roots[i]);
    complex moved = 0.0;
    for (int s = 0; s < steps && err > 0.0; ++s) {
      const complex step = newton_correction(c, roots[i]);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      const complex candidate = roots[i] - step;
      const double cand_err = backward_error(c, candidate);
      if (cand_err >= err || std::abs(moved + step) >= 0.5 * nearest) break;
      moved += step;
      roots[i] = candidate;
      err = cand_err;
    }
  }
}

}  // namespace multipoles::polyroots
