#include "multipoles/majorana.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "multipoles/polyroots.hpp"

namespace multipoles {

namespace {

// sqrt(binom(n, k)) by exact-ish product; fine while the result fits a double.
double sqrt_binomial(int n, int k) {
  k = std::min(k, n - k);
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return std::sqrt(b);
}

double log_sqrt_binomial(int n, int k) {
  k = std::min(k, n - k);  // exact symmetry between k and n - k
  return 0.5 * (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

}  // namespace

MajoranaPolynomial build_polynomial(const CoefficientVector& cv) {
  const int l = cv.ell();
  MajoranaPolynomial p;
  p.ell = l;
  p.coeffs.resize(2 * static_cast<std::size_t>(l) + 1);

  if (l <= MajoranaPolynomial::kLogGammaThreshold) {
    for (int m = -l; m <= l; ++m) {
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      p.coeffs[static_cast<std::size_t>(l + m)] = sign * sqrt_binomial(2 * l, l + m) * cv[m];
    }
  } else {
    // Weights span ~30 decades at l = 100: keep them relative to the largest.
    const double log_max = log_sqrt_binomial(2 * l, l);
    for (int m = -l; m <= l; ++m) {
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      const double w = std::exp(log_sqrt_binomial(2 * l, l + m) - log_max);
      p.coeffs[static_cast<std::size_t>(l + m)] = sign * w * cv[m];
    }
    p.log_scale = log_max;
  }

  double max_mod = 0.0;
  for (const auto& c : p.coeffs) max_mod = std::max(max_mod, std::abs(c));
  if (!(max_mod > 0.0)) throw DegenerateInput("Majorana polynomial of an all-zero coefficient vector");
  if (l > MajoranaPolynomial::kLogGammaThreshold) {
    for (auto& c : p.coeffs) c /= max_mod;
    p.log_scale += std::log(max_mod);
  }
  return p;
}

double antipodal_defect(const MajoranaPolynomial& p) {
  const int n = 2 * p.ell;
  double max_mod = 0.0;
  for (const auto& c : p.coeffs) max_mod = std::max(max_mod, std::abs(c));
  double worst = 0.0;
  for (int j = 0; j <= n; ++j) {
    const complex cj = std::conj(p.coeffs[static_cast<std::size_t>(j)]);
    const complex expected = ((p.ell + j) % 2 == 0) ? cj : -cj;
    worst = std::max(worst, std::abs(p.coeffs[static_cast<std::size_t>(n - j)] - expected));
  }
  return max_mod > 0.0 ? worst / max_mod : 0.0;
}

RootSet find_roots(const MajoranaPolynomial& p, const RootOptions& options) {
  const std::span<const complex> c(p.coeffs);
  const int n = static_cast<int>(c.size()) - 1;
  double max_mod = 0.0;
  for (const auto& cj : c) max_mod = std::max(max_mod, std::abs(cj));
  if (!(max_mod > 0.0)) throw DegenerateInput("root finding on the zero polynomial");

  // Vanishing is judged on the unweighted a_m: the binomial weights alone
  // span ~14 decades by l = 50, so a raw cut would deflate genuine roots.
  std::vector<double> bare(c.size());
  double max_bare = 0.0;
  for (int j = 0; j <= n; ++j) {
    bare[static_cast<std::size_t>(j)] =
        std::abs(c[static_cast<std::size_t>(j)]) * std::exp(-log_sqrt_binomial(n, j));
    max_bare = std::max(max_bare, bare[static_cast<std::size_t>(j)]);
  }
  const double cut = options.zero_threshold * max_bare;
  int bottom = 0;
  while (bottom <= n && bare[static_cast<std::size_t>(bottom)] < cut) ++bottom;
  int top = 0;
  while (top <= n && bare[static_cast<std::size_t>(n - top)] < cut) ++top;

  RootSet out;
  out.roots.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < bottom; ++j) {
    out.max_residual = std::max(out.max_residual, std::abs(c[static_cast<std::size_t>(j)]) / max_mod);
    out.roots.push_back(ProjectivePoint::from_zeta(0.0));
  }
  for (int j = 0; j < top; ++j) {
    out.max_residual = std::max(out.max_residual, std::abs(c[static_cast<std::size_t>(n - j)]) / max_mod);
    out.roots.push_back(ProjectivePoint::infinity());
  }

  const auto deflated = c.subspan(static_cast<std::size_t>(bottom), static_cast<std::size_t>(n - top - bottom + 1));
  if (deflated.size() > 1) {
    std::vector<complex> finite = (p.ell <= options.companion_max_ell) ? polyroots::companion_roots(deflated)
                                                                       : polyroots::aberth_roots(deflated);
    polyroots::polish(c, finite);
    for (const auto& z : finite) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ToleranceError("non-finite root");
      out.max_residual = std::max(out.max_residual, polyroots::backward_error(c, z));
      out.roots.push_back(ProjectivePoint::from_zeta(z));
    }
  }

  if (out.max_residual > options.residual_tolerance) {
    throw ToleranceError("root residual " + std::to_string(out.max_residual) + " exceeds tolerance");
  }
  return out;
}

MultipoleSet pair_antipodes(std::span<const ProjectivePoint> roots, double tol) {
  if (roots.size() % 2 != 0) throw DegenerateInput("antipodal pairing needs an even number of roots");
  const std::size_t n = roots.size();
  std::vector<Vec3> v;
  v.reserve(n);
  for (const auto& r : roots) v.push_back(inverse_stereographic(r));

  std::vector<std::tuple<double, std::size_t, std::size_t>> candidates;
  candidates.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) candidates.emplace_back(angle_between(v[i], -v[j]), i, j);
  }
  std::sort(candidates.begin(), candidates.end());

  MultipoleSet out;
  out.ell = static_cast<int>(n / 2);
  out.axes.reserve(n / 2);
  std::vector<bool> used(n, false);
  for (const auto& [angle, i, j] : candidates) {
    if (used[i] || used[j]) continue;
    used[i] = used[j] = true;
    out.pairing_residual = std::max(out.pairing_residual, angle);
    out.axes.emplace_back(v[i] - v[j]);
    if (out.axes.size() == n / 2) break;
  }
  if (out.pairing_residual > tol) {
    throw ToleranceError("antipodal pairing residual " + std::to_string(out.pairing_residual) +
                         " rad exceeds tolerance");
  }
  return out;
}

MultipoleSet multipoles(const CoefficientVector& cv, const MultipoleOptions& options) {
  const auto poly = build_polynomial(cv);
  const auto roots = find_roots(poly, options.roots);
  auto set = pair_antipodes(roots.roots, options.pairing_tolerance);
  set.root_residual = roots.max_residual;
  return set;
}

}  // namespace multipoles
