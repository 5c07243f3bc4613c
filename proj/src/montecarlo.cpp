#include "multipoles/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include <Eigen/Cholesky>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include "multipoles/error.hpp"

namespace multipoles {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Asymptotic Kolmogorov survival function with Stephens' small-sample correction.
double kolmogorov_survival(double d, double n) {
  const double root_n = std::sqrt(n);
  const double lambda = (root_n + 0.12 + 0.11 / root_n) * d;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    if (term < 1e-16 * sum) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

PairHistogram::PairHistogram(int ell, int n_bins)
    : ell_(ell),
      n_bins_(n_bins),
      sum_(static_cast<std::size_t>(std::max(n_bins, 0)), 0),
      cross_(static_cast<std::size_t>(std::max(n_bins, 0)) * static_cast<std::size_t>(std::max(n_bins, 0)), 0) {
  if (ell < 1) throw FormatError("histogram needs ell >= 1");
  if (n_bins < 4) throw FormatError("histogram needs at least 4 bins");
}

double PairHistogram::edge(int i) const { return kPi * i / n_bins_; }

double PairHistogram::solid_angle(int bin) const {
  return 2.0 * kPi * (std::cos(edge(bin)) - std::cos(edge(bin + 1)));
}

std::uint64_t PairHistogram::total_count() const {
  std::uint64_t total = 0;
  for (auto c : sum_) total += c;
  return total;
}

double PairHistogram::g_hat(int bin) const {
  if (n_realizations_ == 0) return kNaN;
  const double points = 2.0 * ell_;
  return 4.0 * kPi * static_cast<double>(count(bin)) /
         (static_cast<double>(n_realizations_) * points * points * solid_angle(bin));
}

double PairHistogram::count_covariance(int bin_a, int bin_b) const {
  if (n_realizations_ < 2) return std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(n_realizations_);
  const double sa = static_cast<double>(count(bin_a));
  const double sb = static_cast<double>(count(bin_b));
  const double sab =
      static_cast<double>(cross_[static_cast<std::size_t>(bin_a) * static_cast<std::size_t>(n_bins_) +
                                 static_cast<std::size_t>(bin_b)]);
  return (sab - sa * sb / n) / (n - 1.0);
}

double PairHistogram::stderr_of(int bin) const {
  if (n_realizations_ < 2) return std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(n_realizations_);
  const double points = 2.0 * ell_;
  const double factor = 4.0 * kPi / (points * points * solid_angle(bin));
  return factor * std::sqrt(std::max(count_covariance(bin, bin), 0.0) / n);
}

int PairHistogram::bin_of(double theta) const {
  const int b = static_cast<int>(std::floor(theta / kPi * n_bins_));
  return std::clamp(b, 0, n_bins_ - 1);
}

void PairHistogram::accumulate(const MultipoleSet& ms) {
  if (ms.ell != ell_ || ms.axes.size() != static_cast<std::size_t>(ell_)) {
    throw FormatError("multipole set does not match histogram degree");
  }
  std::vector<std::uint64_t> local(static_cast<std::size_t>(n_bins_), 0);
  // Axis pair (a, b) gives four unordered point pairs: +a+b and -a-b at the
  // axis angle, +a-b and -a+b at its supplement. Ordered pairs count twice.
  for (std::size_t a = 0; a < ms.axes.size(); ++a) {
    const Vec3& ua = ms.axes[a].vector();
    for (std::size_t b = a + 1; b < ms.axes.size(); ++b) {
      const Vec3& ub = ms.axes[b].vector();
      local[static_cast<std::size_t>(bin_of(angle_between(ua, ub)))] += 4;
      local[static_cast<std::size_t>(bin_of(angle_between(ua, -ub)))] += 4;
    }
  }
  std::vector<std::size_t> nonzero;
  for (std::size_t b = 0; b < local.size(); ++b) {
    if (local[b] != 0) nonzero.push_back(b);
  }
  const auto nb = static_cast<std::size_t>(n_bins_);
  for (auto i : nonzero) {
    sum_[i] += local[i];
    for (auto j : nonzero) cross_[i * nb + j] += local[i] * local[j];
  }
  ++n_realizations_;
}

void PairHistogram::merge(const PairHistogram& other) {
  if (other.ell_ != ell_ || other.n_bins_ != n_bins_) throw FormatError("histogram shapes differ");
  for (std::size_t i = 0; i < sum_.size(); ++i) sum_[i] += other.sum_[i];
  for (std::size_t i = 0; i < cross_.size(); ++i) cross_[i] += other.cross_[i];
  n_realizations_ += other.n_realizations_;
}

EstimateResult estimate(int ell, std::uint64_t n_realizations, int n_bins, std::uint64_t seed,
                        const EstimateOptions& options) {
  if (n_realizations < 1) throw FormatError("need at least one realization");
  const int workers = std::max(1, options.workers);

  std::vector<PairHistogram> partial(static_cast<std::size_t>(workers), PairHistogram(ell, n_bins));
  std::vector<std::uint64_t> failures(static_cast<std::size_t>(workers), 0);
  auto work = [&](int w) {
    const std::uint64_t lo = n_realizations * static_cast<std::uint64_t>(w) / static_cast<std::uint64_t>(workers);
    const std::uint64_t hi =
        n_realizations * static_cast<std::uint64_t>(w + 1) / static_cast<std::uint64_t>(workers);
    auto& hist = partial[static_cast<std::size_t>(w)];
    for (std::uint64_t i = lo; i < hi; ++i) {
      Rng rng = make_stream(seed, i);
      const auto cv = sample_coefficients(ell, rng);
      try {
        hist.accumulate(multipoles(cv, options.pipeline));
      } catch (const ToleranceError&) {
        ++failures[static_cast<std::size_t>(w)];
      } catch (const DegenerateInput&) {
        ++failures[static_cast<std::size_t>(w)];
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }

  EstimateResult result{PairHistogram(ell, n_bins), 0};
  for (int w = 0; w < workers; ++w) {
    result.histogram.merge(partial[static_cast<std::size_t>(w)]);
    result.failures += failures[static_cast<std::size_t>(w)];
  }
  if (static_cast<double>(result.failures) > options.max_failure_rate * static_cast<double>(n_realizations)) {
    throw ToleranceError(std::to_string(result.failures) + " of " + std::to_string(n_realizations) +
                         " realizations failed the root pipeline");
  }
  return result;
}

ComparisonReport compare(const PairHistogram& hist, int analytic_ell, unsigned precision_bits) {
  ComparisonReport report;
  report.analytic_ell = analytic_ell > 0 ? analytic_ell : hist.ell();
  const int nb = hist.n_bins();
  report.g_analytic.resize(static_cast<std::size_t>(nb));
  report.z.resize(static_cast<std::size_t>(nb));

  int non_empty = 0;
  int within = 0;
  for (int b = 0; b < nb; ++b) {
    const double lo = hist.edge(b);
    const double hi = hist.edge(b + 1);
    auto weighted = [&](double theta) {
      return rho_sphere(report.analytic_ell, theta, true, precision_bits) * std::sin(theta);
    };
    const double integral = boost::math::quadrature::gauss<double, 15>::integrate(weighted, lo, hi);
    const double g = integral / (std::cos(lo) - std::cos(hi));
    report.g_analytic[static_cast<std::size_t>(b)] = g;
    if (hist.count(b) == 0) {
      report.z[static_cast<std::size_t>(b)] = kNaN;
      ++report.empty_bins;
      continue;
    }
    const double z = (hist.g_hat(b) - g) / hist.stderr_of(b);
    report.z[static_cast<std::size_t>(b)] = z;
    ++non_empty;
    if (std::abs(z) <= 3.0) ++within;
  }
  report.coverage = non_empty > 0 ? static_cast<double>(within) / non_empty : 0.0;

  // Counts in theta and pi - theta mirror each other exactly, so only the
  // lower half carries information; within it the total is fixed.
  std::vector<int> used;
  for (int b = 0; b < nb; ++b) {
    if (hist.edge(b + 1) <= kPi / 2.0 + 1e-12 && hist.count(b) != 0) used.push_back(b);
  }
  if (!used.empty()) used.pop_back();
  const auto dim = static_cast<Eigen::Index>(used.size());
  if (dim == 0 || hist.n_realizations() < 2) {
    report.chi_square = kNaN;
    report.p_value = kNaN;
    return report;
  }
  const double n = static_cast<double>(hist.n_realizations());
  const double points = 2.0 * hist.ell();
  Eigen::VectorXd delta(dim);
  Eigen::MatrixXd cov(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const int b = used[static_cast<std::size_t>(i)];
    const double expected =
        report.g_analytic[static_cast<std::size_t>(b)] * points * points * hist.solid_angle(b) / (4.0 * kPi);
    delta(i) = static_cast<double>(hist.count(b)) / n - expected;
    for (Eigen::Index j = 0; j < dim; ++j) {
      cov(i, j) = hist.count_covariance(b, used[static_cast<std::size_t>(j)]) / n;
    }
  }
  report.chi_square = delta.dot(cov.ldlt().solve(delta));
  report.dof = static_cast<int>(dim);
  const boost::math::chi_squared dist(report.dof);
  report.p_value = boost::math::cdf(boost::math::complement(dist, std::max(report.chi_square, 0.0)));
  return report;
}

KsResult ks_uniform(std::vector<double> samples, double lo, double hi) {
  if (samples.empty()) throw FormatError("KS test on an empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = std::clamp((samples[i] - lo) / (hi - lo), 0.0, 1.0);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return {d, kolmogorov_survival(d, n)};
}

DensityReport density_check(std::span<const MultipoleSet> sets) {
  std::vector<double> cos_theta;
  std::vector<double> phi;
  for (const auto& ms : sets) {
    for (const auto& axis : ms.axes) {
      for (const double sign : {1.0, -1.0}) {
        const Vec3 p = sign * axis.vector();
        cos_theta.push_back(p.z());
        double ph = std::atan2(p.y(), p.x());
        if (ph < 0.0) ph += 2.0 * kPi;
        phi.push_back(ph);
      }
    }
  }
  DensityReport report;
  report.n_points = cos_theta.size();
  report.cos_theta = ks_uniform(std::move(cos_theta), -1.0, 1.0);
  report.phi = ks_uniform(std::move(phi), 0.0, 2.0 * kPi);
  return report;
}

DensityReport density_check(int ell, std::uint64_t n_realizations, std::uint64_t seed) {
  std::vector<MultipoleSet> sets;
  sets.reserve(n_realizations);
  for (std::uint64_t i = 0; i < n_realizations; ++i) {
    Rng rng = make_stream(seed, i);
    sets.push_back(multipoles(sample_coefficients(ell, rng)));
  }
  return density_check(sets);
}

}  // namespace multipoles
