#pragma once

// Monte Carlo estimates of multipole pair correlations and one-point
// uniformity, and their comparison with the closed-form curves.

#include <cstdint>
#include <span>
#include <vector>

#include "multipoles/analytic.hpp"
#include "multipoles/majorana.hpp"

namespace multipoles {

/// Ordered-pair counts of angular separations between the 2l signed
/// multipole points, each point's own antipode excluded, over equal-width
/// theta bins on (0, pi). Per-realization sums and cross products are kept
/// as integers, so merging is exact and order independent.
class PairHistogram {
 public:
  PairHistogram(int ell, int n_bins);

  int ell() const { return ell_; }
  int n_bins() const { return n_bins_; }
  std::uint64_t n_realizations() const { return n_realizations_; }

  double edge(int i) const;  // i = 0..n_bins
  double solid_angle(int bin) const;

  std::uint64_t count(int bin) const { return sum_[static_cast<std::size_t>(bin)]; }
  std::uint64_t total_count() const;

  /// 4 pi count / (n_realizations (2l)^2 solid_angle); 1 for uncorrelated points.
  double g_hat(int bin) const;
  /// Standard error of g_hat from the between-realization variance.
  double stderr_of(int bin) const;
  /// Covariance of the per-realization counts of two bins (unbiased).
  double count_covariance(int bin_a, int bin_b) const;

  /// Add one realization. ms.ell must equal ell().
  void accumulate(const MultipoleSet& ms);
  /// Add another histogram with the same shape.
  void merge(const PairHistogram& other);

  friend bool operator==(const PairHistogram&, const PairHistogram&) = default;

 private:
  int bin_of(double theta) const;

  int ell_;
  int n_bins_;
  std::uint64_t n_realizations_ = 0;
  std::vector<std::uint64_t> sum_;    // sum over realizations of bin counts
  std::vector<std::uint64_t> cross_;  // sum of products of bin counts, n_bins x n_bins
};

struct EstimateOptions {
  int workers = 1;
  MultipoleOptions pipeline;
  /// Abort when more than this fraction of realizations fail the root pipeline.
  double max_failure_rate = 1e-3;
};

struct EstimateResult {
  PairHistogram histogram;
  std::uint64_t failures = 0;
};

/// Realization i draws its coefficients from make_stream(seed, i), so the
/// histogram depends only on (ell, n_realizations, n_bins, seed), never on
/// the worker count. Throws ToleranceError if failures exceed the limit.
EstimateResult estimate(int ell, std::uint64_t n_realizations, int n_bins, std::uint64_t seed,
                        const EstimateOptions& options = {});

struct ComparisonReport {
  int analytic_ell = 0;
  std::vector<double> g_analytic;  // solid-angle average of normalized rho_sphere per bin
  std::vector<double> z;           // NaN for empty bins
  int empty_bins = 0;
  double coverage = 0.0;           // fraction of non-empty bins with |z| <= 3
  /// Mahalanobis chi-square over bins below 90 degrees, one bin dropped for
  /// the fixed-total constraint, using the estimated count covariance.
  double chi_square = 0.0;
  int dof = 0;
  double p_value = 0.0;
};

/// Compare against the closed-form curve of degree analytic_ell (defaults to
/// the histogram's own degree).
ComparisonReport compare(const PairHistogram& hist, int analytic_ell = 0,
                         unsigned precision_bits = kDefaultPrecisionBits);

struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
};

/// One-sample Kolmogorov-Smirnov test against Uniform(lo, hi).
KsResult ks_uniform(std::vector<double> samples, double lo, double hi);

struct DensityReport {
  std::uint64_t n_points = 0;
  KsResult cos_theta;  // against Uniform(-1, 1)
  KsResult phi;        // against Uniform(0, 2 pi)
};

/// Uniformity of the signed multipole points of the given sets.
DensityReport density_check(std::span<const MultipoleSet> sets);
/// Samples n_realizations from make_stream(seed, i) and tests uniformity.
DensityReport density_check(int ell, std::uint64_t n_realizations, std::uint64_t seed);

}  // namespace multipoles
