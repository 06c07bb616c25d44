#pragma once

#include <cstdint>
#include <vector>

#include "rpz/kacrice.hpp"
#include "rpz/zeros_crits.hpp"

namespace rpz {

// Equal-area partition of the projective line (viewed as the round sphere):
// uniform bands in the third sphere coordinate times uniform azimuth
// sectors.
struct SphereCells {
  int bands = 10;
  int sectors = 10;
  [[nodiscard]] int count() const { return bands * sectors; }
  [[nodiscard]] int index(const ProjectivePoint& p) const;
};

struct DensityHistogram {
  SphereCells cells;
  std::vector<double> mass;  // multiplicity-weighted point counts per cell
  double total_mass = 0.0;
  int sample_count = 0;

  void merge(const DensityHistogram& other);
};

DensityHistogram empirical_density(const std::vector<PointProcessSample>& samples,
                                   const SphereCells& cells);

// Pearson chi-square statistic of the histogram against the uniform law.
double chi_square_uniform(const DensityHistogram& hist);

// Total-variation distance of the mass-normalized histogram from uniform.
double tv_distance_uniform(const DensityHistogram& hist);

struct PairCorrelationResult {
  CorrelationCurve curve;  // source = MonteCarlo
  std::vector<double> ci_lo, ci_hi;        // 3 sigma
  std::vector<std::int64_t> pair_counts;
  std::vector<bool> low_confidence;        // < 100 aggregate pairs
};

// Ripley-style scaled pair correlation around the chart origin. Pair
// separations use the invariant scaled radius r = sqrt(N) * d_FS; reference
// points are restricted to the inner window r <= r_max / 2. The
// normalization is exact for the FS-uniform intensity: the expected count
// in an annulus [r1, r2] is N (sin^2(r2/sqrt(N)) - sin^2(r1/sqrt(N))).
PairCorrelationResult pair_correlation_mc(const std::vector<PointProcessSample>& samples,
                                          int degree, int bins, double r_max);

struct HoleProbabilityReport {
  std::vector<double> d_grid;
  std::vector<double> p_hat;
  std::vector<double> ci_lo, ci_hi;  // Wilson 95% intervals
  double slope = 0.0;                // of log p vs D^2
  double intercept = 0.0;
  double r_squared = 0.0;
  double fit_d_min = 0.0, fit_d_max = 0.0;
  bool fit_ok = false;
};

// Emptiness frequency of the FS ball of radius D/sqrt(N) about the chart
// origin, with a weighted log-linear fit on the range p in [1e-3, 0.5].
HoleProbabilityReport hole_probability(const std::vector<PointProcessSample>& samples,
                                       int degree, const std::vector<double>& d_grid);

struct CriticalCountFit {
  std::vector<int> degrees;
  std::vector<double> mean_counts;
  std::vector<double> stderrs;
  double gamma = 0.0;        // slope of mean count vs N
  double gamma_stderr = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int failed_samples = 0;
};

CriticalCountFit critical_count_fit(const std::vector<int>& degrees, int samples_per_degree,
                                    std::uint64_t seed);

struct EquidistributionTrace {
  std::vector<int> degrees;
  std::vector<double> tv_per_degree;   // per-degree TV distance from uniform
  std::vector<double> tv_cesaro;       // TV of the running Cesaro average
};

EquidistributionTrace sequence_equidistribution(const std::vector<PointProcessSample>& zero_samples,
                                                const SphereCells& cells);

// FS-uniform Poisson point process with the given mean count; calibration
// input for the estimators above.
std::vector<PointProcessSample> sample_poisson_uniform(double mean_count, int count,
                                                       std::uint64_t seed);

// Zeros of `count` Gaussian (or spherical) SU(2) samples, in parallel.
std::vector<PointProcessSample> sample_zero_processes(const EnsembleSpec& spec, int count);

struct LineFit {
  double slope = 0.0, intercept = 0.0, slope_stderr = 0.0, r_squared = 0.0;
};
LineFit weighted_least_squares(const std::vector<double>& x, const std::vector<double>& y,
                               const std::vector<double>& w);

}  // namespace rpz
