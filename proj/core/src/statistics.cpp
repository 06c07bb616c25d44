#include "rpz/statistics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "rpz/parallel.hpp"

namespace rpz {

namespace {

using cd = std::complex<double>;

std::array<double, 3> to_sphere(const ProjectivePoint& p) {
  const double n0 = std::norm(p.z0);
  const double n1 = std::norm(p.z1);
  const cd cross = 2.0 * std::conj(p.z0) * p.z1;
  const double inv = 1.0 / (n0 + n1);
  return {cross.real() * inv, cross.imag() * inv, (n0 - n1) * inv};
}

// Inverse of to_sphere; the branch keeps the denominator away from 0.
ProjectivePoint from_sphere(double x, double y, double z) {
  if (z < 0.999) return ProjectivePoint(cd(x, -y), cd(1.0 - z, 0.0));
  return ProjectivePoint(cd(1.0 + z, 0.0), cd(x, y));
}

const ProjectivePoint& origin_point() {
  static const ProjectivePoint p(cd(0.0, 0.0), cd(1.0, 0.0));
  return p;
}

}  // namespace

int SphereCells::index(const ProjectivePoint& p) const {
  const auto v = to_sphere(p);
  int band = static_cast<int>((1.0 - v[2]) * 0.5 * bands);
  band = std::clamp(band, 0, bands - 1);
  double phi = std::atan2(v[1], v[0]);
  if (phi < 0.0) phi += 2.0 * M_PI;
  int sector = static_cast<int>(phi / (2.0 * M_PI) * sectors);
  sector = std::clamp(sector, 0, sectors - 1);
  return band * sectors + sector;
}

void DensityHistogram::merge(const DensityHistogram& other) {
  if (mass.empty()) mass.assign(static_cast<std::size_t>(cells.count()), 0.0);
  for (std::size_t i = 0; i < mass.size(); ++i) mass[i] += other.mass[i];
  total_mass += other.total_mass;
  sample_count += other.sample_count;
}

DensityHistogram empirical_density(const std::vector<PointProcessSample>& samples,
                                   const SphereCells& cells) {
  if (samples.empty()) throw std::invalid_argument("empirical_density: no samples");
  DensityHistogram hist;
  hist.cells = cells;
  hist.mass.assign(static_cast<std::size_t>(cells.count()), 0.0);
  for (const auto& s : samples) {
    for (const auto& wp : s.points) {
      hist.mass[static_cast<std::size_t>(cells.index(wp.point))] += wp.multiplicity;
      hist.total_mass += wp.multiplicity;
    }
    ++hist.sample_count;
  }
  return hist;
}

double chi_square_uniform(const DensityHistogram& hist) {
  const double expected = hist.total_mass / hist.cells.count();
  if (expected <= 0.0) throw std::invalid_argument("chi_square_uniform: empty histogram");
  double chi2 = 0.0;
  for (double m : hist.mass) {
    const double d = m - expected;
    chi2 += d * d / expected;
  }
  return chi2;
}

double tv_distance_uniform(const DensityHistogram& hist) {
  if (hist.total_mass <= 0.0) return 1.0;
  const double uniform = 1.0 / hist.cells.count();
  double tv = 0.0;
  for (double m : hist.mass) tv += std::abs(m / hist.total_mass - uniform);
  return 0.5 * tv;
}

PairCorrelationResult pair_correlation_mc(const std::vector<PointProcessSample>& samples,
                                          int degree, int bins, double r_max) {
  if (samples.empty()) throw std::invalid_argument("pair_correlation_mc: no samples");
  if (bins < 1 || r_max <= 0.0) throw std::invalid_argument("pair_correlation_mc: bad binning");
  for (const auto& s : samples)
    if (s.degree != degree)
      throw std::invalid_argument("pair_correlation_mc: mixed degrees");

  const double sqrt_n = std::sqrt(static_cast<double>(degree));
  const double window = 0.5 * r_max;  // inner reference window
  const double bin_w = r_max / bins;
  const std::size_t nb = static_cast<std::size_t>(bins);

  // Expected annulus counts under the FS-uniform intensity.
  std::vector<double> expected(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    const double r1 = bin_w * static_cast<double>(b);
    const double r2 = bin_w * static_cast<double>(b + 1);
    const double s1 = std::sin(r1 / sqrt_n);
    const double s2 = std::sin(r2 / sqrt_n);
    expected[b] = degree * (s2 * s2 - s1 * s1);
  }

  struct Acc {
    std::vector<double> count, denom, sq;
    explicit Acc(std::size_t nb) : count(nb, 0.0), denom(nb, 0.0), sq(nb, 0.0) {}
  };
  std::vector<Acc> accs;
  const int nthreads = effective_threads(samples.size());
  accs.assign(static_cast<std::size_t>(nthreads), Acc(nb));

  parallel_for_chunks(samples.size(), [&](std::size_t b0, std::size_t b1, int tid) {
    Acc& acc = accs[static_cast<std::size_t>(tid)];
    std::vector<double> local(nb);
    std::vector<int> refs_local;
    for (std::size_t si = b0; si < b1; ++si) {
      const auto& pts = samples[si].points;
      std::fill(local.begin(), local.end(), 0.0);
      int nrefs = 0;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const double di = sqrt_n * fs_distance(pts[i].point, origin_point());
        if (di > window) continue;
        nrefs += pts[i].multiplicity;
        for (std::size_t j = 0; j < pts.size(); ++j) {
          if (j == i) continue;
          const double r = sqrt_n * fs_distance(pts[i].point, pts[j].point);
          if (r >= r_max) continue;
          const auto bin = static_cast<std::size_t>(r / bin_w);
          if (bin < nb) local[bin] += pts[i].multiplicity * pts[j].multiplicity;
        }
      }
      for (std::size_t bi = 0; bi < nb; ++bi) {
        acc.count[bi] += local[bi];
        acc.denom[bi] += nrefs * expected[bi];
        acc.sq[bi] += local[bi] * local[bi];
      }
    }
  });

  // Deterministic combination in thread-index order.
  std::vector<double> count(nb, 0.0), denom(nb, 0.0), sq(nb, 0.0);
  for (const auto& acc : accs)
    for (std::size_t b = 0; b < nb; ++b) {
      count[b] += acc.count[b];
      denom[b] += acc.denom[b];
      sq[b] += acc.sq[b];
    }

  PairCorrelationResult out;
  out.curve.source = CurveSource::MonteCarlo;
  out.curve.degree = degree;
  const double ns = static_cast<double>(samples.size());
  for (std::size_t b = 0; b < nb; ++b) {
    out.curve.radii.push_back(bin_w * (static_cast<double>(b) + 0.5));
    const double kappa = denom[b] > 0.0 ? count[b] / denom[b] : 0.0;
    out.curve.values.push_back(kappa);
    // Per-sample spread of bin counts gives the Monte Carlo error.
    const double mean_c = count[b] / ns;
    const double var_c = std::max(0.0, sq[b] / ns - mean_c * mean_c);
    const double sigma = denom[b] > 0.0 ? std::sqrt(var_c * ns) / denom[b] : 0.0;
    out.ci_lo.push_back(kappa - 3.0 * sigma);
    out.ci_hi.push_back(kappa + 3.0 * sigma);
    out.pair_counts.push_back(static_cast<std::int64_t>(count[b]));
    out.low_confidence.push_back(count[b] < 100.0);
  }
  return out;
}

HoleProbabilityReport hole_probability(const std::vector<PointProcessSample>& samples,
                                       int degree, const std::vector<double>& d_grid) {
  if (samples.size() < 1000)
    throw std::invalid_argument("hole_probability: need at least 1e3 samples");
  const double sqrt_n = std::sqrt(static_cast<double>(degree));

  std::vector<double> min_r(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    double m = M_PI;
    for (const auto& wp : samples[i].points)
      m = std::min(m, fs_distance(wp.point, origin_point()));
    min_r[i] = m * sqrt_n;
  });

  HoleProbabilityReport rep;
  rep.d_grid = d_grid;
  const double ns = static_cast<double>(samples.size());
  for (double d : d_grid) {
    std::size_t empty = 0;
    for (double m : min_r)
      if (m > d) ++empty;
    const double p = static_cast<double>(empty) / ns;
    rep.p_hat.push_back(p);
    // Wilson 95% interval.
    const double zq = 1.959963984540054;
    const double z2 = zq * zq;
    const double denom = 1.0 + z2 / ns;
    const double center = (p + z2 / (2.0 * ns)) / denom;
    const double half = zq * std::sqrt(p * (1.0 - p) / ns + z2 / (4.0 * ns * ns)) / denom;
    rep.ci_lo.push_back(std::max(0.0, center - half));
    rep.ci_hi.push_back(std::min(1.0, center + half));
  }

  std::vector<double> x, y, w;
  double dmin = 0.0, dmax = 0.0;
  for (std::size_t i = 0; i < d_grid.size(); ++i) {
    const double p = rep.p_hat[i];
    if (p < 1e-3 || p > 0.5) continue;
    if (x.empty()) dmin = d_grid[i];
    dmax = d_grid[i];
    x.push_back(d_grid[i] * d_grid[i]);
    y.push_back(std::log(p));
    w.push_back(ns * p / (1.0 - p));  // inverse variance of log p-hat
  }
  if (x.size() >= 3) {
    const LineFit fit = weighted_least_squares(x, y, w);
    rep.slope = fit.slope;
    rep.intercept = fit.intercept;
    rep.r_squared = fit.r_squared;
    rep.fit_d_min = dmin;
    rep.fit_d_max = dmax;
    rep.fit_ok = true;
  }
  return rep;
}

std::vector<PointProcessSample> sample_zero_processes(const EnsembleSpec& spec, int count) {
  std::vector<PointProcessSample> out(static_cast<std::size_t>(count));
  parallel_for(static_cast<std::size_t>(count), [&](std::size_t i) {
    auto s = spec.measure == Measure::Gaussian
                 ? sample_gaussian(spec, 1, static_cast<int>(i))
                 : sample_spherical(spec, 1, static_cast<int>(i));
    out[i] = find_zeros(s.front());
  });
  return out;
}

CriticalCountFit critical_count_fit(const std::vector<int>& degrees, int samples_per_degree,
                                    std::uint64_t seed) {
  if (degrees.size() < 2)
    throw std::invalid_argument("critical_count_fit: need at least 2 degrees");
  CriticalCountFit fit;
  fit.degrees = degrees;

  for (int n : degrees) {
    EnsembleSpec spec{Family::Su2Poly, n, Measure::Gaussian, seed};
    std::vector<double> counts(static_cast<std::size_t>(samples_per_degree), -1.0);
    parallel_for(counts.size(), [&](std::size_t i) {
      auto s = sample_gaussian(spec, 1, static_cast<int>(i));
      try {
        counts[i] = find_critical_points(s.front()).total_multiplicity();
      } catch (const std::exception&) {
        counts[i] = -1.0;  // excluded below
      }
    });
    double sum = 0.0, sum2 = 0.0;
    int good = 0;
    for (double c : counts) {
      if (c < 0.0) {
        ++fit.failed_samples;
        continue;
      }
      sum += c;
      sum2 += c * c;
      ++good;
    }
    const double mean = sum / good;
    fit.mean_counts.push_back(mean);
    fit.stderrs.push_back(std::sqrt(std::max(0.0, sum2 / good - mean * mean) / good));
  }

  std::vector<double> x(degrees.begin(), degrees.end());
  std::vector<double> w(degrees.size(), 1.0);
  const LineFit lf = weighted_least_squares(x, fit.mean_counts, w);
  fit.gamma = lf.slope;
  fit.gamma_stderr = lf.slope_stderr;
  fit.intercept = lf.intercept;
  fit.r_squared = lf.r_squared;
  return fit;
}

EquidistributionTrace sequence_equidistribution(
    const std::vector<PointProcessSample>& zero_samples, const SphereCells& cells) {
  EquidistributionTrace trace;
  std::vector<double> cesaro(static_cast<std::size_t>(cells.count()), 0.0);
  int k = 0;
  for (const auto& s : zero_samples) {
    DensityHistogram h = empirical_density({s}, cells);
    trace.degrees.push_back(s.degree);
    trace.tv_per_degree.push_back(tv_distance_uniform(h));
    ++k;
    for (std::size_t i = 0; i < cesaro.size(); ++i)
      cesaro[i] += (h.mass[i] / std::max(h.total_mass, 1e-300) - cesaro[i]) / k;
    double tv = 0.0;
    for (double c : cesaro) tv += std::abs(c - 1.0 / cells.count());
    trace.tv_cesaro.push_back(0.5 * tv);
  }
  return trace;
}

std::vector<PointProcessSample> sample_poisson_uniform(double mean_count, int count,
                                                       std::uint64_t seed) {
  std::vector<PointProcessSample> out(static_cast<std::size_t>(count));
  parallel_for(out.size(), [&](std::size_t i) {
    StreamRng rng = StreamRng(seed).substream(0x506f6973ull).substream(i);
    // Knuth's product method; exp(-mean) stays representable well past
    // the budgets used here.
    const double limit = std::exp(-mean_count);
    int n = 0;
    double prod = rng.next_uniform();
    while (prod > limit) {
      ++n;
      prod *= rng.next_uniform();
    }
    PointProcessSample s;
    s.kind = PointKind::Zeros;
    s.degree = static_cast<int>(mean_count);
    for (int j = 0; j < n; ++j) {
      const double z = 2.0 * rng.next_uniform() - 1.0;
      const double phi = 2.0 * M_PI * rng.next_uniform();
      const double st = std::sqrt(std::max(0.0, 1.0 - z * z));
      s.points.push_back({from_sphere(st * std::cos(phi), st * std::sin(phi), z), 1});
      s.residuals.push_back(0.0);
    }
    out[i] = std::move(s);
  });
  return out;
}

LineFit weighted_least_squares(const std::vector<double>& x, const std::vector<double>& y,
                               const std::vector<double>& w) {
  if (x.size() != y.size() || x.size() != w.size() || x.size() < 2)
    throw std::invalid_argument("weighted_least_squares: bad input");
  double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
    sxx += w[i] * x[i] * x[i];
    sxy += w[i] * x[i] * y[i];
  }
  const double det = sw * sxx - sx * sx;
  LineFit fit;
  fit.slope = (sw * sxy - sx * sy) / det;
  fit.intercept = (sxx * sy - sx * sxy) / det;
  double ss_res = 0.0, ss_tot = 0.0;
  const double ybar = sy / sw;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double pred = fit.slope * x[i] + fit.intercept;
    ss_res += w[i] * (y[i] - pred) * (y[i] - pred);
    ss_tot += w[i] * (y[i] - ybar) * (y[i] - ybar);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  if (x.size() > 2) {
    const double sigma2 = ss_res / (static_cast<double>(x.size()) - 2.0);
    fit.slope_stderr = std::sqrt(sigma2 * sw / det);
  }
  return fit;
}

}  // namespace rpz
