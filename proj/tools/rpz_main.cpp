// Command-line front end: reproducible experiments over the random-section
// ensembles, emitting plot-ready CSV plus a JSON manifest that echoes the
// fully resolved configuration. Rerunning with the same manifest settings
// reproduces every output byte for byte.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include "rpz/ensembles.hpp"
#include "rpz/io.hpp"
#include "rpz/kacrice.hpp"
#include "rpz/kernels.hpp"
#include "rpz/parallel.hpp"
#include "rpz/qe.hpp"
#include "rpz/statistics.hpp"
#include "rpz/zeros_crits.hpp"

namespace fs = std::filesystem;
using rpz::json;

namespace {

constexpr const char* kVersion = RPZ_VERSION;

struct CommonOpts {
  int degree = 50;
  int samples = 1000;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out = ".";
  std::string family = "SU2_POLY";
  std::string measure = "GAUSSIAN";
  std::string format = "csv";
  int threads = 0;
};

// Declared outputs of the run, recorded in the manifest.
struct RunOutputs {
  json config;
  std::vector<std::string> files;
};

std::string manifest_path(const std::string& out) { return out + "/manifest.json"; }

void write_manifest(const std::string& subcommand, const CommonOpts& c, RunOutputs& run) {
  json m;
  m["tool"] = "rpz";
  m["version"] = kVersion;
  m["subcommand"] = subcommand;
  m["config"] = run.config;
  m["outputs"] = run.files;
  rpz::write_text_file(manifest_path(c.out), m.dump(2) + "\n");
}

rpz::EnsembleSpec make_spec(const CommonOpts& c) {
  rpz::EnsembleSpec spec;
  spec.family = rpz::family_from_string(c.family);
  spec.measure = rpz::measure_from_string(c.measure);
  spec.degree = c.degree;
  spec.seed = c.seed;
  return spec;
}

json base_config(const CommonOpts& c) {
  json j;
  j["N"] = c.degree;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["out"] = c.out;
  j["family"] = c.family;
  j["measure"] = c.measure;
  j["format"] = c.format;
  j["threads"] = c.threads;
  return j;
}

void add_common(CLI::App* cmd, CommonOpts& c, bool stochastic) {
  cmd->add_option("--N", c.degree, "Section degree")->check(CLI::NonNegativeNumber);
  cmd->add_option("--samples", c.samples, "Number of Monte Carlo samples")
      ->check(CLI::PositiveNumber);
  auto* seed = cmd->add_option("--seed", c.seed, "RNG seed (required for stochastic runs)");
  if (stochastic) seed->required();
  cmd->add_option("--out", c.out, "Output directory");
  cmd->add_option("--family", c.family, "Ensemble family")
      ->check(CLI::IsMember({"SU2_POLY", "SPHERICAL_HARMONIC_S2"}));
  cmd->add_option("--measure", c.measure, "Coefficient measure")
      ->check(CLI::IsMember({"GAUSSIAN", "SPHERICAL"}));
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", c.threads, "Worker thread cap (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
}

void prepare(const CommonOpts& c) {
  std::error_code ec;
  fs::create_directories(c.out, ec);
  if (ec || !fs::is_directory(c.out))
    throw CLI::ValidationError("--out", "cannot create output directory " + c.out);
  rpz::thread_cap() = c.threads;
}

std::vector<rpz::SectionSample> draw_samples(const rpz::EnsembleSpec& spec, int count) {
  return spec.measure == rpz::Measure::Gaussian ? rpz::sample_gaussian(spec, count)
                                                : rpz::sample_spherical(spec, count);
}

std::string fmt(double v) { return rpz::format_double(v); }

// --- subcommand bodies ----------------------------------------------------

int run_sample(const CommonOpts& c) {
  prepare(c);
  const auto samples = draw_samples(make_spec(c), c.samples);
  json arr = json::array();
  for (const auto& s : samples) arr.push_back(rpz::sample_to_json(s));
  RunOutputs run{base_config(c), {"samples.json"}};
  rpz::write_text_file(c.out + "/samples.json", arr.dump() + "\n");
  write_manifest("sample", c, run);
  return 0;
}

int run_points(const CommonOpts& c, bool crits) {
  prepare(c);
  const auto samples = draw_samples(make_spec(c), c.samples);
  const char* name = crits ? "crits.csv" : "zeros.csv";
  rpz::CsvWriter csv(c.out + "/" + name,
                     {"sample", "re0", "im0", "re1", "im1", "multiplicity"});
  std::vector<rpz::PointProcessSample> processed(samples.size());
  rpz::parallel_for(samples.size(), [&](std::size_t i) {
    processed[i] = crits ? rpz::find_critical_points(samples[i]) : rpz::find_zeros(samples[i]);
  });
  for (std::size_t i = 0; i < processed.size(); ++i) {
    for (const auto& p : processed[i].points) {
      csv.row({std::to_string(i), fmt(p.point.z0.real()), fmt(p.point.z0.imag()),
               fmt(p.point.z1.real()), fmt(p.point.z1.imag()), std::to_string(p.multiplicity)});
    }
  }
  csv.close("manifest.json");
  RunOutputs run{base_config(c), {name}};
  write_manifest(crits ? "crits" : "zeros", c, run);
  return 0;
}

int run_density(const CommonOpts& c, int bands, int sectors) {
  prepare(c);
  const auto processes = rpz::sample_zero_processes(make_spec(c), c.samples);
  rpz::SphereCells cells{bands, sectors};
  const auto hist = rpz::empirical_density(processes, cells);
  rpz::CsvWriter csv(c.out + "/density.csv", {"cell", "band", "sector", "mass", "expected"});
  const double expected = hist.total_mass / cells.count();
  for (int i = 0; i < cells.count(); ++i) {
    csv.row({std::to_string(i), std::to_string(i / sectors), std::to_string(i % sectors),
             fmt(hist.mass[i]), fmt(expected)});
  }
  csv.close("manifest.json");
  RunOutputs run{base_config(c), {"density.csv"}};
  run.config["bands"] = bands;
  run.config["sectors"] = sectors;
  run.config["chi_square"] = rpz::chi_square_uniform(hist);
  run.config["tv_distance"] = rpz::tv_distance_uniform(hist);
  write_manifest("density", c, run);
  return 0;
}

int run_paircorr(const CommonOpts& c, int bins, double rmax) {
  prepare(c);
  const auto processes = rpz::sample_zero_processes(make_spec(c), c.samples);
  const auto res = rpz::pair_correlation_mc(processes, c.degree, bins, rmax);
  rpz::CsvWriter csv(c.out + "/paircorr.csv",
                     {"r_lo", "r_hi", "kappa", "ci_lo", "ci_hi", "pairs", "low_confidence"});
  for (std::size_t i = 0; i < res.curve.values.size(); ++i) {
    const double lo = rmax * double(i) / bins, hi = rmax * double(i + 1) / bins;
    csv.row({fmt(lo), fmt(hi), fmt(res.curve.values[i]), fmt(res.ci_lo[i]), fmt(res.ci_hi[i]),
             std::to_string(res.pair_counts[i]), res.low_confidence[i] ? "1" : "0"});
  }
  csv.close("manifest.json");
  RunOutputs run{base_config(c), {"paircorr.csv"}};
  run.config["bins"] = bins;
  run.config["rmax"] = rmax;
  write_manifest("paircorr", c, run);
  return 0;
}

int run_hole(const CommonOpts& c, int bins, double dmax) {
  prepare(c);
  const auto processes = rpz::sample_zero_processes(make_spec(c), c.samples);
  std::vector<double> d_grid;
  for (int i = 1; i <= bins; ++i) d_grid.push_back(dmax * double(i) / bins);
  const auto rep = rpz::hole_probability(processes, c.degree, d_grid);
  rpz::CsvWriter csv(c.out + "/hole.csv", {"D", "p_hat", "ci_lo", "ci_hi"});
  for (std::size_t i = 0; i < d_grid.size(); ++i)
    csv.row({fmt(d_grid[i]), fmt(rep.p_hat[i]), fmt(rep.ci_lo[i]), fmt(rep.ci_hi[i])});
  csv.close("manifest.json");
  RunOutputs run{base_config(c), {"hole.csv"}};
  run.config["bins"] = bins;
  run.config["Dmax"] = dmax;
  run.config["fit"] = {{"slope", rep.slope},
                       {"intercept", rep.intercept},
                       {"r_squared", rep.r_squared},
                       {"fit_ok", rep.fit_ok},
                       {"fit_d_min", rep.fit_d_min},
                       {"fit_d_max", rep.fit_d_max}};
  write_manifest("hole", c, run);
  return 0;
}

int run_kacrice_curve(const CommonOpts& c, int bins, double rmax, bool with_finite) {
  prepare(c);
  std::vector<double> radii;
  for (int i = 1; i <= bins; ++i) radii.push_back(rmax * double(i) / bins);
  const auto lim = rpz::k2_limit_curve(radii);
  std::vector<std::string> cols{"r", "kappa_limit"};
  if (with_finite) cols.push_back("kappa_N");
  rpz::CsvWriter csv(c.out + "/kacrice.csv", cols);
  rpz::CorrelationCurve fin;
  if (with_finite) fin = rpz::k2_finite_curve(c.degree, radii);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    std::vector<std::string> row{fmt(radii[i]), fmt(lim.values[i])};
    if (with_finite) row.push_back(fmt(fin.values[i]));
    csv.row(row);
  }
  csv.close("manifest.json");
  RunOutputs run{base_config(c), {"kacrice.csv"}};
  run.config["bins"] = bins;
  run.config["rmax"] = rmax;
  run.config["finite_N"] = with_finite;
  write_manifest("kacrice-curve", c, run);
  return 0;
}

int run_kernel_scaling(const CommonOpts& c, const std::string& which,
                       std::vector<int> degrees, double radius, double step) {
  prepare(c);
  if (degrees.empty())
    degrees = which == "complex" ? std::vector<int>{16, 64, 256, 1024}
                                 : std::vector<int>{25, 50, 100, 200};
  rpz::CsvWriter csv(c.out + "/kernel_scaling.csv", {"N", "sup_error"});
  std::vector<double> logs_n, logs_e, ws;
  for (int n : degrees) {
    const auto rep = which == "complex" ? rpz::complex_scaling_error(n, radius, step)
                                        : rpz::real_scaling_error(n, radius, step);
    csv.row({std::to_string(n), fmt(rep.sup_error)});
    logs_n.push_back(std::log(double(n)));
    logs_e.push_back(std::log(rep.sup_error));
    ws.push_back(1.0);
  }
  csv.close("manifest.json");
  const auto fit = rpz::weighted_least_squares(logs_n, logs_e, ws);
  RunOutputs run{base_config(c), {"kernel_scaling.csv"}};
  run.config["case"] = which;
  run.config["degrees"] = degrees;
  run.config["radius"] = radius;
  run.config["step"] = step;
  run.config["rate_exponent"] = fit.slope;
  write_manifest("kernel-scaling", c, run);
  return 0;
}

int run_qe(const CommonOpts& c, std::vector<int> degrees, const std::string& symbol_file) {
  prepare(c);
  if (degrees.empty()) degrees = {c.degree};
  rpz::SymbolFunction f = rpz::SymbolFunction::even_quadrupole();
  if (!symbol_file.empty())
    f = rpz::symbol_from_json(json::parse(rpz::read_text_file(symbol_file)));
  const double cf = rpz::predicted_constant(f);
  rpz::CsvWriter csv(c.out + "/qe.csv",
                     {"N", "draws", "S2_mean", "S2_stderr", "c_f", "N_times_S2"});
  for (int n : degrees) {
    const auto s = rpz::s2_statistic(n, f, c.samples, c.seed);
    csv.row({std::to_string(n), std::to_string(s.draws), fmt(s.mean), fmt(s.stderr_of_mean),
             fmt(cf), fmt(n * s.mean)});
  }
  csv.close("manifest.json");
  RunOutputs run{base_config(c), {"qe.csv"}};
  run.config["degrees"] = degrees;
  run.config["symbol"] = symbol_file.empty() ? json("even_quadrupole")
                                             : json(rpz::symbol_to_json(f));
  write_manifest("qe", c, run);
  return 0;
}

// Fast invariant battery; every check is deterministic or uses a pinned
// seed, and the whole run stays well under two minutes.
int run_validate(const CommonOpts& c) {
  rpz::thread_cap() = c.threads;
  int failures = 0;
  auto check = [&](const char* name, bool ok) {
    std::printf("[%s] %s\n", ok ? "ok" : "FAIL", name);
    if (!ok) ++failures;
  };

  // Monomial weights against the closed form at low degree.
  const auto w2 = rpz::monomial_weights(2);
  check("monomial weights N=2 = {3, 6, 3}",
        std::abs(w2[0] - 3) + std::abs(w2[1] - 6) + std::abs(w2[2] - 3) < 1e-12);

  // Kernel equals its basis expansion.
  {
    const rpz::cplx z{0.4, -0.2}, w{-0.3, 0.6};
    const auto wk = rpz::monomial_weights(12);
    rpz::cplx acc{0, 0}, pw{1, 0};
    const rpz::cplx t = z * std::conj(w);
    for (int k = 0; k <= 12; ++k) {
      acc += wk[k] * pw;
      pw *= t;
    }
    check("reproducing kernel matches basis sum",
          std::abs(rpz::szego_su2(12, z, w) - acc) < 1e-9);
  }

  // Normalized diagonal and scaling-limit landmark.
  check("normalized kernel diagonal = 1",
        std::abs(rpz::szego_su2_normalized(40, {1.1, 0.7}, {1.1, 0.7}) - 1.0) < 1e-12);
  check("complex scaling sup error decreasing",
        rpz::complex_scaling_error(16, 2.0, 0.5).sup_error >
            rpz::complex_scaling_error(64, 2.0, 0.5).sup_error);

  // Exact zero count with tiny residuals.
  {
    rpz::EnsembleSpec spec{rpz::Family::Su2Poly, 40, rpz::Measure::Gaussian, 12};
    bool ok = true;
    for (const auto& s : rpz::sample_gaussian(spec, 25)) {
      const auto z = rpz::find_zeros(s);
      ok = ok && z.total_multiplicity() == 40;
      for (double r : z.residuals) ok = ok && r < 1e-8;
    }
    check("all degree-40 samples have exactly 40 zeros", ok);
  }

  // Jet covariance PSD.
  {
    const auto cov = rpz::build_jpd_covariance(10, {0, 0}, {1, 0});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(cov.full());
    check("jet covariance PSD", es.eigenvalues().minCoeff() > -1e-10);
  }

  // One-point intensity closed form.
  check("one-point intensity closed form",
        std::abs(rpz::k1_density(30, {0.5, 0.5}) - 30.0 / (M_PI * 2.25)) < 1e-9);

  // Pair-correlation limits.
  check("pair correlation repulsion near 0", rpz::kappa_limit(0.05) < 0.01);
  check("pair correlation decorrelates", std::abs(rpz::kappa_limit(8.0) - 1.0) < 1e-3);

  // Poisson calibration of the estimator stack (pinned seed).
  {
    const auto samples = rpz::sample_poisson_uniform(30.0, 4000, 7);
    const auto res = rpz::pair_correlation_mc(samples, 30, 10, 4.0);
    bool ok = true;
    for (std::size_t i = 0; i < res.curve.values.size(); ++i) {
      if (res.low_confidence[i]) continue;
      ok = ok && res.ci_lo[i] <= 1.0 && res.ci_hi[i] >= 1.0;
    }
    check("Poisson pair-correlation calibration", ok);
  }

  // Sphere quadrature and harmonic orthonormality.
  {
    const auto q = rpz::quadrature_s2(9);
    double total = 0;
    for (double w : q.weights) total += w;
    check("sphere quadrature mass 4pi", std::abs(total - 4.0 * M_PI) < 1e-10);
    const auto y = rpz::eval_harmonic_basis(4, q.nodes);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(9, 9);
    for (std::size_t i = 0; i < q.nodes.size(); ++i)
      gram += q.weights[i] * y.col(i) * y.col(i).transpose();
    check("degree-4 harmonic Gram = I",
          (gram - Eigen::MatrixXd::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-10);
  }

  // Variance statistic degeneracies.
  {
    rpz::SymbolFunction cst;
    cst.terms.push_back({0, 0, 2.0});
    check("constant symbol has zero variance statistic",
          rpz::s2_statistic(8, cst, 3, 1).mean < 1e-20);
    check("odd symbol constant vanishes",
          rpz::predicted_constant(rpz::SymbolFunction::odd_zonal()) < 1e-20);
  }

  std::printf("%s\n", failures == 0 ? "validate: all checks passed" : "validate: FAILURES");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for zeros and critical points of random polynomials"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "key=value config file (flags take precedence)");
  app.require_subcommand(1);

  CommonOpts c;
  int bins = 50;
  double rmax = 5.0, dmax = 2.0;
  int bands = 10, sectors = 10;
  std::string scaling_case = "complex";
  std::vector<int> degree_list;
  double grid_radius = 2.0, grid_step = 0.5;
  std::string symbol_file;

  auto* sample = app.add_subcommand("sample", "Draw coefficient samples");
  add_common(sample, c, true);

  auto* zeros = app.add_subcommand("zeros", "Locate projective zeros of random sections");
  add_common(zeros, c, true);

  auto* crits = app.add_subcommand("crits", "Locate connection critical points");
  add_common(crits, c, true);

  auto* density = app.add_subcommand("density", "Zero density over equal-area cells");
  add_common(density, c, true);
  density->add_option("--bands", bands)->check(CLI::PositiveNumber);
  density->add_option("--sectors", sectors)->check(CLI::PositiveNumber);

  auto* paircorr = app.add_subcommand("paircorr", "Monte Carlo scaled pair correlation");
  add_common(paircorr, c, true);
  paircorr->add_option("--bins", bins)->check(CLI::PositiveNumber);
  paircorr->add_option("--rmax", rmax)->check(CLI::PositiveNumber);

  auto* hole = app.add_subcommand("hole", "Hole probability versus scaled radius");
  add_common(hole, c, true);
  hole->add_option("--bins", bins)->check(CLI::PositiveNumber);
  hole->add_option("--Dmax", dmax)->check(CLI::PositiveNumber);

  auto* kacrice = app.add_subcommand("kacrice-curve", "Analytic pair-correlation curves");
  add_common(kacrice, c, false);
  kacrice->add_option("--bins", bins)->check(CLI::PositiveNumber);
  kacrice->add_option("--rmax", rmax)->check(CLI::PositiveNumber);
  bool with_finite = false;
  kacrice->add_flag("--finite", with_finite, "Also evaluate the finite-N curve at --N");

  auto* scaling = app.add_subcommand("kernel-scaling", "Kernel scaling-limit discrepancies");
  add_common(scaling, c, false);
  scaling->add_option("--case", scaling_case)->check(CLI::IsMember({"complex", "real"}));
  scaling->add_option("--degrees", degree_list, "Degrees to evaluate");
  scaling->add_option("--radius", grid_radius)->check(CLI::PositiveNumber);
  scaling->add_option("--step", grid_step)->check(CLI::PositiveNumber);

  auto* qe = app.add_subcommand("qe", "Quantum ergodicity variance statistic");
  add_common(qe, c, true);
  qe->add_option("--degrees", degree_list, "Degrees to evaluate (default: --N)");
  qe->add_option("--symbol", symbol_file, "JSON symbol coefficient file")
      ->check(CLI::ExistingFile);

  auto* validate = app.add_subcommand("validate", "Fast invariant suite");
  add_common(validate, c, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // configuration error
  }

  try {
    if (sample->parsed()) return run_sample(c);
    if (zeros->parsed()) return run_points(c, false);
    if (crits->parsed()) return run_points(c, true);
    if (density->parsed()) return run_density(c, bands, sectors);
    if (paircorr->parsed()) return run_paircorr(c, bins, rmax);
    if (hole->parsed()) return run_hole(c, bins, dmax);
    if (kacrice->parsed()) return run_kacrice_curve(c, bins, rmax, with_finite);
    if (scaling->parsed())
      return run_kernel_scaling(c, scaling_case, degree_list, grid_radius, grid_step);
    if (qe->parsed()) return run_qe(c, degree_list, symbol_file);
    if (validate->parsed()) return run_validate(c);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 1;
  }
  return 2;
}
