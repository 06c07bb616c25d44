#pragma once

#include <complex>
#include <vector>

#include "rpz/ensembles.hpp"

namespace rpz {

// Point of the projective line in homogeneous coordinates, normalized so
// max(|z0|, |z1|) = 1.
struct ProjectivePoint {
  std::complex<double> z0{0.0, 0.0};
  std::complex<double> z1{1.0, 0.0};

  ProjectivePoint() = default;
  ProjectivePoint(std::complex<double> a, std::complex<double> b);

  // Affine chart coordinate z0/z1 (infinite when z1 = 0).
  [[nodiscard]] std::complex<double> chart() const { return z0 / z1; }
  [[nodiscard]] bool at_infinity() const { return std::abs(z1) == 0.0; }

  static ProjectivePoint from_chart(std::complex<double> z);
  static ProjectivePoint infinity() { return {{1.0, 0.0}, {0.0, 0.0}}; }
};

// Fubini-Study geodesic distance, range [0, pi/2]; antipodal pairs are at
// pi/2. Computed through atan2 so it stays accurate near coincidence.
double fs_distance(const ProjectivePoint& p, const ProjectivePoint& q);

enum class PointKind { Zeros, Crits };

struct WeightedPoint {
  ProjectivePoint point;
  int multiplicity = 1;
};

struct PointProcessSample {
  PointKind kind = PointKind::Zeros;
  int degree = 0;
  std::vector<WeightedPoint> points;
  std::vector<double> residuals;
  // Critical-point solve diagnostics.
  int converged_seeds = 0;
  int total_seeds = 0;
  int near_degenerate_hessians = 0;

  [[nodiscard]] int total_multiplicity() const {
    int m = 0;
    for (const auto& p : points) m += p.multiplicity;
    return m;
  }
};

// Affine-chart coefficients a_k = c_k sqrt(w_k) of an SU(2) sample, lowest
// degree first.
std::vector<std::complex<double>> affine_coefficients(const SectionSample& sample);

// All roots of the affine polynomial by Aberth-Ehrlich simultaneous
// iteration. Exact leading/trailing zero coefficients are deflated to roots
// at infinity / at the origin first.
std::vector<std::complex<double>> aberth_roots(std::vector<std::complex<double>> coeffs,
                                               int* infinity_multiplicity = nullptr,
                                               int* origin_multiplicity = nullptr);

// All N projective zeros of an SU(2) sample, with multiplicity; leading
// coefficients below 1e-12 * max|a_k| are deflated to zeros at infinity.
PointProcessSample find_zeros(const SectionSample& sample);

// Critical points of the Chern connection: solutions of
// s'(z)(1+|z|^2) - N conj(z) s(z) = 0, found by damped Newton from a seed
// grid in both charts, deduplicated in FS distance.
struct CritOptions {
  int grid_per_side = 40;
  double grid_extent = 1.5;
  double dedup_radius = 1e-6;
  double residual_tol = 1e-8;
};
PointProcessSample find_critical_points(const SectionSample& sample,
                                        const CritOptions& opts = {});

// Coefficients of the rotated section s circ g^{-1} for
// g = [[alpha, beta], [-conj(beta), conj(alpha)]] in SU(2), acting on the
// orthonormal coefficient vector. Zeros map by g.
std::vector<std::complex<double>> su2_rotate_coeffs(
    const std::vector<std::complex<double>>& coeffs, std::complex<double> alpha,
    std::complex<double> beta);

// Image of a projective point under the same rotation.
ProjectivePoint su2_rotate_point(const ProjectivePoint& p, std::complex<double> alpha,
                                 std::complex<double> beta);

}  // namespace rpz
