#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

#include "rpz/quadrature.hpp"

namespace rpz {

// Band-limited real function on S^2: finite expansion in the real
// orthonormal spherical harmonics Y_l^k, l <= max_degree().
struct SymbolFunction {
  struct Term {
    int l = 0;
    int k = 0;  // -l..l, negative = sine branch
    double coeff = 0.0;
  };
  std::vector<Term> terms;

  [[nodiscard]] int max_degree() const;
  [[nodiscard]] double mean() const;  // (1/4pi) integral of f
  [[nodiscard]] double eval(const std::array<double, 3>& x) const;

  // Shipped test symbols.
  static SymbolFunction odd_zonal();        // Y_1^0: antipodally odd
  static SymbolFunction even_quadrupole();  // degree-2 zonal combination
  static SymbolFunction random_band_limited(int max_l, std::uint64_t seed);
};

// Real orthonormal basis {Y_N^k, k = -N..N} of degree-N spherical
// harmonics evaluated at the given unit vectors; rows indexed by k + N.
Eigen::MatrixXd eval_harmonic_basis(int degree,
                                    const std::vector<std::array<double, 3>>& points);

// Mean of f along the great circle through x with tangent v (x, v
// orthonormal); M-point trapezoid, exact for band-limited f when
// M > 2 max_degree.
double geodesic_symbol_average(const SymbolFunction& f, const std::array<double, 3>& x,
                               const std::array<double, 3>& v, int circle_points = 64);

// c_f = mean over the unit cosphere bundle of |geodesic average - mean f|^2
// (normalized Liouville measure: S^2 quadrature times uniform direction).
double predicted_constant(const SymbolFunction& f, int base_order = 40,
                          int direction_count = 32);

struct S2Statistic {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  int draws = 0;
};

// Quantum ergodicity variance statistic over Haar-random orthonormal bases
// of degree-N spherical harmonics:
// S2 = (1/(2N+1)) sum_j |<f phi_j, phi_j> - mean f|^2, averaged over ONB
// draws. The per-element normalization is what makes E[S2] ~ c_f / N.
S2Statistic s2_statistic(int degree, const SymbolFunction& f, int onb_draws,
                         std::uint64_t seed);

// Off-diagonal diagnostic: mean over draws of sum_j |<f phi_j, phi_{j+gap}>|^2.
double off_diagonal_sum(int degree, const SymbolFunction& f, int gap, int onb_draws,
                        std::uint64_t seed);

}  // namespace rpz
