#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

namespace rpz {

// Covariance of the 1-jet (values, covariant derivatives) of the Gaussian
// section at n points, in the weight-normalized frame with derivatives
// scaled by 1/sqrt(N). Full block matrix (A, B; B^H, C) is Hermitian PSD.
struct JPDCovariance {
  int n = 1;
  Eigen::MatrixXcd A;  // E[s_p conj(s_q)]
  Eigen::MatrixXcd B;  // E[s_p conj(xi_q)]
  Eigen::MatrixXcd C;  // E[xi_p conj(xi_q)]
  bool near_coincident = false;

  [[nodiscard]] Eigen::MatrixXcd full() const {
    Eigen::MatrixXcd m(2 * n, 2 * n);
    m.topLeftCorner(n, n) = A;
    m.topRightCorner(n, n) = B;
    m.bottomLeftCorner(n, n) = B.adjoint();
    m.bottomRightCorner(n, n) = C;
    return m;
  }
};

enum class CurveSource { MonteCarlo, FiniteN, Limit };

struct CorrelationCurve {
  std::vector<double> radii;
  std::vector<double> values;
  CurveSource source = CurveSource::Limit;
  std::optional<int> degree;
};

// Finite-N jet covariance from exact covariant derivatives of the SU(2)
// Szego closed form (Chern connection of the Fubini-Study metric).
JPDCovariance build_jpd_covariance(int degree, std::complex<double> z);
JPDCovariance build_jpd_covariance(int degree, std::complex<double> z1,
                                   std::complex<double> z2);

// Universal scaling-limit covariance built from the Heisenberg kernel.
JPDCovariance build_limit_covariance(std::complex<double> u1, std::complex<double> u2);
JPDCovariance build_limit_covariance(std::complex<double> u);

// Lambda = C - B^H A^{-1} B, the covariance of the derivatives conditional
// on vanishing values.
Eigen::MatrixXcd conditional_covariance(const JPDCovariance& cov);

// One-point zero density relative to chart Lebesgue area.
double k1_density(int degree, std::complex<double> z);

// Two-point zero density via Gaussian conditioning plus the complex Wick
// fourth-moment identity E|xi1|^2|xi2|^2 = L11 L22 + |L12|^2.
double k2_density(int degree, std::complex<double> z1, std::complex<double> z2);

// Normalized pair correlation kappa = K2 / (K1 K1).
double kappa_finite(int degree, double scaled_r);
double kappa_limit(double scaled_r);

CorrelationCurve k2_limit_curve(const std::vector<double>& radii);
CorrelationCurve k2_finite_curve(int degree, const std::vector<double>& radii);

}  // namespace rpz
