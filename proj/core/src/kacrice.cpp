#include "rpz/kacrice.hpp"

#include <cmath>
#include <stdexcept>

#include "rpz/kernels.hpp"

namespace rpz {

namespace {

using cd = std::complex<double>;

// Weight-normalized kernel values with the (N-1) and (N-2) powers that the
// covariant derivatives produce, all in the log domain.
struct KernelPowers {
  cd e0, e1, e2;
};

KernelPowers kernel_powers(int n, cd z, cd w) {
  const cd base = 1.0 + z * std::conj(w);
  const double g = -0.5 * n * (std::log1p(std::norm(z)) + std::log1p(std::norm(w)));
  if (base == cd(0.0, 0.0)) {
    // Possible only for antipodal points; all powers vanish for n >= 2.
    return {cd(0.0, 0.0), cd(0.0, 0.0), cd(0.0, 0.0)};
  }
  const cd lb = std::log(base);
  return {std::exp(static_cast<double>(n) * lb + g),
          std::exp(static_cast<double>(n - 1) * lb + g),
          std::exp(static_cast<double>(n - 2) * lb + g)};
}

// E[s(z) conj(xi(w))] with xi the weight-normalized covariant derivative
// scaled by 1/sqrt(N).
cd block_b(int n, cd z, cd w) {
  const KernelPowers kp = kernel_powers(n, z, w);
  return std::sqrt(static_cast<double>(n)) * (z - w) / (1.0 + std::norm(w)) * kp.e1;
}

cd block_c(int n, cd z, cd w) {
  const KernelPowers kp = kernel_powers(n, z, w);
  const cd zw = z - w;
  const cd term = static_cast<double>(n - 1) * std::conj(w) * kp.e2 * zw + kp.e1 -
                  static_cast<double>(n) * std::conj(z) * kp.e1 * zw / (1.0 + std::norm(z));
  return term / (1.0 + std::norm(w));
}

cd limit_kernel(cd u, cd v) { return heisenberg_kernel(u, v); }

}  // namespace

JPDCovariance build_jpd_covariance(int degree, cd z) {
  if (degree < 1) throw std::invalid_argument("build_jpd_covariance: degree must be >= 1");
  JPDCovariance cov;
  cov.n = 1;
  cov.A = Eigen::MatrixXcd::Constant(1, 1, kernel_powers(degree, z, z).e0);
  cov.B = Eigen::MatrixXcd::Constant(1, 1, block_b(degree, z, z));
  cov.C = Eigen::MatrixXcd::Constant(1, 1, block_c(degree, z, z));
  return cov;
}

JPDCovariance build_jpd_covariance(int degree, cd z1, cd z2) {
  if (degree < 1) throw std::invalid_argument("build_jpd_covariance: degree must be >= 1");
  if (z1 == z2)
    throw std::invalid_argument("build_jpd_covariance: coincident points (use the limit curve)");
  JPDCovariance cov;
  cov.n = 2;
  cov.near_coincident = std::abs(z1 - z2) < 1e-8;
  const cd zs[2] = {z1, z2};
  cov.A.resize(2, 2);
  cov.B.resize(2, 2);
  cov.C.resize(2, 2);
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) {
      cov.A(p, q) = kernel_powers(degree, zs[p], zs[q]).e0;
      cov.B(p, q) = block_b(degree, zs[p], zs[q]);
      cov.C(p, q) = block_c(degree, zs[p], zs[q]);
    }
  return cov;
}

JPDCovariance build_limit_covariance(cd u) {
  JPDCovariance cov;
  cov.n = 1;
  cov.A = Eigen::MatrixXcd::Constant(1, 1, limit_kernel(u, u));
  cov.B = Eigen::MatrixXcd::Constant(1, 1, cd(0.0, 0.0));
  cov.C = Eigen::MatrixXcd::Constant(1, 1, limit_kernel(u, u));
  return cov;
}

JPDCovariance build_limit_covariance(cd u1, cd u2) {
  JPDCovariance cov;
  cov.n = 2;
  const cd us[2] = {u1, u2};
  cov.A.resize(2, 2);
  cov.B.resize(2, 2);
  cov.C.resize(2, 2);
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) {
      const cd pi = limit_kernel(us[p], us[q]);
      const cd diff = us[p] - us[q];
      cov.A(p, q) = pi;
      cov.B(p, q) = diff * pi;
      cov.C(p, q) = (1.0 - std::norm(diff)) * pi;
    }
  return cov;
}

Eigen::MatrixXcd conditional_covariance(const JPDCovariance& cov) {
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(cov.A);
  const double rcond = lu.rcond();
  if (!lu.isInvertible() || rcond < 1e-12)
    throw std::runtime_error(
        "conditional_covariance: value block is singular (coincident points)");
  return cov.C - cov.B.adjoint() * lu.solve(cov.B);
}

double k1_density(int degree, cd z) {
  const JPDCovariance cov = build_jpd_covariance(degree, z);
  const double a = cov.A(0, 0).real();
  const double lambda = conditional_covariance(cov)(0, 0).real();
  // xi carries the 1/sqrt(N) derivative scaling; undo it for the density
  // per chart Lebesgue area.
  return static_cast<double>(degree) * lambda / (M_PI * a);
}

double k2_density(int degree, cd z1, cd z2) {
  const JPDCovariance cov = build_jpd_covariance(degree, z1, z2);
  const Eigen::MatrixXcd lambda = conditional_covariance(cov);
  const double det_a = cov.A.determinant().real();
  const double wick =
      lambda(0, 0).real() * lambda(1, 1).real() + std::norm(lambda(0, 1));
  const double n2 = static_cast<double>(degree) * degree;
  return n2 * wick / (M_PI * M_PI * det_a);
}

namespace {

double kappa_from_blocks(const JPDCovariance& pair, const JPDCovariance& p1,
                         const JPDCovariance& p2) {
  const Eigen::MatrixXcd lambda = conditional_covariance(pair);
  const double det_a = pair.A.determinant().real();
  const double wick = lambda(0, 0).real() * lambda(1, 1).real() + std::norm(lambda(0, 1));
  const double k2 = wick / det_a;
  const double k1a = conditional_covariance(p1)(0, 0).real() / p1.A(0, 0).real();
  const double k1b = conditional_covariance(p2)(0, 0).real() / p2.A(0, 0).real();
  return k2 / (k1a * k1b);
}

}  // namespace

double kappa_finite(int degree, double scaled_r) {
  if (scaled_r <= 0.0) throw std::invalid_argument("kappa_finite: r must be > 0");
  // Scaled radius r corresponds to FS geodesic distance r/sqrt(N).
  const cd z2 = std::tan(scaled_r / std::sqrt(static_cast<double>(degree)));
  return kappa_from_blocks(build_jpd_covariance(degree, cd(0.0, 0.0), z2),
                           build_jpd_covariance(degree, cd(0.0, 0.0)),
                           build_jpd_covariance(degree, z2));
}

double kappa_limit(double scaled_r) {
  if (scaled_r <= 0.0) throw std::invalid_argument("kappa_limit: r must be > 0");
  return kappa_from_blocks(build_limit_covariance(cd(0.0, 0.0), cd(scaled_r, 0.0)),
                           build_limit_covariance(cd(0.0, 0.0)),
                           build_limit_covariance(cd(scaled_r, 0.0)));
}

CorrelationCurve k2_limit_curve(const std::vector<double>& radii) {
  CorrelationCurve curve;
  curve.source = CurveSource::Limit;
  curve.radii = radii;
  curve.values.reserve(radii.size());
  for (double r : radii) curve.values.push_back(kappa_limit(r));
  return curve;
}

CorrelationCurve k2_finite_curve(int degree, const std::vector<double>& radii) {
  CorrelationCurve curve;
  curve.source = CurveSource::FiniteN;
  curve.degree = degree;
  curve.radii = radii;
  curve.values.reserve(radii.size());
  for (double r : radii) curve.values.push_back(kappa_finite(degree, r));
  return curve;
}

}  // namespace rpz
