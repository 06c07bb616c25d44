#include "rpz/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "rpz/quadrature.hpp"

namespace rpz {

cplx szego_su2(int degree, cplx z, cplx w) {
  if (degree < 0) throw std::invalid_argument("szego_su2: degree must be >= 0");
  const cplx base = 1.0 + z * std::conj(w);
  if (base == cplx(0.0, 0.0)) return degree == 0 ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
  return std::exp(static_cast<double>(degree) * std::log(base) + std::log(degree + 1.0));
}

cplx szego_su2_normalized(int degree, cplx z, cplx w) {
  const cplx base = 1.0 + z * std::conj(w);
  const double gz = std::log1p(std::norm(z));
  const double gw = std::log1p(std::norm(w));
  if (base == cplx(0.0, 0.0))
    return degree == 0 ? std::exp(cplx(-0.5 * (gz + gw), 0.0)) : cplx(0.0, 0.0);
  const double n = degree;
  return std::exp(n * std::log(base) - 0.5 * n * (gz + gw));
}

cplx heisenberg_kernel(cplx u, cplx v) {
  return std::exp(u * std::conj(v) - 0.5 * (std::norm(u) + std::norm(v)));
}

ScalingReport complex_scaling_error(int degree, double grid_radius, double grid_step) {
  if (degree < 1) throw std::invalid_argument("complex_scaling_error: degree must be >= 1");
  if (grid_step <= 0.0 || grid_radius < 0.0)
    throw std::invalid_argument("complex_scaling_error: empty grid");
  std::vector<double> axis;
  for (double x = -grid_radius; x <= grid_radius + 1e-12; x += grid_step) axis.push_back(x);
  if (axis.empty()) throw std::invalid_argument("complex_scaling_error: empty grid");

  const double sqrt_n = std::sqrt(static_cast<double>(degree));
  double sup = 0.0;
  for (double ur : axis)
    for (double ui : axis) {
      const cplx u(ur, ui);
      if (std::abs(u) > grid_radius + 1e-12) continue;
      for (double vr : axis)
        for (double vi : axis) {
          const cplx v(vr, vi);
          if (std::abs(v) > grid_radius + 1e-12) continue;
          const cplx exact = szego_su2_normalized(degree, u / sqrt_n, v / sqrt_n);
          const double err = std::abs(exact - heisenberg_kernel(u, v));
          if (err > sup) sup = err;
        }
    }
  ScalingReport rep;
  rep.degree = degree;
  rep.grid = {grid_radius, grid_step};
  rep.sup_error = sup;
  return rep;
}

double legendre_p(int degree, double x) {
  if (degree < 0) throw std::invalid_argument("legendre_p: degree must be >= 0");
  if (degree == 0) return 1.0;
  double pm1 = 1.0;
  double p = x;
  for (int n = 1; n < degree; ++n) {
    const double pn1 = ((2.0 * n + 1.0) * x * p - n * pm1) / (n + 1.0);
    pm1 = p;
    p = pn1;
  }
  return p;
}

double sphere_projector(int degree, double cos_theta) {
  if (std::abs(cos_theta) > 1.0)
    throw std::domain_error("sphere_projector: cos_theta outside [-1, 1]");
  return (2.0 * degree + 1.0) / (4.0 * M_PI) * legendre_p(degree, cos_theta);
}

double bessel_j0(double r) {
  if (r < 0.0) throw std::domain_error("bessel_j0: r must be >= 0");
  if (r <= 16.0) {
    // Power series; at the switchover the largest term is ~2e5, so the
    // rounding floor stays below 1e-10.
    const double q = -0.25 * r * r;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 80; ++k) {
      term *= q / (static_cast<double>(k) * k);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
    }
    return sum;
  }
  // J_0(r) = (1/pi) int_0^pi cos(r sin t) dt by Gauss-Legendre; spectrally
  // accurate while the node count resolves the oscillation (r up to ~300).
  const auto& gl = gauss_legendre(256);
  double sum = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double t = 0.5 * M_PI * (gl.nodes[i] + 1.0);
    sum += gl.weights[i] * std::cos(r * std::sin(t));
  }
  return 0.5 * sum;
}

double bessel_limit(int ambient_dim, double r) {
  if (ambient_dim != 2)
    throw std::invalid_argument("bessel_limit: only ambient dimension 2 is supported");
  return bessel_j0(r);
}

ScalingReport real_scaling_error(int degree, double r_max, double step) {
  if (degree < 1) throw std::invalid_argument("real_scaling_error: degree must be >= 1");
  if (step <= 0.0 || r_max < 0.0)
    throw std::invalid_argument("real_scaling_error: empty grid");
  double sup = 0.0;
  for (double r = 0.0; r <= r_max + 1e-12; r += step) {
    const double exact = legendre_p(degree, std::cos(r / degree));
    const double err = std::abs(exact - bessel_j0(r));
    if (err > sup) sup = err;
  }
  ScalingReport rep;
  rep.degree = degree;
  rep.grid = {r_max, step};
  rep.sup_error = sup;
  return rep;
}

}  // namespace rpz
