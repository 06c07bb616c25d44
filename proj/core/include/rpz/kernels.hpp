#pragma once

#include <complex>
#include <vector>

namespace rpz {

using cplx = std::complex<double>;

struct GridSpec {
  double radius = 2.0;
  double step = 0.5;
};

// Sup-norm discrepancy between a diagonal-normalized exact kernel and its
// universal scaling limit, measured on a fixed grid.
struct ScalingReport {
  int degree = 0;
  GridSpec grid;
  double sup_error = 0.0;
};

// Degree-N reproducing kernel of the SU(2) ensemble in the affine chart:
// Pi_N(z, w) = (N+1) (1 + z conj(w))^N, evaluated in the log domain so
// large |z|, |w| do not overflow.
cplx szego_su2(int degree, cplx z, cplx w);

// Weight-normalized kernel Pi_N(z,w) e^{-N(phi(z)+phi(w))/2} / d_N with
// phi = log(1+|z|^2); its diagonal is identically 1.
cplx szego_su2_normalized(int degree, cplx z, cplx w);

// Szego kernel of the reduced Heisenberg group on the theta = phi = 0 slice:
// e^{u conj(v) - (|u|^2 + |v|^2)/2}.
cplx heisenberg_kernel(cplx u, cplx v);

// Sup over the (u, v) grid of |normalized Szego at (u/sqrt(N), v/sqrt(N))
// minus the Heisenberg kernel|.
ScalingReport complex_scaling_error(int degree, double grid_radius, double grid_step);

double legendre_p(int degree, double x);

// Spectral projector onto degree-N spherical harmonics on S^2 as a zonal
// function: (2N+1)/(4 pi) P_N(cos theta).
double sphere_projector(int degree, double cos_theta);

double bessel_j0(double r);

// Universal real-case scaling limit for ambient dimension m; only m = 2
// (J_0) is supported.
double bessel_limit(int ambient_dim, double r);

// Sup over the r grid of |P_N(cos(r/N)) - J_0(r)| (diagonal-normalized
// projector against its Bessel limit).
ScalingReport real_scaling_error(int degree, double r_max, double step);

}  // namespace rpz
