#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace rpz {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum = 2
};

// n-point Gauss-Legendre rule, exact for polynomials of degree 2n-1.
// Cached per n.
const GaussLegendreRule& gauss_legendre(int n);

struct SphereQuadrature {
  std::vector<std::array<double, 3>> nodes;  // unit vectors
  std::vector<double> weights;               // sum = 4 pi
  int polynomial_degree = 0;                 // exact through this degree
};

// Product rule (Gauss-Legendre in cos theta x uniform azimuth), exact for
// spherical polynomials of degree <= order.
SphereQuadrature quadrature_s2(int order);

}  // namespace rpz
