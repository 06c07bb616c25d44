#include "rpz/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace rpz {

namespace {

GaussLegendreRule compute_gauss_legendre(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double pm1 = 1.0, p = x;
      for (int k = 1; k < n; ++k) {
        const double pn1 = ((2.0 * k + 1.0) * x * p - k * pm1) / (k + 1.0);
        pm1 = p;
        p = pn1;
      }
      dp = n * (x * p - pm1) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  static std::map<int, GaussLegendreRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

SphereQuadrature quadrature_s2(int order) {
  if (order < 1) throw std::invalid_argument("quadrature_s2: order must be >= 1");
  // n polar nodes integrate degree 2n-1 in cos theta; m azimuthal nodes
  // kill all e^{i k phi} with 0 < |k| < m.
  const int n_polar = order / 2 + 1;
  const int n_az = order + 1;
  const auto& gl = gauss_legendre(n_polar);
  SphereQuadrature q;
  q.polynomial_degree = order;
  q.nodes.reserve(static_cast<std::size_t>(n_polar) * n_az);
  q.weights.reserve(q.nodes.capacity());
  const double wphi = 2.0 * M_PI / n_az;
  for (int i = 0; i < n_polar; ++i) {
    const double ct = gl.nodes[static_cast<std::size_t>(i)];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int j = 0; j < n_az; ++j) {
      const double phi = wphi * j;
      q.nodes.push_back({st * std::cos(phi), st * std::sin(phi), ct});
      q.weights.push_back(gl.weights[static_cast<std::size_t>(i)] * wphi);
    }
  }
  return q;
}

}  // namespace rpz
