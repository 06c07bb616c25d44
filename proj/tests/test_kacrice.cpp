#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "rpz/ensembles.hpp"
#include "rpz/kacrice.hpp"
#include "rpz/kernels.hpp"
#include "rpz/quadrature.hpp"
#include "rpz/rng.hpp"

using namespace rpz;
using cd = std::complex<double>;

namespace {

// Finite-difference oracle for the jet covariance blocks, built straight
// from the closed-form kernel. The kernel is holomorphic in z and
// anti-holomorphic in w, so real-direction central differences give the
// Wirtinger derivatives exactly (up to O(h^2)).
Eigen::MatrixXcd fd_block_b(int degree, cd z, cd w, double h) {
  const double n = degree;
  auto pi = [&](cd a, cd b) { return szego_su2(degree, a, b); };
  const cd dwbar = (pi(z, w + h) - pi(z, w - h)) / (2.0 * h);
  const cd covar = dwbar - n * w / (1.0 + std::norm(w)) * pi(z, w);
  const double weight = std::exp(-0.5 * n * (std::log1p(std::norm(z)) + std::log1p(std::norm(w))));
  Eigen::MatrixXcd out(1, 1);
  out(0, 0) = covar * weight / (std::sqrt(n) * double(degree + 1));
  return out;
}

Eigen::MatrixXcd fd_block_c(int degree, cd z, cd w, double h) {
  const double n = degree;
  auto pi = [&](cd a, cd b) { return szego_su2(degree, a, b); };
  auto cov_wbar = [&](cd a) {
    const cd dwbar = (pi(a, w + h) - pi(a, w - h)) / (2.0 * h);
    return dwbar - n * w / (1.0 + std::norm(w)) * pi(a, w);
  };
  const cd dz = (cov_wbar(z + h) - cov_wbar(z - h)) / (2.0 * h);
  const cd covar = dz - n * std::conj(z) / (1.0 + std::norm(z)) * cov_wbar(z);
  const double weight = std::exp(-0.5 * n * (std::log1p(std::norm(z)) + std::log1p(std::norm(w))));
  Eigen::MatrixXcd out(1, 1);
  out(0, 0) = covar * weight / (n * double(degree + 1));
  return out;
}

}  // namespace

TEST_CASE("covariance blocks match the finite-difference oracle") {
  const int n = 20;
  const double h = 1e-5;
  StreamRng rng(808);
  for (int t = 0; t < 10; ++t) {
    const cd z{rng.next_gaussian() * 0.5, rng.next_gaussian() * 0.5};
    const cd w{rng.next_gaussian() * 0.5, rng.next_gaussian() * 0.5};
    if (std::abs(z - w) < 0.05) continue;
    const auto cov = build_jpd_covariance(n, z, w);
    // Cross block: entry (p, q) = E[s_p conj(xi_q)].
    CHECK(std::abs(cov.B(0, 1) - fd_block_b(n, z, w, h)(0, 0)) < 1e-6);
    CHECK(std::abs(cov.C(0, 1) - fd_block_c(n, z, w, h)(0, 0)) < 1e-5);
    // Diagonal derivative-covariance entry via the same oracle at (z, z).
    CHECK(std::abs(cov.C(0, 0) - fd_block_c(n, z, z, h)(0, 0)) < 1e-5);
  }
}

TEST_CASE("covariance blocks match a Monte Carlo jet covariance") {
  // Sample the Gaussian section directly, evaluate the weighted value and
  // scaled covariant derivative at two points, and compare empirical
  // second moments with the closed-form blocks.
  const int degree = 12;
  const cd z{0.2, -0.1}, w{-0.4, 0.5};
  const auto wk = monomial_weights(degree);
  StreamRng rng(161803);
  const int trials = 200000;
  cd e_ss{0, 0}, e_sxi{0, 0}, e_xixi{0, 0};
  for (int t = 0; t < trials; ++t) {
    cd pz{0, 0}, pw{0, 0}, dpw{0, 0};
    cd zp{1, 0}, wp{1, 0}, wpm{0, 0};
    for (int k = 0; k <= degree; ++k) {
      const cd c = rng.next_complex_gaussian() * std::sqrt(wk[k]);
      pz += c * zp;
      pw += c * wp;
      if (k >= 1) dpw += c * double(k) * wpm;
      zp *= z;
      wpm = wp;
      wp *= w;
    }
    const double gz = std::exp(-0.5 * degree * std::log1p(std::norm(z)));
    const double gw = std::exp(-0.5 * degree * std::log1p(std::norm(w)));
    const cd s_z = pz * gz;
    const cd xi_w = (dpw - double(degree) * std::conj(w) / (1.0 + std::norm(w)) * pw) * gw /
                    std::sqrt(double(degree));
    e_ss += s_z * std::conj(s_z);
    e_sxi += s_z * std::conj(xi_w);
    e_xixi += xi_w * std::conj(xi_w);
  }
  e_ss /= double(trials);
  e_sxi /= double(trials);
  e_xixi /= double(trials);

  const auto cov = build_jpd_covariance(degree, z, w);
  // Blocks are normalized by the dimension d = degree + 1.
  const double d = degree + 1;
  CHECK(std::abs(e_ss / d - cov.A(0, 0)) < 0.02);
  CHECK(std::abs(e_sxi / d - cov.B(0, 1)) < 0.02);
  CHECK(std::abs(e_xixi / d - cov.C(1, 1)) < 0.02);
}

TEST_CASE("full jet covariance is Hermitian positive semidefinite") {
  for (const cd z2 : {cd{1, 0}, cd{0.3, 0.7}, cd{-2, 1}}) {
    const auto cov = build_jpd_covariance(10, cd{0, 0}, z2);
    const auto m = cov.full();
    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
  }
}

TEST_CASE("one-point intensity: closed form and chart integral") {
  for (int n : {1, 10, 100}) {
    for (const cd z : {cd{0, 0}, cd{1, -1}, cd{0.3, 2.0}}) {
      CHECK(k1_density(n, z) ==
            doctest::Approx(n / (M_PI * std::pow(1.0 + std::norm(z), 2))).epsilon(1e-8));
    }
  }
  // Total mass over the chart equals the degree (all N zeros, uniformly).
  const int n = 7;
  const auto& gl = gauss_legendre(200);
  double total = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    // r = t/(1-t) maps (0,1) to (0,inf); area element r dr dtheta.
    const double t = 0.5 * (gl.nodes[i] + 1.0);
    const double r = t / (1.0 - t);
    const double dr = 0.5 * gl.weights[i] / ((1.0 - t) * (1.0 - t));
    total += 2.0 * M_PI * r * dr * k1_density(n, cd{r, 0});
  }
  CHECK(total == doctest::Approx(double(n)).epsilon(1e-8));
}

TEST_CASE("complex Wick fourth-moment identity used by the two-point density") {
  // For (xi1, xi2) complex Gaussian with covariance L:
  // E |xi1|^2 |xi2|^2 = L11 L22 + |L12|^2. Checked by direct simulation on
  // a random PSD 2x2 covariance.
  StreamRng rng(5150);
  Eigen::Matrix2cd g;
  g(0, 0) = cd{1.1, 0.0};
  g(0, 1) = cd{0.4, -0.3};
  g(1, 0) = cd{-0.2, 0.8};
  g(1, 1) = cd{0.9, 0.1};
  const Eigen::Matrix2cd L = g * g.adjoint();
  const Eigen::LLT<Eigen::Matrix2cd> llt(L);
  const Eigen::Matrix2cd chol = llt.matrixL();
  const int trials = 400000;
  double acc = 0.0;
  for (int t = 0; t < trials; ++t) {
    Eigen::Vector2cd u{rng.next_complex_gaussian(), rng.next_complex_gaussian()};
    const Eigen::Vector2cd xi = chol * u;
    acc += std::norm(xi(0)) * std::norm(xi(1));
  }
  acc /= trials;
  const double predicted = L(0, 0).real() * L(1, 1).real() + std::norm(L(0, 1));
  CHECK(std::abs(acc - predicted) / predicted < 0.02);
}

TEST_CASE("two-point density symmetry and decorrelation at large separation") {
  const int n = 40;
  const cd a{0.1, 0.2}, b{-0.5, 0.6};
  CHECK(k2_density(n, a, b) == doctest::Approx(k2_density(n, b, a)).epsilon(1e-10));
  // Far apart, the product structure must reappear.
  CHECK(kappa_finite(100, 8.0) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("coincident and near-coincident configurations are flagged") {
  CHECK_THROWS(build_jpd_covariance(10, cd{0.5, 0}, cd{0.5, 0}));
  CHECK(build_jpd_covariance(10, cd{0, 0}, cd{1e-9, 0}).near_coincident);
  CHECK(!build_jpd_covariance(10, cd{0, 0}, cd{0.1, 0}).near_coincident);
}

TEST_CASE("limit covariance is translation invariant") {
  const cd u{1.2, -0.4}, shift{0.7, 0.9};
  const auto a = build_limit_covariance(cd{0, 0}, u);
  const auto b = build_limit_covariance(shift, shift + u);
  const Eigen::MatrixXcd la = conditional_covariance(a);
  const Eigen::MatrixXcd lb = conditional_covariance(b);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ea(la), eb(lb);
  CHECK((ea.eigenvalues() - eb.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("finite covariance converges to the limit covariance") {
  const cd u1{0, 0}, u2{1, 1};
  const auto lim = build_limit_covariance(u1, u2);
  double prev = 1e9;
  for (int n : {100, 1000, 10000}) {
    const double s = std::sqrt(double(n));
    const auto cov = build_jpd_covariance(n, u1 / s, u2 / s);
    double err = (cov.A - lim.A).cwiseAbs().maxCoeff();
    err = std::max(err, (cov.B - lim.B).cwiseAbs().maxCoeff());
    err = std::max(err, (cov.C - lim.C).cwiseAbs().maxCoeff());
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("universal pair correlation: landmarks") {
  // Quadratic repulsion near zero: kappa ~ r^2 / 2.
  CHECK(kappa_limit(0.05) / (0.05 * 0.05) == doctest::Approx(0.5).epsilon(0.01));
  CHECK(kappa_limit(0.05) < 0.01);
  // Decorrelation far out.
  CHECK(kappa_limit(8.0) == doctest::Approx(1.0).epsilon(1e-3));
  // The curve overshoots 1 before settling (a hallmark of this process).
  CHECK(kappa_limit(2.0) > 1.0);
}

TEST_CASE("finite-N curve approaches the universal curve") {
  std::vector<double> radii;
  for (double r = 0.2; r <= 5.0; r += 0.1) radii.push_back(r);
  const auto lim = k2_limit_curve(radii);
  const auto fin = k2_finite_curve(100, radii);
  REQUIRE(lim.values.size() == radii.size());
  REQUIRE(fin.values.size() == radii.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i)
    sup = std::max(sup, std::abs(lim.values[i] - fin.values[i]));
  CHECK(sup < 0.03);
  CHECK(fin.source == CurveSource::FiniteN);
  CHECK(lim.source == CurveSource::Limit);
}

TEST_CASE("pair correlation is invariant under the base point in the limit curve") {
  // kappa_finite evaluates the pair (0, tan(r/sqrt(N))); rotation
  // invariance of the ensemble means the off-origin two-point function
  // agrees once expressed in the scaled distance.
  const int n = 64;
  const double r = 1.3;
  const double zsep = std::tan(r / std::sqrt(double(n)));
  const double direct = kappa_finite(n, r);
  // Same scaled separation along a different ray.
  const cd z2 = std::polar(zsep, 1.1);
  const double k2 = k2_density(n, cd{0, 0}, z2);
  const double k1a = k1_density(n, cd{0, 0});
  const double k1b = k1_density(n, z2);
  CHECK(k2 / (k1a * k1b) == doctest::Approx(direct).epsilon(1e-9));
}
