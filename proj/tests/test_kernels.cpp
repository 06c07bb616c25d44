#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "rpz/ensembles.hpp"
#include "rpz/kernels.hpp"
#include "rpz/quadrature.hpp"
#include "rpz/rng.hpp"

using namespace rpz;

namespace {

// Oracle: the reproducing kernel as the explicit orthonormal-basis sum
// sum_k w_k (z conj(w))^k, summed directly (no closed form, no logs).
cplx basis_sum_kernel(int degree, cplx z, cplx w) {
  const auto wk = monomial_weights(degree);
  const cplx t = z * std::conj(w);
  cplx pw{1.0, 0.0}, acc{0.0, 0.0};
  for (int k = 0; k <= degree; ++k) {
    acc += wk[k] * pw;
    pw *= t;
  }
  return acc;
}

// 40-term power series for J_0, accurate to ~1e-13 for r <= 8.
double j0_series(double r) {
  const double q = -0.25 * r * r;
  double term = 1.0, acc = 1.0;
  for (int k = 1; k <= 40; ++k) {
    term *= q / (double(k) * double(k));
    acc += term;
  }
  return acc;
}

// Independent integral representation (1/pi) int_0^pi cos(r sin t) dt.
double j0_integral(double r) {
  const auto& gl = gauss_legendre(512);
  double acc = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double t = 0.5 * M_PI * (gl.nodes[i] + 1.0);
    acc += 0.5 * M_PI * gl.weights[i] * std::cos(r * std::sin(t));
  }
  return acc / M_PI;
}

}  // namespace

TEST_CASE("reproducing kernel matches the basis-sum oracle") {
  // The naive series sum cancels catastrophically when |1 + z conj(w)| is
  // much smaller than 1 + |z conj(w)|, so the comparison tolerance carries
  // the series' own condition number (largest partial magnitude over the
  // result).
  StreamRng rng(2024);
  for (int degree : {1, 5, 17, 64}) {
    const auto wk = monomial_weights(degree);
    for (int trial = 0; trial < 25; ++trial) {
      const cplx z{3.0 * (rng.next_uniform() - 0.5), 3.0 * (rng.next_uniform() - 0.5)};
      const cplx w{3.0 * (rng.next_uniform() - 0.5), 3.0 * (rng.next_uniform() - 0.5)};
      const cplx exact = szego_su2(degree, z, w);
      const cplx oracle = basis_sum_kernel(degree, z, w);
      double mag_sum = 0.0, pw = 1.0;
      const double at = std::abs(z * std::conj(w));
      for (int k = 0; k <= degree; ++k) {
        mag_sum += wk[k] * pw;
        pw *= at;
      }
      const double tol = 1e-10 * std::max(1.0, std::abs(oracle)) + 1e-12 * mag_sum;
      CHECK(std::abs(exact - oracle) <= tol);
    }
  }
}

TEST_CASE("reproducing kernel matches frozen 250-digit references") {
  // Reference values computed with a 250-digit evaluation of the series,
  // including points deep in the cancellation regime the series oracle
  // cannot reach in double precision.
  struct Ref {
    int n;
    cplx z, w, value;
  };
  const Ref refs[] = {
      {17, {0.3, 0.4}, {-0.9, 0.2}, {-1.0398953471122823, -3.6436330141493825}},
      {64, {-0.52138, -1.03579}, {0.40818, 0.649984},
       {-2.8171539317972633e-53, -6.2478615724890026e-54}},
      {64, {1.36453, 0.36344}, {-1.02871, -0.27623},
       {5.5082908267204724e-18, -2.2461405016139476e-18}},
      {64, {0.99082, -0.0593216}, {-0.239843, -0.392859},
       {0.011381138180937509, -0.019947367205937353}},
      {128, {0.7, -0.3}, {-1.1, 0.45}, {3.219652674885956e-129, 8.1719778458198783e-129}},
  };
  for (const auto& r : refs) {
    const cplx got = szego_su2(r.n, r.z, r.w);
    CHECK(std::abs(got - r.value) <= 1e-12 * std::abs(r.value));
  }
}

TEST_CASE("kernel algebraic properties") {
  StreamRng rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    const cplx z{4.0 * (rng.next_uniform() - 0.5), 4.0 * (rng.next_uniform() - 0.5)};
    const cplx w{4.0 * (rng.next_uniform() - 0.5), 4.0 * (rng.next_uniform() - 0.5)};
    const int n = 30;
    // Hermitian symmetry.
    CHECK(std::abs(szego_su2(n, z, w) - std::conj(szego_su2(n, w, z))) <
          1e-9 * std::abs(szego_su2(n, z, w)));
    // Normalized kernel: diagonal exactly 1, off-diagonal bounded by 1.
    CHECK(std::abs(szego_su2_normalized(n, z, z) - 1.0) < 1e-12);
    CHECK(std::abs(szego_su2_normalized(n, z, w)) <= 1.0 + 1e-12);
  }
}

TEST_CASE("kernel reproduces polynomials under the weighted inner product") {
  // int K(z, w) p(w) e^{-N phi(w)} dV(w) = p(z), checked by a product
  // quadrature (mapped Gauss-Legendre radially, uniform azimuth).
  const int degree = 8;
  const cplx z{0.3, 0.2};
  const auto& gl = gauss_legendre(160);
  const int n_ang = 64;
  for (int power : {0, 2, 5}) {
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      // t in (0,1), r^2 = t/(1-t); FS area element becomes (1/pi) dt dtheta
      // after the substitution, and the volume has unit total mass.
      const double t = 0.5 * (gl.nodes[i] + 1.0);
      const double jac = 0.5 * gl.weights[i] / n_ang;
      const double r = std::sqrt(t / (1.0 - t));
      for (int a = 0; a < n_ang; ++a) {
        const double th = 2.0 * M_PI * a / n_ang;
        const cplx w = r * cplx{std::cos(th), std::sin(th)};
        const double weight = std::pow(1.0 + std::norm(w), -degree);
        acc += jac * szego_su2(degree, z, w) * std::pow(w, power) * weight;
      }
    }
    CHECK(std::abs(acc - std::pow(z, power)) < 1e-6);
  }
}

TEST_CASE("Heisenberg limit kernel basics") {
  CHECK(std::abs(heisenberg_kernel({1.3, -0.4}, {1.3, -0.4}) - 1.0) < 1e-14);
  const cplx u{0.5, 0.25}, v{-1.0, 2.0};
  CHECK(std::abs(heisenberg_kernel(u, v) - std::conj(heisenberg_kernel(v, u))) < 1e-14);
  CHECK(std::abs(heisenberg_kernel(u, v)) <= 1.0);
  // Translation invariance of the modulus.
  const cplx c{0.7, -0.3};
  CHECK(std::abs(std::abs(heisenberg_kernel(u + c, v + c)) - std::abs(heisenberg_kernel(u, v))) <
        1e-13);
}

TEST_CASE("complex scaling error decreases with degree") {
  const auto r16 = complex_scaling_error(16, 2.0, 0.5);
  const auto r64 = complex_scaling_error(64, 2.0, 0.5);
  const auto r256 = complex_scaling_error(256, 2.0, 0.5);
  CHECK(r16.sup_error > r64.sup_error);
  CHECK(r64.sup_error > r256.sup_error);
  CHECK(r256.sup_error < 0.02);
}

TEST_CASE("Legendre recurrence against closed forms") {
  CHECK(legendre_p(0, 0.37) == 1.0);
  CHECK(legendre_p(1, 0.37) == doctest::Approx(0.37).epsilon(1e-15));
  const double x = 0.3;
  CHECK(legendre_p(5, x) ==
        doctest::Approx((63 * std::pow(x, 5) - 70 * std::pow(x, 3) + 15 * x) / 8.0).epsilon(1e-13));
  for (int n : {2, 10, 101}) {
    CHECK(legendre_p(n, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(legendre_p(n, -1.0) == doctest::Approx(n % 2 ? -1.0 : 1.0).epsilon(1e-12));
  }
}

TEST_CASE("sphere projector diagonal equals the eigenspace dimension over 4 pi") {
  for (int n : {0, 3, 40})
    CHECK(sphere_projector(n, 1.0) == doctest::Approx((2 * n + 1) / (4.0 * M_PI)).epsilon(1e-12));
}

TEST_CASE("J_0 against two independent oracles") {
  for (double r : {0.0, 0.5, 1.0, 2.5, 4.0, 7.9}) {
    CHECK(bessel_j0(r) == doctest::Approx(j0_series(r)).epsilon(1e-12));
  }
  for (double r : {1.0, 5.0, 10.0, 15.5, 17.0, 25.0}) {
    CHECK(std::abs(bessel_j0(r) - j0_integral(r)) < 1e-9);
  }
  // First positive zero.
  CHECK(std::abs(bessel_j0(2.404825557695773)) < 1e-10);
  CHECK(bessel_j0(2.3) > 0.0);
  CHECK(bessel_j0(2.5) < 0.0);
}

TEST_CASE("real limit dispatch") {
  CHECK(bessel_limit(2, 1.25) == bessel_j0(1.25));
  CHECK_THROWS(bessel_limit(3, 1.0));
}

TEST_CASE("real scaling error decreases and is small at moderate degree") {
  const auto a = real_scaling_error(50, 10.0, 0.05);
  const auto b = real_scaling_error(200, 10.0, 0.05);
  CHECK(a.sup_error > b.sup_error);
  CHECK(b.sup_error < 0.01);
}
