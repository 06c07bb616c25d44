#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "rpz/rng.hpp"

namespace rpz {

enum class Family { Su2Poly, SphericalHarmonicS2 };
enum class Measure { Gaussian, Spherical };
enum class Field { Real, Complex };

struct EnsembleSpec {
  Family family = Family::Su2Poly;
  int degree = 0;
  Measure measure = Measure::Gaussian;
  std::uint64_t seed = 0;

  // N+1 coefficients for SU(2) polynomials, 2N+1 for degree-N spherical
  // harmonics on S^2.
  [[nodiscard]] int dimension() const {
    return family == Family::Su2Poly ? degree + 1 : 2 * degree + 1;
  }
};

// One random section in the orthonormal coefficient basis. Spherical
// harmonic samples are real; their coefficients have zero imaginary part.
struct SectionSample {
  EnsembleSpec spec;
  std::vector<std::complex<double>> coeffs;
  double norm_sq = 0.0;
};

struct SequenceSample {
  std::vector<int> degrees;
  std::vector<SectionSample> samples;
};

// L^2 weights of the monomial basis on O(N) -> CP^1 with the Fubini-Study
// volume normalized to total mass 1: {sqrt(w_k) z^k} is orthonormal,
// w_k = (N+1) * binomial(N, k).
std::vector<double> monomial_weights(int degree);

std::vector<SectionSample> sample_gaussian(const EnsembleSpec& spec, int count,
                                           int first_index = 0);
std::vector<SectionSample> sample_spherical(const EnsembleSpec& spec, int count,
                                            int first_index = 0);

// Independent samples at strictly increasing degrees, one substream per
// degree, reproducible from the single seed.
SequenceSample sample_sequence(const std::vector<int>& degrees,
                               const EnsembleSpec& base_spec, std::uint64_t seed);

// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
// R-diagonal sign correction (plain QR is not Haar).
Eigen::MatrixXd sample_random_onb_real(int dimension, std::uint64_t seed);
Eigen::MatrixXcd sample_random_onb_complex(int dimension, std::uint64_t seed);

}  // namespace rpz
