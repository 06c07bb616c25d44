#include "rpz/ensembles.hpp"

#include <cmath>
#include <stdexcept>

namespace rpz {

namespace {

// Substream labels: the degree and the per-sample index are hashed into the
// stream key so parallel batches are order-independent.
StreamRng sample_stream(const EnsembleSpec& spec, int index) {
  return StreamRng(spec.seed)
      .substream(static_cast<std::uint64_t>(spec.family == Family::Su2Poly ? 1 : 2))
      .substream(static_cast<std::uint64_t>(spec.degree))
      .substream(static_cast<std::uint64_t>(index));
}

SectionSample draw_gaussian(const EnsembleSpec& spec, int index) {
  SectionSample s;
  s.spec = spec;
  const int d = spec.dimension();
  s.coeffs.resize(static_cast<std::size_t>(d));
  StreamRng rng = sample_stream(spec, index);
  double norm_sq = 0.0;
  for (auto& c : s.coeffs) {
    if (spec.family == Family::Su2Poly) {
      c = rng.next_complex_gaussian();
    } else {
      c = {rng.next_gaussian(), 0.0};
    }
    norm_sq += std::norm(c);
  }
  s.norm_sq = norm_sq;
  return s;
}

}  // namespace

std::vector<double> monomial_weights(int degree) {
  if (degree < 0) throw std::invalid_argument("monomial_weights: degree must be >= 0");
  const int n = degree;
  std::vector<double> w(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    // (N+1) * C(N,k) in the log domain; exact symmetry by construction.
    const int kk = std::min(k, n - k);
    const double log_binom = std::lgamma(n + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(n - kk + 1.0);
    w[static_cast<std::size_t>(k)] = (n + 1.0) * std::exp(log_binom);
  }
  return w;
}

std::vector<SectionSample> sample_gaussian(const EnsembleSpec& spec, int count,
                                           int first_index) {
  if (spec.measure != Measure::Gaussian)
    throw std::invalid_argument("sample_gaussian: spec.measure must be Gaussian");
  std::vector<SectionSample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(draw_gaussian(spec, first_index + i));
  return out;
}

std::vector<SectionSample> sample_spherical(const EnsembleSpec& spec, int count,
                                            int first_index) {
  if (spec.measure != Measure::Spherical)
    throw std::invalid_argument("sample_spherical: spec.measure must be Spherical");
  std::vector<SectionSample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    EnsembleSpec gspec = spec;
    gspec.measure = Measure::Gaussian;
    SectionSample s = draw_gaussian(gspec, first_index + i);
    // A zero-norm draw has probability 0; redraw from shifted indices.
    int bump = 0;
    while (s.norm_sq == 0.0) s = draw_gaussian(gspec, first_index + count + ++bump);
    const double inv = 1.0 / std::sqrt(s.norm_sq);
    for (auto& c : s.coeffs) c *= inv;
    s.spec = spec;
    s.norm_sq = 1.0;
    out.push_back(std::move(s));
  }
  return out;
}

SequenceSample sample_sequence(const std::vector<int>& degrees,
                               const EnsembleSpec& base_spec, std::uint64_t seed) {
  if (degrees.empty()) throw std::invalid_argument("sample_sequence: empty degree list");
  for (std::size_t i = 1; i < degrees.size(); ++i)
    if (degrees[i] <= degrees[i - 1])
      throw std::invalid_argument("sample_sequence: degrees must be strictly increasing");
  SequenceSample seq;
  seq.degrees = degrees;
  for (int n : degrees) {
    EnsembleSpec spec = base_spec;
    spec.degree = n;
    spec.seed = seed;
    auto one = spec.measure == Measure::Gaussian ? sample_gaussian(spec, 1)
                                                 : sample_spherical(spec, 1);
    seq.samples.push_back(std::move(one.front()));
  }
  return seq;
}

Eigen::MatrixXd sample_random_onb_real(int dimension, std::uint64_t seed) {
  if (dimension < 1) throw std::invalid_argument("sample_random_onb: dimension must be >= 1");
  StreamRng rng = StreamRng(seed).substream(0x4f4e42ull);
  Eigen::MatrixXd g(dimension, dimension);
  for (int j = 0; j < dimension; ++j)
    for (int i = 0; i < dimension; ++i) g(i, j) = rng.next_gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dimension, dimension);
  const Eigen::MatrixXd r = qr.matrixQR();
  for (int j = 0; j < dimension; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

Eigen::MatrixXcd sample_random_onb_complex(int dimension, std::uint64_t seed) {
  if (dimension < 1) throw std::invalid_argument("sample_random_onb: dimension must be >= 1");
  StreamRng rng = StreamRng(seed).substream(0x4f4e4243ull);
  Eigen::MatrixXcd g(dimension, dimension);
  for (int j = 0; j < dimension; ++j)
    for (int i = 0; i < dimension; ++i) g(i, j) = rng.next_complex_gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dimension, dimension);
  const Eigen::MatrixXcd r = qr.matrixQR();
  for (int j = 0; j < dimension; ++j) {
    const std::complex<double> rjj = r(j, j);
    const double a = std::abs(rjj);
    if (a > 0.0) q.col(j) *= rjj / a;
  }
  return q;
}

}  // namespace rpz
