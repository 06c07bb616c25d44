#include "rpz/qe.hpp"

#include <cmath>
#include <stdexcept>

#include "rpz/ensembles.hpp"
#include "rpz/parallel.hpp"
#include "rpz/rng.hpp"

namespace rpz {

namespace {

// Normalized associated Legendre values P-bar_l^m(x) for one l across
// m = 0..l, by the stable m-diagonal then l-raising recurrence. The
// normalization makes {P-bar e^{im phi}} orthonormal on the sphere.
std::vector<double> normalized_assoc_legendre_row(int l, double x) {
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  std::vector<double> row(static_cast<std::size_t>(l) + 1);
  for (int m = 0; m <= l; ++m) {
    double pmm = std::sqrt(1.0 / (4.0 * M_PI));
    for (int k = 1; k <= m; ++k) pmm *= s * std::sqrt((2.0 * k + 1.0) / (2.0 * k));
    if (m == l) {
      row[static_cast<std::size_t>(m)] = pmm;
      continue;
    }
    double p_prev = pmm;
    double p = x * std::sqrt(2.0 * m + 3.0) * pmm;
    for (int ll = m + 2; ll <= l; ++ll) {
      const double a = std::sqrt((4.0 * ll * ll - 1.0) /
                                 (static_cast<double>(ll) * ll - static_cast<double>(m) * m));
      const double ap =
          std::sqrt((4.0 * (ll - 1.0) * (ll - 1.0) - 1.0) /
                    ((ll - 1.0) * (ll - 1.0) - static_cast<double>(m) * m));
      const double pn = a * (x * p - p_prev / ap);
      p_prev = p;
      p = pn;
    }
    row[static_cast<std::size_t>(m)] = p;
  }
  return row;
}

double real_harmonic(int l, int k, const std::array<double, 3>& x) {
  const double ct = x[2];
  const double phi = std::atan2(x[1], x[0]);
  const auto row = normalized_assoc_legendre_row(l, ct);
  const int m = std::abs(k);
  const double p = row[static_cast<std::size_t>(m)];
  if (k == 0) return p;
  if (k > 0) return M_SQRT2 * p * std::cos(m * phi);
  return M_SQRT2 * p * std::sin(m * phi);
}

std::uint64_t draw_seed(std::uint64_t seed, int draw) {
  return StreamRng(seed).substream(0x51455f4f4e42ull).substream(static_cast<std::uint64_t>(draw)).next_u64();
}

}  // namespace

int SymbolFunction::max_degree() const {
  int l = 0;
  for (const auto& t : terms) l = std::max(l, t.l);
  return l;
}

double SymbolFunction::mean() const {
  double m = 0.0;
  for (const auto& t : terms)
    if (t.l == 0 && t.k == 0) m += t.coeff / std::sqrt(4.0 * M_PI);
  return m;
}

double SymbolFunction::eval(const std::array<double, 3>& x) const {
  double v = 0.0;
  for (const auto& t : terms) v += t.coeff * real_harmonic(t.l, t.k, x);
  return v;
}

SymbolFunction SymbolFunction::odd_zonal() {
  return SymbolFunction{{{1, 0, 1.0}}};
}

SymbolFunction SymbolFunction::even_quadrupole() {
  return SymbolFunction{{{2, 0, 1.0}, {2, 2, 0.5}}};
}

SymbolFunction SymbolFunction::random_band_limited(int max_l, std::uint64_t seed) {
  SymbolFunction f;
  StreamRng rng = StreamRng(seed).substream(0x53594d42ull);
  for (int l = 0; l <= max_l; ++l)
    for (int k = -l; k <= l; ++k) f.terms.push_back({l, k, rng.next_gaussian()});
  return f;
}

Eigen::MatrixXd eval_harmonic_basis(int degree,
                                    const std::vector<std::array<double, 3>>& points) {
  const int d = 2 * degree + 1;
  Eigen::MatrixXd out(d, static_cast<Eigen::Index>(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j) {
    const auto& x = points[j];
    const double nrm = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (std::abs(nrm - 1.0) > 1e-8)
      throw std::domain_error("eval_harmonic_basis: points must be unit vectors");
    const double phi = std::atan2(x[1], x[0]);
    const auto row = normalized_assoc_legendre_row(degree, x[2]);
    out(degree, static_cast<Eigen::Index>(j)) = row[0];
    for (int m = 1; m <= degree; ++m) {
      const double p = row[static_cast<std::size_t>(m)];
      out(degree + m, static_cast<Eigen::Index>(j)) = M_SQRT2 * p * std::cos(m * phi);
      out(degree - m, static_cast<Eigen::Index>(j)) = M_SQRT2 * p * std::sin(m * phi);
    }
  }
  return out;
}

double geodesic_symbol_average(const SymbolFunction& f, const std::array<double, 3>& x,
                               const std::array<double, 3>& v, int circle_points) {
  if (circle_points <= 2 * f.max_degree())
    throw std::invalid_argument("geodesic_symbol_average: too few circle points");
  double sum = 0.0;
  for (int j = 0; j < circle_points; ++j) {
    const double t = 2.0 * M_PI * j / circle_points;
    const double c = std::cos(t), s = std::sin(t);
    sum += f.eval({x[0] * c + v[0] * s, x[1] * c + v[1] * s, x[2] * c + v[2] * s});
  }
  return sum / circle_points;
}

double predicted_constant(const SymbolFunction& f, int base_order, int direction_count) {
  const SphereQuadrature quad = quadrature_s2(base_order);
  const double fbar = f.mean();
  double acc = 0.0;
  for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
    const auto& n = quad.nodes[i];
    // Tangent frame at n.
    std::array<double, 3> a = std::abs(n[2]) < 0.9 ? std::array<double, 3>{0.0, 0.0, 1.0}
                                                   : std::array<double, 3>{1.0, 0.0, 0.0};
    std::array<double, 3> e1 = {n[1] * a[2] - n[2] * a[1], n[2] * a[0] - n[0] * a[2],
                                n[0] * a[1] - n[1] * a[0]};
    const double e1n = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
    for (auto& c : e1) c /= e1n;
    const std::array<double, 3> e2 = {n[1] * e1[2] - n[2] * e1[1], n[2] * e1[0] - n[0] * e1[2],
                                      n[0] * e1[1] - n[1] * e1[0]};
    double dir_acc = 0.0;
    for (int aidx = 0; aidx < direction_count; ++aidx) {
      const double alpha = M_PI * aidx / direction_count;  // antipodal directions repeat
      const double ca = std::cos(alpha), sa = std::sin(alpha);
      const std::array<double, 3> v = {e1[0] * ca + e2[0] * sa, e1[1] * ca + e2[1] * sa,
                                       e1[2] * ca + e2[2] * sa};
      const double avg = geodesic_symbol_average(f, n, v, std::max(64, 2 * f.max_degree() + 2));
      dir_acc += (avg - fbar) * (avg - fbar);
    }
    acc += quad.weights[i] / (4.0 * M_PI) * dir_acc / direction_count;
  }
  return acc;
}

namespace {

Eigen::MatrixXd multiplication_matrix(int degree, const SymbolFunction& f, double* fbar_out) {
  const int order = 2 * degree + f.max_degree() + 1;
  const SphereQuadrature quad = quadrature_s2(order);
  const Eigen::MatrixXd y = eval_harmonic_basis(degree, quad.nodes);
  Eigen::VectorXd wf(static_cast<Eigen::Index>(quad.nodes.size()));
  double fbar = 0.0;
  for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
    const double fv = f.eval(quad.nodes[i]);
    wf(static_cast<Eigen::Index>(i)) = quad.weights[i] * fv;
    fbar += quad.weights[i] * fv;
  }
  if (fbar_out) *fbar_out = fbar / (4.0 * M_PI);
  return y * wf.asDiagonal() * y.transpose();
}

}  // namespace

S2Statistic s2_statistic(int degree, const SymbolFunction& f, int onb_draws,
                         std::uint64_t seed) {
  if (onb_draws < 1) throw std::invalid_argument("s2_statistic: need at least one draw");
  const int d = 2 * degree + 1;
  double fbar = 0.0;
  const Eigen::MatrixXd m = multiplication_matrix(degree, f, &fbar);

  std::vector<double> s2(static_cast<std::size_t>(onb_draws));
  parallel_for(s2.size(), [&](std::size_t t) {
    const Eigen::MatrixXd q = sample_random_onb_real(d, draw_seed(seed, static_cast<int>(t)));
    const Eigen::MatrixXd mq = m * q;
    double acc = 0.0;
    for (int j = 0; j < d; ++j) {
      const double diag = q.col(j).dot(mq.col(j));
      acc += (diag - fbar) * (diag - fbar);
    }
    // Average over the eigenspace basis: the 1/N variance law holds for the
    // per-element mean, not the raw sum (which tends to a constant).
    s2[t] = acc / d;
  });

  S2Statistic out;
  out.draws = onb_draws;
  double sum = 0.0, sum2 = 0.0;
  for (double v : s2) {
    sum += v;
    sum2 += v * v;
  }
  out.mean = sum / onb_draws;
  const double var = std::max(0.0, sum2 / onb_draws - out.mean * out.mean);
  out.stderr_of_mean = std::sqrt(var / onb_draws);
  return out;
}

double off_diagonal_sum(int degree, const SymbolFunction& f, int gap, int onb_draws,
                        std::uint64_t seed) {
  if (gap < 1) throw std::invalid_argument("off_diagonal_sum: gap must be >= 1");
  const int d = 2 * degree + 1;
  const Eigen::MatrixXd m = multiplication_matrix(degree, f, nullptr);
  double total = 0.0;
  for (int t = 0; t < onb_draws; ++t) {
    const Eigen::MatrixXd q = sample_random_onb_real(d, draw_seed(seed, t));
    const Eigen::MatrixXd a = q.transpose() * m * q;
    double acc = 0.0;
    for (int j = 0; j + gap < d; ++j) acc += a(j, j + gap) * a(j, j + gap);
    total += acc;
  }
  return total / onb_draws;
}

}  // namespace rpz
