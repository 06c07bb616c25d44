#include "rpz/zeros_crits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rpz {

namespace {

using cd = std::complex<double>;

// Evaluates p, p' and the absolute-coefficient majorant at z. For |z| > 1
// the reversed polynomial at 1/z is used so high degrees do not overflow.
struct PolyEval {
  cd p{0.0, 0.0};
  cd dp{0.0, 0.0};
  double scale = 0.0;   // sum_k |a_k| |z|^k (up to a common power of |z|)
  double pscale = 0.0;  // |p| relative to scale
};

PolyEval eval_direct(const std::vector<cd>& a, cd z) {
  PolyEval e;
  cd p(0.0, 0.0), dp(0.0, 0.0);
  double s = 0.0;
  const double az = std::abs(z);
  for (std::size_t i = a.size(); i-- > 0;) {
    dp = dp * z + p;
    p = p * z + a[i];
    s = s * az + std::abs(a[i]);
  }
  e.p = p;
  e.dp = dp;
  e.scale = s;
  e.pscale = s > 0.0 ? std::abs(p) / s : 0.0;
  return e;
}

// Newton ratio p/p' and relative residual, stable for any |z|.
void newton_ratio(const std::vector<cd>& a, cd z, cd* ratio, double* rel_residual) {
  const std::size_t n = a.size() - 1;
  if (std::abs(z) <= 1.0) {
    const PolyEval e = eval_direct(a, z);
    *ratio = e.dp != cd(0.0, 0.0) ? e.p / e.dp : cd(0.0, 0.0);
    *rel_residual = e.pscale;
    return;
  }
  // p(z) = z^n q(w), w = 1/z; p'(z) = z^{n-1} (n q(w) - w q'(w)).
  std::vector<cd> rev(a.rbegin(), a.rend());
  const cd w = 1.0 / z;
  const PolyEval e = eval_direct(rev, w);
  const cd denom = static_cast<double>(n) * e.p - w * e.dp;
  *ratio = denom != cd(0.0, 0.0) ? z * e.p / denom : cd(0.0, 0.0);
  *rel_residual = e.pscale;
}

double root_residual(const std::vector<cd>& a, cd z) {
  cd ratio;
  double rel;
  newton_ratio(a, z, &ratio, &rel);
  return rel;
}

}  // namespace

ProjectivePoint::ProjectivePoint(cd a, cd b) : z0(a), z1(b) {
  const double m = std::max(std::abs(z0), std::abs(z1));
  if (m == 0.0) throw std::invalid_argument("ProjectivePoint: (0, 0) is not a point");
  z0 /= m;
  z1 /= m;
}

ProjectivePoint ProjectivePoint::from_chart(cd z) {
  if (std::abs(z) <= 1.0) return {z, {1.0, 0.0}};
  return {{1.0, 0.0}, 1.0 / z};
}

double fs_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
  const cd inner = p.z0 * std::conj(q.z0) + p.z1 * std::conj(q.z1);
  const cd cross = p.z0 * q.z1 - p.z1 * q.z0;
  return std::atan2(std::abs(cross), std::abs(inner));
}

std::vector<cd> affine_coefficients(const SectionSample& sample) {
  if (sample.spec.family != Family::Su2Poly)
    throw std::invalid_argument("affine_coefficients: SU(2) samples only");
  const auto w = monomial_weights(sample.spec.degree);
  std::vector<cd> a(sample.coeffs.size());
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = sample.coeffs[k] * std::sqrt(w[k]);
  return a;
}

std::vector<cd> aberth_roots(std::vector<cd> coeffs, int* infinity_multiplicity,
                             int* origin_multiplicity) {
  double amax = 0.0;
  for (const auto& c : coeffs) amax = std::max(amax, std::abs(c));
  if (amax == 0.0) throw std::invalid_argument("aberth_roots: zero polynomial");

  // Deflate only structurally vanishing coefficients. A threshold relative
  // to the largest coefficient is unsafe here: with binomial-type weights the
  // central coefficients dwarf the end ones by many orders of magnitude, and
  // such a test deflates genuine roots that are nowhere near 0 or infinity.
  int inf_mult = 0;
  while (coeffs.size() > 1 && std::abs(coeffs.back()) == 0.0) {
    coeffs.pop_back();
    ++inf_mult;
  }
  int zero_mult = 0;
  std::size_t lead = 0;
  while (lead + 1 < coeffs.size() && std::abs(coeffs[lead]) == 0.0) {
    ++lead;
    ++zero_mult;
  }
  if (lead > 0) coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(lead));
  if (infinity_multiplicity) *infinity_multiplicity = inf_mult;
  if (origin_multiplicity) *origin_multiplicity = zero_mult;

  const std::size_t n = coeffs.size() - 1;
  std::vector<cd> roots;
  if (n == 0) return roots;

  // Initial guesses from the Newton polygon (Bini): the upper convex hull of
  // (k, log|a_k|) splits the roots into annuli whose radii match the true
  // root magnitudes, which is what lets iteration converge across the wide
  // dynamic range of the coefficients.
  std::vector<double> logabs(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const double ak = std::abs(coeffs[k]);
    logabs[k] = ak > 0.0 ? std::log(ak) : -std::numeric_limits<double>::infinity();
  }
  std::vector<std::size_t> hull;  // indices of upper-hull vertices, left to right
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (!std::isfinite(logabs[k])) continue;
    while (hull.size() >= 2) {
      const std::size_t i = hull[hull.size() - 2], j = hull.back();
      // Drop j if it lies on or below the chord from i to k.
      const double lhs = (logabs[j] - logabs[i]) * static_cast<double>(k - i);
      const double rhs = (logabs[k] - logabs[i]) * static_cast<double>(j - i);
      if (lhs <= rhs)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(k);
  }
  roots.reserve(n);
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const std::size_t k1 = hull[e], k2 = hull[e + 1];
    const std::size_t m = k2 - k1;
    const double radius =
        std::exp((logabs[k1] - logabs[k2]) / static_cast<double>(m));
    for (std::size_t i = 0; i < m; ++i) {
      const double ang = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(m) +
                         0.45 + 0.26 * static_cast<double>(e);
      roots.push_back(radius * cd(std::cos(ang), std::sin(ang)));
    }
  }
  if (roots.size() != n) throw std::logic_error("aberth_roots: hull initialization mismatch");

  std::vector<bool> done(n, false);
  for (int sweep = 0; sweep < 200; ++sweep) {
    double max_step = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      cd ratio;
      double rel;
      newton_ratio(coeffs, roots[i], &ratio, &rel);
      cd repulse(0.0, 0.0);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) repulse += 1.0 / (roots[i] - roots[j]);
      const cd denom = 1.0 - ratio * repulse;
      const cd step = denom != cd(0.0, 0.0) ? ratio / denom : ratio;
      roots[i] -= step;
      const double rstep = std::abs(step) / std::max(1.0, std::abs(roots[i]));
      max_step = std::max(max_step, rstep);
      if (rstep < 1e-14) done[i] = true;
    }
    if (max_step < 1e-14) break;
  }
  return roots;
}

PointProcessSample find_zeros(const SectionSample& sample) {
  const std::vector<cd> a = affine_coefficients(sample);
  int inf_mult = 0, zero_mult = 0;
  std::vector<cd> roots = aberth_roots(a, &inf_mult, &zero_mult);

  PointProcessSample out;
  out.kind = PointKind::Zeros;
  out.degree = sample.spec.degree;

  std::vector<ProjectivePoint> pts;
  std::vector<double> res;
  for (const cd& z : roots) {
    pts.push_back(ProjectivePoint::from_chart(z));
    res.push_back(root_residual(a, z));
  }
  // Cluster nearby roots into a single point with summed multiplicity.
  std::vector<bool> used(pts.size(), false);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) continue;
    WeightedPoint wp{pts[i], 1};
    double r = res[i];
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (used[j]) continue;
      if (fs_distance(pts[i], pts[j]) < 1e-7) {
        used[j] = true;
        ++wp.multiplicity;
        r = std::max(r, res[j]);
      }
    }
    out.points.push_back(wp);
    out.residuals.push_back(r);
  }
  if (zero_mult > 0) {
    bool merged = false;
    for (auto& wp : out.points)
      if (fs_distance(wp.point, ProjectivePoint::from_chart({0.0, 0.0})) < 1e-7) {
        wp.multiplicity += zero_mult;
        merged = true;
        break;
      }
    if (!merged) {
      out.points.push_back({ProjectivePoint::from_chart({0.0, 0.0}), zero_mult});
      out.residuals.push_back(0.0);
    }
  }
  if (inf_mult > 0) {
    out.points.push_back({ProjectivePoint::infinity(), inf_mult});
    out.residuals.push_back(0.0);
  }
  return out;
}

namespace {

// Chern critical equation in a chart: F(z) = p'(z)(1+|z|^2) - N conj(z) p(z).
struct CritEval {
  cd f;
  cd fz;    // Wirtinger d/dz
  cd fzbar; // Wirtinger d/dzbar
  double scale;
};

CritEval crit_eval(const std::vector<cd>& a, int degree_n, cd z) {
  cd p(0.0, 0.0), dp(0.0, 0.0), d2p(0.0, 0.0);
  double s = 0.0, ds = 0.0;
  const double az = std::abs(z);
  for (std::size_t i = a.size(); i-- > 0;) {
    d2p = d2p * z + 2.0 * dp;
    dp = dp * z + p;
    p = p * z + a[i];
    ds = ds * az + s;
    s = s * az + std::abs(a[i]);
  }
  const double n = degree_n;
  const double zz = std::norm(z);
  CritEval e;
  e.f = dp * (1.0 + zz) - n * std::conj(z) * p;
  e.fz = d2p * (1.0 + zz) + dp * std::conj(z) - n * std::conj(z) * dp;
  e.fzbar = dp * z - n * p;
  // Majorant of |F| from absolute coefficients; the effective radius is
  // floored so high-multiplicity roots at the origin keep a usable scale.
  const double r_eff = std::max(az, 1e-2);
  double s_eff = 0.0, ds_eff = 0.0;
  for (std::size_t i = a.size(); i-- > 0;) {
    ds_eff = ds_eff * r_eff + s_eff;
    s_eff = s_eff * r_eff + std::abs(a[i]);
  }
  e.scale = ds_eff * (1.0 + zz) + n * r_eff * s_eff + 1e-300;
  return e;
}

struct CritSolution {
  cd z;
  double residual;
  bool degenerate_hessian;
};

bool newton_crit(const std::vector<cd>& a, int degree_n, cd seed, double tol,
                 CritSolution* sol) {
  cd z = seed;
  double prev_step = -1.0;
  for (int it = 0; it < 80; ++it) {
    CritEval e = crit_eval(a, degree_n, z);
    const double fn = std::abs(e.f);
    if (fn <= tol * e.scale) {
      sol->z = z;
      sol->residual = fn / e.scale;
      const double jdet = std::abs(std::norm(e.fz) - std::norm(e.fzbar));
      const double jscale = std::norm(e.fz) + std::norm(e.fzbar) + 1e-300;
      sol->degenerate_hessian = jdet < 1e-8 * jscale;
      return true;
    }
    // Real 2x2 Newton step via Wirtinger derivatives:
    // delta_z = -(conj(fz) f - fzbar conj(f)) / (|fz|^2 - |fzbar|^2).
    const double det = std::norm(e.fz) - std::norm(e.fzbar);
    if (det == 0.0) return false;
    cd step = -(std::conj(e.fz) * e.f - e.fzbar * std::conj(e.f)) / det;
    // Backtracking damping.
    double lambda = 1.0;
    cd znew = z + step;
    for (int half = 0; half < 8; ++half) {
      if (std::abs(crit_eval(a, degree_n, znew).f) < fn) break;
      lambda *= 0.5;
      znew = z + lambda * step;
    }
    const double st = std::abs(lambda * step);
    // Geometric stall (multiple root): extrapolate the remaining distance.
    if (prev_step > 0.0 && st > 0.0) {
      const double rho = st / prev_step;
      if (rho > 0.3 && rho < 0.995 && lambda == 1.0) {
        const cd zacc = znew + step * (rho / (1.0 - rho));
        if (std::abs(crit_eval(a, degree_n, zacc).f) < std::abs(crit_eval(a, degree_n, znew).f))
          znew = zacc;
      }
    }
    prev_step = st;
    z = znew;
    if (std::abs(z) > 1e8) return false;
  }
  return false;
}

}  // namespace

PointProcessSample find_critical_points(const SectionSample& sample, const CritOptions& opts) {
  if (sample.spec.degree < 1)
    throw std::invalid_argument("find_critical_points: degree must be >= 1");
  const std::vector<cd> a = affine_coefficients(sample);
  double amax = 0.0;
  for (const auto& c : a) amax = std::max(amax, std::abs(c));
  if (amax == 0.0) throw std::invalid_argument("find_critical_points: zero section");
  const std::vector<cd> a_rev(a.rbegin(), a.rend());

  PointProcessSample out;
  out.kind = PointKind::Crits;
  out.degree = sample.spec.degree;

  const int g = opts.grid_per_side;
  const double ext = opts.grid_extent;
  out.total_seeds = 2 * g * g;

  std::vector<CritSolution> sols;
  for (int chart = 0; chart < 2; ++chart) {
    const std::vector<cd>& coeffs = chart == 0 ? a : a_rev;
    for (int iy = 0; iy < g; ++iy)
      for (int ix = 0; ix < g; ++ix) {
        const double x = -ext + 2.0 * ext * (ix + 0.5) / g;
        const double y = -ext + 2.0 * ext * (iy + 0.5) / g;
        CritSolution sol;
        if (!newton_crit(coeffs, sample.spec.degree, cd(x, y), opts.residual_tol, &sol))
          continue;
        ++out.converged_seeds;
        // Map chart-1 solutions through the coordinate swap.
        ProjectivePoint pp = chart == 0 ? ProjectivePoint::from_chart(sol.z)
                                        : ProjectivePoint(cd(1.0, 0.0), sol.z);
        bool dup = false;
        for (std::size_t i = 0; i < out.points.size(); ++i) {
          if (fs_distance(out.points[i].point, pp) < opts.dedup_radius) {
            dup = true;
            if (sol.residual < out.residuals[i]) {
              out.points[i].point = pp;
              out.residuals[i] = sol.residual;
            }
            break;
          }
        }
        if (!dup) {
          out.points.push_back({pp, 1});
          out.residuals.push_back(sol.residual);
          if (sol.degenerate_hessian) ++out.near_degenerate_hessians;
        }
      }
  }
  return out;
}

std::vector<cd> su2_rotate_coeffs(const std::vector<cd>& coeffs, cd alpha, cd beta) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 0) throw std::invalid_argument("su2_rotate_coeffs: empty coefficient vector");
  const auto w = monomial_weights(n);
  // Affine coefficients of the input section.
  std::vector<cd> a(coeffs.size());
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = coeffs[k] * std::sqrt(w[k]);

  // (s o g^{-1})(t) = sum_k a_k (conj(alpha) t - beta)^k (conj(beta) t + alpha)^{n-k}.
  std::vector<std::vector<cd>> vpow(static_cast<std::size_t>(n) + 1);
  vpow[0] = {cd(1.0, 0.0)};
  const cd v0 = alpha, v1 = std::conj(beta);
  for (int j = 1; j <= n; ++j) {
    const auto& prev = vpow[static_cast<std::size_t>(j - 1)];
    std::vector<cd> cur(prev.size() + 1, cd(0.0, 0.0));
    for (std::size_t i = 0; i < prev.size(); ++i) {
      cur[i] += prev[i] * v0;
      cur[i + 1] += prev[i] * v1;
    }
    vpow[static_cast<std::size_t>(j)] = std::move(cur);
  }
  const cd u0 = -beta, u1 = std::conj(alpha);
  std::vector<cd> upow = {cd(1.0, 0.0)};
  std::vector<cd> b(coeffs.size(), cd(0.0, 0.0));
  for (int k = 0; k <= n; ++k) {
    const auto& vp = vpow[static_cast<std::size_t>(n - k)];
    for (std::size_t i = 0; i < upow.size(); ++i)
      for (std::size_t j = 0; j < vp.size(); ++j) b[i + j] += a[static_cast<std::size_t>(k)] * upow[i] * vp[j];
    if (k < n) {
      std::vector<cd> cur(upow.size() + 1, cd(0.0, 0.0));
      for (std::size_t i = 0; i < upow.size(); ++i) {
        cur[i] += upow[i] * u0;
        cur[i + 1] += upow[i] * u1;
      }
      upow = std::move(cur);
    }
  }
  std::vector<cd> out(coeffs.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = b[k] / std::sqrt(w[k]);
  return out;
}

ProjectivePoint su2_rotate_point(const ProjectivePoint& p, cd alpha, cd beta) {
  return {alpha * p.z0 + beta * p.z1, -std::conj(beta) * p.z0 + std::conj(alpha) * p.z1};
}

}  // namespace rpz
