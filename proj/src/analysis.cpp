#include "fcs/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>

#include "fcs/units.hpp"

namespace fcs {

namespace {

struct LinearFit {
  std::array<double, 3> beta{};  // (a, a V cos phi0, -a V sin phi0)
  std::array<std::array<double, 3>, 3> cov{};
  bool ok = false;
};

/// Weighted normal equations for y = b0 + b1 cos(phi) + b2 sin(phi).
LinearFit solve_weighted(const std::vector<double>& phases,
                         const std::vector<double>& y,
                         const std::vector<double>& weights) {
  std::array<std::array<double, 3>, 3> m{};
  std::array<double, 3> rhs{};
  for (std::size_t i = 0; i < phases.size(); ++i) {
    const double x[3] = {1.0, std::cos(phases[i]), std::sin(phases[i])};
    const double w = weights[i];
    for (int r = 0; r < 3; ++r) {
      rhs[r] += w * y[i] * x[r];
      for (int c = 0; c < 3; ++c) m[r][c] += w * x[r] * x[c];
    }
  }

  // Invert the symmetric 3x3 by adjugate; covariance is the inverse itself
  // because the weights are inverse variances.
  LinearFit fit;
  const double det =
      m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
      m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
      m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  const double scale = std::abs(m[0][0]) + std::abs(m[1][1]) + std::abs(m[2][2]);
  if (!(std::abs(det) > 1e-12 * scale * scale * scale)) return fit;

  std::array<std::array<double, 3>, 3>& inv = fit.cov;
  inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
  inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
  inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
  inv[1][0] = inv[0][1];
  inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
  inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
  inv[2][0] = inv[0][2];
  inv[2][1] = inv[1][2];
  inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;

  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) fit.beta[r] += inv[r][c] * rhs[c];
  fit.ok = true;
  return fit;
}

void validate_scan(const FringeScan& scan) {
  if (scan.phases_rad.size() != scan.counts.size())
    throw std::invalid_argument("fringe scan phases and counts differ in length");
  std::set<double> distinct(scan.phases_rad.begin(), scan.phases_rad.end());
  if (distinct.size() < 5)
    throw std::invalid_argument("fringe scan needs >= 5 distinct phases");
  auto [mn, mx] = std::minmax_element(scan.phases_rad.begin(), scan.phases_rad.end());
  if (*mx - *mn < kTwoPi - 1e-9)
    throw std::invalid_argument("fringe scan must span at least one period");
  if (!(scan.acquisition_time_per_point_s > 0.0))
    throw std::invalid_argument("acquisition time per point must be > 0");
  for (std::int64_t c : scan.counts)
    if (c < 0) throw std::invalid_argument("fringe counts must be >= 0");
}

std::vector<double> poisson_weights(const std::vector<std::int64_t>& counts) {
  std::vector<double> w;
  w.reserve(counts.size());
  for (std::int64_t c : counts)
    w.push_back(1.0 / static_cast<double>(c > 0 ? c : c + 1));
  return w;
}

VisibilityResult result_from(const LinearFit& fit, FitKind kind) {
  VisibilityResult res;
  res.kind = kind;
  if (!fit.ok) {
    res.failure = "singular fit (degenerate phase coverage)";
    return res;
  }
  const double a = fit.beta[0];
  const double b1 = fit.beta[1];
  const double b2 = fit.beta[2];
  if (!(a > 0.0)) {
    res.failure = "non-positive fitted offset";
    return res;
  }
  const double r = std::hypot(b1, b2);
  res.offset = a;
  res.amplitude = r;
  res.visibility = r / a;
  res.phase0_rad = std::atan2(-b2, b1);

  // Error propagation for V = r / a; near r = 0 the direction is undefined,
  // so fall back to the direction-averaged variance.
  const auto& c = fit.cov;
  double var;
  if (r > 1e-12 * a) {
    const double g0 = -r / (a * a);
    const double g1 = b1 / (r * a);
    const double g2 = b2 / (r * a);
    var = g0 * g0 * c[0][0] + g1 * g1 * c[1][1] + g2 * g2 * c[2][2] +
          2.0 * (g0 * g1 * c[0][1] + g0 * g2 * c[0][2] + g1 * g2 * c[1][2]);
  } else {
    var = 0.5 * (c[1][1] + c[2][2]) / (a * a);
  }
  res.sigma = std::sqrt(std::max(var, 0.0));
  res.ok = true;
  return res;
}

double gaussian_mass(double mean, double sigma, double window_halfwidth) {
  const double inv = 1.0 / (sigma * std::sqrt(2.0));
  return 0.5 * (std::erf((window_halfwidth - mean) * inv) -
                std::erf((-window_halfwidth - mean) * inv));
}

}  // namespace

VisibilityResult fit_fringe(const FringeScan& scan) {
  validate_scan(scan);
  std::vector<double> y(scan.counts.begin(), scan.counts.end());
  LinearFit fit = solve_weighted(scan.phases_rad, y, poisson_weights(scan.counts));
  return result_from(fit, FitKind::raw);
}

double visibility_from_extremes(double c_max, double c_min) {
  if (!(c_max >= c_min && c_min >= 0.0))
    throw std::domain_error("extremes must satisfy c_max >= c_min >= 0");
  if (!(c_max > 0.0))
    throw std::domain_error("visibility undefined: both extremes are zero");
  return (c_max - c_min) / (c_max + c_min);
}

VisibilityResult net_visibility(const FringeScan& scan, double accidental_rate_hz) {
  if (!(accidental_rate_hz >= 0.0))
    throw std::domain_error("accidental rate must be >= 0");
  validate_scan(scan);
  const double subtract = accidental_rate_hz * scan.acquisition_time_per_point_s;
  std::vector<double> y;
  y.reserve(scan.counts.size());
  for (std::int64_t c : scan.counts)
    y.push_back(std::max(0.0, static_cast<double>(c) - subtract));
  LinearFit fit = solve_weighted(scan.phases_rad, y, poisson_weights(scan.counts));
  return result_from(fit, FitKind::net);
}

BellVerdict bell_verdict(const VisibilityResult& result) {
  if (!(result.sigma > 0.0))
    throw std::invalid_argument("bell verdict needs sigma > 0");
  BellVerdict verdict;
  verdict.threshold = 1.0 / std::sqrt(2.0);
  verdict.pass = result.visibility > verdict.threshold;
  verdict.significance = (result.visibility - verdict.threshold) / result.sigma;
  return verdict;
}

double crosstalk_degradation(double delta_T_ps, double coincidence_sigma_ps,
                             double window_ps, double visibility) {
  if (!(window_ps > 0.0))
    throw std::invalid_argument("window must be > 0");
  if (!(window_ps <= 2.0 * delta_T_ps))
    throw std::invalid_argument("window must not exceed 2 * delta_T");
  if (coincidence_sigma_ps == 0.0) return 0.0;

  const double half = 0.5 * window_ps;
  const double g_central = gaussian_mass(0.0, coincidence_sigma_ps, half);
  const double g_side = gaussian_mass(delta_T_ps, coincidence_sigma_ps, half);
  const double mass_central = 0.125 * g_central;  // phase-averaged peak mass
  const double mass_side = 0.0625 * g_side;
  const double v_meas =
      visibility * mass_central / (mass_central + 2.0 * mass_side);
  return visibility - v_meas;
}

}  // namespace fcs
