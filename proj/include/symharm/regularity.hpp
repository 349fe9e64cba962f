#pragma once

// Holder machinery: test-function generators with exactly known regularity,
// modulus of continuity, log-log rate fitting, spherical-mean deviation and
// the Bernstein gradient probe.

#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "symharm/spectral.hpp"

namespace symharm {

// ---------------------------------------------------------------------------
// Rate fitting
// ---------------------------------------------------------------------------

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double window_min = 0.0;  // abscissa range actually used
  double window_max = 0.0;
};

/// Least-squares line through (log x, log y). Requires >= 4 positive points.
inline DecayFit decay_fit(std::span<const double> xs,
                          std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 4)
    throw std::invalid_argument("decay_fit: need >= 4 matched points");
  const size_t n = xs.size();
  double sx = 0, sy = 0;
  for (size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
      throw std::invalid_argument("decay_fit: inputs must be positive");
    sx += std::log(xs[i]);
    sy += std::log(ys[i]);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = std::log(xs[i]) - mx;
    const double dy = std::log(ys[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw std::invalid_argument("decay_fit: degenerate abscissa");
  DecayFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  const double ss_res = syy - fit.slope * sxy;
  fit.r2 = (syy < 1e-30) ? 1.0 : std::max(0.0, 1.0 - ss_res / syy);
  fit.window_min = *std::min_element(xs.begin(), xs.end());
  fit.window_max = *std::max_element(xs.begin(), xs.end());
  return fit;
}

/// Which end of the abscissa range is pre-asymptotic and gets dropped.
enum class PreAsymptotic { smallest, largest };

/// Rate-fit policy: the two points at the pre-asymptotic end are dropped
/// before fitting (for N-curves that is small N; for t-curves large t).
inline DecayFit decay_fit_windowed(
    std::vector<double> xs, std::vector<double> ys,
    PreAsymptotic drop = PreAsymptotic::smallest) {
  if (xs.size() != ys.size() || xs.size() < 6)
    throw std::invalid_argument("decay_fit_windowed: need >= 6 points");
  std::vector<size_t> idx(xs.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return xs[a] < xs[b]; });
  if (drop == PreAsymptotic::largest) std::reverse(idx.begin(), idx.end());
  std::vector<double> fx, fy;
  for (size_t k = 2; k < idx.size(); ++k) {
    fx.push_back(xs[idx[k]]);
    fy.push_back(ys[idx[k]]);
  }
  return decay_fit(fx, fy);
}

// ---------------------------------------------------------------------------
// Test profiles
// ---------------------------------------------------------------------------

enum class TestProfileKind { cusp, ball, weierstrass };

inline const char* to_string(TestProfileKind k) {
  switch (k) {
    case TestProfileKind::cusp: return "cusp";
    case TestProfileKind::ball: return "ball";
    case TestProfileKind::weierstrass: return "weierstrass";
  }
  return "?";
}

struct TestProfile {
  SpectralCoeffs coeffs;
  RadialProfile profile;  // pointwise-exact on a uniform grid
};

namespace detail {

// Coefficients of f against phi_n = Z_n/d_n by tanh-sinh quadrature on each
// smooth piece of [0, pi]; exact to ~1e-12 for piecewise-smooth f with
// algebraic kinks at the breakpoints.
inline SpectralCoeffs analyze_piecewise(const SpaceParams& p,
                                        const std::function<double(double)>& f,
                                        int max_degree,
                                        std::span<const double> breaks) {
  std::vector<double> cuts{0.0};
  for (double b : breaks)
    if (b > 0.0 && b < M_PI) cuts.push_back(b);
  cuts.push_back(M_PI);
  std::sort(cuts.begin(), cuts.end());

  const double a = p.jacobi_a(), bb = p.jacobi_b();
  const auto p1 = jacobi_at_one(a, max_degree);
  std::vector<KahanSum> acc(static_cast<size_t>(max_degree) + 1);
  for (size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
    const double lo = cuts[seg], hi = cuts[seg + 1];
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    // Resolve the degree-M oscillation of the Jacobi factor.
    const double h =
        std::min(0.04, 0.8 / (std::max(1, max_degree) * std::max(half, 0.1)));
    for (const auto& node : tanh_sinh_nodes(h)) {
      const double theta = mid + half * node.x;
      const double w = half * node.w * f(theta) * density(p, theta);
      jacobi_recurrence(a, bb, max_degree, std::cos(theta),
                        [&](int n, double pn) {
                          acc[static_cast<size_t>(n)].add(
                              w * pn / p1[static_cast<size_t>(n)]);
                        });
    }
  }
  SpectralCoeffs out;
  out.space = p;
  out.c.resize(static_cast<size_t>(max_degree) + 1);
  for (int n = 0; n <= max_degree; ++n)
    out.c[static_cast<size_t>(n)] = acc[static_cast<size_t>(n)].value();
  return out;
}

}  // namespace detail

/// Generators with exactly known regularity. cusp: |theta-theta0|^gamma
/// (coefficients from piecewise tanh-sinh, so the truncation at M is the
/// only approximation); ball: indicator of theta < theta0 (closed-form
/// coefficients); weierstrass: sum_k 2^{-k gamma} Z_{2^k}/||Z_{2^k}||_inf.
inline TestProfile make_test_profile(const SpaceParams& p, TestProfileKind kind,
                                     double gamma, double theta0, int M,
                                     uint64_t seed = 0, int grid_size = 4096) {
  (void)seed;  // generators are deterministic
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("make_test_profile: gamma must be in (0,1)");
  if (kind != TestProfileKind::weierstrass &&
      !(theta0 > 0.0 && theta0 < M_PI))
    throw std::invalid_argument("make_test_profile: theta0 must be in (0,pi)");
  if (M < 1) throw std::invalid_argument("make_test_profile: M >= 1");

  TestProfile out;
  out.profile.space = p;
  out.profile.grid = RadialProfile::Grid::uniform;
  out.profile.thetas = uniform_theta_grid(grid_size);
  out.profile.values.resize(out.profile.thetas.size());

  switch (kind) {
    case TestProfileKind::cusp: {
      auto f = [=](double t) { return std::pow(std::abs(t - theta0), gamma); };
      const double brk[] = {theta0};
      out.coeffs = detail::analyze_piecewise(p, f, M, brk);
      for (size_t i = 0; i < out.profile.thetas.size(); ++i)
        out.profile.values[i] = f(out.profile.thetas[i]);
      break;
    }
    case TestProfileKind::ball: {
      const double a = p.jacobi_a(), b = p.jacobi_b();
      const double x0 = std::cos(theta0);
      const double mass =
          std::exp((a + b + 1.0) * std::log(2.0) + log_beta(a + 1.0, b + 1.0));
      out.coeffs.space = p;
      out.coeffs.c.resize(static_cast<size_t>(M) + 1);
      out.coeffs.c[0] = detail::tanh_sinh(
          [&](double t) { return density(p, t); }, 0.0, theta0);
      if (M >= 1) {
        const auto p1 = jacobi_at_one(a, M);
        std::vector<double> shifted(static_cast<size_t>(M));
        jacobi_all(a + 1.0, b + 1.0, M - 1, x0, shifted);
        const double edge =
            std::pow(1.0 - x0, a + 1.0) * std::pow(1.0 + x0, b + 1.0) / mass;
        for (int n = 1; n <= M; ++n)
          out.coeffs.c[static_cast<size_t>(n)] =
              edge * shifted[static_cast<size_t>(n) - 1] /
              (2.0 * n * p1[static_cast<size_t>(n)]);
      }
      for (size_t i = 0; i < out.profile.thetas.size(); ++i)
        out.profile.values[i] = out.profile.thetas[i] < theta0 ? 1.0 : 0.0;
      break;
    }
    case TestProfileKind::weierstrass: {
      if (!is_dyadic(M))
        throw std::invalid_argument(
            "make_test_profile: weierstrass needs M a power of two");
      const ZonalBasis basis = make_basis(p, M);
      out.coeffs.space = p;
      out.coeffs.c.assign(static_cast<size_t>(M) + 1, Complex(0.0));
      for (int k = 0; (1 << k) <= M; ++k) {
        const int n = 1 << k;
        const auto zn = zonal_eval(basis, n, out.profile.thetas);
        double sup = 0.0;
        for (double v : zn) sup = std::max(sup, std::abs(v));
        out.coeffs.c[static_cast<size_t>(n)] =
            std::pow(2.0, -gamma * k) / sup;
      }
      const auto synth = synthesize(out.coeffs, out.profile.thetas);
      out.profile.values = synth.values;
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Modulus of continuity
// ---------------------------------------------------------------------------

/// omega(delta) = max over grid pairs within distance delta of |f(x)-f(y)|,
/// tabulated for each requested scale. Scales must be >= 2 grid spacings.
inline std::vector<std::pair<double, double>> modulus_of_continuity(
    const RadialProfile& f, std::span<const double> scales) {
  if (f.grid != RadialProfile::Grid::uniform || f.thetas.size() < 2)
    throw std::invalid_argument("modulus_of_continuity: uniform grid required");
  const size_t G = f.thetas.size();
  const double h = f.thetas[1] - f.thetas[0];
  std::vector<double> sorted(scales.begin(), scales.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < 2.0 * h)
    throw std::invalid_argument(
        "modulus_of_continuity: scale below grid resolution");

  std::vector<std::pair<double, double>> table;
  table.reserve(sorted.size());
  const int max_lag =
      std::min<int>(static_cast<int>(G) - 1,
                    static_cast<int>(std::floor(sorted.back() / h)));
  double running = 0.0;
  size_t next = 0;
  for (int lag = 1; lag <= max_lag && next < sorted.size(); ++lag) {
    for (size_t i = 0; i + static_cast<size_t>(lag) < G; ++i)
      running = std::max(
          running, std::abs(f.values[i + static_cast<size_t>(lag)] - f.values[i]));
    while (next < sorted.size() &&
           (lag + 1) * h > sorted[next]) {
      table.emplace_back(sorted[next], running);
      ++next;
    }
  }
  while (next < sorted.size()) {
    table.emplace_back(sorted[next], running);
    ++next;
  }
  return table;
}

/// Fitted Holder exponent: slope of log omega against log delta over dyadic
/// scales delta = pi 2^{-k}, k = k_min..k_max.
inline DecayFit measure_holder_exponent(const RadialProfile& f, int k_min = 2,
                                        int k_max = 7) {
  std::vector<double> scales;
  for (int k = k_min; k <= k_max; ++k) scales.push_back(M_PI * std::pow(2.0, -k));
  const auto table = modulus_of_continuity(f, scales);
  std::vector<double> xs, ys;
  for (const auto& [d, w] : table) {
    if (w > 0.0) {
      xs.push_back(d);
      ys.push_back(w);
    }
  }
  return decay_fit(xs, ys);
}

// ---------------------------------------------------------------------------
// Summation-error rate curves
// ---------------------------------------------------------------------------

struct RateCurve {
  std::vector<double> xs;  // N or R or t
  std::vector<double> ys;  // sup-norm errors / deviations
  DecayFit fit;            // windowed log-log fit
};

namespace detail {

inline double sup_error_against(const RadialProfile& exact,
                                const SpectralCoeffs& approx) {
  const auto synth = synthesize(approx, exact.thetas);
  double sup = 0.0;
  for (size_t i = 0; i < exact.values.size(); ++i)
    sup = std::max(sup, std::abs(synth.values[i] - exact.values[i]));
  return sup;
}

}  // namespace detail

/// sup |C^delta_N f - f| over dyadic N, with f evaluated pointwise.
inline RateCurve cesaro_error_curve(const TestProfile& data, double delta,
                                    std::span<const int> Ns) {
  RateCurve rc;
  for (int N : Ns) {
    if (N > data.coeffs.max_degree())
      throw std::invalid_argument("cesaro_error_curve: N beyond band limit");
    rc.xs.push_back(N);
    rc.ys.push_back(
        detail::sup_error_against(data.profile, cesaro_mean(data.coeffs, delta, N)));
  }
  rc.fit = decay_fit_windowed(rc.xs, rc.ys);
  return rc;
}

/// sup |S^delta_R f - f| over a geometric R ladder.
inline RateCurve riesz_error_curve(const TestProfile& data, double delta,
                                   std::span<const double> Rs) {
  RateCurve rc;
  for (double R : Rs) {
    rc.xs.push_back(R);
    rc.ys.push_back(
        detail::sup_error_against(data.profile, riesz_mean(data.coeffs, delta, R)));
  }
  rc.fit = decay_fit_windowed(rc.xs, rc.ys);
  return rc;
}

// ---------------------------------------------------------------------------
// Spherical means
// ---------------------------------------------------------------------------

/// sup_{0 < r <= t} || (I - tau_r)^{1/2} f ||_inf, the spherical mean acting
/// diagonally with multiplier phi_n(r); the nonnegative branch (I - tau_r)
/// is used.
inline double spherical_mean_deviation(const SpectralCoeffs& f, double t,
                                       int r_samples = 8) {
  if (!(t > 0.0 && t < M_PI))
    throw std::invalid_argument("spherical_mean_deviation: t in (0, pi)");
  if (r_samples < 1)
    throw std::invalid_argument("spherical_mean_deviation: r_samples >= 1");
  const SpaceParams& p = f.space;
  const int M = f.max_degree();
  const auto grid = uniform_theta_grid(default_sup_grid_size(M));
  const auto p1 = jacobi_at_one(p.jacobi_a(), M);
  double best = 0.0;
  for (int j = 1; j <= r_samples; ++j) {
    const double r = t * j / r_samples;
    const double xr = std::cos(r);
    SpectralCoeffs g = f;
    jacobi_recurrence(p.jacobi_a(), p.jacobi_b(), M, xr, [&](int n, double pn) {
      const double phi = pn / p1[static_cast<size_t>(n)];
      g.c[static_cast<size_t>(n)] *= std::sqrt(std::max(0.0, 1.0 - phi));
    });
    const auto prof = synthesize(g, grid);
    for (const auto& v : prof.values) best = std::max(best, std::abs(v));
  }
  return best;
}

/// Deviation-vs-t curve over t = pi 2^{-k}; large t is pre-asymptotic.
inline RateCurve spherical_mean_curve(const SpectralCoeffs& f, int k_min = 1,
                                      int k_max = 6, int r_samples = 8) {
  RateCurve rc;
  for (int k = k_min; k <= k_max; ++k) {
    const double t = M_PI * std::pow(2.0, -k);
    rc.xs.push_back(t);
    rc.ys.push_back(spherical_mean_deviation(f, t, r_samples));
  }
  rc.fit = decay_fit_windowed(rc.xs, rc.ys, PreAsymptotic::largest);
  return rc;
}

// ---------------------------------------------------------------------------
// Bernstein probe
// ---------------------------------------------------------------------------

/// max |d/dtheta f| / (m ||f||_inf) for a band-m radial polynomial, by
/// central differences on a uniform grid; the radial derivative is a lower
/// bound for the full gradient, so this probes one side of the Bernstein
/// inequality.
inline double bernstein_ratio(const SpectralCoeffs& f, int grid_size = 0) {
  const int m = f.max_degree();
  if (m < 1) throw std::invalid_argument("bernstein_ratio: degree >= 1");
  if (grid_size == 0) grid_size = std::max(4096, 8 * m);
  if (grid_size < 4 * m + 1)
    throw std::invalid_argument(
        "bernstein_ratio: grid too coarse (need >= 8 points per wavelength)");
  const auto grid = uniform_theta_grid(grid_size);
  const auto prof = synthesize(f, grid);
  const double h = grid[1] - grid[0];
  double sup = 0.0, dsup = 0.0;
  for (const auto& v : prof.values) sup = std::max(sup, std::abs(v));
  for (size_t i = 1; i + 1 < grid.size(); ++i)
    dsup = std::max(dsup, std::abs(prof.values[i + 1] - prof.values[i - 1]) /
                              (2.0 * h));
  if (sup == 0.0) return 0.0;
  return dsup / (m * sup);
}

}  // namespace symharm
