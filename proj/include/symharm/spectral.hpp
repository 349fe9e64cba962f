#pragma once

// Radial spectral calculus: zonal functions, analysis/synthesis between
// profiles and coefficients, partial sums, Cesaro and Riesz means,
// Littlewood-Paley blocks, Besov norms and the Cesaro kernel.
//
// Coefficient convention: c_n = <f, Z_n/d_n>, so the n-th projection of f
// is c_n Z_n and every summation method acts as a diagonal multiplier.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "symharm/spaces.hpp"

namespace symharm {

using Complex = std::complex<double>;

struct RadialProfile {
  enum class Grid { uniform, quadrature };

  SpaceParams space;
  std::vector<double> thetas;
  std::vector<Complex> values;
  Grid grid = Grid::uniform;
  std::vector<double> weights;  // nonempty for quadrature grids; sums to 1
};

struct SpectralCoeffs {
  SpaceParams space;
  std::vector<Complex> c;  // c[n] against Z_n/d_n

  int max_degree() const { return static_cast<int>(c.size()) - 1; }
};

/// Uniform grid on [0, pi] with both endpoints.
inline std::vector<double> uniform_theta_grid(int size) {
  if (size < 2) throw std::invalid_argument("uniform_theta_grid: size >= 2");
  std::vector<double> g(static_cast<size_t>(size));
  for (int i = 0; i < size; ++i) g[static_cast<size_t>(i)] = M_PI * i / (size - 1);
  return g;
}

inline int default_sup_grid_size(int max_degree) {
  return std::clamp(4 * max_degree, 4096, 16384);
}

// ---------------------------------------------------------------------------
// Zonal basis workspace: quadrature grid plus eigenspace dimensions
// ---------------------------------------------------------------------------

struct ZonalBasis {
  SpaceParams space;
  int max_degree = 0;
  std::vector<double> thetas;   // increasing, the arccos image of the rule
  std::vector<double> weights;  // normalized against A(theta) d(theta)
  std::vector<double> dims;     // d_0..d_M
  std::vector<double> at_one;   // P_n^{(a,b)}(1)

  int quad_size() const { return static_cast<int>(thetas.size()); }
};

inline ZonalBasis make_basis(const SpaceParams& p, int max_degree,
                             int quad_size = 0) {
  if (max_degree < 0) throw std::invalid_argument("make_basis: degree >= 0");
  if (quad_size == 0) quad_size = max_degree + 1;
  if (quad_size < max_degree + 1)
    throw std::invalid_argument(
        "make_basis: quadrature size must be >= max_degree + 1");
  ZonalBasis b;
  b.space = p;
  b.max_degree = max_degree;
  auto sr = detail::space_rule(p, quad_size);
  b.thetas = std::move(sr.thetas);
  b.weights = std::move(sr.weights);
  b.at_one = jacobi_at_one(p.jacobi_a(), max_degree);

  const double a = p.jacobi_a(), bb = p.jacobi_b();
  std::vector<detail::KahanSum> acc(static_cast<size_t>(max_degree) + 1);
  for (size_t i = 0; i < b.thetas.size(); ++i) {
    const double w = b.weights[i];
    jacobi_recurrence(a, bb, max_degree, std::cos(b.thetas[i]),
                      [&](int n, double pn) {
                        const double phi = pn / b.at_one[static_cast<size_t>(n)];
                        acc[static_cast<size_t>(n)].add(w * phi * phi);
                      });
  }
  b.dims.resize(static_cast<size_t>(max_degree) + 1);
  for (int n = 0; n <= max_degree; ++n)
    b.dims[static_cast<size_t>(n)] = 1.0 / acc[static_cast<size_t>(n)].value();
  return b;
}

// ---------------------------------------------------------------------------
// Zonal functions and transforms
// ---------------------------------------------------------------------------

/// Z_n(theta) = d_n P_n(cos theta)/P_n(1) on the given points.
inline std::vector<double> zonal_eval(const ZonalBasis& b, int n,
                                      std::span<const double> thetas) {
  if (n < 0 || n > b.max_degree)
    throw std::invalid_argument("zonal_eval: degree out of basis range");
  const SpaceParams& p = b.space;
  std::vector<double> out(thetas.size());
  const double dn = b.dims[static_cast<size_t>(n)];
  const double p1 = b.at_one[static_cast<size_t>(n)];
  for (size_t i = 0; i < thetas.size(); ++i) {
    if (!(thetas[i] >= 0.0 && thetas[i] <= M_PI))
      throw std::invalid_argument("zonal_eval: theta must lie in [0, pi]");
    out[i] = dn *
             jacobi_eval(p.jacobi_a(), p.jacobi_b(), n, std::cos(thetas[i])) /
             p1;
  }
  return out;
}

inline std::vector<double> zonal_eval(const SpaceParams& p, int n,
                                      std::span<const double> thetas) {
  return zonal_eval(make_basis(p, n), n, thetas);
}

/// Coefficients of f against the zonal basis: c_n = int f (Z_n/d_n) A dtheta,
/// evaluated with the basis rule (exact for band-limited f).
inline SpectralCoeffs analyze(const ZonalBasis& b,
                              std::span<const Complex> values_on_grid,
                              int max_degree) {
  if (max_degree > b.max_degree)
    throw std::invalid_argument("analyze: degree exceeds basis");
  if (values_on_grid.size() != b.thetas.size())
    throw std::invalid_argument("analyze: profile/grid size mismatch");
  if (b.quad_size() < max_degree + 1)
    throw std::invalid_argument("analyze: quadrature size < max_degree + 1");
  const double a = b.space.jacobi_a(), bb = b.space.jacobi_b();
  std::vector<detail::KahanSum> re(static_cast<size_t>(max_degree) + 1);
  std::vector<detail::KahanSum> im(static_cast<size_t>(max_degree) + 1);
  for (size_t i = 0; i < b.thetas.size(); ++i) {
    const Complex wf = b.weights[i] * values_on_grid[i];
    jacobi_recurrence(a, bb, max_degree, std::cos(b.thetas[i]),
                      [&](int n, double pn) {
                        const double phi = pn / b.at_one[static_cast<size_t>(n)];
                        re[static_cast<size_t>(n)].add(wf.real() * phi);
                        im[static_cast<size_t>(n)].add(wf.imag() * phi);
                      });
  }
  SpectralCoeffs out;
  out.space = b.space;
  out.c.resize(static_cast<size_t>(max_degree) + 1);
  for (int n = 0; n <= max_degree; ++n)
    out.c[static_cast<size_t>(n)] = Complex(re[static_cast<size_t>(n)].value(),
                                            im[static_cast<size_t>(n)].value());
  return out;
}

inline SpectralCoeffs analyze(const SpaceParams& p,
                              const std::function<Complex(double)>& f,
                              int max_degree, int quad_size = 0) {
  const ZonalBasis b = make_basis(p, max_degree, quad_size);
  std::vector<Complex> vals(b.thetas.size());
  for (size_t i = 0; i < b.thetas.size(); ++i) vals[i] = f(b.thetas[i]);
  return analyze(b, vals, max_degree);
}

inline SpectralCoeffs analyze(const RadialProfile& f, int max_degree) {
  if (f.grid != RadialProfile::Grid::quadrature || f.weights.empty())
    throw std::invalid_argument(
        "analyze: profile must live on a quadrature grid");
  if (static_cast<int>(f.thetas.size()) < max_degree + 1)
    throw std::invalid_argument(
        "analyze: quadrature grid too small for requested degree");
  // Rebuild the basis tables for the profile's space at this resolution.
  const ZonalBasis b =
      make_basis(f.space, max_degree, static_cast<int>(f.thetas.size()));
  return analyze(b, f.values, max_degree);
}

/// f(theta) = sum_n c_n Z_n(theta).
inline RadialProfile synthesize(const SpectralCoeffs& coeffs,
                                std::span<const double> thetas,
                                RadialProfile::Grid grid_kind =
                                    RadialProfile::Grid::uniform) {
  const SpaceParams& p = coeffs.space;
  const int M = coeffs.max_degree();
  const ZonalBasis b = make_basis(p, M);
  RadialProfile out;
  out.space = p;
  out.grid = grid_kind;
  out.thetas.assign(thetas.begin(), thetas.end());
  out.values.resize(thetas.size());
  const double a = p.jacobi_a(), bb = p.jacobi_b();
  for (size_t i = 0; i < thetas.size(); ++i) {
    Complex acc = 0.0;
    jacobi_recurrence(a, bb, M, std::cos(thetas[i]), [&](int n, double pn) {
      acc += coeffs.c[static_cast<size_t>(n)] *
             (b.dims[static_cast<size_t>(n)] * pn /
              b.at_one[static_cast<size_t>(n)]);
    });
    out.values[i] = acc;
  }
  return out;
}

/// Synthesis on the basis' own quadrature grid (profile carries weights).
inline RadialProfile synthesize(const SpectralCoeffs& coeffs,
                                const ZonalBasis& b) {
  if (coeffs.max_degree() > b.max_degree)
    throw std::invalid_argument("synthesize: basis degree too small");
  RadialProfile out;
  out.space = coeffs.space;
  out.grid = RadialProfile::Grid::quadrature;
  out.thetas = b.thetas;
  out.weights = b.weights;
  out.values.resize(b.thetas.size());
  const double a = b.space.jacobi_a(), bb = b.space.jacobi_b();
  const int M = coeffs.max_degree();
  for (size_t i = 0; i < b.thetas.size(); ++i) {
    Complex acc = 0.0;
    jacobi_recurrence(a, bb, M, std::cos(b.thetas[i]), [&](int n, double pn) {
      acc += coeffs.c[static_cast<size_t>(n)] *
             (b.dims[static_cast<size_t>(n)] * pn /
              b.at_one[static_cast<size_t>(n)]);
    });
    out.values[i] = acc;
  }
  return out;
}

/// Parseval mass sum |c_n|^2 d_n.
inline double spectral_mass(const ZonalBasis& b, const SpectralCoeffs& f) {
  if (f.max_degree() > b.max_degree)
    throw std::invalid_argument("spectral_mass: basis degree too small");
  detail::KahanSum s;
  for (int n = 0; n <= f.max_degree(); ++n)
    s.add(std::norm(f.c[static_cast<size_t>(n)]) *
          b.dims[static_cast<size_t>(n)]);
  return s.value();
}

// ---------------------------------------------------------------------------
// Summation methods (diagonal multipliers)
// ---------------------------------------------------------------------------

/// S_N: keep modes 0..N.
inline SpectralCoeffs partial_sum(const SpectralCoeffs& f, int N) {
  if (N < 0) throw std::invalid_argument("partial_sum: N >= 0");
  SpectralCoeffs out = f;
  out.c.resize(static_cast<size_t>(std::min(N, f.max_degree())) + 1);
  return out;
}

/// A^delta_m = C(m+delta, m); the Cesaro weight of mode n at level N is
/// A^delta_{N-n} / A^delta_N.
inline double cesaro_weight(double delta, int N, int n) {
  return std::exp(log_gamma_ratio(static_cast<double>(N - n), delta) -
                  log_gamma_ratio(static_cast<double>(N), delta));
}

inline SpectralCoeffs cesaro_mean(const SpectralCoeffs& f, double delta,
                                  int N) {
  if (delta < 0.0) throw std::invalid_argument("cesaro_mean: delta >= 0");
  if (N < 0) throw std::invalid_argument("cesaro_mean: N >= 0");
  SpectralCoeffs out;
  out.space = f.space;
  out.c.resize(static_cast<size_t>(std::min(N, f.max_degree())) + 1);
  for (int n = 0; n < static_cast<int>(out.c.size()); ++n)
    out.c[static_cast<size_t>(n)] =
        f.c[static_cast<size_t>(n)] * cesaro_weight(delta, N, n);
  return out;
}

/// Riesz mean: multiplier (1 - lambda_n/R)^delta on modes with lambda_n < R.
inline SpectralCoeffs riesz_mean(const SpectralCoeffs& f, double delta,
                                 double R) {
  if (!(R > 0.0)) throw std::invalid_argument("riesz_mean: R > 0");
  if (delta < 0.0) throw std::invalid_argument("riesz_mean: delta >= 0");
  SpectralCoeffs out;
  out.space = f.space;
  out.c.assign(f.c.size(), Complex(0.0));
  for (int n = 0; n <= f.max_degree(); ++n) {
    const double lam = std::sqrt(eigenvalue(f.space, n));
    if (lam < R)
      out.c[static_cast<size_t>(n)] =
          f.c[static_cast<size_t>(n)] *
          std::pow(1.0 - lam / R, delta);
  }
  return out;
}

inline bool is_dyadic(int N) { return N >= 1 && (N & (N - 1)) == 0; }

/// Littlewood-Paley block: modes {0,1,2} for N = 1, (N, 2N] for N >= 2.
inline SpectralCoeffs littlewood_paley(const SpectralCoeffs& f, int N) {
  if (!is_dyadic(N))
    throw std::invalid_argument("littlewood_paley: N must be dyadic (1,2,4,...)");
  SpectralCoeffs out;
  out.space = f.space;
  out.c.assign(f.c.size(), Complex(0.0));
  const int lo = (N == 1) ? 0 : N + 1;
  const int hi = (N == 1) ? 2 : 2 * N;
  for (int n = lo; n <= std::min(hi, f.max_degree()); ++n)
    out.c[static_cast<size_t>(n)] = f.c[static_cast<size_t>(n)];
  return out;
}

// ---------------------------------------------------------------------------
// Norms
// ---------------------------------------------------------------------------

/// L^p norm of a radial profile against the normalized measure A d(theta);
/// p = inf takes the max over a dense uniform grid.
inline double lp_norm(double p_exp, const RadialProfile& f) {
  if (!(p_exp >= 1.0)) throw std::invalid_argument("lp_norm: p >= 1");
  if (std::isinf(p_exp)) {
    if (f.grid != RadialProfile::Grid::uniform)
      throw std::invalid_argument("lp_norm: sup norm needs a uniform grid");
    if (f.thetas.size() < 4096)
      throw std::invalid_argument(
          "lp_norm: sup norm needs a uniform grid of >= 4096 points");
    double m = 0.0;
    for (const Complex& v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  if (f.grid != RadialProfile::Grid::quadrature || f.weights.empty())
    throw std::invalid_argument("lp_norm: finite p needs a quadrature grid");
  detail::KahanSum s;
  for (size_t i = 0; i < f.values.size(); ++i)
    s.add(f.weights[i] * std::pow(std::abs(f.values[i]), p_exp));
  return std::pow(s.value(), 1.0 / p_exp);
}

inline double lp_norm(double p_exp, const SpectralCoeffs& f) {
  const int M = f.max_degree();
  if (std::isinf(p_exp)) {
    const auto grid = uniform_theta_grid(default_sup_grid_size(M));
    return lp_norm(p_exp, synthesize(f, grid));
  }
  const ZonalBasis b = make_basis(f.space, M, std::max(M + 1, 256));
  return lp_norm(p_exp, synthesize(f, b));
}

/// Per-block L^p norms over dyadic N <= max(1, M/2), sharing one basis/grid.
inline std::vector<std::pair<int, double>> littlewood_paley_norms(
    const SpectralCoeffs& f, double p_exp) {
  const int M = f.max_degree();
  std::vector<std::pair<int, double>> out;
  const bool sup = std::isinf(p_exp);
  ZonalBasis basis;
  std::vector<double> grid;
  if (sup)
    grid = uniform_theta_grid(default_sup_grid_size(M));
  else
    basis = make_basis(f.space, M, std::max(M + 1, 256));
  for (int N = 1; N <= std::max(1, M / 2); N *= 2) {
    const SpectralCoeffs block = littlewood_paley(f, N);
    const double nrm = sup ? lp_norm(p_exp, synthesize(block, grid))
                           : lp_norm(p_exp, synthesize(block, basis));
    out.emplace_back(N, nrm);
  }
  return out;
}

/// Besov norm sup_N N^gamma ||P_N f||_p over dyadic blocks up to M/2.
inline double besov_norm(const SpectralCoeffs& f, double gamma, double p_exp) {
  if (!(gamma > 0.0)) throw std::invalid_argument("besov_norm: gamma > 0");
  double best = 0.0;
  for (const auto& [N, nrm] : littlewood_paley_norms(f, p_exp))
    best = std::max(best, std::pow(static_cast<double>(N), gamma) * nrm);
  return best;
}

// ---------------------------------------------------------------------------
// Cesaro kernel
// ---------------------------------------------------------------------------

/// K^delta_N(theta) = (1/A^delta_N) sum_n A^delta_{N-n} Z_n(theta).
inline std::vector<double> cesaro_kernel(const SpaceParams& p, double delta,
                                         int N, std::span<const double> thetas) {
  if (delta < 0.0) throw std::invalid_argument("cesaro_kernel: delta >= 0");
  if (N < 0) throw std::invalid_argument("cesaro_kernel: N >= 0");
  const ZonalBasis b = make_basis(p, N);
  std::vector<double> wt(static_cast<size_t>(N) + 1);
  for (int n = 0; n <= N; ++n)
    wt[static_cast<size_t>(n)] = cesaro_weight(delta, N, n) *
                                 b.dims[static_cast<size_t>(n)] /
                                 b.at_one[static_cast<size_t>(n)];
  std::vector<double> out(thetas.size());
  for (size_t i = 0; i < thetas.size(); ++i) {
    detail::KahanSum acc;
    jacobi_recurrence(p.jacobi_a(), p.jacobi_b(), N, std::cos(thetas[i]),
                      [&](int n, double pn) {
                        acc.add(wt[static_cast<size_t>(n)] * pn);
                      });
    out[i] = acc.value();
  }
  return out;
}

}  // namespace symharm
