#pragma once

// Catalog of the compact rank-one symmetric spaces: the sphere and the
// real/complex/quaternionic projective spaces plus the Cayley plane, with
// their structural constants, surface-measure density, Laplace spectrum and
// eigenspace dimensions.
//
// Radial analysis is normalized so that total mass is 1 and the diameter is
// pi. All zonal expansions are carried out in the variable x = cos(theta)
// with Jacobi parameters (jacobi_a, jacobi_b); for the real projective space
// this is the quadratic-transform image of the even-degree sphere picture,
// which is the parity-correct orthogonal system for its measure.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "symharm/quadrature.hpp"
#include "symharm/specfun.hpp"

namespace symharm {

enum class SpaceKind { sphere, rproj, cproj, hproj, cayley };

inline const char* to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::sphere: return "sphere";
    case SpaceKind::rproj: return "rproj";
    case SpaceKind::cproj: return "cproj";
    case SpaceKind::hproj: return "hproj";
    case SpaceKind::cayley: return "cayley";
  }
  return "?";
}

inline SpaceKind space_kind_from_string(const std::string& s) {
  if (s == "sphere") return SpaceKind::sphere;
  if (s == "rproj") return SpaceKind::rproj;
  if (s == "cproj") return SpaceKind::cproj;
  if (s == "hproj") return SpaceKind::hproj;
  if (s == "cayley") return SpaceKind::cayley;
  throw std::invalid_argument(
      "unknown space kind '" + s +
      "' (expected sphere, rproj, cproj, hproj or cayley)");
}

struct SpaceParams {
  SpaceKind kind = SpaceKind::sphere;
  int d = 2;        // real dimension
  int M1 = 0;       // dimension of the antipodal manifold
  int M2 = 1;
  double alpha = 0.0;
  double beta = 0.0;
  int s = 1;        // 1 except for the real projective space
  double delta_star = 2.0;   // critical Cesaro index
  double density_const = 0.5;

  // Jacobi parameters of the zonal expansion in x = cos(theta).
  double jacobi_a() const { return alpha; }
  double jacobi_b() const { return s == 2 ? -0.5 : beta; }
};

/// Structural constants for a given family and real dimension d.
/// Throws if (kind, d) is not admissible.
inline SpaceParams space_params(SpaceKind kind, int d) {
  SpaceParams p;
  p.kind = kind;
  p.d = d;
  switch (kind) {
    case SpaceKind::sphere:
      if (d < 2) throw std::invalid_argument("sphere: d must be >= 2");
      p.M1 = 0;
      p.M2 = d - 1;
      p.beta = 0.5 * (d - 2);
      p.s = 1;
      p.delta_star = d;
      break;
    case SpaceKind::rproj:
      if (d < 2) throw std::invalid_argument("rproj: d must be >= 2");
      p.M1 = d - 1;
      p.M2 = 0;
      p.beta = 0.5 * (d - 2);
      p.s = 2;
      p.delta_star = d;
      break;
    case SpaceKind::cproj:
      if (d < 4 || d % 2 != 0)
        throw std::invalid_argument("cproj: d must be even and >= 4");
      p.M1 = d - 2;
      p.M2 = 1;
      p.beta = 0.0;
      p.s = 1;
      p.delta_star = 0.5 * (d + 2);
      break;
    case SpaceKind::hproj:
      if (d < 8 || d % 4 != 0)
        throw std::invalid_argument("hproj: d must be a multiple of 4 and >= 8");
      p.M1 = d - 4;
      p.M2 = 3;
      p.beta = 1.0;
      p.s = 1;
      p.delta_star = 0.5 * (d + 4);
      break;
    case SpaceKind::cayley:
      if (d != 16) throw std::invalid_argument("cayley: d must be 16");
      p.M1 = 8;
      p.M2 = 7;
      p.beta = 3.0;
      p.s = 1;
      p.delta_star = 12.0;
      break;
  }
  p.alpha = 0.5 * (d - 2);
  // Normalization making sin^{M1}(t/2) sin^{M2}(t) integrate to 1/C:
  // the integral equals 2^{M2} B(d/2, (M2+1)/2).
  p.density_const = std::exp(-p.M2 * std::log(2.0) -
                             log_beta(0.5 * p.d, 0.5 * (p.M2 + 1)));
  return p;
}

/// Surface-measure density A(theta) of the geodesic sphere of radius theta;
/// integrates to 1 over [0, pi].
inline double density(const SpaceParams& p, double theta) {
  if (!(theta >= 0.0 && theta <= M_PI))
    throw std::invalid_argument("density: theta must lie in [0, pi]");
  return p.density_const * std::pow(std::sin(0.5 * theta), p.M1) *
         std::pow(std::sin(theta), p.M2);
}

/// n-th Laplace eigenvalue lambda_n^2 = s n (s n + alpha + beta + 1).
inline double eigenvalue(const SpaceParams& p, int n) {
  if (n < 0) throw std::invalid_argument("eigenvalue: n must be >= 0");
  const double sn = static_cast<double>(p.s) * n;
  return sn * (sn + p.alpha + p.beta + 1.0);
}

namespace detail {

// Normalized weights for integrating radial profiles against A(theta)
// d(theta): the Jacobi rule for (jacobi_a, jacobi_b) pushed to theta =
// arccos(x), rescaled to total mass 1.
struct SpaceRule {
  std::vector<double> thetas;   // increasing in (0, pi)
  std::vector<double> weights;  // positive, sum 1
};

inline SpaceRule space_rule(const SpaceParams& p, int Q) {
  const QuadratureRule rule = gauss_jacobi_rule(p.jacobi_a(), p.jacobi_b(), Q);
  SpaceRule sr;
  sr.thetas.resize(rule.nodes.size());
  sr.weights.resize(rule.nodes.size());
  const size_t n = rule.nodes.size();
  for (size_t i = 0; i < n; ++i) {
    sr.thetas[i] = std::acos(rule.nodes[n - 1 - i]);
    sr.weights[i] = rule.weights[n - 1 - i] / rule.total_mass;
  }
  return sr;
}

// d_n for all n <= n_max from the reproducing identity
// 1/d_n = int (P_n(cos theta)/P_n(1))^2 A(theta) d(theta),
// evaluated exactly with a rule of size >= n_max + 1.
inline std::vector<double> eigenspace_dims_impl(const SpaceParams& p,
                                                int n_max, int Q) {
  const SpaceRule sr = space_rule(p, Q);
  const double a = p.jacobi_a(), b = p.jacobi_b();
  const std::vector<double> p1 = jacobi_at_one(a, n_max);
  std::vector<KahanSum> acc(static_cast<size_t>(n_max) + 1);
  std::vector<double> buf(static_cast<size_t>(n_max) + 1);
  for (size_t i = 0; i < sr.thetas.size(); ++i) {
    jacobi_all(a, b, n_max, std::cos(sr.thetas[i]), buf);
    for (int n = 0; n <= n_max; ++n) {
      const double phi = buf[static_cast<size_t>(n)] / p1[static_cast<size_t>(n)];
      acc[static_cast<size_t>(n)].add(sr.weights[i] * phi * phi);
    }
  }
  std::vector<double> dims(static_cast<size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n)
    dims[static_cast<size_t>(n)] = 1.0 / acc[static_cast<size_t>(n)].value();
  return dims;
}

}  // namespace detail

/// Eigenspace dimensions d_0..d_{n_max}.
inline std::vector<double> eigenspace_dims(const SpaceParams& p, int n_max,
                                           int Q = 0) {
  if (n_max < 0) throw std::invalid_argument("eigenspace_dims: n_max >= 0");
  if (Q == 0) Q = n_max + 1;
  if (Q < n_max + 1)
    throw std::invalid_argument(
        "eigenspace_dims: quadrature size must be >= n_max + 1 (got Q=" +
        std::to_string(Q) + ", need " + std::to_string(n_max + 1) + ")");
  return detail::eigenspace_dims_impl(p, n_max, Q);
}

/// dim of the n-th Laplace eigenspace.
inline double eigenspace_dim(const SpaceParams& p, int n) {
  if (n < 0) throw std::invalid_argument("eigenspace_dim: n must be >= 0");
  return eigenspace_dims(p, n).back();
}

/// Reference dimensions exercising every (alpha, beta) pattern.
inline std::vector<SpaceParams> reference_spaces() {
  return {
      space_params(SpaceKind::sphere, 2), space_params(SpaceKind::sphere, 3),
      space_params(SpaceKind::sphere, 5), space_params(SpaceKind::rproj, 2),
      space_params(SpaceKind::rproj, 3),  space_params(SpaceKind::cproj, 4),
      space_params(SpaceKind::cproj, 6),  space_params(SpaceKind::hproj, 8),
      space_params(SpaceKind::hproj, 12), space_params(SpaceKind::cayley, 16),
  };
}

}  // namespace symharm
