#pragma once

// Scalar special functions: Jacobi polynomials, gamma ratios, Bessel
// functions of integer and half-integer order, and a tanh-sinh rule for
// integrands with endpoint singularities.

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace symharm {

namespace detail {

// Compensated (Neumaier) accumulator for long reductions.
class KahanSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline bool is_half_integer(double x) {
  return std::abs(2.0 * x - std::round(2.0 * x)) < 1e-12;
}

// Stirling tail c(z) with ln Gamma(z) = (z-1/2) ln z - z + ln(2 pi)/2 + c(z).
inline double stirling_tail(double z) {
  const double w = 1.0 / (z * z);
  // B_{2k}/(2k(2k-1)) coefficients.
  return (1.0 / 12.0 -
          (1.0 / 360.0 -
           (1.0 / 1260.0 -
            (1.0 / 1680.0 - (1.0 / 1188.0 - w / 360.36) * w) * w) *
               w) *
              w) /
         z;
}

}  // namespace detail

/// ln( Gamma(n+alpha+1) / n! ) evaluated without cancellation between the
/// two lgamma values, so the exponentiated ratio keeps ~1e-14 relative
/// accuracy even for n ~ 1e6.
inline double log_gamma_ratio(double n, double alpha) {
  if (n < 0) throw std::invalid_argument("log_gamma_ratio: n must be >= 0");
  const double z2 = n + 1.0;
  const double z1 = z2 + alpha;
  if (z2 < 16.0 || z1 < 16.0)
    return std::lgamma(z1) - std::lgamma(z2);
  const double L = std::log1p(alpha / z2);
  return alpha * std::log(z2) + (z1 - 0.5) * L - alpha +
         detail::stirling_tail(z1) - detail::stirling_tail(z2);
}

/// Gamma(n+alpha+1)/n!
inline double gamma_ratio(int n, double alpha) {
  return std::exp(log_gamma_ratio(static_cast<double>(n), alpha));
}

/// ln B(a,b)
inline double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

/// Generalized binomial coefficient C(n+a, n) = Gamma(n+a+1)/(Gamma(a+1) n!).
inline double binom_shifted(int n, double a) {
  return std::exp(log_gamma_ratio(static_cast<double>(n), a) -
                  std::lgamma(a + 1.0));
}

// ---------------------------------------------------------------------------
// Jacobi polynomials
// ---------------------------------------------------------------------------

/// Evaluates P_k^{(a,b)}(x) for k = 0..n by the three-term recurrence,
/// writing the raw (unnormalized) values into out[0..n].
inline void jacobi_all(double a, double b, int n, double x,
                       std::span<double> out) {
  if (n < 0) throw std::invalid_argument("jacobi_all: n must be >= 0");
  if (std::abs(x) > 1.0)
    throw std::invalid_argument("jacobi_all: |x| <= 1 required");
  if (static_cast<int>(out.size()) < n + 1)
    throw std::invalid_argument("jacobi_all: output span too small");
  out[0] = 1.0;
  if (n == 0) return;
  out[1] = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
  for (int k = 2; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    const double c = 2.0 * kk + a + b;
    const double c1 = 2.0 * kk * (kk + a + b) * (c - 2.0);
    const double c2 = (c - 1.0) * (a * a - b * b);
    const double c3 = (c - 2.0) * (c - 1.0) * c;
    const double c4 = 2.0 * (kk + a - 1.0) * (kk + b - 1.0) * c;
    out[k] = ((c2 + c3 * x) * out[k - 1] - c4 * out[k - 2]) / c1;
  }
}

/// Runs the three-term recurrence at a fixed point, handing (k, P_k(x)) to
/// the callback for k = 0..nmax without allocating.
template <typename F>
inline void jacobi_recurrence(double a, double b, int nmax, double x, F&& f) {
  double pm = 0.0, pc = 1.0;
  f(0, pc);
  if (nmax == 0) return;
  double pn = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
  f(1, pn);
  pm = pc;
  pc = pn;
  for (int k = 2; k <= nmax; ++k) {
    const double kk = static_cast<double>(k);
    const double c = 2.0 * kk + a + b;
    const double c1 = 2.0 * kk * (kk + a + b) * (c - 2.0);
    const double c2 = (c - 1.0) * (a * a - b * b);
    const double c3 = (c - 2.0) * (c - 1.0) * c;
    const double c4 = 2.0 * (kk + a - 1.0) * (kk + b - 1.0) * c;
    pn = ((c2 + c3 * x) * pc - c4 * pm) / c1;
    f(k, pn);
    pm = pc;
    pc = pn;
  }
}

/// P_n^{(a,b)}(x).
inline double jacobi_eval(double a, double b, int n, double x) {
  if (a <= -1.0 || b <= -1.0)
    throw std::invalid_argument("jacobi_eval: weight exponents must be > -1");
  std::vector<double> buf(static_cast<size_t>(n) + 1);
  jacobi_all(a, b, n, x, buf);
  return buf[static_cast<size_t>(n)];
}

/// Vectorized over evaluation points.
inline std::vector<double> jacobi_eval(double a, double b, int n,
                                       std::span<const double> xs) {
  std::vector<double> vals(xs.size());
  std::vector<double> buf(static_cast<size_t>(n) + 1);
  for (size_t i = 0; i < xs.size(); ++i) {
    jacobi_all(a, b, n, xs[i], buf);
    vals[i] = buf[static_cast<size_t>(n)];
  }
  return vals;
}

/// P_k^{(a,b)}(1) = C(k+a, k) for k = 0..n, by the exact multiplicative
/// recurrence.
inline std::vector<double> jacobi_at_one(double a, int n) {
  std::vector<double> v(static_cast<size_t>(n) + 1);
  v[0] = 1.0;
  for (int k = 1; k <= n; ++k)
    v[static_cast<size_t>(k)] = v[static_cast<size_t>(k) - 1] * (k + a) / k;
  return v;
}

// ---------------------------------------------------------------------------
// Bessel functions J_nu, Y_nu for nu in {0, 1/2, 1, 3/2, ...}
// ---------------------------------------------------------------------------

enum class BesselKind { J, Y };

namespace detail {

// Crossover between power series and the large-argument expansion.
inline double bessel_crossover(double nu) { return std::max(14.0, 2.0 * nu); }

// Power series for integer order m at moderate r.
inline double bessel_j_series(int m, double r) {
  const double q = 0.25 * r * r;
  double term = std::exp(m * std::log(0.5 * r) - std::lgamma(m + 1.0));
  KahanSum s;
  s.add(term);
  for (int k = 1; k < 400; ++k) {
    term *= -q / (static_cast<double>(k) * (k + m));
    s.add(term);
    if (std::abs(term) < 1e-18 * (std::abs(s.value()) + 1e-300)) break;
  }
  return s.value();
}

// Hankel asymptotic expansion for orders 0 and 1, r large; returns both J
// and Y of the given order.
inline void bessel_asymptotic01(int m, double r, double& jv, double& yv) {
  const double mu = 4.0 * m * m;
  double p = 1.0, q = 0.0;
  double t = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double num = mu - (2.0 * k - 1.0) * (2.0 * k - 1.0);
    t *= num / (8.0 * r * k);
    if (std::abs(t) > prev) break;  // optimal truncation
    prev = std::abs(t);
    const int phase = k % 4;
    if (phase == 1)
      q += t;
    else if (phase == 2)
      p -= t;
    else if (phase == 3)
      q -= t;
    else
      p += t;
    if (std::abs(t) < 1e-18) break;
  }
  const double chi = r - (2.0 * m + 1.0) * (M_PI / 4.0);
  const double c = std::cos(chi), s = std::sin(chi);
  const double f = std::sqrt(2.0 / (M_PI * r));
  jv = f * (p * c - q * s);
  yv = f * (p * s + q * c);
}

// Y_0 and Y_1 by the logarithmic series, r below the crossover.
inline void bessel_y01_series(double r, double& y0, double& y1) {
  static constexpr double kEuler = 0.57721566490153286060651209;
  const double q = 0.25 * r * r;
  const double lg = std::log(0.5 * r);

  const double j0 = bessel_j_series(0, r);
  const double j1 = bessel_j_series(1, r);

  // Y0
  {
    KahanSum s;
    double term = 1.0;  // q^k / (k!)^2 at k=0 -> starts from k=1
    double hk = 0.0;
    for (int k = 1; k < 400; ++k) {
      term *= q / (static_cast<double>(k) * k);
      hk += 1.0 / k;
      const double add = ((k % 2) ? 1.0 : -1.0) * hk * term;
      s.add(add);
      if (std::abs(add) < 1e-18 * (std::abs(s.value()) + 1e-300)) break;
    }
    y0 = (2.0 / M_PI) * ((lg + kEuler) * j0 + s.value());
  }
  // Y1
  {
    KahanSum s;
    double term = 1.0;  // (-q)^k / (k! (k+1)!) at k=0
    double psum = -2.0 * kEuler + 1.0;  // psi(1) + psi(2) at k=0
    s.add(psum * term);
    for (int k = 1; k < 400; ++k) {
      term *= -q / (static_cast<double>(k) * (k + 1));
      psum += 1.0 / k + 1.0 / (k + 1.0);
      const double add = psum * term;
      s.add(add);
      if (std::abs(add) < 1e-18 * (std::abs(s.value()) + 1e-300)) break;
    }
    y1 = (2.0 / M_PI) * lg * j1 - 2.0 / (M_PI * r) -
         (r / (2.0 * M_PI)) * s.value();
  }
}

inline void bessel_int_01(double r, double& j0, double& j1, double& y0,
                          double& y1) {
  if (r < bessel_crossover(1.0)) {
    j0 = bessel_j_series(0, r);
    j1 = bessel_j_series(1, r);
    bessel_y01_series(r, y0, y1);
  } else {
    bessel_asymptotic01(0, r, j0, y0);
    bessel_asymptotic01(1, r, j1, y1);
  }
}

// Spherical Bessel j_l by ascending series (used when l >= r, where the
// upward recurrence loses accuracy).
inline double spherical_j_series(int l, double r) {
  double dfact = 1.0;  // (2l+1)!!
  for (int k = 1; k <= l; ++k) dfact *= 2.0 * k + 1.0;
  double term = 1.0;
  KahanSum s;
  s.add(term);
  const double q = 0.5 * r * r;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<double>(k) * (2.0 * l + 2.0 * k + 1.0));
    s.add(term);
    if (std::abs(term) < 1e-18 * (std::abs(s.value()) + 1e-300)) break;
  }
  return std::pow(r, l) / dfact * s.value();
}

}  // namespace detail

/// Bessel function of the first (J) or second (Y) kind, order nu a
/// nonnegative integer or half-integer. Y requires r > 0.
inline double bessel(BesselKind kind, double nu, double r) {
  if (!(nu >= 0.0) || !detail::is_half_integer(nu))
    throw std::invalid_argument(
        "bessel: order must be a nonnegative integer or half-integer");
  if (r < 0.0) throw std::invalid_argument("bessel: r must be >= 0");
  if (kind == BesselKind::Y && r == 0.0)
    throw std::invalid_argument("bessel: Y is singular at r = 0");

  const long long twice = static_cast<long long>(std::round(2.0 * nu));
  const bool half = (twice % 2LL) != 0;

  if (r == 0.0) return nu == 0.0 ? 1.0 : 0.0;  // J only reaches here

  if (half) {
    const int l = static_cast<int>(std::round(nu - 0.5));
    const double scale = std::sqrt(2.0 * r / M_PI);
    if (kind == BesselKind::J) {
      if (l == 0) return scale * std::sin(r) / r;
      if (static_cast<double>(l) > r)
        return scale * detail::spherical_j_series(l, r);
      double jm = std::sin(r) / r;
      double jc = std::sin(r) / (r * r) - std::cos(r) / r;
      for (int k = 1; k < l; ++k) {
        const double jn = (2.0 * k + 1.0) / r * jc - jm;
        jm = jc;
        jc = jn;
      }
      return scale * jc;
    }
    // Y: upward recurrence is stable for all l.
    double ym = -std::cos(r) / r;
    if (l == 0) return scale * ym;
    double yc = -std::cos(r) / (r * r) - std::sin(r) / r;
    for (int k = 1; k < l; ++k) {
      const double yn = (2.0 * k + 1.0) / r * yc - ym;
      ym = yc;
      yc = yn;
    }
    return scale * yc;
  }

  const int m = static_cast<int>(std::round(nu));
  if (kind == BesselKind::J) {
    if (r < detail::bessel_crossover(nu)) return detail::bessel_j_series(m, r);
    double j0, j1, y0, y1;
    detail::bessel_asymptotic01(0, r, j0, y0);
    detail::bessel_asymptotic01(1, r, j1, y1);
    if (m == 0) return j0;
    double jm = j0, jc = j1;
    for (int k = 1; k < m; ++k) {
      const double jn = 2.0 * k / r * jc - jm;
      jm = jc;
      jc = jn;
    }
    return jc;
  }
  double j0, j1, y0, y1;
  detail::bessel_int_01(r, j0, j1, y0, y1);
  if (m == 0) return y0;
  double ym = y0, yc = y1;
  for (int k = 1; k < m; ++k) {
    const double yn = 2.0 * k / r * yc - ym;
    ym = yc;
    yc = yn;
  }
  return yc;
}

inline double bessel_j(double nu, double r) {
  return bessel(BesselKind::J, nu, r);
}
inline double bessel_y(double nu, double r) {
  return bessel(BesselKind::Y, nu, r);
}

// ---------------------------------------------------------------------------
// tanh-sinh quadrature (integrands smooth except for endpoint algebraic
// singularities)
// ---------------------------------------------------------------------------

namespace detail {

struct TanhSinhNode {
  double x;  // in (-1, 1)
  double w;
};

/// Node/weight table on (-1,1) at parameter spacing h. The densest sampling
/// (at the interval center) has spacing ~ h pi/2, which bounds the highest
/// oscillation frequency the rule resolves.
inline std::vector<TanhSinhNode> tanh_sinh_nodes(double h = 0.04) {
  std::vector<TanhSinhNode> v;
  const int jmax = static_cast<int>(std::ceil(3.8 / h));
  v.reserve(2 * static_cast<size_t>(jmax) + 1);
  for (int j = -jmax; j <= jmax; ++j) {
    const double t = j * h;
    const double u = 0.5 * M_PI * std::sinh(t);
    const double x = std::tanh(u);
    const double c = std::cosh(u);
    const double w = h * 0.5 * M_PI * std::cosh(t) / (c * c);
    if (1.0 - std::abs(x) < 1e-17 || w < 1e-300) continue;
    v.push_back({x, w});
  }
  return v;
}

/// Integral of f over [a, b]; f may have algebraic endpoint singularities.
/// max_frequency bounds the oscillation rate of f (cycles per unit length),
/// so smooth oscillatory factors are resolved as well.
inline double tanh_sinh(const std::function<double(double)>& f, double a,
                        double b, double max_frequency = 0.0) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double h = 0.04;
  if (max_frequency > 0.0) {
    // center spacing h*half*pi/2 <= quarter wavelength 2pi/(4 freq)
    h = std::min(h, 1.0 / (max_frequency * half * (1.0 + 1e-12)));
  }
  KahanSum s;
  for (const auto& n : tanh_sinh_nodes(h)) s.add(n.w * f(mid + half * n.x));
  return half * s.value();
}

}  // namespace detail

}  // namespace symharm
