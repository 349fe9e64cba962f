#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "symharm/regularity.hpp"

using namespace symharm;

TEST_CASE("decay_fit recovers exact and noisy power laws") {
  std::vector<double> xs, ys;
  for (int k = 1; k <= 8; ++k) {
    xs.push_back(std::pow(2.0, k));
    ys.push_back(std::pow(xs.back(), -2.0));
  }
  auto fit = decay_fit(xs, ys);
  CHECK(fit.slope == Catch::Approx(-2.0).margin(1e-12));
  CHECK(fit.r2 == Catch::Approx(1.0).margin(1e-12));

  std::vector<double> flat(ys.size(), 3.0);
  fit = decay_fit(xs, flat);
  CHECK(fit.slope == Catch::Approx(0.0).margin(1e-12));

  std::mt19937_64 rng(99);
  std::vector<double> noisy;
  for (double x : xs) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    noisy.push_back(std::pow(x, -0.7) * (1.0 + 0.05 * (2.0 * u - 1.0)));
  }
  fit = decay_fit(xs, noisy);
  CHECK(fit.slope == Catch::Approx(-0.7).margin(0.05));

  CHECK_THROWS_AS(decay_fit(std::vector<double>{1, 2, 3},
                            std::vector<double>{1, 2, 3}),
                  std::invalid_argument);
  CHECK_THROWS_AS(decay_fit(std::vector<double>{1, 2, 3, -4},
                            std::vector<double>{1, 2, 3, 4}),
                  std::invalid_argument);
}

TEST_CASE("test profile generators") {
  const auto p = space_params(SpaceKind::sphere, 2);

  SECTION("ball profile is an indicator with exact coefficients") {
    const auto ball =
        make_test_profile(p, TestProfileKind::ball, 0.5, 1.1, 128);
    for (const auto& v : ball.profile.values)
      CHECK((v == Complex(0.0) || v == Complex(1.0)));
    // coefficients against a straight quadrature analysis of the indicator
    const ZonalBasis b = make_basis(p, 128, 4096);
    std::vector<Complex> vals(b.thetas.size());
    for (size_t i = 0; i < b.thetas.size(); ++i)
      vals[i] = b.thetas[i] < 1.1 ? 1.0 : 0.0;
    const auto quad = analyze(b, vals, 128);
    for (int n = 0; n <= 128; n += 17)
      CHECK(std::abs(ball.coeffs.c[static_cast<size_t>(n)] -
                     quad.c[static_cast<size_t>(n)]) < 2e-3);
    // mass of the ball equals c_0
    const double mass = detail::tanh_sinh(
        [&](double t) { return density(p, t); }, 0.0, 1.1);
    CHECK(std::abs(ball.coeffs.c[0] - mass) < 1e-12);
  }

  SECTION("cusp coefficients agree with a high-resolution quadrature oracle") {
    const auto cusp =
        make_test_profile(p, TestProfileKind::cusp, 0.5, 1.0, 256);
    const ZonalBasis b = make_basis(p, 64, 4096);
    std::vector<Complex> vals(b.thetas.size());
    for (size_t i = 0; i < b.thetas.size(); ++i)
      vals[i] = std::pow(std::abs(b.thetas[i] - 1.0), 0.5);
    const auto oracle = analyze(b, vals, 64);
    for (int n = 0; n <= 64; n += 5)
      CHECK(std::abs(cusp.coeffs.c[static_cast<size_t>(n)] -
                     oracle.c[static_cast<size_t>(n)]) < 1e-6);
  }

  SECTION("weierstrass besov norm sits at scale one") {
    const auto w =
        make_test_profile(p, TestProfileKind::weierstrass, 0.5, 0.0, 256);
    const double inf = std::numeric_limits<double>::infinity();
    const double bn = besov_norm(w.coeffs, 0.5, inf);
    CHECK(bn > 0.5);
    CHECK(bn < 2.0);
    // besov norm at a higher exponent grows with the band limit
    const auto w2 =
        make_test_profile(p, TestProfileKind::weierstrass, 0.5, 0.0, 1024);
    CHECK(besov_norm(w2.coeffs, 0.7, inf) >
          besov_norm(w.coeffs, 0.7, inf) * 1.2);
  }

  CHECK_THROWS_AS(make_test_profile(p, TestProfileKind::cusp, 1.5, 1.0, 64),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_test_profile(p, TestProfileKind::ball, 0.5, -1.0, 64),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      make_test_profile(p, TestProfileKind::weierstrass, 0.5, 0.0, 100),
      std::invalid_argument);
}

TEST_CASE("modulus of continuity on model profiles") {
  const auto p = space_params(SpaceKind::sphere, 2);
  RadialProfile lin;
  lin.space = p;
  lin.thetas = uniform_theta_grid(4096);
  lin.values.resize(lin.thetas.size());
  for (size_t i = 0; i < lin.thetas.size(); ++i)
    lin.values[i] = 0.7 * lin.thetas[i];
  std::vector<double> scales{0.05, 0.1, 0.2, 0.4};
  auto table = modulus_of_continuity(lin, scales);
  for (const auto& [d, w] : table)
    CHECK(w == Catch::Approx(0.7 * d).epsilon(0.02));
  for (size_t i = 1; i < table.size(); ++i)
    CHECK(table[i].second >= table[i - 1].second);

  RadialProfile cst = lin;
  for (auto& v : cst.values) v = 4.0;
  table = modulus_of_continuity(cst, scales);
  for (const auto& [d, w] : table) CHECK(w == 0.0);

  const auto cusp =
      make_test_profile(p, TestProfileKind::cusp, 0.5, 1.0, 16);
  const auto fit = measure_holder_exponent(cusp.profile);
  CHECK(fit.slope == Catch::Approx(0.5).margin(0.05));

  CHECK_THROWS_AS(modulus_of_continuity(lin, std::vector<double>{1e-6}),
                  std::invalid_argument);
}

TEST_CASE("cesaro error decays at the Holder rate for a cusp") {
  const auto p = space_params(SpaceKind::sphere, 2);
  const auto data =
      make_test_profile(p, TestProfileKind::cusp, 0.5, 1.0, 512);
  const std::vector<int> Ns{16, 32, 64, 128, 256, 512};
  const auto rc = cesaro_error_curve(data, p.delta_star, Ns);
  CHECK(rc.fit.slope == Catch::Approx(-0.5).margin(0.1));
  CHECK(rc.fit.r2 >= 0.95);
  // errors shrink monotonically up to mild jitter
  for (size_t i = 1; i < rc.ys.size(); ++i)
    CHECK(rc.ys[i] < rc.ys[i - 1] * 1.05);
}

TEST_CASE("riesz error rate is consistent with the cesaro rate") {
  const auto p = space_params(SpaceKind::sphere, 2);
  const auto data =
      make_test_profile(p, TestProfileKind::cusp, 0.5, 1.0, 512);
  const std::vector<int> Ns{16, 32, 64, 128, 256, 512};
  const auto ces = cesaro_error_curve(data, p.delta_star, Ns);
  std::vector<double> Rs;
  for (int N : Ns) Rs.push_back(std::sqrt(eigenvalue(p, N)));
  const auto rsz = riesz_error_curve(data, p.delta_star, Rs);
  CHECK(std::abs(rsz.fit.slope - ces.fit.slope) < 0.1);
}

TEST_CASE("weierstrass data has Holder exponent near gamma") {
  const auto p = space_params(SpaceKind::sphere, 2);
  const auto w =
      make_test_profile(p, TestProfileKind::weierstrass, 0.5, 0.0, 256);
  const auto fit = measure_holder_exponent(w.profile);
  CHECK(fit.slope >= 0.4);
}

TEST_CASE("spherical mean deviation: fixed points and diagonal action") {
  const auto p = space_params(SpaceKind::cproj, 4);
  SpectralCoeffs cst{p, {Complex(3.0)}};
  CHECK(spherical_mean_deviation(cst, 0.5) == 0.0);

  // single mode: the deviation is the multiplier times ||Z_n||_inf |c_n|
  const int n = 6;
  SpectralCoeffs mode{p, std::vector<Complex>(static_cast<size_t>(n) + 1,
                                              Complex(0.0))};
  mode.c.back() = Complex(0.0, 2.0);
  const double t = 0.4;
  const int samples = 8;
  const auto grid = uniform_theta_grid(default_sup_grid_size(n));
  const auto zn = zonal_eval(p, n, grid);
  double zsup = 0.0;
  for (double v : zn) zsup = std::max(zsup, std::abs(v));
  const double dn = eigenspace_dim(p, n);
  double expect = 0.0;
  for (int j = 1; j <= samples; ++j) {
    const double r = t * j / samples;
    const double phi = zonal_eval(p, n, std::vector<double>{r})[0] / dn;
    expect = std::max(expect, std::sqrt(1.0 - phi) * zsup * 2.0);
  }
  CHECK(spherical_mean_deviation(mode, t, samples) ==
        Catch::Approx(expect).epsilon(1e-12));

  CHECK_THROWS_AS(spherical_mean_deviation(cst, 4.0), std::invalid_argument);
}

TEST_CASE("cusp spherical-mean deviation scales like t^gamma") {
  const auto p = space_params(SpaceKind::sphere, 2);
  const auto data =
      make_test_profile(p, TestProfileKind::cusp, 0.5, 1.0, 512);
  const auto rc = spherical_mean_curve(data.coeffs, 1, 6, 6);
  CHECK(rc.fit.slope == Catch::Approx(0.5).margin(0.12));
}

TEST_CASE("bernstein ratio: degenerate and model cases") {
  const auto p = space_params(SpaceKind::sphere, 2);

  SpectralCoeffs z1{p, {Complex(0.0), Complex(1.0)}};
  const double r1 = bernstein_ratio(z1);
  CHECK(r1 > 0.0);
  CHECK(r1 < 5.0);

  SpectralCoeffs cst{p, {Complex(2.0), Complex(0.0), Complex(0.0)}};
  CHECK(bernstein_ratio(cst) == 0.0);

  CHECK_THROWS_AS(bernstein_ratio(z1, 3), std::invalid_argument);

  // stability across degrees on a small random ensemble
  std::mt19937_64 rng(5);
  auto max_ratio = [&](int m) {
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      SpectralCoeffs f{p, std::vector<Complex>(static_cast<size_t>(m) + 1)};
      const ZonalBasis b = make_basis(p, m);
      for (int n = 0; n <= m; ++n) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        f.c[static_cast<size_t>(n)] =
            (2.0 * u - 1.0) / b.dims[static_cast<size_t>(n)];
      }
      worst = std::max(worst, bernstein_ratio(f));
    }
    return worst;
  };
  const double r8 = max_ratio(8), r64 = max_ratio(64);
  CHECK(std::max(r8, r64) / std::min(r8, r64) < 3.0);
}
