#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "symharm/spaces.hpp"

using namespace symharm;

TEST_CASE("structural constants match the classification tables") {
  struct Row {
    SpaceKind kind;
    int d, M1, M2;
    double alpha, beta;
    int s;
    double delta_star;
  };
  const Row rows[] = {
      {SpaceKind::sphere, 2, 0, 1, 0.0, 0.0, 1, 2.0},
      {SpaceKind::sphere, 3, 0, 2, 0.5, 0.5, 1, 3.0},
      {SpaceKind::sphere, 5, 0, 4, 1.5, 1.5, 1, 5.0},
      {SpaceKind::rproj, 2, 1, 0, 0.0, 0.0, 2, 2.0},
      {SpaceKind::rproj, 3, 2, 0, 0.5, 0.5, 2, 3.0},
      {SpaceKind::cproj, 4, 2, 1, 1.0, 0.0, 1, 3.0},
      {SpaceKind::cproj, 6, 4, 1, 2.0, 0.0, 1, 4.0},
      {SpaceKind::hproj, 8, 4, 3, 3.0, 1.0, 1, 6.0},
      {SpaceKind::hproj, 12, 8, 3, 5.0, 1.0, 1, 8.0},
      {SpaceKind::cayley, 16, 8, 7, 7.0, 3.0, 1, 12.0},
  };
  for (const auto& r : rows) {
    const auto p = space_params(r.kind, r.d);
    CHECK(p.M1 == r.M1);
    CHECK(p.M2 == r.M2);
    CHECK(p.alpha == r.alpha);
    CHECK(p.beta == r.beta);
    CHECK(p.s == r.s);
    CHECK(p.delta_star == r.delta_star);
    CHECK(p.M1 + p.M2 + 1 == p.d);
    CHECK(p.alpha == 0.5 * (p.d - 2));
    if (p.s == 1) {
      CHECK(p.M2 == 2 * p.beta + 1);
      CHECK(p.M1 == 2 * p.alpha - 2 * p.beta);
    }
  }
}

TEST_CASE("inadmissible dimensions are rejected with the admissible set") {
  CHECK_THROWS_WITH(space_params(SpaceKind::cproj, 3),
                    Catch::Matchers::ContainsSubstring("even and >= 4"));
  CHECK_THROWS_AS(space_params(SpaceKind::sphere, 1), std::invalid_argument);
  CHECK_THROWS_AS(space_params(SpaceKind::hproj, 10), std::invalid_argument);
  CHECK_THROWS_AS(space_params(SpaceKind::cayley, 8), std::invalid_argument);
}

TEST_CASE("density vanishes at the origin and has unit mass") {
  for (const auto& p : reference_spaces()) {
    CHECK(density(p, 0.0) == 0.0);
    // closed-form constant vs an independent tanh-sinh evaluation
    const double mass = detail::tanh_sinh(
        [&](double t) { return density(p, t); }, 0.0, M_PI);
    CHECK(mass == Catch::Approx(1.0).margin(1e-12));
    // and vs the Gauss-Jacobi route: C * 2^{-M1/2} * total_mass = 1
    const auto rule = gauss_jacobi_rule(p.jacobi_a(), p.jacobi_b(), 8);
    CHECK(p.density_const * std::exp2(-0.5 * p.M1) * rule.total_mass ==
          Catch::Approx(1.0).margin(1e-13));
  }
  const auto s2 = space_params(SpaceKind::sphere, 2);
  CHECK(density(s2, 1.0) == Catch::Approx(0.5 * std::sin(1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(density(s2, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(density(s2, 3.2), std::invalid_argument);
}

TEST_CASE("eigenvalues are the table forms, increasing and integral") {
  const auto s2 = space_params(SpaceKind::sphere, 2);
  CHECK(eigenvalue(s2, 1) == 2.0);
  const auto r2 = space_params(SpaceKind::rproj, 2);
  CHECK(eigenvalue(r2, 1) == 6.0);
  const auto c4 = space_params(SpaceKind::cproj, 4);
  CHECK(eigenvalue(c4, 1) == 3.0);   // n(n + d/2)
  const auto h8 = space_params(SpaceKind::hproj, 8);
  CHECK(eigenvalue(h8, 1) == 6.0);   // n(n + 1 + d/2)
  const auto cay = space_params(SpaceKind::cayley, 16);
  CHECK(eigenvalue(cay, 1) == 12.0); // n(n + 11)

  for (const auto& p : reference_spaces()) {
    CHECK(eigenvalue(p, 0) == 0.0);
    for (int n = 1; n <= 64; ++n) {
      const double ev = eigenvalue(p, n);
      CHECK(ev > eigenvalue(p, n - 1));
      CHECK(std::abs(ev - std::round(ev)) < 1e-9);
    }
  }
}

TEST_CASE("eigenspace dimensions snap to integers and have d-1 growth") {
  // oracle: d_n = (2n+a+b+1) G(b+1) G(n+a+1) G(n+a+b+1) /
  //               (G(a+b+2) G(a+1) n! G(n+b+1))
  auto dim_oracle = [](const SpaceParams& p, int n) {
    const double a = p.jacobi_a(), b = p.jacobi_b();
    return (2.0 * n + a + b + 1.0) *
           std::exp(std::lgamma(b + 1.0) + std::lgamma(n + a + 1.0) +
                    std::lgamma(n + a + b + 1.0) - std::lgamma(a + b + 2.0) -
                    std::lgamma(a + 1.0) - std::lgamma(n + 1.0) -
                    std::lgamma(n + b + 1.0));
  };

  const auto s2 = space_params(SpaceKind::sphere, 2);
  CHECK(eigenspace_dim(s2, 0) == Catch::Approx(1.0).margin(1e-10));
  CHECK(eigenspace_dim(s2, 1) == Catch::Approx(3.0).margin(1e-9));

  const auto r2 = space_params(SpaceKind::rproj, 2);
  CHECK(eigenspace_dim(r2, 1) == Catch::Approx(5.0).margin(1e-9));  // 4n+1

  for (const auto& p : reference_spaces()) {
    const auto dims = eigenspace_dims(p, 200);
    CHECK(dims[0] == Catch::Approx(1.0).margin(1e-9));
    for (int n = 0; n <= 200; ++n) {
      const double dn = dims[static_cast<size_t>(n)];
      CHECK(dn > 0.0);
      CHECK(std::abs(dn - std::round(dn)) < 1e-6 * std::max(1.0, dn));
      CHECK(dn == Catch::Approx(dim_oracle(p, n))
                      .epsilon(1e-8));
    }
    // d_n ~ (1+n)^{d-1}: the normalized ratio q(n) settles to a constant;
    // the pre-asymptotic drift over [100, 200] is a bounded factor.
    auto q = [&](int n) {
      return dims[static_cast<size_t>(n)] / std::pow(1.0 + n, p.d - 1);
    };
    CHECK(q(200) / q(100) > 0.6);
    CHECK(q(200) / q(100) < 1.5);
  }
}

TEST_CASE("eigenspace_dims rejects under-resolved quadrature") {
  const auto p = space_params(SpaceKind::sphere, 3);
  CHECK_THROWS_WITH(eigenspace_dims(p, 10, 5),
                    Catch::Matchers::ContainsSubstring("need 11"));
}
