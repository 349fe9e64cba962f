#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "symharm/fractal.hpp"

using namespace symharm;

namespace {

std::vector<PlanarPoint> sampled_graph(const std::function<double(double)>& f,
                                       int n = 16384) {
  std::vector<PlanarPoint> pts(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double x = M_PI * i / (n - 1);
    pts[static_cast<size_t>(i)] = {x, f(x)};
  }
  return pts;
}

double weierstrass(double gamma, double x, int terms = 14) {
  double s = 0.0;
  for (int k = 0; k < terms; ++k)
    s += std::pow(2.0, -gamma * k) * std::cos(std::pow(2.0, k) * x);
  return s;
}

}  // namespace

TEST_CASE("box counts of flat and linear graphs") {
  const auto flat = sampled_graph([](double) { return 0.4; });
  const auto eps = dyadic_scales(1.0, 2, 8);
  const auto est = box_count(flat, eps);
  for (size_t i = 0; i < est.epsilons.size(); ++i)
    CHECK(est.counts[i] ==
          static_cast<int64_t>(std::ceil(M_PI / est.epsilons[i])));

  const auto line = sampled_graph([](double x) { return x; });
  const auto lest = box_count(line, eps);
  for (size_t i = 0; i < lest.epsilons.size(); ++i) {
    const auto cols = static_cast<int64_t>(std::ceil(M_PI / lest.epsilons[i]));
    CHECK(lest.counts[i] >= cols);
    CHECK(lest.counts[i] <= 2 * cols + 1);
  }
}

TEST_CASE("box counts are monotone and satisfy the subdivision bound") {
  const auto pts = sampled_graph([](double x) { return weierstrass(0.5, x); });
  const auto eps = dyadic_scales(1.0, 2, 10);
  const auto est = box_count(pts, eps);
  for (size_t i = 1; i < est.counts.size(); ++i) {
    CHECK(est.counts[i] >= est.counts[i - 1]);  // finer scale, more boxes
    CHECK(est.counts[i] <= 4 * est.counts[i - 1] + 4);
  }
  CHECK_THROWS_AS(box_count(pts, std::vector<double>{1e-6, 1e-7}),
                  std::invalid_argument);
}

TEST_CASE("minkowski_fit recovers exact power laws") {
  BoxCountEstimate est;
  for (int j = 2; j <= 9; ++j) {
    const double e = std::pow(2.0, -j);
    est.epsilons.push_back(e);
    est.counts.push_back(static_cast<int64_t>(std::llround(std::pow(e, -1.5))));
  }
  est = minkowski_fit(est);
  CHECK(est.dimension == Catch::Approx(1.5).margin(0.01));
  CHECK(est.r2 > 0.999);
  CHECK_THROWS_AS(minkowski_fit(est, 1e-9, 2e-9), std::invalid_argument);
}

TEST_CASE("dimension of model graphs") {
  const auto eps = dyadic_scales(1.0, 2, 10);

  const auto smooth =
      minkowski_fit(box_count(sampled_graph([](double x) { return 0.8 * std::sin(3.0 * x); }), eps));
  CHECK(smooth.dimension == Catch::Approx(1.0).margin(0.05));

  const auto cusp = minkowski_fit(box_count(
      sampled_graph([](double x) { return std::pow(std::abs(x - 1.0), 0.4); }),
      eps));
  CHECK(cusp.dimension < 1.2);  // rectifiable curve

  for (double gamma : {0.3, 0.5}) {
    const auto w = minkowski_fit(box_count(
        sampled_graph([=](double x) { return weierstrass(gamma, x); }), eps));
    CHECK(w.dimension == Catch::Approx(2.0 - gamma).margin(0.15));
  }
}

TEST_CASE("bi-lipschitz maps preserve the measured dimension") {
  const auto pts = sampled_graph([](double x) { return weierstrass(0.5, x); });
  const auto eps = dyadic_scales(1.0, 2, 10);

  const auto ident = bilipschitz_probe(
      pts, [](const PlanarPoint& p) { return p; }, eps);
  CHECK(ident.difference == 0.0);

  const auto shear = bilipschitz_probe(
      pts,
      [](const PlanarPoint& p) {
        return PlanarPoint{2.0 * p.x + std::sin(p.y), p.y};
      },
      eps);
  CHECK(shear.difference <= 0.1);

  const double c = std::cos(M_PI / 4), s = std::sin(M_PI / 4);
  const auto rot = bilipschitz_probe(
      pts,
      [=](const PlanarPoint& p) {
        return PlanarPoint{c * p.x - s * p.y, s * p.x + c * p.y};
      },
      eps);
  CHECK(rot.difference <= 0.1);

  CHECK_THROWS_AS(
      bilipschitz_probe(
          pts, [](const PlanarPoint& p) { return PlanarPoint{50.0 * p.x, p.y}; },
          eps),
      std::invalid_argument);
}

TEST_CASE("union of sets carries the max dimension") {
  const auto eps = dyadic_scales(1.0, 2, 10);
  const auto line0 = sampled_graph([](double) { return -0.7; });
  const auto line1 = sampled_graph([](double x) { return 0.3 * x + 1.9; });
  const auto w = sampled_graph([](double x) { return weierstrass(0.5, x); });

  const auto lines = union_probe(line0, line1, eps);
  CHECK(lines.joint.dimension == Catch::Approx(1.0).margin(0.05));

  const auto mixed = union_probe(w, line1, eps);
  CHECK(mixed.joint.dimension ==
        Catch::Approx(std::max(mixed.a.dimension, mixed.b.dimension))
            .margin(0.05));

  // A union A = A, an exact count identity
  const auto self = union_probe(w, w, eps);
  const auto solo = box_count(w, eps);
  for (size_t i = 0; i < solo.counts.size(); ++i)
    CHECK(self.joint.counts[i] == solo.counts[i]);
}
