#include <doctest.h>

#include <cmath>
#include <random>

#include "baortho/chart.hpp"
#include "baortho/verify.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace baortho;

TEST_CASE("spherical chart at the origin") {
  const CoordinateChart chart =
      CoordinateChart::build(fixtures::s2_data(), fixtures::s2_form());
  CHECK(chart.dim() == 2);
  CHECK(chart.ambient_dim() == 3);
  CHECK(chart.signature() == std::vector<int>{1, 1, 1});

  const double origin[2] = {0.0, 0.0};
  const std::vector<double> x = chart.position(origin);
  double norm = 0.0;
  for (double xi : x) {
    CHECK(std::abs(xi - fixtures::kMu) < 1e-12);
    norm += xi * xi;
  }
  CHECK(std::abs(norm - 1.0) < 1e-12);
}

TEST_CASE("hyperbolic chart at the origin") {
  const CoordinateChart chart =
      CoordinateChart::build(fixtures::h2_data(), fixtures::h2_form());
  CHECK(chart.signature() == std::vector<int>{1, -1, -1});

  const double origin[2] = {0.0, 0.0};
  const std::vector<double> x = chart.position(origin);
  CHECK(std::abs(x[0] - fixtures::kSqrt3) < 1e-12);
  CHECK(std::abs(x[1] - 1.0) < 1e-12);
  CHECK(std::abs(x[2] - 1.0) < 1e-12);
  CHECK(std::abs(x[0] * x[0] - x[1] * x[1] - x[2] * x[2] - 1.0) < 1e-12);
}

TEST_CASE("Lame coefficients match the closed-form metrics") {
  const CoordinateChart s2 =
      CoordinateChart::build(fixtures::s2_data(), fixtures::s2_form());
  const CoordinateChart h2 =
      CoordinateChart::build(fixtures::h2_data(), fixtures::h2_form());

  std::mt19937 rng(21);
  std::uniform_real_distribution<double> box(-0.9, 0.9);
  for (int it = 0; it < 10; ++it) {
    const double u[2] = {box(rng), box(rng)};
    const auto Hs = s2.lame(u);
    const auto ref_s = reference_metric_squared(ReferenceChart::S2, u[0], u[1]);
    CHECK(std::abs(Hs[0] * Hs[0] - ref_s[0]) < 1e-12);
    CHECK(std::abs(Hs[1] * Hs[1] - ref_s[1]) < 1e-12);

    const auto Hh = h2.lame(u);
    const auto ref_h = reference_metric_squared(ReferenceChart::H2, u[0], u[1]);
    CHECK(std::abs(Hh[0] * Hh[0] - ref_h[0]) < 1e-12);
    CHECK(std::abs(Hh[1] * Hh[1] - ref_h[1]) < 1e-12);
    CHECK(Hh[0] > 0.0);
    CHECK(Hh[1] > 0.0);
  }
}

TEST_CASE("tangent vectors differentiate the reference chart") {
  const CoordinateChart chart =
      CoordinateChart::build(fixtures::h2_data(), fixtures::h2_form());
  const double u[2] = {0.31, -0.44};
  const auto t = chart.tangents(u);
  for (int dir = 0; dir < 2; ++dir) {
    for (int k = 0; k < 3; ++k) {
      const double fd = oracles::central_diff4(
          [&](double s) {
            double w[2] = {u[0], u[1]};
            w[dir] = s;
            return reference_position(ReferenceChart::H2, w[0], w[1])[static_cast<size_t>(k)];
          },
          u[dir], 1e-5);
      CHECK(std::abs(t[static_cast<size_t>(dir)][static_cast<size_t>(k)] - fd) < 1e-9);
    }
  }
}

TEST_CASE("rotation coefficients: constant H_1 kills beta_21") {
  const CoordinateChart chart =
      CoordinateChart::build(fixtures::s2_data(), fixtures::s2_form());
  const double u[2] = {0.7, 0.2};
  const auto beta = chart.rotation_coefficients(u);
  CHECK(std::abs(beta[1][0]) < 1e-9);  // d H_1 / d v = 0
  CHECK(std::abs(beta[0][1]) > 1e-3);  // generic nonzero entry
}

TEST_CASE("rotation coefficients are step-size consistent") {
  const CoordinateChart chart =
      CoordinateChart::build(fixtures::h2_data(), fixtures::h2_form());
  const double u[2] = {0.25, 0.4};
  const auto beta1 = chart.rotation_coefficients(u, 1e-4);
  const auto beta2 = chart.rotation_coefficients(u, 5e-5);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(std::abs(beta1[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                     beta2[static_cast<size_t>(i)][static_cast<size_t>(j)]) <= 1e-7);
}

TEST_CASE("unnormalized residue data is rejected") {
  const SpectralData sd = fixtures::s2_data();
  const ResidueData raw = extract_residue_data(sd, fixtures::s2_form());
  // Raw spherical gauge has h^2 B = +1.
  CHECK_THROWS_AS(CoordinateChart(sd, fixtures::s2_form(), raw),
                  std::invalid_argument);
}

TEST_CASE("sign pattern must match the curvature target") {
  SpectralData sd = fixtures::h2_data();
  sd.curvature_target = +1;  // hyperbolic residue signs, spherical request
  CHECK_THROWS_WITH_AS(CoordinateChart::build(sd, fixtures::h2_form()),
                       doctest::Contains("other curvature sign"),
                       std::invalid_argument);
}

TEST_CASE("build rejects invalid spectral data") {
  SpectralData sd = fixtures::s2_data();
  sd.gamma[0] = {1, Complex(0.0, fixtures::kMu)};
  CHECK_THROWS_AS(CoordinateChart::build(sd, fixtures::s2_form()),
                  std::invalid_argument);
}
