#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "baortho/ba_solver.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace baortho;

namespace {

std::vector<std::array<double, 2>> sample_points(unsigned seed, int count,
                                                 double lo, double hi) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> box(lo, hi);
  std::vector<std::array<double, 2>> out;
  for (int k = 0; k < count; ++k) out.push_back({box(rng), box(rng)});
  return out;
}

}  // namespace

TEST_CASE("the bundled curves produce 5x5 systems") {
  for (const SpectralData& sd : {fixtures::s2_data(), fixtures::h2_data()}) {
    const BASolver solver(sd);
    CHECK(solver.unknown_count() == 5);
    const double u[2] = {0.3, -0.2};
    const LinearSystem sys = solver.assemble_system(u);
    CHECK(sys.rows.size() == 5);
    CHECK(sys.rhs.size() == 5);
    for (const auto& row : sys.rows) CHECK(row.size() == 5);
  }
}

TEST_CASE("solved coefficients match the closed forms (sphere)") {
  const BASolver solver(fixtures::s2_data());
  for (const auto& [u, v] : sample_points(11, 12, 0.0, 6.0)) {
    const double uv[2] = {u, v};
    const BASolution sol = solver.solve(uv);
    const auto ref = fixtures::s2_coefficients(u, v);
    CHECK(std::abs(sol.coeffs[0] - Complex(ref.f1)) < 1e-12);
    CHECK(std::abs(sol.coeffs[1] - Complex(ref.f2)) < 1e-12);
    CHECK(std::abs(sol.coeffs[2] - Complex(ref.g2)) < 1e-12);
    CHECK(std::abs(sol.coeffs[3] - Complex(ref.f3)) < 1e-12);
    CHECK(std::abs(sol.coeffs[4] - Complex(ref.g3)) < 1e-12);
    CHECK(sol.residual <= 1e-10 * (1.0 + sol.condition_number));
  }
}

TEST_CASE("solved coefficients match the closed forms (hyperbolic)") {
  const BASolver solver(fixtures::h2_data());
  for (const auto& [u, v] : sample_points(12, 12, -1.0, 1.0)) {
    const double uv[2] = {u, v};
    const BASolution sol = solver.solve(uv);
    const auto ref = fixtures::h2_coefficients(u, v);
    CHECK(std::abs(sol.coeffs[0] - Complex(ref.f1)) < 1e-12);
    CHECK(std::abs(sol.coeffs[1] - Complex(ref.f2)) < 1e-12);
    CHECK(std::abs(sol.coeffs[2] - Complex(ref.g2)) < 1e-12);
    CHECK(std::abs(sol.coeffs[3] - Complex(ref.f3)) < 1e-12);
    CHECK(std::abs(sol.coeffs[4] - Complex(ref.g3)) < 1e-12);
  }
}

TEST_CASE("the first leading coefficient is pinned by the normalization") {
  const BASolver s2(fixtures::s2_data());
  const BASolver h2(fixtures::h2_data());
  for (const auto& [u, v] : sample_points(13, 8, -0.8, 0.8)) {
    const double uv[2] = {u, v};
    CHECK(std::abs(s2.solve(uv).leading[0] - Complex(fixtures::kMu)) < 1e-13);
    CHECK(std::abs(h2.solve(uv).leading[0] - Complex(1.0)) < 1e-13);
  }
}

TEST_CASE("psi values at the marked points at the origin") {
  const SpectralData s2 = fixtures::s2_data();
  const BASolver solver(s2);
  const double origin[2] = {0.0, 0.0};
  const BASolution sol = solver.solve(origin);
  for (const auto& q : s2.Q)
    CHECK(std::abs(solver.eval_psi(sol, q) - Complex(fixtures::kMu)) < 1e-13);

  const SpectralData h2 = fixtures::h2_data();
  const BASolver hsolver(h2);
  const BASolution hsol = hsolver.solve(origin);
  for (const auto& q : h2.Q)
    CHECK(std::abs(hsolver.eval_psi(hsol, q) - Complex(1.0)) < 1e-13);
}

TEST_CASE("normalization point value and its derivatives") {
  const SpectralData sd = fixtures::s2_data();
  const BASolver solver(sd);
  for (const auto& [u, v] : sample_points(14, 6, 0.0, 6.0)) {
    const double uv[2] = {u, v};
    const BASolution sol = solver.solve(uv);
    CHECK(std::abs(solver.eval_psi(sol, sd.r) - Complex(sd.h)) < 1e-13);
    CHECK(std::abs(solver.eval_psi_derivative(sol, 0, sd.r)) < 1e-12);
    CHECK(std::abs(solver.eval_psi_derivative(sol, 1, sd.r)) < 1e-12);
  }
}

TEST_CASE("glued points carry equal psi values") {
  for (const SpectralData& sd : {fixtures::s2_data(), fixtures::h2_data()}) {
    const BASolver solver(sd);
    for (const auto& [u, v] : sample_points(15, 10, -0.9, 0.9)) {
      const double uv[2] = {u, v};
      const BASolution sol = solver.solve(uv);
      for (const auto& gp : sd.glue)
        CHECK(std::abs(solver.eval_psi(sol, gp.first) -
                       solver.eval_psi(sol, gp.second)) < 1e-10);
    }
  }
}

TEST_CASE("reality of psi at the tau-fixed marked points") {
  for (const SpectralData& sd : {fixtures::s2_data(), fixtures::h2_data()}) {
    const BASolver solver(sd);
    for (const auto& [u, v] : sample_points(16, 10, -1.0, 1.0)) {
      const double uv[2] = {u, v};
      const BASolution sol = solver.solve(uv);
      for (const auto& q : sd.Q)
        CHECK(std::abs(solver.eval_psi(sol, q).imag()) < 1e-10);
      for (const auto& f : sol.leading) CHECK(std::abs(f.imag()) < 1e-10);
    }
  }
}

TEST_CASE("solving is deterministic") {
  const BASolver solver(fixtures::h2_data());
  const double uv[2] = {0.37, -0.81};
  const BASolution a = solver.solve(uv);
  const BASolution b = solver.solve(uv);
  REQUIRE(a.coeffs.size() == b.coeffs.size());
  CHECK(std::memcmp(a.coeffs.data(), b.coeffs.data(),
                    a.coeffs.size() * sizeof(Complex)) == 0);
  CHECK(a.condition_number == b.condition_number);
}

TEST_CASE("exact derivatives agree with central differences on a grid") {
  for (const SpectralData& sd : {fixtures::s2_data(), fixtures::h2_data()}) {
    const BASolver solver(sd);
    double worst = 0.0;
    for (int iu = 0; iu < 10; ++iu) {
      for (int iv = 0; iv < 10; ++iv) {
        const double u = iu / 9.0, v = iv / 9.0;
        const double uv[2] = {u, v};
        const BASolution sol = solver.solve(uv);
        for (int dir = 0; dir < 2; ++dir) {
          for (const auto& q : sd.Q) {
            const Complex exact = solver.eval_psi_derivative(sol, dir, q);
            const Complex fd = oracles::central_diff4_complex(
                [&](double t) {
                  double w[2] = {u, v};
                  w[dir] = t;
                  return solver.eval_psi(solver.solve(w), q);
                },
                uv[dir], 1e-5);
            worst = std::max(worst, std::abs(exact - fd));
          }
        }
      }
    }
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("leading-coefficient derivatives match the closed forms") {
  const BASolver solver(fixtures::s2_data());
  for (const auto& [u, v] : sample_points(18, 8, 0.0, 5.0)) {
    const double uv[2] = {u, v};
    const BASolution sol = solver.solve(uv);
    const double th = (u - v) / fixtures::kSqrt3;
    // d f_2 / du for f_2 = (cos th - sin th)/sqrt(3), th = (u - v)/sqrt(3).
    const double expected = -(std::sin(th) + std::cos(th)) / 3.0;
    CHECK(std::abs(solver.leading_derivative(sol, 0, 1) - Complex(expected)) < 1e-12);
    CHECK(std::abs(solver.leading_derivative(sol, 1, 1) + Complex(expected)) < 1e-12);
    CHECK(std::abs(solver.leading_derivative(sol, 0, 0)) < 1e-13);  // f_1 constant
  }
}

TEST_CASE("spherical tangent value at the origin") {
  // d/du of psi(Q_1) at (0,0) equals 1/3 for the sphere.
  const SpectralData sd = fixtures::s2_data();
  const BASolver solver(sd);
  const double origin[2] = {0.0, 0.0};
  const BASolution sol = solver.solve(origin);
  CHECK(std::abs(solver.eval_psi_derivative(sol, 0, sd.Q[0]) -
                 Complex(1.0 / 3.0)) < 1e-12);
}

TEST_CASE("evaluation at excluded points is a domain error") {
  const SpectralData sd = fixtures::s2_data();
  const BASolver solver(sd);
  const double uv[2] = {0.1, 0.2};
  const BASolution sol = solver.solve(uv);
  CHECK_THROWS_AS((void)solver.eval_psi(sol, sd.P[0]), std::domain_error);
  CHECK_THROWS_AS((void)solver.eval_psi(sol, sd.gamma[0]), std::domain_error);
  CHECK_THROWS_AS((void)solver.eval_psi_derivative(sol, 0, sd.P[1]),
                  std::domain_error);
}

TEST_CASE("a gamma point on a node poisons the basis") {
  SpectralData sd = fixtures::s2_data();
  sd.gamma[1] = {2, Complex(0.0, 1.0)};  // on the (c, d) node
  const BASolver solver(sd);
  const double uv[2] = {0.0, 0.0};
  CHECK_THROWS_AS((void)solver.assemble_system(uv), std::invalid_argument);
}

TEST_CASE("coincident basis poles make the system singular") {
  SpectralData sd = fixtures::s2_data();
  sd.gamma[1] = {1, fixtures::kMu};  // duplicates gamma_1 on component 1
  const BASolver solver(sd);
  const double uv[2] = {0.4, 0.1};
  CHECK_THROWS_AS((void)solver.solve(uv), std::runtime_error);
}

TEST_CASE("unknown counting mismatch is rejected at construction") {
  SpectralData sd = fixtures::s2_data();
  sd.gamma.pop_back();
  CHECK_THROWS_AS(BASolver{sd}, std::invalid_argument);
}
