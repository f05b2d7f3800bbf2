#include <doctest.h>

#include <cmath>
#include <numbers>

#include "baortho/verify.hpp"
#include "fixtures.hpp"

using namespace baortho;

namespace {

GridSpec small_grid(double lo, double hi, int res) {
  return GridSpec{{lo, lo}, {hi, hi}, {res, res}};
}

CoordinateChart s2_chart() {
  return CoordinateChart::build(fixtures::s2_data(), fixtures::s2_form());
}

CoordinateChart h2_chart() {
  return CoordinateChart::build(fixtures::h2_data(), fixtures::h2_form());
}

const CheckResult& find_check(const VerificationReport& rep,
                              const std::string& name) {
  for (const auto& c : rep.checks)
    if (c.name == name) return c;
  throw std::runtime_error("check not found: " + name);
}

}  // namespace

TEST_CASE("grid enumeration") {
  const GridSpec g{{0.0, -1.0}, {1.0, 1.0}, {3, 2}};
  CHECK(g.total_points() == 6);
  CHECK(g.point(0) == std::vector<double>{0.0, -1.0});
  CHECK(g.point(2) == std::vector<double>{1.0, -1.0});
  CHECK(g.point(5) == std::vector<double>{1.0, 1.0});
  const GridSpec empty{{0.0, 0.0}, {1.0, 1.0}, {0, 0}};
  CHECK(empty.total_points() == 0);
}

TEST_CASE("quadratic residue identities hold on both charts") {
  for (const auto& chart : {s2_chart(), h2_chart()}) {
    const GridSpec grid = small_grid(-0.9, 0.9, 5);
    for (const auto& c : check_theorem_identities(chart, grid)) {
      CHECK(c.pass);
      CHECK(c.max_residual <= 1e-10);
    }
  }
}

TEST_CASE("perturbing a Q-residue breaks the identities measurably") {
  const SpectralData sd = fixtures::s2_data();
  const OneFormSpec om = fixtures::s2_form();
  auto [form, rd] = normalize_form(sd, om, extract_residue_data(sd, om));
  rd.A[0] += 1e-3;
  const CoordinateChart chart(sd, form, rd);
  const GridSpec grid = small_grid(0.0, 3.0, 4);
  const auto checks = check_theorem_identities(chart, grid);
  CHECK(!checks[0].pass);

  // The square-sum identity is linear in A, so the residual is exactly
  // psi(Q_1)^2 * 1e-3 at each point.
  const BASolver solver(sd);
  double expected = 0.0;
  for (long p = 0; p < grid.total_points(); ++p) {
    const Complex psi1 =
        solver.eval_psi(solver.solve(grid.point(p)), sd.Q[0]);
    expected = std::max(expected, std::abs(psi1 * psi1) * 1e-3);
  }
  CHECK(checks[0].max_residual == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("embedding, orthogonality and Lame consistency") {
  for (const auto& chart : {s2_chart(), h2_chart()}) {
    const GridSpec grid = small_grid(-0.8, 0.8, 5);
    const auto checks = check_embedding(chart, grid);
    REQUIRE(checks.size() == 3);
    for (const auto& c : checks) CHECK(c.pass);
  }
}

TEST_CASE("reality and gluing across the nodes") {
  const GridSpec grid = small_grid(-0.7, 0.7, 4);
  CHECK(check_reality(s2_chart(), grid).pass);
  CHECK(check_reality(h2_chart(), grid).pass);
  CHECK(check_gluing(s2_chart(), grid).pass);
  CHECK(check_gluing(h2_chart(), grid).pass);
}

TEST_CASE("curved Lame system on coarse grids") {
  {
    const auto checks = check_lame_system(s2_chart(), small_grid(0.3, 1.2, 4));
    CHECK(checks[0].note.find("vacuous") != std::string::npos);
    CHECK(checks[1].pass);
    CHECK(checks[1].max_residual <= 1e-5);
  }
  {
    const auto checks = check_lame_system(h2_chart(), small_grid(-0.4, 0.4, 4));
    CHECK(checks[1].pass);
  }
}

TEST_CASE("Lame system discriminates the curvature sign") {
  const CoordinateChart chart = s2_chart();
  const GridSpec grid = small_grid(0.4, 0.8, 2);
  const auto wrong = check_lame_system(chart, grid, -1);
  CHECK(!wrong[1].pass);
  // Residual is 2 |H_1 H_2| up to stencil error; H_1 = 1/sqrt(3).
  const double u0[2] = {grid.lo[0], grid.lo[1]};
  const auto H = chart.lame(u0);
  CHECK(wrong[1].max_residual > H[0] * H[1]);
}

TEST_CASE("Gauss curvature of both charts") {
  CHECK(check_gauss_curvature(s2_chart(), small_grid(0.3, 1.5, 5)).pass);
  CHECK(check_gauss_curvature(h2_chart(), small_grid(-0.4, 0.4, 5)).pass);
}

TEST_CASE("curvature stencil self test on the round metric") {
  // ds^2 = du^2 + sin(u)^2 dv^2 has curvature +1.
  auto H1 = [](double, double) { return 1.0; };
  auto H2 = [](double u, double) { return std::sin(u); };
  const GridSpec grid{{0.4, 0.0}, {2.6, 1.0}, {8, 4}};
  const CheckResult r = check_gauss_curvature_metric(H1, H2, 1.0, grid);
  CHECK(r.pass);
  CHECK(r.max_residual <= 1e-8);

  const CheckResult wrong = check_gauss_curvature_metric(H1, H2, -1.0, grid);
  CHECK(!wrong.pass);
  CHECK(wrong.max_residual > 1.9);
}

TEST_CASE("degenerate grid points are excluded and reported") {
  // The spherical H_2 vanishes along u - v = sqrt(3) pi / 4.
  const double kink = std::numbers::sqrt3 * std::numbers::pi / 4.0;
  const GridSpec grid{{kink, 0.0}, {kink + 0.6, 0.0}, {2, 1}};
  const CheckResult r = check_gauss_curvature(s2_chart(), grid);
  CHECK(r.note.find("excluded") != std::string::npos);
}

TEST_CASE("regression against the closed forms") {
  const GridSpec s2_grid{{0.0, 0.0}, {2.0 * std::numbers::pi, 2.0 * std::numbers::pi}, {8, 8}};
  const CheckResult s2 = regression_against_reference(s2_chart(), ReferenceChart::S2, s2_grid);
  CHECK(s2.pass);
  CHECK(s2.max_residual <= 1e-9);

  const GridSpec h2_grid{{-1.0, -1.0}, {1.0, 1.0}, {8, 8}};
  const CheckResult h2 = regression_against_reference(h2_chart(), ReferenceChart::H2, h2_grid);
  CHECK(h2.pass);

  CHECK(metric_regression_against_reference(s2_chart(), ReferenceChart::S2, s2_grid).pass);
  CHECK(metric_regression_against_reference(h2_chart(), ReferenceChart::H2, h2_grid).pass);
}

TEST_CASE("a sign-flipped chart would be caught by the regression") {
  const CoordinateChart chart = s2_chart();
  const GridSpec grid = small_grid(0.0, 2.0, 4);
  double worst = 0.0;
  for (long p = 0; p < grid.total_points(); ++p) {
    const auto u = grid.point(p);
    const auto x = chart.position(u);
    const auto ref = reference_position(ReferenceChart::S2, u[0], u[1]);
    for (size_t k = 0; k < x.size(); ++k)
      worst = std::max(worst, std::abs(-x[k] - ref[k]));
  }
  CHECK(worst > 0.5);
}

TEST_CASE("a chart with the essential singularity at a finite point") {
  // No closed form here; the construction's own identities are the oracle.
  const SpectralData sd = fixtures::s2_finite_p_data();
  const OneFormSpec om = fixtures::s2_finite_p_form();
  CHECK(validate(sd).ok());
  CHECK(check_divisor(sd, om).ok());

  const ResidueData raw = extract_residue_data(sd, om);
  CHECK(std::abs(raw.A[0] - 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(raw.A[1] - 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(raw.A[2] - 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(raw.B + 1.0) < 1e-12);
  CHECK(std::abs(raw.C[0] - 3.0) < 1e-12);

  const CoordinateChart chart = CoordinateChart::build(sd, om);
  const double origin[2] = {0.0, 0.0};
  for (double x : chart.position(origin))
    CHECK(std::abs(x - fixtures::kMu) < 1e-12);

  const GridSpec grid = small_grid(-0.3, 0.3, 4);
  for (const auto& c : check_theorem_identities(chart, grid)) CHECK(c.pass);
  for (const auto& c : check_embedding(chart, grid)) CHECK(c.pass);
  CHECK(check_reality(chart, grid).pass);
  CHECK(check_gluing(chart, grid).pass);
  CHECK(check_gauss_curvature(chart, small_grid(-0.2, 0.2, 3)).pass);
}

TEST_CASE("full verification report is deterministic and passes") {
  const CoordinateChart chart = h2_chart();
  VerifyOptions options;
  options.grid = small_grid(-0.6, 0.6, 4);
  options.curvature_grid = small_grid(-0.3, 0.3, 3);
  options.reference = ReferenceChart::H2;

  const VerificationReport a = run_full_verification(chart, options);
  const VerificationReport b = run_full_verification(chart, options);
  CHECK(a.all_pass());
  CHECK(a.str() == b.str());
  CHECK(a.csv() == b.csv());

  CHECK(find_check(a, "equal-q-residues").advisory);
  CHECK(!find_check(a, "equal-q-residues").pass);  // hyperbolic A is not constant
  CHECK(find_check(a, "normalization-gauge").pass);
  CHECK(find_check(a, "chart-regression").pass);
}
