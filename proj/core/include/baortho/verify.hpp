#pragma once

// Numerical verification harness: the quadratic residue identities of the
// construction, embedding/orthogonality of the chart, the curved Lame system,
// Gaussian curvature by nested finite-difference stencils, and regression
// against the known closed-form charts.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "baortho/chart.hpp"

namespace baortho {

/// Uniform rectangular grid: res[i] samples of u_i between lo[i] and hi[i].
struct GridSpec {
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<int> res;

  int dim() const { return static_cast<int>(res.size()); }
  long total_points() const;
  std::vector<double> point(long flat_index) const;
  std::string str() const;
};

struct CheckResult {
  std::string name;
  std::string grid;
  double max_residual = 0.0;
  std::vector<double> worst_point;
  double threshold = 0.0;
  bool pass = false;
  bool advisory = false;
  std::string note;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;  // ignores advisory entries
  std::string str() const;
  /// One comma-separated row per check: name,grid,max_residual,threshold,
  /// pass,advisory,worst_point...
  std::string csv() const;
};

// Default thresholds: algebraic (residue-based) identities versus identities
// that go through nested finite differences.
inline constexpr double kAlgebraicTol = 1e-10;
inline constexpr double kOrthogonalityTol = 1e-9;
inline constexpr double kDifferentialTol = 1e-5;
inline constexpr double kRegressionTol = 1e-9;

/// The three quadratic residue identities, evaluated directly from psi, A, B,
/// C and f (not through x): sum psi(Q_k)^2 A_k + h^2 B = 0, the mixed
/// derivative sums vanish, and sum psi_{u_i}(Q_k)^2 A_k = C_i f_i^2.
std::vector<CheckResult> check_theorem_identities(const CoordinateChart& chart,
                                                  const GridSpec& grid);

/// |sum eps (x^k)^2 - 1|, the mixed tangent inner products, and the Lame
/// consistency |sum eps (d_i x^k)^2 - K H_i^2|.
std::vector<CheckResult> check_embedding(const CoordinateChart& chart,
                                         const GridSpec& grid);

/// max |Im psi(u, Q_i)| over the grid.
CheckResult check_reality(const CoordinateChart& chart, const GridSpec& grid);

/// max |psi(first) - psi(second)| over nodes and grid points.
CheckResult check_gluing(const CoordinateChart& chart, const GridSpec& grid);

/// The curved Lame system: d_k beta_ij = beta_ik beta_kj for distinct i,j,k
/// (vacuous for n = 2 and skipped with a note) and
/// d_i beta_ij + d_j beta_ji + sum_m beta_mi beta_mj = -K H_i H_j.
/// curvature_override tests against a curvature other than the chart's own
/// (harness self-tests); 0 means use the chart's target.
std::vector<CheckResult> check_lame_system(const CoordinateChart& chart,
                                           const GridSpec& grid,
                                           int curvature_override = 0);

/// Gaussian curvature of the diagonal metric via nested 4th-order stencils
/// (n = 2 only); grid points where some H_i < 1e-3 are excluded and counted
/// in the note.
CheckResult check_gauss_curvature(const CoordinateChart& chart,
                                  const GridSpec& grid);

/// Same stencil applied to an arbitrary diagonal 2d metric; used for
/// fixtures with known curvature.
CheckResult check_gauss_curvature_metric(
    const std::function<double(double, double)>& H1,
    const std::function<double(double, double)>& H2, double target,
    const GridSpec& grid, const std::string& name = "gauss-curvature-metric");

enum class ReferenceChart { S2, H2 };
std::optional<ReferenceChart> reference_chart_from_string(const std::string& s);

/// Closed-form reference charts and metrics for the two bundled examples.
std::vector<double> reference_position(ReferenceChart which, double u, double v);
std::vector<double> reference_metric_squared(ReferenceChart which, double u,
                                             double v);

/// max componentwise deviation of the computed chart from the closed form.
CheckResult regression_against_reference(const CoordinateChart& chart,
                                         ReferenceChart which,
                                         const GridSpec& grid);
/// max deviation of computed H_i^2 from the closed-form metric coefficients.
CheckResult metric_regression_against_reference(const CoordinateChart& chart,
                                                ReferenceChart which,
                                                const GridSpec& grid);

struct VerifyOptions {
  GridSpec grid;
  std::optional<GridSpec> curvature_grid;  // defaults to grid
  std::optional<ReferenceChart> reference;
};

/// Runs every check (node residues, equal-Q-residue advisory, identities,
/// embedding, reality, gluing, Lame system, curvature, optional regression)
/// and assembles the report.
VerificationReport run_full_verification(const CoordinateChart& chart,
                                         const VerifyOptions& options);

}  // namespace baortho
