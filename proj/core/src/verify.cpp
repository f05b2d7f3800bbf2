#include "baortho/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace baortho {

namespace {

constexpr double kDegenerateLame = 1e-3;
// Outer step for differentiating quantities that are themselves finite
// differences; the inner H-derivative stays at the rotation_coefficients
// default of 1e-4.
constexpr double kOuterStep = 1e-2;

double stencil4(const double samples[4], double step) {
  return (samples[0] - 8.0 * samples[1] + 8.0 * samples[2] - samples[3]) /
         (12.0 * step);
}

struct Worst {
  double value = 0.0;
  std::vector<double> at;
  void offer(double v, const std::vector<double>& u) {
    if (v >= value) {
      value = v;
      at = u;
    }
  }
};

CheckResult make_result(std::string name, const GridSpec& grid, const Worst& w,
                        double threshold, std::string note = {}) {
  CheckResult r;
  r.name = std::move(name);
  r.grid = grid.str();
  r.max_residual = w.value;
  r.worst_point = w.at;
  r.threshold = threshold;
  r.pass = w.value <= threshold;
  r.note = std::move(note);
  return r;
}

}  // namespace

long GridSpec::total_points() const {
  long total = 1;
  for (int r : res) total *= std::max(0, r);
  return total;
}

std::vector<double> GridSpec::point(long flat_index) const {
  std::vector<double> u(res.size());
  for (size_t i = 0; i < res.size(); ++i) {
    const int r = std::max(1, res[i]);
    const long idx = flat_index % r;
    flat_index /= r;
    u[i] = r == 1 ? lo[i] : lo[i] + static_cast<double>(idx) * (hi[i] - lo[i]) /
                                        static_cast<double>(r - 1);
  }
  return u;
}

std::string GridSpec::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < res.size(); ++i) os << (i ? "x" : "") << res[i];
  os << " over ";
  for (size_t i = 0; i < res.size(); ++i)
    os << (i ? "x" : "") << "[" << lo[i] << "," << hi[i] << "]";
  return os.str();
}

bool VerificationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.advisory && !c.pass) return false;
  return true;
}

std::string VerificationReport::str() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "PASS" : (c.advisory ? "INFO" : "FAIL")) << "  " << c.name
       << ": max residual " << c.max_residual << " (threshold " << c.threshold
       << ")";
    if (!c.worst_point.empty()) {
      os << " worst at (";
      for (size_t i = 0; i < c.worst_point.size(); ++i)
        os << (i ? ", " : "") << c.worst_point[i];
      os << ")";
    }
    os << " on " << c.grid;
    if (c.advisory) os << " [advisory]";
    if (!c.note.empty()) os << " -- " << c.note;
    os << "\n";
  }
  return os.str();
}

std::string VerificationReport::csv() const {
  std::ostringstream os;
  os << "check,grid,max_residual,threshold,pass,advisory,worst_point\n";
  for (const auto& c : checks) {
    os << c.name << "," << '"' << c.grid << '"' << "," << c.max_residual << ","
       << c.threshold << "," << (c.pass ? 1 : 0) << "," << (c.advisory ? 1 : 0)
       << ",\"";
    for (size_t i = 0; i < c.worst_point.size(); ++i)
      os << (i ? " " : "") << c.worst_point[i];
    os << "\"\n";
  }
  return os.str();
}

std::vector<CheckResult> check_theorem_identities(const CoordinateChart& chart,
                                                  const GridSpec& grid) {
  const BASolver& solver = chart.solver();
  const SpectralData& sd = solver.data();
  const ResidueData& rd = chart.residues();
  const double h2B = sd.h * sd.h * rd.B;

  Worst sum_w, mixed_w, square_w;
  for (long p = 0; p < grid.total_points(); ++p) {
    const std::vector<double> u = grid.point(p);
    const BASolution sol = solver.solve(u);

    std::vector<Complex> psi(sd.Q.size());
    std::vector<std::vector<Complex>> dpsi(
        static_cast<size_t>(sd.n), std::vector<Complex>(sd.Q.size()));
    for (size_t k = 0; k < sd.Q.size(); ++k) {
      psi[k] = solver.eval_psi(sol, sd.Q[k]);
      for (int i = 0; i < sd.n; ++i)
        dpsi[static_cast<size_t>(i)][k] = solver.eval_psi_derivative(sol, i, sd.Q[k]);
    }

    Complex acc(0.0);
    for (size_t k = 0; k < sd.Q.size(); ++k) acc += psi[k] * psi[k] * rd.A[k];
    sum_w.offer(std::abs(acc + h2B), u);

    for (int i = 0; i < sd.n; ++i) {
      for (int j = i + 1; j < sd.n; ++j) {
        Complex m(0.0);
        for (size_t k = 0; k < sd.Q.size(); ++k)
          m += dpsi[static_cast<size_t>(i)][k] * dpsi[static_cast<size_t>(j)][k] *
               rd.A[k];
        mixed_w.offer(std::abs(m), u);
      }
    }

    for (int i = 0; i < sd.n; ++i) {
      Complex s(0.0);
      for (size_t k = 0; k < sd.Q.size(); ++k)
        s += dpsi[static_cast<size_t>(i)][k] * dpsi[static_cast<size_t>(i)][k] *
             rd.A[k];
      const Complex f = sol.leading[static_cast<size_t>(i)];
      square_w.offer(std::abs(s - rd.C[static_cast<size_t>(i)] * f * f), u);
    }
  }

  std::vector<CheckResult> out;
  out.push_back(make_result("psi-square-sum", grid, sum_w, kAlgebraicTol));
  out.push_back(make_result("psi-mixed-derivative-sum", grid, mixed_w, kAlgebraicTol));
  out.push_back(make_result("psi-derivative-square-sum", grid, square_w, kAlgebraicTol));
  return out;
}

std::vector<CheckResult> check_embedding(const CoordinateChart& chart,
                                         const GridSpec& grid) {
  const std::vector<int>& eps = chart.signature();
  const int n = chart.dim();
  const int K = chart.curvature();

  Worst embed_w, orth_w, lame_w;
  for (long p = 0; p < grid.total_points(); ++p) {
    const std::vector<double> u = grid.point(p);
    const BASolution sol = chart.solver().solve(u);
    const std::vector<double> x = chart.position_from(sol);
    std::vector<std::vector<double>> t(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      auto& row = t[static_cast<size_t>(i)];
      row.resize(x.size());
      for (size_t k = 0; k < x.size(); ++k)
        row[k] = std::sqrt(std::abs(chart.residues().A[k])) *
                 chart.solver().eval_psi_derivative(sol, i, chart.solver().data().Q[k]).real();
    }

    double norm = 0.0;
    for (size_t k = 0; k < x.size(); ++k) norm += eps[k] * x[k] * x[k];
    embed_w.offer(std::abs(norm - 1.0), u);

    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double dot = 0.0;
        for (size_t k = 0; k < x.size(); ++k)
          dot += eps[k] * t[static_cast<size_t>(i)][k] * t[static_cast<size_t>(j)][k];
        orth_w.offer(std::abs(dot), u);
      }

    const std::vector<double> H = chart.lame_from(sol);
    for (int i = 0; i < n; ++i) {
      double sq = 0.0;
      for (size_t k = 0; k < x.size(); ++k)
        sq += eps[k] * t[static_cast<size_t>(i)][k] * t[static_cast<size_t>(i)][k];
      lame_w.offer(std::abs(sq - K * H[static_cast<size_t>(i)] * H[static_cast<size_t>(i)]), u);
    }
  }

  std::vector<CheckResult> out;
  out.push_back(make_result("embedding-norm", grid, embed_w, kAlgebraicTol));
  out.push_back(make_result("tangent-orthogonality", grid, orth_w, kOrthogonalityTol));
  out.push_back(make_result("lame-consistency", grid, lame_w, kOrthogonalityTol));
  return out;
}

CheckResult check_reality(const CoordinateChart& chart, const GridSpec& grid) {
  const BASolver& solver = chart.solver();
  Worst w;
  for (long p = 0; p < grid.total_points(); ++p) {
    const std::vector<double> u = grid.point(p);
    const BASolution sol = solver.solve(u);
    for (const auto& q : solver.data().Q)
      w.offer(std::abs(solver.eval_psi(sol, q).imag()), u);
    for (const auto& f : sol.leading) w.offer(std::abs(f.imag()), u);
  }
  return make_result("psi-reality", grid, w, kAlgebraicTol);
}

CheckResult check_gluing(const CoordinateChart& chart, const GridSpec& grid) {
  const BASolver& solver = chart.solver();
  Worst w;
  for (long p = 0; p < grid.total_points(); ++p) {
    const std::vector<double> u = grid.point(p);
    const BASolution sol = solver.solve(u);
    for (const auto& gp : solver.data().glue)
      w.offer(std::abs(solver.eval_psi(sol, gp.first) - solver.eval_psi(sol, gp.second)), u);
  }
  return make_result("node-gluing", grid, w, kAlgebraicTol);
}

namespace {

// beta_ij(u) through the chart, one row per differentiation direction.
std::vector<std::vector<double>> beta_at(const CoordinateChart& chart,
                                         std::vector<double> u) {
  return chart.rotation_coefficients(u);
}

// d beta_ij / d u_k by a 4th-order stencil at the outer step.
double dbeta(const CoordinateChart& chart, const std::vector<double>& u, int k,
             int i, int j) {
  double samples[4];
  const double offsets[4] = {-2.0, -1.0, 1.0, 2.0};
  std::vector<double> up = u;
  for (int s = 0; s < 4; ++s) {
    up[static_cast<size_t>(k)] = u[static_cast<size_t>(k)] + offsets[s] * kOuterStep;
    samples[s] = beta_at(chart, up)[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  return stencil4(samples, kOuterStep);
}

}  // namespace

std::vector<CheckResult> check_lame_system(const CoordinateChart& chart,
                                           const GridSpec& grid,
                                           int curvature_override) {
  const int n = chart.dim();
  const int K = curvature_override != 0 ? curvature_override : chart.curvature();
  std::vector<CheckResult> out;

  if (n < 2) {
    CheckResult r;
    r.name = "lame-system-curvature";
    r.grid = grid.str();
    r.pass = true;
    r.note = "skipped: needs n >= 2";
    out.push_back(r);
    return out;
  }

  Worst comm_w, curv_w;
  for (long p = 0; p < grid.total_points(); ++p) {
    const std::vector<double> u = grid.point(p);
    const std::vector<double> H = chart.lame(u);
    const auto beta = beta_at(chart, u);

    if (n >= 3) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          for (int k = 0; k < n; ++k) {
            if (k == i || k == j) continue;
            const double lhs = dbeta(chart, u, k, i, j);
            const double rhs = beta[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                               beta[static_cast<size_t>(k)][static_cast<size_t>(j)];
            comm_w.offer(std::abs(lhs - rhs), u);
          }
        }
    }

    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double acc = dbeta(chart, u, i, i, j) + dbeta(chart, u, j, j, i);
        for (int m = 0; m < n; ++m) {
          if (m == i || m == j) continue;
          acc += beta[static_cast<size_t>(m)][static_cast<size_t>(i)] *
                 beta[static_cast<size_t>(m)][static_cast<size_t>(j)];
        }
        acc += K * H[static_cast<size_t>(i)] * H[static_cast<size_t>(j)];
        curv_w.offer(std::abs(acc), u);
      }
  }

  if (n >= 3) {
    out.push_back(make_result("lame-system-commutator", grid, comm_w, kDifferentialTol));
  } else {
    CheckResult r;
    r.name = "lame-system-commutator";
    r.grid = grid.str();
    r.pass = true;
    r.note = "skipped: vacuous for n = 2 (no triple of distinct indices)";
    out.push_back(r);
  }
  out.push_back(make_result("lame-system-curvature", grid, curv_w, kDifferentialTol));
  return out;
}

namespace {

CheckResult curvature_stencil(const std::function<double(double, double)>& H1,
                              const std::function<double(double, double)>& H2,
                              double target, const GridSpec& grid,
                              const std::string& name, double inner_step) {
  auto dH = [&](const std::function<double(double, double)>& H, int dir, double a,
                double b) {
    double s[4];
    const double offsets[4] = {-2.0, -1.0, 1.0, 2.0};
    for (int k = 0; k < 4; ++k) {
      const double da = dir == 0 ? offsets[k] * inner_step : 0.0;
      const double db = dir == 1 ? offsets[k] * inner_step : 0.0;
      s[k] = H(a + da, b + db);
    }
    return stencil4(s, inner_step);
  };
  // g1 = (d_u H2)/H1 and g2 = (d_v H1)/H2, differentiated once more.
  auto g1 = [&](double a, double b) { return dH(H2, 0, a, b) / H1(a, b); };
  auto g2 = [&](double a, double b) { return dH(H1, 1, a, b) / H2(a, b); };

  Worst w;
  long excluded = 0;
  for (long p = 0; p < grid.total_points(); ++p) {
    const std::vector<double> u = grid.point(p);
    const double h1 = H1(u[0], u[1]);
    const double h2 = H2(u[0], u[1]);
    if (!(h1 > kDegenerateLame) || !(h2 > kDegenerateLame)) {
      ++excluded;
      continue;
    }
    double s1[4], s2[4];
    const double offsets[4] = {-2.0, -1.0, 1.0, 2.0};
    for (int k = 0; k < 4; ++k) {
      s1[k] = g1(u[0] + offsets[k] * kOuterStep, u[1]);
      s2[k] = g2(u[0], u[1] + offsets[k] * kOuterStep);
    }
    const double K = -(stencil4(s1, kOuterStep) + stencil4(s2, kOuterStep)) / (h1 * h2);
    w.offer(std::abs(K - target), u);
  }

  std::string note;
  if (excluded > 0)
    note = std::to_string(excluded) + " grid points excluded (degenerate H_i)";
  return make_result(name, grid, w, kDifferentialTol, note);
}

}  // namespace

CheckResult check_gauss_curvature(const CoordinateChart& chart,
                                  const GridSpec& grid) {
  if (chart.dim() != 2)
    throw std::invalid_argument("gauss curvature check needs n = 2");
  auto H1 = [&chart](double a, double b) {
    const double u[2] = {a, b};
    return chart.lame(u)[0];
  };
  auto H2 = [&chart](double a, double b) {
    const double u[2] = {a, b};
    return chart.lame(u)[1];
  };
  return curvature_stencil(H1, H2, chart.curvature(), grid, "gauss-curvature",
                           1e-4);
}

CheckResult check_gauss_curvature_metric(
    const std::function<double(double, double)>& H1,
    const std::function<double(double, double)>& H2, double target,
    const GridSpec& grid, const std::string& name) {
  return curvature_stencil(H1, H2, target, grid, name, 1e-4);
}

std::optional<ReferenceChart> reference_chart_from_string(const std::string& s) {
  if (s == "s2" || s == "S2") return ReferenceChart::S2;
  if (s == "h2" || s == "H2") return ReferenceChart::H2;
  return std::nullopt;
}

std::vector<double> reference_position(ReferenceChart which, double u, double v) {
  const double s3 = std::numbers::sqrt3;
  if (which == ReferenceChart::S2) {
    const double th = (u - v) / s3;
    const double x1 = (std::cos(th) + std::sin(th)) / s3;
    const double x2 =
        ((3.0 + s3) * std::cos(th + v) + 3.0 * (-1.0 + s3) * std::cos(th - v) -
         3.0 * (1.0 + s3) * std::sin(th + v) + (-3.0 + s3) * std::sin(th - v)) /
        12.0;
    const double x3 =
        (3.0 * (1.0 + s3) * std::cos(th + v) + (-3.0 + s3) * std::cos(th - v) +
         (3.0 + s3) * std::sin(th + v) - 3.0 * (-1.0 + s3) * std::sin(th - v)) /
        12.0;
    return {x1, x2, x3};
  }
  const double em = std::exp(-u - v);
  const double ep = std::exp(u + v);
  const double x1 = (em + (2.0 + s3) * ep) / (1.0 + s3);
  const double x2 = ((-2.0 * em + (6.0 + 4.0 * s3) * ep) * std::cos(v) -
                     2.0 * (s3 * em + (2.0 + s3) * ep) * std::sin(v)) /
                    (4.0 * (1.0 + s3));
  const double x3 = (((3.0 + s3) * em + (5.0 + 3.0 * s3) * ep) * std::cos(v) +
                     ((-1.0 - s3) * em + (9.0 + 5.0 * s3) * ep) * std::sin(v)) /
                    (4.0 * (2.0 + s3));
  return {x1, x2, x3};
}

std::vector<double> reference_metric_squared(ReferenceChart which, double u,
                                             double v) {
  const double s3 = std::numbers::sqrt3;
  if (which == ReferenceChart::S2) {
    return {1.0 / 3.0, (1.0 - std::sin(2.0 * (u - v) / s3)) / 3.0};
  }
  const double h2 = ((7.0 + 4.0 * s3) * std::exp(-2.0 * (u + v)) +
                     (97.0 + 56.0 * s3) * std::exp(2.0 * (u + v))) /
                        (52.0 + 30.0 * s3) -
                    1.0;
  return {1.0, h2};
}

CheckResult regression_against_reference(const CoordinateChart& chart,
                                         ReferenceChart which,
                                         const GridSpec& grid) {
  Worst w;
  for (long p = 0; p < grid.total_points(); ++p) {
    const std::vector<double> u = grid.point(p);
    const std::vector<double> x = chart.position(u);
    const std::vector<double> ref = reference_position(which, u[0], u[1]);
    for (size_t k = 0; k < x.size(); ++k) w.offer(std::abs(x[k] - ref[k]), u);
  }
  return make_result("chart-regression", grid, w, kRegressionTol);
}

CheckResult metric_regression_against_reference(const CoordinateChart& chart,
                                                ReferenceChart which,
                                                const GridSpec& grid) {
  Worst w;
  for (long p = 0; p < grid.total_points(); ++p) {
    const std::vector<double> u = grid.point(p);
    const std::vector<double> H = chart.lame(u);
    const std::vector<double> ref = reference_metric_squared(which, u[0], u[1]);
    for (size_t i = 0; i < H.size(); ++i)
      w.offer(std::abs(H[i] * H[i] - ref[i]), u);
  }
  return make_result("metric-regression", grid, w, kRegressionTol);
}

VerificationReport run_full_verification(const CoordinateChart& chart,
                                         const VerifyOptions& options) {
  VerificationReport rep;
  const SpectralData& sd = chart.solver().data();
  const GridSpec& grid = options.grid;
  const GridSpec curvature_grid = options.curvature_grid.value_or(grid);

  {
    Worst w;
    const auto residuals = check_glue_residues(sd, chart.form());
    for (size_t j = 0; j < residuals.size(); ++j) w.offer(residuals[j], {});
    rep.checks.push_back(make_result("node-residue-matching", grid, w, kGlueResidueTol));
    rep.checks.back().grid = "per node";
  }
  {
    CheckResult r;
    r.name = "equal-q-residues";
    r.grid = "residue data";
    r.max_residual = check_equal_q_residues(chart.residues());
    r.threshold = kAlgebraicTol;
    r.pass = r.max_residual <= r.threshold;
    r.advisory = true;
    r.note = "extra condition used by the spherical example; not required in general";
    rep.checks.push_back(r);
  }
  {
    CheckResult r;
    r.name = "normalization-gauge";
    r.grid = "residue data";
    r.max_residual = std::abs(sd.h * sd.h * chart.residues().B + 1.0);
    r.threshold = 1e-12;
    r.pass = r.max_residual <= r.threshold;
    rep.checks.push_back(r);
  }

  for (auto& c : check_theorem_identities(chart, grid)) rep.checks.push_back(std::move(c));
  for (auto& c : check_embedding(chart, grid)) rep.checks.push_back(std::move(c));
  rep.checks.push_back(check_reality(chart, grid));
  rep.checks.push_back(check_gluing(chart, grid));
  for (auto& c : check_lame_system(chart, curvature_grid)) rep.checks.push_back(std::move(c));

  if (chart.dim() == 2) {
    rep.checks.push_back(check_gauss_curvature(chart, curvature_grid));
  } else {
    CheckResult r;
    r.name = "gauss-curvature";
    r.grid = curvature_grid.str();
    r.pass = true;
    r.note = "skipped: implemented for n = 2 only";
    rep.checks.push_back(r);
  }

  if (options.reference) {
    rep.checks.push_back(regression_against_reference(chart, *options.reference, grid));
    rep.checks.push_back(metric_regression_against_reference(chart, *options.reference, grid));
  }
  return rep;
}

}  // namespace baortho
