#include "baortho/chart.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace baortho {

namespace {

constexpr double kNormalizationTol = 1e-12;

bool sign_pattern_matches(const std::vector<double>& A, int curvature) {
  if (A.empty()) return false;
  if (curvature == +1) {
    for (double a : A)
      if (!(a > 0.0)) return false;
    return true;
  }
  if (!(A.front() > 0.0)) return false;
  for (size_t i = 1; i < A.size(); ++i)
    if (!(A[i] < 0.0)) return false;
  return true;
}

}  // namespace

CoordinateChart CoordinateChart::build(const SpectralData& sd,
                                       const OneFormSpec& om) {
  const ValidationReport sd_report = validate(sd);
  if (!sd_report.ok())
    throw std::invalid_argument("spectral data invalid:\n" + sd_report.str());
  const ValidationReport div_report = check_divisor(sd, om);
  if (!div_report.ok())
    throw std::invalid_argument("divisor conditions violated:\n" + div_report.str());
  for (double r : check_glue_residues(sd, om)) {
    if (r > kGlueResidueTol) {
      std::ostringstream os;
      os << "node residue matching fails: residual " << r;
      throw std::invalid_argument(os.str());
    }
  }
  const ResidueData raw = extract_residue_data(sd, om);
  auto [normalized_form, normalized_rd] = normalize_form(sd, om, raw);
  return CoordinateChart(sd, std::move(normalized_form), std::move(normalized_rd));
}

CoordinateChart::CoordinateChart(SpectralData sd, OneFormSpec om, ResidueData rd)
    : om_(std::move(om)), rd_(std::move(rd)) {
  const double gauge = sd.h * sd.h * rd_.B;
  if (std::abs(gauge + 1.0) > kNormalizationTol) {
    std::ostringstream os;
    os << "residue data is not normalized: h^2 B = " << gauge << " (want -1)";
    throw std::invalid_argument(os.str());
  }
  if (!sign_pattern_matches(rd_.A, sd.curvature_target)) {
    const std::string hint = sign_pattern_matches(rd_.A, -sd.curvature_target)
                                 ? "data realizes the other curvature sign"
                                 : "data realizes no admissible curvature sign";
    throw std::invalid_argument("Q-residue sign pattern mismatch: " + hint);
  }
  signature_.assign(rd_.A.size(), 1);
  for (size_t i = 0; i < rd_.A.size(); ++i)
    if (rd_.A[i] < 0.0) signature_[i] = -1;
  solver_ = std::make_shared<const BASolver>(std::move(sd));
}

std::vector<double> CoordinateChart::position(std::span<const double> u) const {
  return position_from(solver_->solve(u));
}

std::vector<double> CoordinateChart::position_from(const BASolution& sol) const {
  const auto& sd = solver_->data();
  std::vector<double> x(sd.Q.size());
  for (size_t k = 0; k < sd.Q.size(); ++k) {
    const Complex psi = solver_->eval_psi(sol, sd.Q[k]);
    x[k] = std::sqrt(std::abs(rd_.A[k])) * psi.real();
  }
  return x;
}

std::vector<std::vector<double>> CoordinateChart::tangents(
    std::span<const double> u) const {
  const auto& sd = solver_->data();
  const BASolution sol = solver_->solve(u);
  std::vector<std::vector<double>> t(static_cast<size_t>(sd.n));
  for (int i = 0; i < sd.n; ++i) {
    auto& row = t[static_cast<size_t>(i)];
    row.resize(sd.Q.size());
    for (size_t k = 0; k < sd.Q.size(); ++k) {
      const Complex dpsi = solver_->eval_psi_derivative(sol, i, sd.Q[k]);
      row[k] = std::sqrt(std::abs(rd_.A[k])) * dpsi.real();
    }
  }
  return t;
}

std::vector<double> CoordinateChart::lame(std::span<const double> u) const {
  return lame_from(solver_->solve(u));
}

std::vector<double> CoordinateChart::lame_from(const BASolution& sol) const {
  const auto& sd = solver_->data();
  std::vector<double> H(static_cast<size_t>(sd.n));
  for (int i = 0; i < sd.n; ++i) {
    const double f = sol.leading[static_cast<size_t>(i)].real();
    const double arg = sd.curvature_target * rd_.C[static_cast<size_t>(i)] * f * f;
    if (!(arg > 0.0)) {
      std::ostringstream os;
      os << "Lame sign condition violated for H_" << i + 1 << " at u = (";
      for (size_t k = 0; k < sol.u.size(); ++k) os << (k ? ", " : "") << sol.u[k];
      os << "): K C_i f_i^2 = " << arg;
      throw std::runtime_error(os.str());
    }
    H[static_cast<size_t>(i)] = std::sqrt(arg);
  }
  return H;
}

std::vector<std::vector<double>> CoordinateChart::rotation_coefficients(
    std::span<const double> u, double step) const {
  const auto& sd = solver_->data();
  const std::vector<double> H0 = lame(u);
  std::vector<std::vector<double>> beta(
      static_cast<size_t>(sd.n), std::vector<double>(static_cast<size_t>(sd.n), 0.0));
  std::vector<double> up(u.begin(), u.end());
  for (int i = 0; i < sd.n; ++i) {
    // 4th-order central stencil in direction i for every H_j at once.
    std::vector<std::vector<double>> samples;
    const double offsets[4] = {-2.0, -1.0, 1.0, 2.0};
    for (double o : offsets) {
      up[static_cast<size_t>(i)] = u[static_cast<size_t>(i)] + o * step;
      samples.push_back(lame(up));
    }
    up[static_cast<size_t>(i)] = u[static_cast<size_t>(i)];
    for (int j = 0; j < sd.n; ++j) {
      if (j == i) continue;
      const double dHj =
          (samples[0][static_cast<size_t>(j)] - 8.0 * samples[1][static_cast<size_t>(j)] +
           8.0 * samples[2][static_cast<size_t>(j)] - samples[3][static_cast<size_t>(j)]) /
          (12.0 * step);
      beta[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          dHj / H0[static_cast<size_t>(i)];
    }
  }
  return beta;
}

}  // namespace baortho
