#pragma once

// The orthogonal coordinate chart on S^n or H^n assembled from a solved
// pipeline: x^i(u) = sqrt(|A_i|) psi(u, Q_i), Lame coefficients
// H_i = sqrt(K C_i f_i^2), and rotation coefficients beta_ij.

#include <memory>
#include <span>
#include <vector>

#include "baortho/ba_solver.hpp"
#include "baortho/one_form.hpp"

namespace baortho {

class CoordinateChart {
 public:
  /// Runs the full validation chain (spectral data, divisor, node residues),
  /// extracts and normalizes the residue data, checks the curvature sign
  /// pattern, and closes over a solver. Throws std::invalid_argument with the
  /// offending report on any failure.
  static CoordinateChart build(const SpectralData& sd, const OneFormSpec& om);

  /// Assembles a chart from already-normalized pieces. Requires h^2 B = -1
  /// and the sign pattern of A matching the curvature target.
  CoordinateChart(SpectralData sd, OneFormSpec om, ResidueData rd);

  int dim() const { return solver_->data().n; }
  int ambient_dim() const { return dim() + 1; }
  int curvature() const { return solver_->data().curvature_target; }
  /// Signs eps_k of the quadratic constraint sum_k eps_k (x^k)^2 = 1:
  /// all +1 on the sphere, (+1, -1, ..., -1) on the hyperboloid.
  const std::vector<int>& signature() const { return signature_; }

  const ResidueData& residues() const { return rd_; }
  const OneFormSpec& form() const { return om_; }
  const BASolver& solver() const { return *solver_; }

  /// x(u) in R^{n+1}.
  std::vector<double> position(std::span<const double> u) const;
  /// Exact partials: tangents[i][k] = d x^k / d u_i.
  std::vector<std::vector<double>> tangents(std::span<const double> u) const;
  /// Lame coefficients H_i(u) > 0; throws std::runtime_error when the sign
  /// condition K C_i f_i^2 > 0 fails at u.
  std::vector<double> lame(std::span<const double> u) const;
  /// beta[i][j] = (d H_j / d u_i) / H_i for i != j (diagonal zero), with the
  /// H derivative taken by 4th-order central differences.
  std::vector<std::vector<double>> rotation_coefficients(
      std::span<const double> u, double step = 1e-4) const;

  std::vector<double> position_from(const BASolution& sol) const;
  std::vector<double> lame_from(const BASolution& sol) const;

 private:
  OneFormSpec om_;
  ResidueData rd_;
  std::vector<int> signature_;
  std::shared_ptr<const BASolver> solver_;
};

}  // namespace baortho
