#pragma once

// Builds and solves, for each parameter point u, the square linear system cut
// out by the node gluing identities, the normalization psi(r) = h and the
// prescribed zeros psi(r_i) = 0. The ansatz on component i is an exponential
// prefactor (when the component carries an essential-singularity point P_j)
// times a rational part c_{i,0} + sum_k c_{i,k}/(z - gamma_{i,k}).

#include <span>
#include <vector>

#include "baortho/spectral_data.hpp"

namespace baortho {

struct LinearSystem {
  std::vector<std::vector<Complex>> rows;  // square: one row per condition
  std::vector<Complex> rhs;
};

struct BASolution {
  std::vector<double> u;
  std::vector<Complex> coeffs;                  // unknowns in layout order
  std::vector<std::vector<Complex>> du_coeffs;  // per direction, same layout
  std::vector<Complex> leading;                 // f_j(u), one per P_j
  double condition_number = 0.0;
  double residual = 0.0;
};

class BASolver {
 public:
  /// Precomputes the unknown layout. Throws std::invalid_argument when the
  /// counting identity fails, a component carries more than one P point, or a
  /// gamma point collides with an evaluation point of the system.
  explicit BASolver(SpectralData sd);

  const SpectralData& data() const { return sd_; }
  int unknown_count() const { return static_cast<int>(columns_.size()); }

  /// Matrix and right-hand side of the gluing/normalization/zero conditions
  /// at the parameter point u.
  LinearSystem assemble_system(std::span<const double> u) const;

  /// Dense LU solve with partial pivoting; the condition number estimate and
  /// the back-substitution residual are recorded on the solution. Directional
  /// derivative coefficients solve A c' = -A' c with A' differentiated
  /// analytically through the exponential prefactors.
  BASolution solve(std::span<const double> u) const;

  /// psi(u, S). S must not be one of the P points (essential singularity) or
  /// a gamma point (pole of the ansatz); both raise std::domain_error.
  Complex eval_psi(const BASolution& sol, const PointOnCurve& S) const;

  /// Exact partial derivative of psi with respect to u_direction at S.
  Complex eval_psi_derivative(const BASolution& sol, int direction,
                              const PointOnCurve& S) const;

  /// f_j derivative with respect to u_direction.
  Complex leading_derivative(const BASolution& sol, int direction, int j) const;

 private:
  struct Column {
    int component;
    bool constant;      // basis function 1, otherwise 1/(z - gamma)
    Complex gamma;      // pole location when !constant
  };

  // Exponential structure of a component: which u-direction it carries and
  // whether the essential singularity sits at infinity or at zero.
  struct Exponential {
    int direction = -1;  // -1: no P point on this component
    bool at_infinity = true;
  };

  Complex prefactor(int component, const ProjectivePoint& z,
                    std::span<const double> u) const;
  // d(log prefactor)/du_direction at z; zero off the carrying component.
  Complex prefactor_rate(int component, int direction,
                         const ProjectivePoint& z) const;
  Complex basis_value(const Column& col, const ProjectivePoint& z) const;
  Complex rational_part(std::span<const Complex> coeffs, int component,
                        const ProjectivePoint& z) const;

  SpectralData sd_;
  std::vector<Column> columns_;
  std::vector<Exponential> exponentials_;  // per component
};

}  // namespace baortho
