#include "baortho/ba_solver.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace baortho {

namespace {

constexpr double kMaxCondition = 1e12;

std::string format_u(std::span<const double> u) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < u.size(); ++i) os << (i ? ", " : "") << u[i];
  os << ")";
  return os.str();
}

}  // namespace

BASolver::BASolver(SpectralData sd) : sd_(std::move(sd)) {
  exponentials_.assign(static_cast<size_t>(sd_.components), Exponential{});
  for (size_t j = 0; j < sd_.P.size(); ++j) {
    const auto& p = sd_.P[j];
    auto& e = exponentials_[static_cast<size_t>(p.component)];
    if (e.direction >= 0)
      throw std::invalid_argument("component " + std::to_string(p.component) +
                                  " carries more than one P point");
    e.direction = static_cast<int>(j);
    e.at_infinity = p.point.is_infinity();
    if (!e.at_infinity && std::abs(p.point.value()) > kRootClusterTol)
      throw std::invalid_argument("P point must be 0 or infinity: " + p.point.str());
  }

  for (int c = 0; c < sd_.components; ++c) {
    columns_.push_back({c, true, Complex(0.0)});
    for (const auto& g : sd_.gamma) {
      if (g.component != c) continue;
      if (g.point.is_infinity())
        throw std::invalid_argument("gamma at infinity is outside the ansatz");
      columns_.push_back({c, false, g.point.value()});
    }
  }

  const int equations = sd_.node_count() + 1 + sd_.zero_count();
  if (static_cast<int>(columns_.size()) != equations) {
    std::ostringstream os;
    os << "unknown count " << columns_.size() << " does not match equation count "
       << equations << " (s + 1 + l)";
    throw std::invalid_argument(os.str());
  }
}

Complex BASolver::prefactor(int component, const ProjectivePoint& z,
                            std::span<const double> u) const {
  const Exponential& e = exponentials_[static_cast<size_t>(component)];
  if (e.direction < 0) return Complex(1.0);
  const double uj = u[static_cast<size_t>(e.direction)];
  if (e.at_infinity) {
    if (z.is_infinity())
      throw std::domain_error("evaluation at the essential singularity");
    return std::exp(uj * z.value());
  }
  if (z.is_infinity()) return Complex(1.0);
  const Complex zv = z.value();
  if (std::abs(zv) <= kRootClusterTol)
    throw std::domain_error("evaluation at the essential singularity");
  return std::exp(uj / zv);
}

Complex BASolver::prefactor_rate(int component, int direction,
                                 const ProjectivePoint& z) const {
  const Exponential& e = exponentials_[static_cast<size_t>(component)];
  if (e.direction != direction) return Complex(0.0);
  if (e.at_infinity) {
    if (z.is_infinity())
      throw std::domain_error("evaluation at the essential singularity");
    return z.value();
  }
  if (z.is_infinity()) return Complex(0.0);
  return Complex(1.0) / z.value();
}

Complex BASolver::basis_value(const Column& col, const ProjectivePoint& z) const {
  if (col.constant) return Complex(1.0);
  if (z.is_infinity()) return Complex(0.0);
  const Complex d = z.value() - col.gamma;
  if (std::abs(d) <= kRootClusterTol * std::max(1.0, std::abs(col.gamma)))
    throw std::invalid_argument("evaluation point collides with a gamma pole at " +
                                ProjectivePoint(col.gamma).str());
  return Complex(1.0) / d;
}

Complex BASolver::rational_part(std::span<const Complex> coeffs, int component,
                                const ProjectivePoint& z) const {
  Complex acc(0.0);
  for (size_t k = 0; k < columns_.size(); ++k) {
    if (columns_[k].component != component) continue;
    acc += coeffs[k] * basis_value(columns_[k], z);
  }
  return acc;
}

LinearSystem BASolver::assemble_system(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != sd_.n)
    throw std::invalid_argument("parameter point has wrong dimension");
  const size_t nun = columns_.size();
  LinearSystem sys;
  sys.rows.reserve(nun);
  sys.rhs.reserve(nun);

  auto evaluation_row = [&](const PointOnCurve& at, double sign,
                            std::vector<Complex>& row) {
    const Complex pre = prefactor(at.component, at.point, u);
    for (size_t k = 0; k < nun; ++k) {
      if (columns_[k].component != at.component) continue;
      row[k] += sign * pre * basis_value(columns_[k], at.point);
    }
  };

  for (const auto& gp : sd_.glue) {
    std::vector<Complex> row(nun, Complex(0.0));
    evaluation_row(gp.first, +1.0, row);
    evaluation_row(gp.second, -1.0, row);
    sys.rows.push_back(std::move(row));
    sys.rhs.push_back(Complex(0.0));
  }
  {
    std::vector<Complex> row(nun, Complex(0.0));
    evaluation_row(sd_.r, +1.0, row);
    sys.rows.push_back(std::move(row));
    sys.rhs.push_back(Complex(sd_.h));
  }
  for (const auto& rz : sd_.r_zeros) {
    std::vector<Complex> row(nun, Complex(0.0));
    evaluation_row(rz, +1.0, row);
    sys.rows.push_back(std::move(row));
    sys.rhs.push_back(Complex(0.0));
  }
  return sys;
}

BASolution BASolver::solve(std::span<const double> u) const {
  const LinearSystem sys = assemble_system(u);
  const int nun = static_cast<int>(columns_.size());

  Eigen::MatrixXcd A(nun, nun);
  Eigen::VectorXcd b(nun);
  for (int i = 0; i < nun; ++i) {
    b(i) = sys.rhs[static_cast<size_t>(i)];
    for (int k = 0; k < nun; ++k)
      A(i, k) = sys.rows[static_cast<size_t>(i)][static_cast<size_t>(k)];
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  const double smin = svd.singularValues()(nun - 1);
  const double smax = svd.singularValues()(0);
  const double cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(cond < kMaxCondition))
    throw std::runtime_error("non-generic divisor at u = " + format_u(u) +
                             " (condition number " + std::to_string(cond) + ")");

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  const Eigen::VectorXcd c = lu.solve(b);

  BASolution sol;
  sol.u.assign(u.begin(), u.end());
  sol.condition_number = cond;
  sol.residual = (A * c - b).cwiseAbs().maxCoeff();
  sol.coeffs.resize(static_cast<size_t>(nun));
  for (int k = 0; k < nun; ++k) sol.coeffs[static_cast<size_t>(k)] = c(k);

  // Directional derivatives: A c' = -A' c, where A' multiplies each entry by
  // the logarithmic rate of the exponential prefactor at the entry's
  // evaluation point.
  sol.du_coeffs.resize(static_cast<size_t>(sd_.n));
  for (int d = 0; d < sd_.n; ++d) {
    Eigen::MatrixXcd Ad = Eigen::MatrixXcd::Zero(nun, nun);
    int row = 0;
    auto add_rate_row = [&](const PointOnCurve& at, double sign) {
      const Complex rate = prefactor_rate(at.component, d, at.point);
      if (rate == Complex(0.0)) return;
      const Complex pre = prefactor(at.component, at.point, u);
      for (int k = 0; k < nun; ++k) {
        if (columns_[static_cast<size_t>(k)].component != at.component) continue;
        Ad(row, k) += sign * rate * pre *
                      basis_value(columns_[static_cast<size_t>(k)], at.point);
      }
    };
    for (const auto& gp : sd_.glue) {
      add_rate_row(gp.first, +1.0);
      add_rate_row(gp.second, -1.0);
      ++row;
    }
    add_rate_row(sd_.r, +1.0);
    ++row;
    for (const auto& rz : sd_.r_zeros) {
      add_rate_row(rz, +1.0);
      ++row;
    }
    const Eigen::VectorXcd cd = lu.solve(-(Ad * c));
    auto& dst = sol.du_coeffs[static_cast<size_t>(d)];
    dst.resize(static_cast<size_t>(nun));
    for (int k = 0; k < nun; ++k) dst[static_cast<size_t>(k)] = cd(k);
  }

  sol.leading.resize(sd_.P.size());
  for (size_t j = 0; j < sd_.P.size(); ++j)
    sol.leading[j] = rational_part(sol.coeffs, sd_.P[j].component, sd_.P[j].point);
  return sol;
}

Complex BASolver::eval_psi(const BASolution& sol, const PointOnCurve& S) const {
  for (const auto& p : sd_.P)
    if (same_point(p, S))
      throw std::domain_error("psi has an essential singularity at " + S.point.str());
  for (const auto& g : sd_.gamma)
    if (same_point(g, S))
      throw std::domain_error("psi has a pole at gamma point " + S.point.str());
  return prefactor(S.component, S.point, sol.u) *
         rational_part(sol.coeffs, S.component, S.point);
}

Complex BASolver::eval_psi_derivative(const BASolution& sol, int direction,
                                      const PointOnCurve& S) const {
  for (const auto& p : sd_.P)
    if (same_point(p, S))
      throw std::domain_error("psi has an essential singularity at " + S.point.str());
  for (const auto& g : sd_.gamma)
    if (same_point(g, S))
      throw std::domain_error("psi has a pole at gamma point " + S.point.str());
  const Complex pre = prefactor(S.component, S.point, sol.u);
  const Complex rate = prefactor_rate(S.component, direction, S.point);
  const Complex value = rational_part(sol.coeffs, S.component, S.point);
  const Complex dvalue = rational_part(sol.du_coeffs[static_cast<size_t>(direction)],
                                       S.component, S.point);
  return rate * pre * value + pre * dvalue;
}

Complex BASolver::leading_derivative(const BASolution& sol, int direction,
                                     int j) const {
  const auto& p = sd_.P[static_cast<size_t>(j)];
  return rational_part(sol.du_coeffs[static_cast<size_t>(direction)], p.component,
                       p.point);
}

}  // namespace baortho
