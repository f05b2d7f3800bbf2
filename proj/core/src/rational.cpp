#include "baortho/rational.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace baortho {

namespace {

// Relative threshold below which a coefficient counts as zero when trimming.
constexpr double kTrimRel = 1e-14;

double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

double point_scale(Complex a, Complex b) {
  return std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

Poly::Poly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  const double scale = max_abs(coeffs_);
  if (scale == 0.0) {
    coeffs_.clear();
    return;
  }
  while (!coeffs_.empty() && std::abs(coeffs_.back()) <= kTrimRel * scale)
    coeffs_.pop_back();
}

Poly Poly::constant(Complex c) { return Poly(std::vector<Complex>{c}); }

Poly Poly::monomial(int degree, Complex c) {
  std::vector<Complex> v(static_cast<size_t>(degree) + 1, Complex(0.0));
  v.back() = c;
  return Poly(std::move(v));
}

Poly Poly::from_roots(std::span<const Complex> roots, Complex leading) {
  std::vector<Complex> v{Complex(1.0)};
  for (const Complex& r : roots) {
    std::vector<Complex> next(v.size() + 1, Complex(0.0));
    for (size_t k = 0; k < v.size(); ++k) {
      next[k + 1] += v[k];
      next[k] -= r * v[k];
    }
    v = std::move(next);
  }
  for (auto& c : v) c *= leading;
  return Poly(std::move(v));
}

Complex Poly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Complex(0.0);
  return coeffs_[static_cast<size_t>(k)];
}

Complex Poly::leading() const {
  if (coeffs_.empty()) return Complex(0.0);
  return coeffs_.back();
}

Complex Poly::operator()(Complex z) const {
  Complex acc(0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double Poly::eval_scale(Complex z) const {
  double acc = 0.0;
  double zp = 1.0;
  const double az = std::abs(z);
  for (const auto& c : coeffs_) {
    acc += std::abs(c) * zp;
    zp *= az;
  }
  return acc;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return Poly();
  std::vector<Complex> v(coeffs_.size() - 1);
  for (size_t k = 1; k < coeffs_.size(); ++k)
    v[k - 1] = coeffs_[k] * static_cast<double>(k);
  return Poly(std::move(v));
}

Poly Poly::shifted(Complex center) const {
  // Repeated synthetic division: Horner shift.
  std::vector<Complex> v = coeffs_;
  const size_t n = v.size();
  for (size_t i = 0; i < n; ++i) {
    for (size_t k = n - 1; k > i; --k) v[k - 1] += center * v[k];
  }
  Poly out;
  out.coeffs_ = std::move(v);
  // Intentionally no trim: callers inspect the (possibly tiny) low-order
  // coefficients to decide vanishing orders.
  return out;
}

Poly Poly::reversed() const {
  std::vector<Complex> v(coeffs_.rbegin(), coeffs_.rend());
  return Poly(std::move(v));
}

Poly Poly::deflated(Complex root) const {
  if (coeffs_.size() <= 1) return Poly();
  std::vector<Complex> q(coeffs_.size() - 1);
  Complex carry = coeffs_.back();
  for (size_t k = coeffs_.size() - 1; k >= 1; --k) {
    q[k - 1] = carry;
    carry = coeffs_[k - 1] + root * carry;
  }
  return Poly(std::move(q));
}

Poly& Poly::operator*=(Complex s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

Poly operator*(Complex s, Poly p) {
  p *= s;
  return p;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Complex> v(a.coeffs_.size() + b.coeffs_.size() - 1, Complex(0.0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i)
    for (size_t j = 0; j < b.coeffs_.size(); ++j)
      v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly(std::move(v));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Complex> v(std::max(a.coeffs_.size(), b.coeffs_.size()),
                         Complex(0.0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) {
  std::vector<Complex> v(std::max(a.coeffs_.size(), b.coeffs_.size()),
                         Complex(0.0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (size_t i = 0; i < b.coeffs_.size(); ++i) v[i] -= b.coeffs_[i];
  return Poly(std::move(v));
}

std::vector<Complex> Poly::roots() const {
  const int deg = degree();
  if (deg <= 0) return {};
  const Complex lead = coeffs_.back();

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i)
    companion(i, deg - 1) = -coeffs_[static_cast<size_t>(i)] / lead;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("polynomial root solve failed to converge");

  std::vector<Complex> out(static_cast<size_t>(deg));
  const Poly dp = derivative();
  for (int i = 0; i < deg; ++i) {
    Complex r = solver.eigenvalues()(i);
    // Newton polish; skipped near-critical points where it cannot help.
    for (int it = 0; it < 2; ++it) {
      const Complex d = dp(r);
      if (std::abs(d) < 1e-12 * std::max(1.0, dp.eval_scale(r))) break;
      const Complex step = (*this)(r) / d;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      r -= step;
    }
    out[static_cast<size_t>(i)] = r;
  }
  std::sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

ProjectivePoint ProjectivePoint::infinity() {
  ProjectivePoint p;
  p.infinite_ = true;
  return p;
}

Complex ProjectivePoint::value() const {
  if (infinite_) throw std::domain_error("point at infinity has no finite value");
  return z_;
}

std::string ProjectivePoint::str() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os << z_.real();
  if (z_.imag() != 0.0) os << (z_.imag() < 0 ? "-" : "+") << std::abs(z_.imag()) << "i";
  return os.str();
}

bool points_close(const ProjectivePoint& a, const ProjectivePoint& b, double tol) {
  if (a.is_infinity() || b.is_infinity()) return a.is_infinity() == b.is_infinity();
  return std::abs(a.value() - b.value()) <= tol * point_scale(a.value(), b.value());
}

std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots,
                                       double tol) {
  std::vector<RootCluster> clusters;
  std::vector<Complex> sums;
  for (const Complex& r : roots) {
    bool placed = false;
    for (size_t i = 0; i < clusters.size(); ++i) {
      if (std::abs(r - clusters[i].location) <=
          tol * point_scale(r, clusters[i].location)) {
        sums[i] += r;
        clusters[i].multiplicity += 1;
        clusters[i].location = sums[i] / static_cast<double>(clusters[i].multiplicity);
        placed = true;
        break;
      }
    }
    if (!placed) {
      clusters.push_back({r, 1});
      sums.push_back(r);
    }
  }
  return clusters;
}

std::vector<RootCluster> clustered_roots(const Poly& p, double tol) {
  std::vector<RootCluster> clusters = cluster_roots(p.roots(), tol);
  for (auto& c : clusters) {
    if (c.multiplicity <= 1) continue;
    // The mean of the split eigenvalues locates the multiple root only to
    // first order; Newton through p^(m-1) recovers it to full precision.
    Poly q = p;
    for (int k = 1; k < c.multiplicity; ++k) q = q.derivative();
    const Poly dq = q.derivative();
    Complex r = c.location;
    for (int it = 0; it < 3; ++it) {
      const Complex d = dq(r);
      if (std::abs(d) < 1e-12 * std::max(1.0, dq.eval_scale(r))) break;
      const Complex step = q(r) / d;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      if (std::abs(step) > tol * point_scale(r, r)) break;  // not our cluster
      r -= step;
    }
    c.location = r;
  }
  return clusters;
}

RationalFunction::RationalFunction(Poly num, Poly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero())
    throw std::invalid_argument("rational function with zero denominator");
}

bool RationalFunction::is_reduced(double tol) const {
  if (num_.is_zero()) return true;
  const auto nc = clustered_roots(num_);
  const auto dc = clustered_roots(den_);
  for (const auto& n : nc)
    for (const auto& d : dc)
      if (std::abs(n.location - d.location) <=
          tol * point_scale(n.location, d.location))
        return false;
  return true;
}

RationalFunction RationalFunction::reduced(double tol) const {
  if (num_.is_zero())
    return RationalFunction(Poly(), Poly::constant(den_.leading()));
  auto nroots = num_.roots();
  auto droots = den_.roots();
  std::vector<bool> ndead(nroots.size(), false), ddead(droots.size(), false);
  for (size_t i = 0; i < nroots.size(); ++i) {
    for (size_t j = 0; j < droots.size(); ++j) {
      if (ddead[j]) continue;
      if (std::abs(nroots[i] - droots[j]) <=
          tol * point_scale(nroots[i], droots[j])) {
        ndead[i] = true;
        ddead[j] = true;
        break;
      }
    }
  }
  std::vector<Complex> nkeep, dkeep;
  for (size_t i = 0; i < nroots.size(); ++i)
    if (!ndead[i]) nkeep.push_back(nroots[i]);
  for (size_t j = 0; j < droots.size(); ++j)
    if (!ddead[j]) dkeep.push_back(droots[j]);
  return RationalFunction(Poly::from_roots(nkeep, num_.leading()),
                          Poly::from_roots(dkeep, den_.leading()));
}

RationalFunction RationalFunction::scaled(Complex s) const {
  Poly n = num_;
  n *= s;
  return RationalFunction(std::move(n), den_);
}

std::optional<Complex> RationalFunction::eval(const ProjectivePoint& p) const {
  if (p.is_infinity()) {
    if (num_.is_zero()) return Complex(0.0);
    const int dn = num_.degree(), dd = den_.degree();
    if (dn > dd) return std::nullopt;
    if (dn < dd) return Complex(0.0);
    return num_.leading() / den_.leading();
  }
  const Complex z = p.value();
  const Complex dv = den_(z);
  if (std::abs(dv) <= 1e-12 * std::max(1.0, den_.eval_scale(z)))
    return std::nullopt;
  return num_(z) / dv;
}

RationalFunction pullback_to_infinity(const RationalFunction& f) {
  if (f.num().is_zero())
    return RationalFunction(Poly(), Poly::constant(1.0));
  const int e = f.den().degree() - f.num().degree() - 2;
  Poly num = Complex(-1.0) * f.num().reversed();
  Poly den = f.den().reversed();
  if (e >= 0)
    num = num * Poly::monomial(e);
  else
    den = den * Poly::monomial(-e);
  return RationalFunction(std::move(num), std::move(den));
}

namespace {

// Power-series quotient num/den through t^{count-1}; den[0] must be nonzero.
std::vector<Complex> series_divide(const std::vector<Complex>& num,
                                   const std::vector<Complex>& den, int count) {
  std::vector<Complex> q(static_cast<size_t>(count), Complex(0.0));
  const Complex d0 = den.empty() ? Complex(0.0) : den[0];
  if (d0 == Complex(0.0))
    throw std::runtime_error("series division by vanishing leading coefficient");
  for (int k = 0; k < count; ++k) {
    Complex acc = k < static_cast<int>(num.size()) ? num[static_cast<size_t>(k)]
                                                   : Complex(0.0);
    for (int j = 1; j <= k; ++j) {
      if (j < static_cast<int>(den.size()))
        acc -= den[static_cast<size_t>(j)] * q[static_cast<size_t>(k - j)];
    }
    q[static_cast<size_t>(k)] = acc / d0;
  }
  return q;
}

int multiplicity_at(const Poly& p, Complex z0) {
  if (p.is_zero()) return -1;  // identically zero
  int mult = 0;
  const Poly* work = &p;
  Poly tail;
  if (z0 == Complex(0.0)) {
    // Exactly-zero low coefficients give the multiplicity at the origin
    // structurally, with no eigenvalue noise.
    const auto& c = p.coeffs();
    size_t exact = 0;
    while (exact < c.size() && c[exact] == Complex(0.0)) ++exact;
    if (exact > 0) {
      mult += static_cast<int>(exact);
      tail = Poly(std::vector<Complex>(c.begin() + static_cast<long>(exact), c.end()));
      work = &tail;
      if (work->is_zero()) return mult;
    }
  }
  for (const auto& c : clustered_roots(*work)) {
    if (std::abs(c.location - z0) <=
        kMultiplicityClusterTol * point_scale(c.location, z0))
      mult += c.multiplicity;
  }
  return mult;
}

// Laurent expansion of the form at infinity in w = 1/z: the pullback is
// g(w) = -w^(degD - degN - 2) revN(w)/revD(w) with revN(0), revD(0) nonzero,
// so the monomial order is structural and needs no root finding.
LaurentExpansion expand_at_infinity(const RationalFunction& f, int count) {
  if (f.num().is_zero())
    return {0, std::vector<Complex>(static_cast<size_t>(count), 0.0)};
  const int lead = f.den().degree() - f.num().degree() - 2;
  const std::vector<Complex> n = (Complex(-1.0) * f.num().reversed()).coeffs();
  const std::vector<Complex> d = f.den().reversed().coeffs();
  return {lead, series_divide(n, d, count)};
}

// Laurent expansion of f(z0 + t) dt about t = 0.
LaurentExpansion expand_at_origin_shifted(const RationalFunction& f, Complex z0,
                                          int count) {
  const int ell = multiplicity_at(f.num(), z0);
  const int m = multiplicity_at(f.den(), z0);
  if (ell < 0) return {0, std::vector<Complex>(static_cast<size_t>(count), 0.0)};

  std::vector<Complex> n = f.num().shifted(z0).coeffs();
  std::vector<Complex> d = f.den().shifted(z0).coeffs();
  // Coefficients below the detected vanishing order are numerical noise.
  n.erase(n.begin(), n.begin() + std::min<size_t>(n.size(), static_cast<size_t>(ell)));
  d.erase(d.begin(), d.begin() + std::min<size_t>(d.size(), static_cast<size_t>(m)));
  return {ell - m, series_divide(n, d, count)};
}

}  // namespace

Complex residue_at(const RationalFunction& form, const ProjectivePoint& p) {
  if (!form.is_reduced())
    throw std::invalid_argument(
        "residue_at requires a reduced rational function");
  if (form.num().is_zero()) return Complex(0.0);
  if (p.is_infinity()) {
    const auto exp = expand_at_infinity(form, 1);
    if (exp.lead_order >= 0) return Complex(0.0);
    const auto full = expand_at_infinity(form, -exp.lead_order);
    return full.coeffs[static_cast<size_t>(-1 - exp.lead_order)];
  }

  const Complex z0 = p.value();
  const int m = multiplicity_at(form.den(), z0);
  if (m == 0) return Complex(0.0);
  const auto exp = expand_at_origin_shifted(form, z0, m);
  const int idx = -1 - exp.lead_order;
  if (idx < 0 || idx >= static_cast<int>(exp.coeffs.size())) return Complex(0.0);
  return exp.coeffs[static_cast<size_t>(idx)];
}

double residue_sum_check(const RationalFunction& form) {
  Complex sum = residue_at(form, ProjectivePoint::infinity());
  for (const auto& c : clustered_roots(form.den()))
    sum += residue_at(form, ProjectivePoint(c.location));
  return std::abs(sum);
}

LaurentExpansion local_expansion(const RationalFunction& form,
                                 const ProjectivePoint& p, int count) {
  if (count <= 0)
    throw std::invalid_argument("local_expansion requires count > 0");
  if (p.is_infinity()) return expand_at_infinity(form, count);
  return expand_at_origin_shifted(form, p.value(), count);
}

}  // namespace baortho
