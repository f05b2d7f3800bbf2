#pragma once

// Exact-as-practical arithmetic for complex polynomials, rational functions
// and rational 1-forms on a single CP^1 component: evaluation on the
// projective line, residues at finite points and at infinity, and Laurent
// expansions in the local parameters used by the rest of the pipeline.

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace baortho {

using Complex = std::complex<double>;

// Tolerance used to decide that two points are the same point.
inline constexpr double kRootClusterTol = 1e-9;
// Tolerance used to group computed roots into multiplicity clusters: a true
// root of multiplicity m comes out of the eigenvalue solve as m simple roots
// split by roughly eps^(1/m), far wider than the point-identity tolerance.
inline constexpr double kMultiplicityClusterTol = 1e-5;

/// Dense univariate polynomial over C, coefficients stored in ascending
/// degree. The trailing (highest-degree) coefficient is nonzero unless the
/// polynomial is identically zero.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Complex> coeffs);

  static Poly constant(Complex c);
  static Poly monomial(int degree, Complex c = 1.0);
  static Poly from_roots(std::span<const Complex> roots, Complex leading = 1.0);

  bool is_zero() const { return coeffs_.empty(); }
  // Degree of the zero polynomial is -1 by convention.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(int k) const;
  Complex leading() const;

  Complex operator()(Complex z) const;
  // Sum of |c_k| |z|^k; the scale against which |p(z)| ~ 0 is judged.
  double eval_scale(Complex z) const;

  Poly derivative() const;
  // Coefficients of t |-> p(center + t).
  Poly shifted(Complex center) const;
  // w^deg * p(1/w): coefficient order reversed.
  Poly reversed() const;
  // Synthetic division by (z - root); the remainder is discarded.
  Poly deflated(Complex root) const;

  Poly& operator*=(Complex s);
  friend Poly operator*(Complex s, Poly p);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);

  /// All complex roots, computed as eigenvalues of the companion matrix and
  /// polished by a Newton step. Returns degree() roots (with multiplicity).
  std::vector<Complex> roots() const;

 private:
  void trim();
  std::vector<Complex> coeffs_;  // ascending degree
};

/// A point of CP^1: either a finite complex number or the point at infinity.
class ProjectivePoint {
 public:
  ProjectivePoint() : infinite_(false), z_(0.0) {}
  ProjectivePoint(Complex z) : infinite_(false), z_(z) {}  // NOLINT(implicit)
  ProjectivePoint(double x) : infinite_(false), z_(x) {}   // NOLINT(implicit)
  static ProjectivePoint infinity();

  bool is_infinity() const { return infinite_; }
  Complex value() const;  // throws std::domain_error at infinity

  std::string str() const;

 private:
  bool infinite_;
  Complex z_;
};

/// Equality up to the root clustering tolerance; infinity only equals itself.
bool points_close(const ProjectivePoint& a, const ProjectivePoint& b,
                  double tol = kRootClusterTol);

struct RootCluster {
  Complex location;  // centroid of the cluster
  int multiplicity;
};

/// Greedy clustering of numerically coincident points.
std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots,
                                       double tol = kRootClusterTol);

/// Roots of p grouped into multiplicity clusters; representatives of multiple
/// roots are re-polished through the (m-1)th derivative.
std::vector<RootCluster> clustered_roots(const Poly& p,
                                         double tol = kMultiplicityClusterTol);

/// Ratio of two polynomials; doubles as the rational 1-form num/den dz on a
/// CP^1 component. The denominator may not be identically zero.
class RationalFunction {
 public:
  RationalFunction(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  /// True when numerator and denominator share no root cluster.
  bool is_reduced(double tol = kRootClusterTol) const;
  /// Cancels clustered common roots pairwise.
  RationalFunction reduced(double tol = kRootClusterTol) const;

  RationalFunction scaled(Complex s) const;

  /// Value at a point of CP^1. At infinity the value is the limit in the
  /// chart w = 1/z. std::nullopt marks a pole.
  std::optional<Complex> eval(const ProjectivePoint& p) const;

 private:
  Poly num_;
  Poly den_;
};

/// Pullback of the 1-form f(z) dz under z = 1/w: the rational g with
/// f(z) dz = g(w) dw. Poles/zeros of the form at infinity become the
/// poles/zeros of g at w = 0.
RationalFunction pullback_to_infinity(const RationalFunction& f);

/// Residue of the 1-form f(z) dz at p, for poles of any finite order
/// (via Laurent coefficients). Returns 0 when p is not a pole. Throws
/// std::invalid_argument when the function is not reduced.
Complex residue_at(const RationalFunction& form, const ProjectivePoint& p);

/// |sum of residues over all poles including infinity|; vanishes for every
/// rational 1-form by the residue theorem.
double residue_sum_check(const RationalFunction& form);

/// Laurent coefficients of the 1-form in the designated local parameter:
/// with k = z at infinity and k = (z-p)^{-1} at finite p, the expansion is
/// taken in t = k^{-1} (the vanishing coordinate in both cases) and written
/// as (sum_j coeffs[j] t^{lead_order + j}) dt.
struct LaurentExpansion {
  int lead_order;
  std::vector<Complex> coeffs;
};

LaurentExpansion local_expansion(const RationalFunction& form,
                                 const ProjectivePoint& p, int count);

}  // namespace baortho
