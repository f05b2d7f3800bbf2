#pragma once

// Data model for a singular reducible spectral curve: CP^1 components glued
// pairwise at nodes, with marked points P/Q/r/r_i, the pole divisor gamma and
// the normalization constant. Validation enforces the symmetry conditions
// under the involutions sigma(z) = -z and tau(z) = conj(z) that the
// construction needs.

#include <string>
#include <vector>

#include "baortho/rational.hpp"

namespace baortho {

struct PointOnCurve {
  int component = 0;
  ProjectivePoint point;
};

bool same_point(const PointOnCurve& a, const PointOnCurve& b,
                double tol = kRootClusterTol);

/// Node of the singular curve: two identified points on distinct components.
struct GluePair {
  PointOnCurve first;
  PointOnCurve second;
};

struct SpectralData {
  int n = 0;           // number of coordinate variables u_1..u_n
  int components = 0;  // component count m
  std::vector<GluePair> glue;        // s nodes
  std::vector<PointOnCurve> P;       // n points, P[j] carries exp in u_j
  std::vector<PointOnCurve> Q;       // n+1 points
  PointOnCurve r;                    // normalization point, psi(r) = h
  std::vector<PointOnCurve> r_zeros; // l points with psi(r_i) = 0
  std::vector<PointOnCurve> gamma;   // pole divisor, g + l points
  double h = 1.0;                    // nonzero normalization constant
  int curvature_target = +1;         // +1 sphere, -1 hyperboloid

  int node_count() const { return static_cast<int>(glue.size()); }
  // Arithmetic genus of the nodal curve: s - m + 1.
  int genus() const { return node_count() - components + 1; }
  int zero_count() const { return static_cast<int>(r_zeros.size()); }
};

/// Componentwise z -> -z; infinity is fixed.
PointOnCurve sigma_image(const PointOnCurve& p);
/// Componentwise z -> conj(z); infinity is fixed.
PointOnCurve tau_image(const PointOnCurve& p);

struct Violation {
  std::string code;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> notes;
  bool ok() const { return violations.empty(); }
  std::string str() const;
};

/// Checks every structural invariant of the spectral data and reports each
/// failure with the offending point. Counting identities are reported with
/// both sides in the notes.
ValidationReport validate(const SpectralData& sd);

}  // namespace baortho
