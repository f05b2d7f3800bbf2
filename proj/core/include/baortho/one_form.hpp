#pragma once

// The meromorphic 1-form Omega, given as one rational 1-form per component:
// divisor conformance checks, node residue matching, extraction of the
// residue data (A_i, B, C_i) and the rescaling that puts the data into the
// normalized gauge h^2 B = -1.

#include <utility>
#include <vector>

#include "baortho/rational.hpp"
#include "baortho/spectral_data.hpp"

namespace baortho {

struct OneFormSpec {
  // forms[i] * dz_i is the restriction of Omega to component i.
  std::vector<RationalFunction> forms;
};

struct ResidueData {
  std::vector<double> A;  // A_i = Res_{Q_i} Omega, one per Q point
  double B = 0.0;         // B = Res_r Omega
  std::vector<double> C;  // leading expansion coefficient at each P_j
};

/// Verifies on each component that the zeros of Omega match gamma + sigma
/// gamma + P and that the poles are exactly the local Q/r/sigma r_i points
/// plus simple poles at glue points. Every excess or missing zero/pole is
/// reported with its order.
ValidationReport check_divisor(const SpectralData& sd, const OneFormSpec& om);

/// Per-node residuals |Res_{a_j} Omega + Res_{b_j} Omega|. Conforming when
/// every entry is <= 1e-10.
std::vector<double> check_glue_residues(const SpectralData& sd,
                                        const OneFormSpec& om);

inline constexpr double kGlueResidueTol = 1e-10;
inline constexpr double kResidueImagTol = 1e-10;

/// A_i and B by residues at Q_i and r; C_i from the local expansion of Omega
/// at P_i, read as the coefficient of k_i^{-1} dk_i^{-1} (the sign that makes
/// the quadratic residue identities close; see H_i^2 = K C_i f_i^2 downstream).
/// Throws when a required residue has imaginary part above tolerance or the
/// form fails to vanish to first order at some P_i.
ResidueData extract_residue_data(const SpectralData& sd, const OneFormSpec& om);

/// Rescales Omega by the real constant lambda = -1/(h^2 B) so that the
/// normalized data satisfies h^2 B = -1; A_i, B, C_i scale by lambda and the
/// divisor conditions are unchanged. Throws when B = 0.
std::pair<OneFormSpec, ResidueData> normalize_form(const SpectralData& sd,
                                                   const OneFormSpec& om,
                                                   const ResidueData& rd);

/// max_i |A_i - A_1|: the extra equal-residue condition imposed in the
/// spherical example. Advisory only; Corollaries for S^n/H^n do not need it.
double check_equal_q_residues(const ResidueData& rd);

}  // namespace baortho
