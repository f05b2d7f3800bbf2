#include "baortho/one_form.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace baortho {

namespace {

struct DivisorEntry {
  ProjectivePoint point;
  int order;  // > 0 zero, < 0 pole
};

// Actual zero/pole divisor of the 1-form forms[c] dz_c, including the order
// at infinity taken in the chart w = 1/z.
std::vector<DivisorEntry> form_divisor(const RationalFunction& f) {
  std::vector<DivisorEntry> out;
  if (f.num().is_zero()) return out;
  for (const auto& c : clustered_roots(f.num()))
    out.push_back({ProjectivePoint(c.location), c.multiplicity});
  for (const auto& c : clustered_roots(f.den()))
    out.push_back({ProjectivePoint(c.location), -c.multiplicity});
  const int inf_order = local_expansion(f, ProjectivePoint::infinity(), 1).lead_order;
  if (inf_order != 0) out.push_back({ProjectivePoint::infinity(), inf_order});
  return out;
}

std::string point_str(int component, const ProjectivePoint& p) {
  std::ostringstream os;
  os << p.str() << " on component " << component;
  return os.str();
}

}  // namespace

ValidationReport check_divisor(const SpectralData& sd, const OneFormSpec& om) {
  ValidationReport rep;
  auto fail = [&rep](std::string code, std::string detail) {
    rep.violations.push_back({std::move(code), std::move(detail)});
  };
  if (static_cast<int>(om.forms.size()) != sd.components) {
    fail("form-count", "expected one form per component");
    return rep;
  }

  for (int c = 0; c < sd.components; ++c) {
    const RationalFunction& f = om.forms[static_cast<size_t>(c)];
    if (f.num().is_zero()) {
      fail("form-vanishes", "component " + std::to_string(c));
      continue;
    }
    if (!f.is_reduced()) {
      fail("form-not-reduced", "component " + std::to_string(c));
      continue;
    }

    // Expected divisor on this component: zeros at gamma + sigma gamma + P,
    // poles at Q + r + r_i + sigma r_i, and optional simple poles at nodes.
    std::vector<DivisorEntry> expected;
    auto add_expected = [&expected](const ProjectivePoint& p, int order) {
      for (auto& e : expected) {
        if (points_close(e.point, p)) {
          e.order += order;
          return;
        }
      }
      expected.push_back({p, order});
    };
    for (const auto& gp : sd.gamma) {
      if (gp.component != c) continue;
      add_expected(gp.point, +1);
      add_expected(sigma_image(gp).point, +1);
    }
    for (const auto& p : sd.P)
      if (p.component == c) add_expected(p.point, +1);
    for (const auto& q : sd.Q)
      if (q.component == c) add_expected(q.point, -1);
    if (sd.r.component == c) add_expected(sd.r.point, -1);
    for (const auto& rz : sd.r_zeros) {
      if (rz.component == c) add_expected(rz.point, -1);
      const PointOnCurve s = sigma_image(rz);
      if (s.component == c) add_expected(s.point, -1);
    }

    std::vector<ProjectivePoint> node_points;
    for (const auto& gp : sd.glue) {
      if (gp.first.component == c) node_points.push_back(gp.first.point);
      if (gp.second.component == c) node_points.push_back(gp.second.point);
    }

    const std::vector<DivisorEntry> actual = form_divisor(f);
    auto actual_order = [&actual](const ProjectivePoint& p) {
      for (const auto& e : actual)
        if (points_close(e.point, p)) return e.order;
      return 0;
    };

    for (const auto& e : expected) {
      const int got = actual_order(e.point);
      if (got != e.order) {
        std::ostringstream os;
        os << point_str(c, e.point) << ": expected order " << e.order
           << ", form has order " << got;
        fail(e.order > 0 ? "zero-mismatch" : "pole-mismatch", os.str());
      }
    }
    for (const auto& e : actual) {
      bool known = false;
      for (const auto& x : expected)
        if (points_close(e.point, x.point)) known = true;
      for (const auto& np : node_points) {
        if (points_close(e.point, np)) {
          known = true;
          if (e.order < -1) {
            std::ostringstream os;
            os << point_str(c, e.point) << ": node pole of order " << -e.order
               << " (only simple poles are admissible at nodes)";
            fail("node-pole-order", os.str());
          }
          if (e.order > 0) {
            std::ostringstream os;
            os << point_str(c, e.point) << ": unexpected zero of order " << e.order
               << " at a node";
            fail("zero-at-node", os.str());
          }
        }
      }
      if (!known) {
        std::ostringstream os;
        os << point_str(c, e.point) << ": "
           << (e.order > 0 ? "excess zero" : "excess pole") << " of order "
           << std::abs(e.order);
        fail(e.order > 0 ? "excess-zero" : "excess-pole", os.str());
      }
    }

    // The zero divisor must be sigma-symmetric (it is gamma + sigma gamma + P
    // with P sigma-fixed).
    for (const auto& e : actual) {
      if (e.order <= 0) continue;
      const ProjectivePoint mirror = e.point.is_infinity()
                                         ? e.point
                                         : ProjectivePoint(-e.point.value());
      if (actual_order(mirror) != e.order) {
        fail("zero-divisor-not-sigma-symmetric",
             point_str(c, e.point) + ": mirror point " + mirror.str() +
                 " carries a different order");
      }
    }
  }
  return rep;
}

std::vector<double> check_glue_residues(const SpectralData& sd,
                                        const OneFormSpec& om) {
  std::vector<double> out;
  out.reserve(sd.glue.size());
  for (const auto& gp : sd.glue) {
    const Complex ra =
        residue_at(om.forms[static_cast<size_t>(gp.first.component)], gp.first.point);
    const Complex rb =
        residue_at(om.forms[static_cast<size_t>(gp.second.component)], gp.second.point);
    out.push_back(std::abs(ra + rb));
  }
  return out;
}

namespace {

double require_real(Complex v, const char* what) {
  if (std::abs(v.imag()) > kResidueImagTol) {
    std::ostringstream os;
    os << what << " has imaginary part " << v.imag()
       << " above tolerance " << kResidueImagTol;
    throw std::runtime_error(os.str());
  }
  return v.real();
}

}  // namespace

ResidueData extract_residue_data(const SpectralData& sd, const OneFormSpec& om) {
  ResidueData rd;
  rd.A.reserve(sd.Q.size());
  for (size_t i = 0; i < sd.Q.size(); ++i) {
    const auto& q = sd.Q[i];
    const Complex res = residue_at(om.forms[static_cast<size_t>(q.component)], q.point);
    rd.A.push_back(require_real(res, ("Res_{Q" + std::to_string(i + 1) + "} Omega").c_str()));
  }
  rd.B = require_real(
      residue_at(om.forms[static_cast<size_t>(sd.r.component)], sd.r.point),
      "Res_r Omega");
  rd.C.reserve(sd.P.size());
  for (size_t j = 0; j < sd.P.size(); ++j) {
    const auto& p = sd.P[j];
    const auto exp = local_expansion(om.forms[static_cast<size_t>(p.component)], p.point, 3);
    const int idx = 1 - exp.lead_order;  // coefficient of t^1 in the dt expansion
    Complex coeff(0.0);
    if (idx >= 0 && idx < static_cast<int>(exp.coeffs.size()))
      coeff = exp.coeffs[static_cast<size_t>(idx)];
    rd.C.push_back(require_real(coeff, ("C_" + std::to_string(j + 1)).c_str()));
  }
  return rd;
}

std::pair<OneFormSpec, ResidueData> normalize_form(const SpectralData& sd,
                                                   const OneFormSpec& om,
                                                   const ResidueData& rd) {
  if (rd.B == 0.0)
    throw std::runtime_error("normalization impossible: Res_r Omega = 0");
  if (sd.h == 0.0) throw std::runtime_error("normalization impossible: h = 0");
  const double lambda = -1.0 / (sd.h * sd.h * rd.B);

  OneFormSpec scaled;
  scaled.forms.reserve(om.forms.size());
  for (const auto& f : om.forms) scaled.forms.push_back(f.scaled(lambda));

  ResidueData out = rd;
  for (auto& a : out.A) a *= lambda;
  out.B *= lambda;
  for (auto& c : out.C) c *= lambda;
  return {std::move(scaled), std::move(out)};
}

double check_equal_q_residues(const ResidueData& rd) {
  double worst = 0.0;
  for (const auto& a : rd.A) worst = std::max(worst, std::abs(a - rd.A.front()));
  return worst;
}

}  // namespace baortho
