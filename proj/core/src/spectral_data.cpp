#include "baortho/spectral_data.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace baortho {

namespace {

std::string describe(const PointOnCurve& p) {
  std::ostringstream os;
  os << p.point.str() << " on component " << p.component;
  return os.str();
}

bool sigma_fixed(const ProjectivePoint& p) {
  if (p.is_infinity()) return true;
  return std::abs(p.value()) <= kRootClusterTol;
}

bool tau_fixed(const ProjectivePoint& p) {
  if (p.is_infinity()) return true;
  return std::abs(p.value().imag()) <= kRootClusterTol * std::max(1.0, std::abs(p.value()));
}

bool same_unordered_pair(const GluePair& a, const GluePair& b) {
  return (same_point(a.first, b.first) && same_point(a.second, b.second)) ||
         (same_point(a.first, b.second) && same_point(a.second, b.first));
}

struct DisjointSet {
  explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  std::vector<int> parent;
};

}  // namespace

bool same_point(const PointOnCurve& a, const PointOnCurve& b, double tol) {
  return a.component == b.component && points_close(a.point, b.point, tol);
}

PointOnCurve sigma_image(const PointOnCurve& p) {
  if (p.point.is_infinity()) return p;
  return {p.component, ProjectivePoint(-p.point.value())};
}

PointOnCurve tau_image(const PointOnCurve& p) {
  if (p.point.is_infinity()) return p;
  return {p.component, ProjectivePoint(std::conj(p.point.value()))};
}

std::string ValidationReport::str() const {
  std::ostringstream os;
  if (ok()) {
    os << "valid\n";
  } else {
    for (const auto& v : violations) os << "violation [" << v.code << "] " << v.detail << "\n";
  }
  for (const auto& n : notes) os << "note: " << n << "\n";
  return os.str();
}

ValidationReport validate(const SpectralData& sd) {
  ValidationReport rep;
  auto fail = [&rep](std::string code, std::string detail) {
    rep.violations.push_back({std::move(code), std::move(detail)});
  };

  if (sd.n < 1) fail("bad-dimension", "n must be at least 1");
  if (sd.components < 1) fail("bad-components", "component count must be positive");
  if (sd.h == 0.0) fail("bad-normalization", "h must be nonzero");
  if (sd.curvature_target != 1 && sd.curvature_target != -1)
    fail("bad-curvature-target", "curvature target must be +1 or -1");
  if (static_cast<int>(sd.P.size()) != sd.n)
    fail("bad-counts", "expected n P points, got " + std::to_string(sd.P.size()));
  if (static_cast<int>(sd.Q.size()) != sd.n + 1)
    fail("bad-counts", "expected n+1 Q points, got " + std::to_string(sd.Q.size()));

  auto in_range = [&](const PointOnCurve& p) {
    return p.component >= 0 && p.component < sd.components;
  };
  auto check_range = [&](const PointOnCurve& p, const char* label) {
    if (!in_range(p)) fail("component-out-of-range", std::string(label) + ": " + describe(p));
  };
  for (const auto& p : sd.P) check_range(p, "P");
  for (const auto& q : sd.Q) check_range(q, "Q");
  check_range(sd.r, "r");
  for (const auto& p : sd.r_zeros) check_range(p, "r_i");
  for (const auto& p : sd.gamma) check_range(p, "gamma");
  for (const auto& g : sd.glue) {
    check_range(g.first, "glue");
    check_range(g.second, "glue");
  }
  if (!rep.ok()) return rep;  // later checks index by component

  // Genus and divisor-degree bookkeeping.
  const int g = sd.genus();
  const int l = sd.zero_count();
  if (g < 0)
    fail("negative-genus", "s - m + 1 = " + std::to_string(g) + " is negative");
  if (static_cast<int>(sd.gamma.size()) != g + l)
    fail("gamma-count", "|gamma| = " + std::to_string(sd.gamma.size()) +
                            " but g + l = " + std::to_string(g + l));

  // Fixed-point requirements for the involutions.
  for (const auto& p : sd.P)
    if (!sigma_fixed(p.point)) fail("P-not-sigma-fixed", describe(p));
  for (const auto& q : sd.Q)
    if (!sigma_fixed(q.point)) fail("Q-not-sigma-fixed", describe(q));
  if (!sigma_fixed(sd.r.point)) fail("r-not-sigma-fixed", describe(sd.r));
  for (const auto& p : sd.P)
    if (!tau_fixed(p.point)) fail("P-not-tau-fixed", describe(p));
  for (const auto& q : sd.Q)
    if (!tau_fixed(q.point)) fail("Q-not-tau-fixed", describe(q));
  if (!tau_fixed(sd.r.point)) fail("r-not-tau-fixed", describe(sd.r));
  for (const auto& p : sd.gamma) {
    if (!tau_fixed(p.point)) fail("gamma-not-tau-fixed", describe(p));
    if (p.point.is_infinity())
      fail("gamma-at-infinity", "ansatz carries poles at finite gamma only: " + describe(p));
  }

  // Glue pairs join distinct components; the node set is closed under both
  // involutions (pairs may be permuted or swapped).
  for (const auto& gp : sd.glue) {
    if (gp.first.component == gp.second.component)
      fail("glue-same-component",
           describe(gp.first) + " and " + describe(gp.second));
  }
  auto find_pair = [&](const GluePair& target) {
    for (const auto& gp : sd.glue)
      if (same_unordered_pair(gp, target)) return true;
    return false;
  };
  for (const auto& gp : sd.glue) {
    const GluePair s{sigma_image(gp.first), sigma_image(gp.second)};
    if (!find_pair(s))
      fail("glue-not-sigma-invariant",
           "sigma image of node (" + describe(gp.first) + ", " + describe(gp.second) + ") is not a node");
    const GluePair t{tau_image(gp.first), tau_image(gp.second)};
    if (!find_pair(t))
      fail("glue-not-tau-invariant",
           "tau image of node (" + describe(gp.first) + ", " + describe(gp.second) + ") is not a node");
  }

  // Pairwise distinctness of all labeled points on each component.
  struct Labeled {
    PointOnCurve p;
    std::string label;
  };
  std::vector<Labeled> labeled;
  for (size_t j = 0; j < sd.P.size(); ++j)
    labeled.push_back({sd.P[j], "P" + std::to_string(j + 1)});
  for (size_t j = 0; j < sd.Q.size(); ++j)
    labeled.push_back({sd.Q[j], "Q" + std::to_string(j + 1)});
  labeled.push_back({sd.r, "r"});
  for (size_t j = 0; j < sd.r_zeros.size(); ++j)
    labeled.push_back({sd.r_zeros[j], "r_" + std::to_string(j + 1)});
  for (size_t j = 0; j < sd.gamma.size(); ++j)
    labeled.push_back({sd.gamma[j], "gamma" + std::to_string(j + 1)});
  for (size_t j = 0; j < sd.glue.size(); ++j) {
    labeled.push_back({sd.glue[j].first, "node" + std::to_string(j + 1)});
    labeled.push_back({sd.glue[j].second, "node" + std::to_string(j + 1)});
  }
  for (size_t i = 0; i < labeled.size(); ++i) {
    for (size_t j = i + 1; j < labeled.size(); ++j) {
      if (same_point(labeled[i].p, labeled[j].p)) {
        std::string code = "points-coincide";
        if (labeled[i].label.starts_with("gamma") && labeled[j].label.starts_with("node"))
          code = "gamma-coincides-with-node";
        if (labeled[j].label.starts_with("gamma") && labeled[i].label.starts_with("node"))
          code = "gamma-coincides-with-node";
        fail(code, labeled[i].label + " and " + labeled[j].label + " at " + describe(labeled[i].p));
      }
    }
  }

  // Ansatz restrictions: at most one essential singularity per component.
  std::vector<int> p_per_component(static_cast<size_t>(sd.components), 0);
  for (const auto& p : sd.P) p_per_component[static_cast<size_t>(p.component)] += 1;
  for (int c = 0; c < sd.components; ++c)
    if (p_per_component[static_cast<size_t>(c)] > 1)
      fail("multiple-P-on-component", "component " + std::to_string(c));

  // The dual graph must be connected, else the glued function splits.
  {
    DisjointSet ds(sd.components);
    for (const auto& gp : sd.glue) ds.unite(gp.first.component, gp.second.component);
    const int root = sd.components > 0 ? ds.find(0) : 0;
    for (int c = 1; c < sd.components; ++c)
      if (ds.find(c) != root) {
        fail("curve-disconnected", "component " + std::to_string(c) +
                                       " is not joined to component 0");
        break;
      }
  }

  std::ostringstream note;
  note << "arithmetic genus g = s - m + 1 = " << sd.node_count() << " - "
       << sd.components << " + 1 = " << g << ", l = " << l
       << ", |gamma| = " << sd.gamma.size();
  rep.notes.push_back(note.str());
  std::ostringstream counting;
  counting << "unknown/equation counting: m + |gamma| = "
           << sd.components + static_cast<int>(sd.gamma.size())
           << " vs s + 1 + l = " << sd.node_count() + 1 + l
           << " (divisor counting carried to the nodal case)";
  rep.notes.push_back(counting.str());
  return rep;
}

}  // namespace baortho
