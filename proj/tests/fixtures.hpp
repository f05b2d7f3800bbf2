#pragma once

// The two bundled curve configurations, constructed in code so unit tests do
// not depend on config parsing.

#include <cmath>

#include "baortho/one_form.hpp"
#include "baortho/spectral_data.hpp"

namespace fixtures {

using baortho::Complex;
using baortho::OneFormSpec;
using baortho::Poly;
using baortho::ProjectivePoint;
using baortho::RationalFunction;
using baortho::SpectralData;

inline const double kSqrt3 = std::sqrt(3.0);
inline const double kMu = 1.0 / kSqrt3;

// Three CP^1 components, four nodes, genus 2; curvature +1.
inline SpectralData s2_data() {
  SpectralData sd;
  sd.n = 2;
  sd.components = 3;
  sd.curvature_target = +1;
  sd.h = kMu;
  sd.P = {{0, ProjectivePoint::infinity()}, {1, ProjectivePoint::infinity()}};
  sd.Q = {{1, 0.0}, {2, ProjectivePoint::infinity()}, {2, 0.0}};
  sd.r = {0, 0.0};
  sd.gamma = {{1, kMu}, {2, 1.0}};
  const Complex a(0.0, kMu);
  const Complex c(0.0, 1.0);
  sd.glue = {{{0, a}, {1, a}},
             {{0, -a}, {1, -a}},
             {{1, c}, {2, c}},
             {{1, -c}, {2, -c}}};
  return sd;
}

inline OneFormSpec s2_form() {
  OneFormSpec om;
  // dz / (z (z^2 + 1/3))
  om.forms.emplace_back(Poly({1.0}), Poly({0.0, 1.0 / 3.0, 0.0, 1.0}));
  // (z^2 - 1/3) dz / (z (z^2 + 1/3) (z^2 + 1))
  om.forms.emplace_back(Poly({-1.0 / 3.0, 0.0, 1.0}),
                        Poly({0.0, 1.0 / 3.0, 0.0, 4.0 / 3.0, 0.0, 1.0}));
  // (z^2 - 1) dz / (z (z^2 + 1))
  om.forms.emplace_back(Poly({-1.0, 0.0, 1.0}), Poly({0.0, 1.0, 0.0, 1.0}));
  return om;
}

// Same curve shape with real nodes on the first pair; curvature -1.
inline SpectralData h2_data() {
  SpectralData sd;
  sd.n = 2;
  sd.components = 3;
  sd.curvature_target = -1;
  sd.h = 1.0;
  sd.P = {{0, ProjectivePoint::infinity()}, {1, ProjectivePoint::infinity()}};
  sd.Q = {{1, 0.0}, {2, ProjectivePoint::infinity()}, {2, 0.0}};
  sd.r = {0, 0.0};
  sd.gamma = {{1, kSqrt3}, {2, 1.0}};
  const Complex c(0.0, 1.0);
  sd.glue = {{{0, -1.0}, {1, 1.0}},
             {{0, 1.0}, {1, -1.0}},
             {{1, c}, {2, c}},
             {{1, -c}, {2, -c}}};
  return sd;
}

inline OneFormSpec h2_form() {
  OneFormSpec om;
  // dz / (z (z^2 - 1))
  om.forms.emplace_back(Poly({1.0}), Poly({0.0, -1.0, 0.0, 1.0}));
  // (z^2 - 3) dz / (z (z^2 - 1) (z^2 + 1))
  om.forms.emplace_back(Poly({-3.0, 0.0, 1.0}),
                        Poly({0.0, -1.0, 0.0, 0.0, 0.0, 1.0}));
  // (z^2 - 1) dz / (z (z^2 + 1))
  om.forms.emplace_back(Poly({-1.0, 0.0, 1.0}), Poly({0.0, 1.0, 0.0, 1.0}));
  return om;
}

// Spherical variant exercising an essential singularity at a finite point:
// P_1 and r on the first component trade places (P_1 = 0 with exponential
// exp(u/z), r = infinity), the first form becomes z dz/(z^2 + 1/3), and the
// remaining forms are rescaled by -1/3 to keep the node residues matched.
// Raw residue data: A = (1/3, 1/3, 1/3), B = -1, already in the h = 1 gauge.
inline SpectralData s2_finite_p_data() {
  SpectralData sd = s2_data();
  sd.h = 1.0;
  sd.P[0] = {0, 0.0};
  sd.r = {0, ProjectivePoint::infinity()};
  return sd;
}

inline OneFormSpec s2_finite_p_form() {
  OneFormSpec om;
  om.forms.emplace_back(Poly({0.0, 1.0}), Poly({1.0 / 3.0, 0.0, 1.0}));
  om.forms.emplace_back(Poly({1.0 / 9.0, 0.0, -1.0 / 3.0}),
                        Poly({0.0, 1.0 / 3.0, 0.0, 4.0 / 3.0, 0.0, 1.0}));
  om.forms.emplace_back(Poly({1.0 / 3.0, 0.0, -1.0 / 3.0}),
                        Poly({0.0, 1.0, 0.0, 1.0}));
  return om;
}

// Solved ansatz coefficients in closed form, from eliminating the node
// conditions by hand; the layout is (f1, f2, g2, f3, g3).

struct S2Coefficients {
  double f1, f2, g2, f3, g3;
};

inline S2Coefficients s2_coefficients(double u, double v) {
  const double th = (u - v) / kSqrt3;
  const double c = std::cos(th), s = std::sin(th);
  const double alpha = kMu * c - 0.5 * kMu * s;
  const double beta = 0.5 * s;
  const double cv = std::cos(v), sv = std::sin(v);
  S2Coefficients out;
  out.f1 = kMu;
  out.f2 = kMu * (c - s);
  out.g2 = -2.0 / 3.0 * s;
  out.f3 = alpha * (cv - sv) - beta * (cv + sv);
  out.g3 = -2.0 * (alpha * sv + beta * cv);
  return out;
}

struct H2Coefficients {
  double f1, f2, g2, f3, g3;
};

inline H2Coefficients h2_coefficients(double u, double v) {
  const double ep = std::exp(u + v), em = std::exp(-u - v);
  const double A = ((2.0 + kSqrt3) * ep + (2.0 - kSqrt3) * em) / 4.0;
  const double B = (em - ep) / 4.0;
  const double cv = std::cos(v), sv = std::sin(v);
  const double re_p = A * cv - B * sv;
  const double im_p = A * sv + B * cv;
  H2Coefficients out;
  out.f1 = 1.0;
  out.f2 = ((kSqrt3 + 1.0) * ep - (kSqrt3 - 1.0) * em) / 2.0;
  out.g2 = ep - em;
  out.f3 = re_p - im_p;
  out.g3 = -2.0 * im_p;
  return out;
}

}  // namespace fixtures
