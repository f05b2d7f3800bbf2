#include "baortho/config.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace baortho {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) {
  throw std::runtime_error("config error: " + what);
}

Complex parse_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    bad(where + ": complex scalars are [re, im] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

ProjectivePoint parse_point(const json& j, const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return ProjectivePoint::infinity();
    bad(where + ": unknown point literal '" + j.get<std::string>() + "'");
  }
  return ProjectivePoint(parse_complex(j, where));
}

PointOnCurve parse_point_on_curve(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("component") || !j.contains("point"))
    bad(where + ": expected {component, point}");
  PointOnCurve p;
  p.component = j["component"].get<int>();
  p.point = parse_point(j["point"], where + ".point");
  return p;
}

Poly parse_poly(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where + ": expected a coefficient list");
  std::vector<Complex> coeffs;
  coeffs.reserve(j.size());
  for (size_t k = 0; k < j.size(); ++k)
    coeffs.push_back(parse_complex(j[k], where + "[" + std::to_string(k) + "]"));
  return Poly(std::move(coeffs));
}

GridSpec parse_grid(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("lo") || !j.contains("hi") || !j.contains("resolution"))
    bad(where + ": expected {lo, hi, resolution}");
  GridSpec g;
  for (const auto& v : j["lo"]) g.lo.push_back(v.get<double>());
  for (const auto& v : j["hi"]) g.hi.push_back(v.get<double>());
  for (const auto& v : j["resolution"]) g.res.push_back(v.get<int>());
  if (g.lo.size() != g.hi.size() || g.lo.size() != g.res.size())
    bad(where + ": lo/hi/resolution lengths differ");
  return g;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad(std::string("not valid JSON: ") + e.what());
  }

  RunConfig cfg;
  cfg.name = j.value("name", "");
  cfg.sd.n = j.value("n", 0);
  cfg.sd.components = j.value("components", 0);
  cfg.sd.curvature_target = j.value("curvature", +1);
  if (!j.contains("h") || !j["h"].is_number()) bad("missing real field 'h'");
  cfg.sd.h = j["h"].get<double>();

  for (const char* field : {"P", "Q", "gamma", "glue", "omega"})
    if (!j.contains(field)) bad(std::string("missing field '") + field + "'");

  for (const auto& p : j["P"]) cfg.sd.P.push_back(parse_point_on_curve(p, "P"));
  for (const auto& q : j["Q"]) cfg.sd.Q.push_back(parse_point_on_curve(q, "Q"));
  if (!j.contains("r")) bad("missing field 'r'");
  cfg.sd.r = parse_point_on_curve(j["r"], "r");
  if (j.contains("r_zeros"))
    for (const auto& p : j["r_zeros"])
      cfg.sd.r_zeros.push_back(parse_point_on_curve(p, "r_zeros"));
  for (const auto& p : j["gamma"])
    cfg.sd.gamma.push_back(parse_point_on_curve(p, "gamma"));
  for (const auto& g : j["glue"]) {
    if (!g.is_object() || !g.contains("first") || !g.contains("second"))
      bad("glue: expected {first, second}");
    cfg.sd.glue.push_back({parse_point_on_curve(g["first"], "glue.first"),
                           parse_point_on_curve(g["second"], "glue.second")});
  }

  for (size_t c = 0; c < j["omega"].size(); ++c) {
    const auto& f = j["omega"][c];
    const std::string where = "omega[" + std::to_string(c) + "]";
    if (!f.is_object() || !f.contains("num") || !f.contains("den"))
      bad(where + ": expected {num, den}");
    Poly num = parse_poly(f["num"], where + ".num");
    Poly den = parse_poly(f["den"], where + ".den");
    if (den.is_zero()) bad(where + ": denominator is identically zero");
    cfg.omega.forms.emplace_back(std::move(num), std::move(den));
  }

  if (!j.contains("grid")) bad("missing field 'grid'");
  cfg.grid = parse_grid(j["grid"], "grid");
  if (j.contains("curvature_grid"))
    cfg.curvature_grid = parse_grid(j["curvature_grid"], "curvature_grid");

  if (j.contains("reference")) {
    const std::string ref = j["reference"].get<std::string>();
    cfg.reference = reference_chart_from_string(ref);
    if (!cfg.reference) bad("unknown reference chart '" + ref + "'");
  }

  if (j.contains("plot")) {
    const auto& p = j["plot"];
    cfg.plot.projection = p.value("projection", cfg.plot.projection);
    if (p.contains("families")) {
      if (!p["families"].is_array() || p["families"].size() != 2)
        bad("plot.families: expected [families_u, families_v]");
      cfg.plot.families_u = p["families"][0].get<int>();
      cfg.plot.families_v = p["families"][1].get<int>();
    }
    cfg.plot.samples_per_line = p.value("samples", cfg.plot.samples_per_line);
    cfg.plot.size = p.value("size", cfg.plot.size);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

FaultInjection parse_fault(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos)
    throw std::runtime_error("fault injection must be KEY=DELTA, got '" + spec + "'");
  FaultInjection f;
  f.key = spec.substr(0, eq);
  try {
    f.delta = std::stod(spec.substr(eq + 1));
  } catch (const std::exception&) {
    throw std::runtime_error("fault injection delta is not a number in '" + spec + "'");
  }
  return f;
}

bool fault_targets_form(const FaultInjection& fault) {
  return fault.key == "gamma-asym";
}

void apply_fault(const FaultInjection& fault, ResidueData& rd) {
  const std::string& k = fault.key;
  if (k == "B") {
    rd.B += fault.delta;
    return;
  }
  if (k.size() >= 2 && (k[0] == 'A' || k[0] == 'C')) {
    int idx = -1;
    try {
      idx = std::stoi(k.substr(1)) - 1;
    } catch (const std::exception&) {
      throw std::runtime_error("unknown fault key '" + k + "'");
    }
    auto& target = k[0] == 'A' ? rd.A : rd.C;
    if (idx < 0 || idx >= static_cast<int>(target.size()))
      throw std::runtime_error("fault index out of range in '" + k + "'");
    target[static_cast<size_t>(idx)] += fault.delta;
    return;
  }
  throw std::runtime_error("unknown fault key '" + k + "'");
}

void apply_fault(const FaultInjection& fault, const SpectralData& sd,
                 OneFormSpec& om) {
  if (fault.key != "gamma-asym")
    throw std::runtime_error("unknown form fault key '" + fault.key + "'");
  if (sd.gamma.empty())
    throw std::runtime_error("gamma-asym fault needs at least one gamma point");
  const PointOnCurve& g = sd.gamma.front();
  const Complex gv = g.point.value();
  RationalFunction& f = om.forms[static_cast<size_t>(g.component)];
  // (z + gamma) -> (z - gamma): the zero pair degenerates to a double zero.
  const Complex mirror = -gv;
  bool has_mirror_root = false;
  for (const auto& r : f.num().roots())
    if (std::abs(r - mirror) <= 1e-6 * std::max(1.0, std::abs(mirror)))
      has_mirror_root = true;
  if (!has_mirror_root)
    throw std::runtime_error("gamma-asym fault: form numerator has no zero at -gamma_1");
  const Complex root = gv;
  Poly num = f.num().deflated(mirror) * Poly::from_roots(std::span(&root, 1));
  f = RationalFunction(std::move(num), f.den());
}

}  // namespace baortho
