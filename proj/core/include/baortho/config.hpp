#pragma once

// JSON run configuration: spectral data block, per-component omega
// coefficients, grid block and output options. Complex scalars are given as
// [re, im] pairs; the point at infinity is the string "inf".

#include <optional>
#include <string>

#include "baortho/one_form.hpp"
#include "baortho/verify.hpp"

namespace baortho {

struct PlotOptions {
  std::string projection = "auto";  // auto | orthographic | disk | plane-x2x3
  int families_u = 12;
  int families_v = 12;
  int samples_per_line = 400;
  double size = 640.0;  // output square side in px
};

struct RunConfig {
  std::string name;
  SpectralData sd;
  OneFormSpec omega;
  GridSpec grid;
  std::optional<GridSpec> curvature_grid;
  std::optional<ReferenceChart> reference;
  PlotOptions plot;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

/// Fault injection for harness self-tests, parsed from KEY=DELTA. Keys A<i>,
/// B and C<i> perturb the extracted residue data; key gamma-asym replaces the
/// sigma-symmetric zero pair (z - gamma_1)(z + gamma_1) of the carrying
/// component's form by a double zero at gamma_1.
struct FaultInjection {
  std::string key;
  double delta = 0.0;
};

FaultInjection parse_fault(const std::string& spec);
bool fault_targets_form(const FaultInjection& fault);
void apply_fault(const FaultInjection& fault, ResidueData& rd);
void apply_fault(const FaultInjection& fault, const SpectralData& sd,
                 OneFormSpec& om);

}  // namespace baortho
