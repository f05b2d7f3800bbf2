// Command line front end: validate spectral data, run the verification
// suite, sample the chart to CSV, and plot coordinate lines to SVG.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "baortho/config.hpp"
#include "baortho/export.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::string grid_override;
  std::string fault_spec;
};

void apply_grid_override(baortho::RunConfig& cfg, const std::string& spec) {
  if (spec.empty()) return;
  const auto x = spec.find('x');
  if (x == std::string::npos)
    throw std::runtime_error("--grid expects NxM, got '" + spec + "'");
  const int nu = std::stoi(spec.substr(0, x));
  const int nv = std::stoi(spec.substr(x + 1));
  if (cfg.grid.res.size() != 2)
    throw std::runtime_error("--grid override needs a two dimensional grid");
  cfg.grid.res = {nu, nv};
}

// Builds the chart, optionally injecting a fault into the form (before the
// divisor checks) or into the extracted residue data (after normalization).
baortho::CoordinateChart build_chart(const baortho::RunConfig& cfg,
                                     const std::optional<baortho::FaultInjection>& fault) {
  using namespace baortho;
  SpectralData sd = cfg.sd;
  OneFormSpec om = cfg.omega;
  if (fault && fault_targets_form(*fault)) apply_fault(*fault, sd, om);

  const ValidationReport sd_report = validate(sd);
  if (!sd_report.ok())
    throw std::invalid_argument("spectral data invalid:\n" + sd_report.str());
  const ValidationReport div_report = check_divisor(sd, om);
  if (!div_report.ok())
    throw std::invalid_argument("divisor conditions violated:\n" + div_report.str());
  for (double r : check_glue_residues(sd, om))
    if (r > kGlueResidueTol)
      throw std::invalid_argument("node residue matching fails: residual " +
                                  std::to_string(r));

  const ResidueData raw = extract_residue_data(sd, om);
  auto [form, rd] = normalize_form(sd, om, raw);
  if (fault && !fault_targets_form(*fault)) apply_fault(*fault, rd);
  return CoordinateChart(std::move(sd), std::move(form), std::move(rd));
}

int cmd_validate(const CommonArgs& args) {
  using namespace baortho;
  const RunConfig cfg = load_config(args.config_path);

  const ValidationReport sd_report = validate(cfg.sd);
  std::cout << "spectral data: " << sd_report.str();
  bool ok = sd_report.ok();

  if (ok) {
    const ValidationReport div_report = check_divisor(cfg.sd, cfg.omega);
    std::cout << "divisor conditions: " << div_report.str();
    ok = ok && div_report.ok();

    const auto residuals = check_glue_residues(cfg.sd, cfg.omega);
    double worst = 0.0;
    for (size_t i = 0; i < residuals.size(); ++i) {
      std::cout << "node " << i + 1 << " residue matching residual: "
                << residuals[i] << "\n";
      worst = std::max(worst, residuals[i]);
    }
    if (worst > kGlueResidueTol) {
      std::cout << "violation [node-residues] worst residual " << worst << "\n";
      ok = false;
    }
  }
  std::cout << (ok ? "configuration valid\n" : "configuration invalid\n");
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_verify(const CommonArgs& args) {
  using namespace baortho;
  RunConfig cfg = load_config(args.config_path);
  apply_grid_override(cfg, args.grid_override);

  std::optional<FaultInjection> fault;
  if (!args.fault_spec.empty()) fault = parse_fault(args.fault_spec);

  CoordinateChart chart = [&] {
    try {
      return build_chart(cfg, fault);
    } catch (const std::invalid_argument& e) {
      std::cout << e.what() << "\n";
      std::cout << "verification FAILED\n";
      std::exit(kExitCheckFailed);
    }
  }();

  VerifyOptions options;
  options.grid = cfg.grid;
  options.curvature_grid = cfg.curvature_grid;
  options.reference = fault ? std::nullopt : cfg.reference;
  const VerificationReport report = run_full_verification(chart, options);

  std::cout << report.str();
  if (!args.out_path.empty()) {
    std::ofstream out(args.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + args.out_path + "'");
    out << report.csv();
  }
  std::cout << (report.all_pass() ? "verification passed\n" : "verification FAILED\n");
  return report.all_pass() ? kExitOk : kExitCheckFailed;
}

int cmd_sample(const CommonArgs& args) {
  using namespace baortho;
  RunConfig cfg = load_config(args.config_path);
  apply_grid_override(cfg, args.grid_override);
  const CoordinateChart chart = build_chart(cfg, std::nullopt);

  if (args.out_path.empty()) {
    write_sample_csv(std::cout, chart, cfg.grid);
  } else {
    std::ofstream out(args.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + args.out_path + "'");
    write_sample_csv(out, chart, cfg.grid);
  }
  return kExitOk;
}

int cmd_plot(const CommonArgs& args) {
  using namespace baortho;
  const RunConfig cfg = load_config(args.config_path);
  const CoordinateChart chart = build_chart(cfg, std::nullopt);
  const std::string svg = render_coordinate_lines_svg(chart, cfg.grid, cfg.plot);

  if (args.out_path.empty()) {
    std::cout << svg;
  } else {
    std::ofstream out(args.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + args.out_path + "'");
    out << svg;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonal curvilinear coordinate systems on the sphere and "
               "hyperbolic plane from spectral data on nodal rational curves"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&args](CLI::App* cmd, bool grid, bool fault) {
    cmd->add_option("config", args.config_path, "JSON run configuration")
        ->required();
    cmd->add_option("--out", args.out_path, "output path");
    if (grid) cmd->add_option("--grid", args.grid_override, "grid override NxM");
    if (fault)
      cmd->add_option("--inject-fault", args.fault_spec,
                      "perturb a quantity (KEY=DELTA, e.g. A1=+1e-3 or "
                      "gamma-asym=1) to self-test the checks");
  };

  CLI::App* validate_cmd =
      app.add_subcommand("validate", "check the spectral data and the 1-form");
  add_common(validate_cmd, false, false);
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the full verification suite");
  add_common(verify_cmd, true, true);
  CLI::App* sample_cmd =
      app.add_subcommand("sample", "sample the chart on a grid to CSV");
  add_common(sample_cmd, true, false);
  CLI::App* plot_cmd =
      app.add_subcommand("plot", "draw coordinate lines to a static SVG");
  add_common(plot_cmd, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(args);
    if (verify_cmd->parsed()) return cmd_verify(args);
    if (sample_cmd->parsed()) return cmd_sample(args);
    if (plot_cmd->parsed()) return cmd_plot(args);
  } catch (const std::runtime_error& e) {
    // Configuration and I/O problems.
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
