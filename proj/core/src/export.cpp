#include "baortho/export.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace baortho {

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_sample_csv(std::ostream& os, const CoordinateChart& chart,
                      const GridSpec& grid) {
  const int n = chart.dim();
  const auto& eps = chart.signature();

  if (n == 2) {
    os << "u,v";
  } else {
    for (int i = 0; i < n; ++i) os << (i ? "," : "") << "u" << i + 1;
  }
  for (int k = 0; k < chart.ambient_dim(); ++k) os << ",x" << k + 1;
  for (int i = 0; i < n; ++i) os << ",H" << i + 1;
  os << ",embed_residual,orth_residual\n";

  for (long p = 0; p < grid.total_points(); ++p) {
    const std::vector<double> u = grid.point(p);
    const BASolution sol = chart.solver().solve(u);
    const std::vector<double> x = chart.position_from(sol);
    const std::vector<double> H = chart.lame_from(sol);

    double norm = 0.0;
    for (size_t k = 0; k < x.size(); ++k) norm += eps[k] * x[k] * x[k];
    const double embed = std::abs(norm - 1.0);

    double orth = 0.0;
    std::vector<std::vector<double>> t(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      t[static_cast<size_t>(i)].resize(x.size());
      for (size_t k = 0; k < x.size(); ++k)
        t[static_cast<size_t>(i)][k] =
            std::sqrt(std::abs(chart.residues().A[k])) *
            chart.solver().eval_psi_derivative(sol, i, chart.solver().data().Q[k]).real();
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double dot = 0.0;
        for (size_t k = 0; k < x.size(); ++k)
          dot += eps[k] * t[static_cast<size_t>(i)][k] * t[static_cast<size_t>(j)][k];
        orth = std::max(orth, std::abs(dot));
      }

    for (size_t i = 0; i < u.size(); ++i) os << (i ? "," : "") << format_g17(u[i]);
    for (double xv : x) os << "," << format_g17(xv);
    for (double hv : H) os << "," << format_g17(hv);
    os << "," << format_g17(embed) << "," << format_g17(orth) << "\n";
  }
}

namespace {

struct Projected {
  double x, y;
  bool front;  // on the viewer-facing hemisphere (spheres only)
};

struct Projector {
  enum class Kind { Orthographic, Disk, Plane } kind;

  Projected operator()(const std::vector<double>& x) const {
    switch (kind) {
      case Kind::Orthographic:
        return {x[1], x[2], x[0] >= 0.0};
      case Kind::Disk:
        return {x[1] / (1.0 + x[0]), x[2] / (1.0 + x[0]), true};
      case Kind::Plane:
      default:
        return {x[1], x[2], true};
    }
  }
};

Projector::Kind projector_kind(const CoordinateChart& chart,
                               const std::string& projection) {
  if (projection == "orthographic") return Projector::Kind::Orthographic;
  if (projection == "disk") return Projector::Kind::Disk;
  if (projection == "plane-x2x3") return Projector::Kind::Plane;
  if (projection == "auto")
    return chart.curvature() > 0 ? Projector::Kind::Orthographic
                                 : Projector::Kind::Disk;
  throw std::runtime_error("unknown plot projection '" + projection + "'");
}

}  // namespace

std::string render_coordinate_lines_svg(const CoordinateChart& chart,
                                        const GridSpec& domain,
                                        const PlotOptions& options) {
  if (chart.dim() != 2)
    throw std::invalid_argument("coordinate-line plot supports n = 2 only");
  if (domain.dim() != 2)
    throw std::invalid_argument("plot domain must be two dimensional");

  const Projector project{projector_kind(chart, options.projection)};
  const double size = options.size;
  // World window [-1.15, 1.15]^2 mapped onto the canvas, y up.
  const double half = 1.15;
  auto sx = [&](double wx) { return (wx + half) / (2.0 * half) * size; };
  auto sy = [&](double wy) { return (half - wy) / (2.0 * half) * size; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << size << "\" height=\"" << size << "\" viewBox=\"0 0 " << size << " "
      << size << "\">\n";
  svg << "  <rect width=\"" << size << "\" height=\"" << size
      << "\" fill=\"white\"/>\n";
  svg << "  <line x1=\"" << sx(-half) << "\" y1=\"" << sy(0.0) << "\" x2=\""
      << sx(half) << "\" y2=\"" << sy(0.0)
      << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  svg << "  <line x1=\"" << sx(0.0) << "\" y1=\"" << sy(-half) << "\" x2=\""
      << sx(0.0) << "\" y2=\"" << sy(half)
      << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  // Silhouette of the sphere / boundary of the disk model.
  svg << "  <circle cx=\"" << sx(0.0) << "\" cy=\"" << sy(0.0) << "\" r=\""
      << size / (2.0 * half) << "\" fill=\"none\" stroke=\"#888888\" "
      << "stroke-width=\"1\"/>\n";

  const int samples = std::max(2, options.samples_per_line);
  auto emit_line = [&](int fixed_dim, double fixed_value, const char* stroke) {
    std::vector<Projected> pts;
    pts.reserve(static_cast<size_t>(samples));
    const int running = 1 - fixed_dim;
    int hidden = 0;
    for (int s = 0; s < samples; ++s) {
      double u[2];
      u[fixed_dim] = fixed_value;
      u[running] = domain.lo[static_cast<size_t>(running)] +
                   static_cast<double>(s) *
                       (domain.hi[static_cast<size_t>(running)] -
                        domain.lo[static_cast<size_t>(running)]) /
                       static_cast<double>(samples - 1);
      const Projected q = project(chart.position(u));
      if (!q.front) ++hidden;
      pts.push_back(q);
    }
    const bool dashed = 2 * hidden > samples;
    svg << "  <polyline fill=\"none\" stroke=\"" << stroke
        << "\" stroke-width=\"1.2\"";
    if (dashed) svg << " stroke-dasharray=\"5 4\"";
    svg << " points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
      if (i) svg << " ";
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.2f,%.2f", sx(pts[i].x), sy(pts[i].y));
      svg << buf;
    }
    svg << "\"/>\n";
  };

  for (int k = 0; k < options.families_u; ++k) {
    const double t = options.families_u == 1
                         ? 0.5
                         : static_cast<double>(k) /
                               static_cast<double>(options.families_u - 1);
    emit_line(0, domain.lo[0] + t * (domain.hi[0] - domain.lo[0]), "#1f6fb2");
  }
  for (int k = 0; k < options.families_v; ++k) {
    const double t = options.families_v == 1
                         ? 0.5
                         : static_cast<double>(k) /
                               static_cast<double>(options.families_v - 1);
    emit_line(1, domain.lo[1] + t * (domain.hi[1] - domain.lo[1]), "#c23b22");
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace baortho
