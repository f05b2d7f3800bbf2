#pragma once

// Grid sampling to CSV and coordinate-line plots to static SVG.

#include <ostream>
#include <string>

#include "baortho/chart.hpp"
#include "baortho/config.hpp"
#include "baortho/verify.hpp"

namespace baortho {

/// Shortest decimal that round-trips the double (17 significant digits).
std::string format_g17(double v);

/// One row per grid point: u columns, x^1..x^{n+1}, H_1..H_n, the embedding
/// residual and the worst mixed tangent inner product. LF line endings,
/// deterministic %.17g formatting.
void write_sample_csv(std::ostream& os, const CoordinateChart& chart,
                      const GridSpec& grid);

/// Static SVG of the coordinate lines u = const and v = const (n = 2 only).
/// Spheres are drawn in orthographic projection onto the (x2, x3) plane with
/// lines lying mostly on the hidden hemisphere dashed; hyperboloids map to
/// the unit disk through (x1, x2, x3) -> (x2, x3)/(1 + x1) or drop to the
/// (x2, x3) plane, per options.
std::string render_coordinate_lines_svg(const CoordinateChart& chart,
                                        const GridSpec& domain,
                                        const PlotOptions& options);

}  // namespace baortho
