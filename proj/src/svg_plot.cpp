#include "spiralmap/svg_plot.hpp"

#include <algorithm>
#include <sstream>

#include "spiralmap/errors.hpp"
#include "spiralmap/json_format.hpp"
#include "spiralmap/spiral.hpp"

namespace spiralmap::plot {
namespace {

constexpr double kCanvas = 640.0;
constexpr double kPadding = 20.0;

}  // namespace

std::string render_spiral_svg(const sequence::SequenceReport& report, std::size_t curve_samples) {
  const auto& rec = report.records;
  if (rec.size() < 2) throw Error(ErrorCode::InvalidArgument, "plot needs at least two records");
  if (curve_samples < 2) throw Error(ErrorCode::InvalidArgument, "plot needs at least two curve samples");

  double extent = 1.0;
  for (const auto& r : rec) {
    extent = std::max({extent, std::abs(r.x[0]) + r.eps, std::abs(r.x[1]) + r.eps});
  }
  const double scale = (kCanvas / 2.0 - kPadding) / extent;
  const double mid = kCanvas / 2.0;
  const auto f = [](double v) { return format_double(v); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\"" << kCanvas
      << "\" viewBox=\"0 0 " << kCanvas << ' ' << kCanvas << "\">\n"
      << "  <title>Spiral iterates x_0 to x_" << rec.size() - 1 << "</title>\n"
      << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "  <g id=\"data\" transform=\"matrix(" << f(scale) << " 0 0 " << f(-scale) << ' ' << f(mid) << ' '
      << f(mid) << ")\" fill=\"none\">\n";

  svg << "    <circle id=\"unit-circle\" cx=\"0\" cy=\"0\" r=\"1\" stroke=\"#888888\" "
         "stroke-dasharray=\"4 3\" vector-effect=\"non-scaling-stroke\"/>\n";

  const double last = rec.back().alpha;
  svg << "    <polyline id=\"spiral\" stroke=\"#1f77b4\" vector-effect=\"non-scaling-stroke\" points=\"";
  for (std::size_t i = 0; i < curve_samples; ++i) {
    const double alpha = last * static_cast<double>(i) / static_cast<double>(curve_samples - 1);
    const Point p = spiral::curve(alpha);
    svg << (i ? " " : "") << f(p[0]) << ',' << f(p[1]);
  }
  svg << "\"/>\n";

  svg << "    <g id=\"radii\" stroke=\"#d62728\" stroke-opacity=\"0.6\">\n";
  for (const auto& r : rec) {
    svg << "      <circle class=\"radius\" data-n=\"" << r.n << "\" cx=\"" << f(r.x[0]) << "\" cy=\""
        << f(r.x[1]) << "\" r=\"" << f(r.eps) << "\" vector-effect=\"non-scaling-stroke\"/>\n";
  }
  svg << "    </g>\n";

  const double marker = 3.0 / scale;
  svg << "    <g id=\"iterates\" fill=\"black\">\n";
  for (const auto& r : rec) {
    svg << "      <circle class=\"iterate\" data-n=\"" << r.n << "\" cx=\"" << f(r.x[0]) << "\" cy=\""
        << f(r.x[1]) << "\" r=\"" << f(marker) << "\"/>\n";
  }
  svg << "    </g>\n  </g>\n</svg>\n";
  return svg.str();
}

}  // namespace spiralmap::plot
