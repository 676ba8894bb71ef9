#include "egta/plot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "egta/io.hpp"

namespace egta {

namespace {

constexpr double kSqrt3Over2 = 0.86602540378443864676;

struct Projector {
  double size;
  double margin;

  // Barycentric (x1, x2, x3) onto the triangle (0,0), (1,0), (1/2, sqrt3/2),
  // then into SVG pixel coordinates (y grows downward).
  std::pair<double, double> operator()([[maybe_unused]] double x1, double x2,
                                       double x3) const {
    const double px = x2 * 1.0 + x3 * 0.5;
    const double py = x3 * kSqrt3Over2;
    return {margin + px * size, margin + (kSqrt3Over2 - py) * size};
  }
};

std::string svg_header(const Projector& proj) {
  const double width = proj.size + 2 * proj.margin;
  const double height = proj.size * kSqrt3Over2 + 2 * proj.margin;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_double(width)
     << "\" height=\"" << format_double(height) << "\" viewBox=\"0 0 "
     << format_double(width) << " " << format_double(height) << "\">\n";
  os << "  <defs><marker id=\"tip\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" "
        "refY=\"3\" orient=\"auto\"><polygon points=\"0,0 6,3 0,6\" fill=\"#444\"/>"
        "</marker></defs>\n";
  return os.str();
}

std::string triangle_frame(const Projector& proj,
                           const std::vector<std::string>& labels) {
  std::ostringstream os;
  const auto v1 = proj(1, 0, 0);
  const auto v2 = proj(0, 1, 0);
  const auto v3 = proj(0, 0, 1);
  os << "  <polygon points=\"" << format_double(v1.first) << "," << format_double(v1.second)
     << " " << format_double(v2.first) << "," << format_double(v2.second) << " "
     << format_double(v3.first) << "," << format_double(v3.second)
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  if (labels.size() >= 3) {
    os << "  <text x=\"" << format_double(v1.first - 8) << "\" y=\""
       << format_double(v1.second + 16) << "\" text-anchor=\"end\" font-size=\"12\">"
       << labels[0] << "</text>\n";
    os << "  <text x=\"" << format_double(v2.first + 8) << "\" y=\""
       << format_double(v2.second + 16) << "\" font-size=\"12\">" << labels[1]
       << "</text>\n";
    os << "  <text x=\"" << format_double(v3.first) << "\" y=\""
       << format_double(v3.second - 8) << "\" text-anchor=\"middle\" font-size=\"12\">"
       << labels[2] << "</text>\n";
  }
  return os.str();
}

const char* trajectory_color(std::size_t index) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  return palette[index % 8];
}

}  // namespace

std::string trajectories_svg(const std::vector<Trajectory>& trajectories,
                             const std::vector<std::string>& labels,
                             const SvgOptions& options) {
  for (const auto& t : trajectories)
    if (t.dims.size() != 1 || t.dims[0] != 3)
      throw std::invalid_argument("SVG rendering needs single-population 3-strategy trajectories");
  const Projector proj{options.size, options.margin};
  std::ostringstream os;
  os << svg_header(proj) << triangle_frame(proj, labels);
  for (std::size_t n = 0; n < trajectories.size(); ++n) {
    const auto& points = trajectories[n].points;
    // Thin dense integrator output; the curve stays visually identical.
    const std::size_t stride = std::max<std::size_t>(1, points.size() / 600);
    os << "  <path d=\"";
    bool first = true;
    for (std::size_t i = 0; i < points.size(); i += stride) {
      const std::size_t at = std::min(i, points.size() - 1);
      const auto [px, py] = proj(points[at][0], points[at][1], points[at][2]);
      os << (first ? "M" : " L") << format_double(px, 8) << "," << format_double(py, 8);
      first = false;
    }
    const auto [px, py] = proj(points.back()[0], points.back()[1], points.back()[2]);
    os << " L" << format_double(px, 8) << "," << format_double(py, 8);
    os << "\" fill=\"none\" stroke=\"" << trajectory_color(n)
       << "\" stroke-width=\"1.2\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string field_svg(const DirectionalField& field,
                      const std::vector<std::string>& labels,
                      const SvgOptions& options) {
  const Projector proj{options.size, options.margin};
  std::ostringstream os;
  os << svg_header(proj) << triangle_frame(proj, labels);

  double longest = 0.0;
  for (const auto& a : field.arrows)
    longest = std::max(longest, std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])}));
  const double scale = longest > 0.0 ? options.arrow_length / longest : 0.0;

  for (std::size_t i = 0; i < field.points.size(); ++i) {
    const auto& p = field.points[i];
    const auto& a = field.arrows[i];
    const auto [x1, y1] = proj(p[0], p[1], p[2]);
    const auto [x2, y2] =
        proj(p[0] + scale * a[0], p[1] + scale * a[1], p[2] + scale * a[2]);
    os << "  <line x1=\"" << format_double(x1, 8) << "\" y1=\"" << format_double(y1, 8)
       << "\" x2=\"" << format_double(x2, 8) << "\" y2=\"" << format_double(y2, 8)
       << "\" stroke=\"#444\" stroke-width=\"1\" marker-end=\"url(#tip)\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace egta
