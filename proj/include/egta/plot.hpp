#pragma once

#include <string>
#include <vector>

#include "egta/dynamics.hpp"

namespace egta {

struct SvgOptions {
  double size = 480.0;    // triangle edge in px
  double margin = 40.0;
  double arrow_length = 0.05;  // longest arrow, in simplex units
};

/// Equilateral-triangle projection of the 2-simplex with vertex coordinates
/// (0,0), (1,0), (1/2, sqrt(3)/2). One <path> element per trajectory.
std::string trajectories_svg(const std::vector<Trajectory>& trajectories,
                             const std::vector<std::string>& labels,
                             const SvgOptions& options = {});

/// Arrow grid on the same projection; one <line> marker per grid arrow.
std::string field_svg(const DirectionalField& field,
                      const std::vector<std::string>& labels,
                      const SvgOptions& options = {});

}  // namespace egta
