#pragma once

// Minimal static SVG polyline rendering of sampled paths.

#include <string>
#include <utility>
#include <vector>

namespace modchaos {

struct SvgOptions {
  int width = 720;
  int height = 480;
  std::string title;
  bool identity_reference_lines = false;  // dashed t and -t guides
};

/// Renders (t, x) vertices as one polyline with axes and tick labels.
std::string render_path_svg(const std::vector<std::pair<double, double>>& points,
                            const SvgOptions& options = {});

/// Parses CSV with a "t,x" header back into vertices.
std::vector<std::pair<double, double>> parse_path_csv(const std::string& csv);

}  // namespace modchaos
