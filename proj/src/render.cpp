#include "modchaos/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "modchaos/error.hpp"
#include "modchaos/randproc.hpp"

namespace modchaos {

std::vector<std::pair<double, double>> parse_path_csv(const std::string& csv) {
  std::vector<std::pair<double, double>> points;
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != "t,x")
    raise(ErrorCode::ParseError, "expected a 't,x' header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) raise(ErrorCode::ParseError, "malformed CSV row");
    points.emplace_back(std::stod(line.substr(0, comma)),
                        std::stod(line.substr(comma + 1)));
  }
  return points;
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string render_path_svg(const std::vector<std::pair<double, double>>& points,
                            const SvgOptions& options) {
  if (points.empty()) raise(ErrorCode::InvalidArgument, "nothing to render");

  double t_lo = points[0].first, t_hi = points[0].first;
  double x_lo = points[0].second, x_hi = points[0].second;
  for (const auto& [t, x] : points) {
    t_lo = std::min(t_lo, t);
    t_hi = std::max(t_hi, t);
    x_lo = std::min(x_lo, x);
    x_hi = std::max(x_hi, x);
  }
  if (t_hi == t_lo) t_hi = t_lo + 1.0;
  if (x_hi == x_lo) x_hi = x_lo + 1.0;

  const double margin = 48.0;
  const double w = options.width - 2 * margin;
  const double h = options.height - 2 * margin;
  auto px = [&](double t) { return margin + (t - t_lo) / (t_hi - t_lo) * w; };
  auto py = [&](double x) { return margin + (x_hi - x) / (x_hi - x_lo) * h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
      << "\" height=\"" << options.height << "\" viewBox=\"0 0 " << options.width
      << ' ' << options.height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    svg << "<text x=\"" << options.width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"14\">" << options.title
        << "</text>\n";
  }

  // axes with min/max tick labels
  svg << "<line x1=\"" << num(margin) << "\" y1=\"" << num(options.height - margin)
      << "\" x2=\"" << num(options.width - margin) << "\" y2=\""
      << num(options.height - margin) << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << num(margin) << "\" y1=\"" << num(margin) << "\" x2=\""
      << num(margin) << "\" y2=\"" << num(options.height - margin)
      << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << num(margin) << "\" y=\"" << num(options.height - margin + 16)
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << num(t_lo) << "</text>\n";
  svg << "<text x=\"" << num(options.width - margin) << "\" y=\""
      << num(options.height - margin + 16)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << num(t_hi) << "</text>\n";
  svg << "<text x=\"" << num(margin - 6) << "\" y=\"" << num(options.height - margin)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << num(x_lo) << "</text>\n";
  svg << "<text x=\"" << num(margin - 6) << "\" y=\"" << num(margin + 4)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << num(x_hi) << "</text>\n";

  if (options.identity_reference_lines) {
    auto clamp_y = [&](double x) { return std::min(std::max(x, x_lo), x_hi); };
    svg << "<line x1=\"" << num(px(t_lo)) << "\" y1=\"" << num(py(clamp_y(t_lo)))
        << "\" x2=\"" << num(px(t_hi)) << "\" y2=\"" << num(py(clamp_y(t_hi)))
        << "\" stroke=\"red\" stroke-dasharray=\"6 4\"/>\n";
    svg << "<line x1=\"" << num(px(t_lo)) << "\" y1=\"" << num(py(clamp_y(-t_lo)))
        << "\" x2=\"" << num(px(t_hi)) << "\" y2=\"" << num(py(clamp_y(-t_hi)))
        << "\" stroke=\"blue\" stroke-dasharray=\"6 4\"/>\n";
  }

  svg << "<polyline fill=\"none\" stroke=\"#202020\" stroke-width=\"1.5\" points=\"";
  for (const auto& [t, x] : points) svg << num(px(t)) << ',' << num(py(x)) << ' ';
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

}  // namespace modchaos
