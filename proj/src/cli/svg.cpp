#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "obstruct/cli.hpp"
#include "obstruct/errors.hpp"

namespace obstruct::cli {

namespace {

constexpr int kVertices = 256;

// Closed curve |x|^p + |y|^p = rho^p in pixel coordinates; reversed for holes.
void superellipse(std::ostringstream& path, double rho, double p, double half, double scale,
                  bool reverse) {
  char buf[64];
  for (int s = 0; s < kVertices; ++s) {
    const int idx = reverse ? kVertices - s : s;
    const double theta = 2.0 * std::numbers::pi * idx / kVertices;
    const double c = std::cos(theta), sn = std::sin(theta);
    const double x = rho * std::copysign(std::pow(std::fabs(c), 2.0 / p), c);
    const double y = rho * std::copysign(std::pow(std::fabs(sn), 2.0 / p), sn);
    std::snprintf(buf, sizeof buf, "%c%.3f %.3f ", s == 0 ? 'M' : 'L', (x + half) * scale,
                  (half - y) * scale);
    path << buf;
  }
  path << "Z ";
}

}  // namespace

SvgRender render_annulus_svg(const AnnulusSpec& spec, double side, int pixels) {
  if (spec.dim != 2) throw InputError("render draws d = 2 only");
  if (!(side > 0.0)) throw InputError("R must be positive");
  if (pixels < 16 || pixels > 8192) throw InputError("pixels must lie in [16, 8192]");
  const double p = spec.p;
  const double hw = spec.half_width();
  const double half = side / 2.0;
  const double scale = pixels / side;
  const double corner = 2.0 * std::pow(half, p);
  if (corner > 1e5) throw BudgetError("too many shells to draw; reduce R");

  SvgRender out;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << pixels << "\" height=\"" << pixels
      << "\" viewBox=\"0 0 " << pixels << ' ' << pixels << "\">\n";
  svg << "<clipPath id=\"frame\"><rect x=\"0\" y=\"0\" width=\"" << pixels << "\" height=\""
      << pixels << "\"/></clipPath>\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << pixels << "\" height=\"" << pixels
      << "\" fill=\"white\" stroke=\"black\"/>\n";
  svg << "<g clip-path=\"url(#frame)\" fill=\"#5b7fb0\" fill-rule=\"evenodd\" stroke=\"none\">\n";
  for (int m = 0; m - hw < corner; ++m) {
    std::ostringstream path;
    superellipse(path, std::pow(m + hw, 1.0 / p), p, half, scale, false);
    if (m - hw > 0.0) superellipse(path, std::pow(m - hw, 1.0 / p), p, half, scale, true);
    svg << "<path d=\"" << path.str() << "\"/>\n";
    ++out.shells_drawn;
    if (m - hw < std::pow(half, p)) ++out.shells_inside;
  }
  svg << "</g>\n</svg>\n";
  out.svg = svg.str();
  return out;
}

}  // namespace obstruct::cli
