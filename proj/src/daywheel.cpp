#include "dyadic/daywheel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "dyadic/error.hpp"

namespace dyadic {

namespace {

Rgb blend(const Rgb& from, const Rgb& to, double t) {
  return {from.r + (to.r - from.r) * t, from.g + (to.g - from.g) * t, from.b + (to.b - from.b) * t};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Point {
  double x, y;
};

Point polar(double cx, double cy, double r, double degrees) {
  const double rad = degrees * std::numbers::pi / 180.0;
  return {cx + r * std::sin(rad), cy - r * std::cos(rad)};
}

std::string annular_sector(double cx, double cy, double r_in, double r_out, double start_deg, double end_deg) {
  const int large = end_deg - start_deg > 180.0 ? 1 : 0;
  const Point a = polar(cx, cy, r_out, start_deg);
  const Point b = polar(cx, cy, r_out, end_deg);
  const Point c = polar(cx, cy, r_in, end_deg);
  const Point d = polar(cx, cy, r_in, start_deg);
  return "M" + fmt(a.x) + " " + fmt(a.y) + " A" + fmt(r_out) + " " + fmt(r_out) + " 0 " + std::to_string(large) +
         " 1 " + fmt(b.x) + " " + fmt(b.y) + " L" + fmt(c.x) + " " + fmt(c.y) + " A" + fmt(r_in) + " " +
         fmt(r_in) + " 0 " + std::to_string(large) + " 0 " + fmt(d.x) + " " + fmt(d.y) + " Z";
}

}  // namespace

Rgb coefficient_color(const Rational& coeff, const DaywheelPalette& palette) {
  if (coeff < -1 || coeff > 1) {
    throw Error(ErrorCode::InvalidArgument, "coefficient " + to_fraction_string(coeff) + " outside [-1, 1]");
  }
  if (coeff == 1) return palette.pos_pole;
  if (coeff == -1) return palette.neg_pole;
  if (coeff == 0) return palette.mid;
  const double v = to_double(coeff);
  return v > 0 ? blend(palette.mid, palette.pos_pole, v) : blend(palette.mid, palette.neg_pole, -v);
}

std::string to_hex(const Rgb& color) {
  auto channel = [](double c) {
    long v = std::lround(std::clamp(c, 0.0, 1.0) * 255.0);
    return static_cast<unsigned>(v);
  };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", channel(color.r), channel(color.g), channel(color.b));
  return buf;
}

std::string render_daywheel(const DyadicMeasureTree& tree, const DaywheelSpec& spec) {
  if (spec.levels < 1) throw Error(ErrorCode::InvalidArgument, "daywheel needs at least one ring");
  if (spec.levels > tree.maxscale()) {
    throw Error(ErrorCode::InvalidArgument, "daywheel levels " + std::to_string(spec.levels) +
                                                " exceed maxscale " + std::to_string(tree.maxscale()));
  }
  if (spec.levels > 20) throw Error(ErrorCode::LimitExceeded, "daywheel limited to 20 rings");
  if (!(spec.radius_px > 0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");

  const double margin = 4.0;
  const double size = 2 * spec.radius_px + 2 * margin;
  const double cx = size / 2, cy = size / 2;
  const double ring = spec.radius_px / (spec.levels + 1);

  auto fill_for = [&](const DyadicPath& path) {
    if (!tree.contains(path)) return to_hex(spec.palette.empty);
    return to_hex(coefficient_color(tree.coeff(path), spec.palette));
  };
  auto coeff_attr = [&](const DyadicPath& path) {
    return tree.contains(path) ? to_fraction_string(tree.coeff(path)) : std::string("empty");
  };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(size) + "\" height=\"" +
         fmt(size) + "\" viewBox=\"0 0 " + fmt(size) + " " + fmt(size) + "\">\n";
  out += "<title>" + (tree.label().empty() ? std::string("daywheel") : xml_escape(tree.label())) + "</title>\n";
  out += "<g stroke=\"#ffffff\" stroke-width=\"0.25\">\n";

  const DyadicPath root;
  out += "<path data-path=\"\" data-coeff=\"" + coeff_attr(root) + "\" fill=\"" + fill_for(root) + "\" d=\"M" +
         fmt(cx) + " " + fmt(cy - ring) + " A" + fmt(ring) + " " + fmt(ring) + " 0 1 1 " + fmt(cx) + " " +
         fmt(cy + ring) + " A" + fmt(ring) + " " + fmt(ring) + " 0 1 1 " + fmt(cx) + " " + fmt(cy - ring) +
         " Z\"/>\n";

  for (int level = 1; level <= spec.levels; ++level) {
    const std::size_t count = std::size_t{1} << level;
    const double span = 360.0 / static_cast<double>(count);
    for (std::size_t i = 0; i < count; ++i) {
      std::string bits(static_cast<std::size_t>(level), '0');
      for (int k = 0; k < level; ++k) {
        if (i >> (level - 1 - k) & 1u) bits[static_cast<std::size_t>(k)] = '1';
      }
      const DyadicPath path(bits);
      out += "<path data-path=\"" + bits + "\" data-coeff=\"" + coeff_attr(path) + "\" fill=\"" + fill_for(path) +
             "\" d=\"" +
             annular_sector(cx, cy, ring * level, ring * (level + 1), span * static_cast<double>(i),
                            span * static_cast<double>(i + 1)) +
             "\"/>\n";
    }
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace dyadic
