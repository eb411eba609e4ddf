#pragma once

#include <string>

#include "dyadic/measure_tree.hpp"

namespace dyadic {

struct Rgb {
  double r = 0, g = 0, b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct DaywheelPalette {
  Rgb empty{0, 1, 0};     // zero-mass node
  Rgb pos_pole{1, 0, 0};  // a = +1, all mass on the violation side
  Rgb mid{1, 0, 1};       // a = 0
  Rgb neg_pole{0, 0, 1};  // a = -1
};

struct DaywheelSpec {
  int levels = 12;
  double radius_px = 400.0;
  DaywheelPalette palette;
};

// Piecewise-linear blend: neg_pole -> mid on [-1, 0], mid -> pos_pole on [0, 1].
Rgb coefficient_color(const Rational& coeff, const DaywheelPalette& palette = {});
std::string to_hex(const Rgb& color);

// Center disc for the root coefficient, then ring i with 2^i equal sectors for
// the level-i nodes; the sector of path p spans its unit-interval embedding
// scaled to 360 degrees, clockwise from 12 o'clock. Output is deterministic.
std::string render_daywheel(const DyadicMeasureTree& tree, const DaywheelSpec& spec = {});

}  // namespace dyadic
