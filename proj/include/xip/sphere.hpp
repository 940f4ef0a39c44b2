#pragma once

// Derivative-free minimization over the unit sphere, shared by the brute-force
// interferometric power oracle and the discord measurement search.

#include <array>
#include <functional>
#include <vector>

namespace xip::sphere {

using Direction = std::array<double, 3>;

Direction from_angles(double theta, double phi);
// theta in [0, pi], phi in [0, 2 pi).
std::array<double, 2> to_angles(const Direction& n);

// Golden-angle spiral of `count` nearly uniform points.
std::vector<Direction> fibonacci_points(int count);

struct Minimum {
  double value = 0.0;
  Direction n{0.0, 0.0, 1.0};
};

using Objective = std::function<double(const Direction&)>;

// Alternating golden-section searches along the two angles of a spherical frame
// re-centred on the incumbent each round (the incumbent sits on the frame's
// equator, away from the coordinate poles). Never returns a worse point than `start`.
Minimum refine(const Objective& f, Minimum start, int rounds, double window);

}  // namespace xip::sphere
