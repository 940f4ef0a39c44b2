#include "xip/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace xip::sphere {

namespace {

Direction cross(const Direction& a, const Direction& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Direction normalized(Direction v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  for (auto& x : v) x /= n;
  return v;
}

struct Frame {
  Direction e0, e1, pole;

  // theta measured from the pole, phi from e0 towards e1; (pi/2, 0) is e0 itself.
  Direction at(double theta, double phi) const {
    const double st = std::sin(theta), ct = std::cos(theta);
    const double cp = std::cos(phi), sp = std::sin(phi);
    Direction v;
    for (int k = 0; k < 3; ++k) v[k] = st * (cp * e0[k] + sp * e1[k]) + ct * pole[k];
    return normalized(v);
  }
};

Frame frame_around(const Direction& n) {
  // Pick the coordinate axis least aligned with n to build the pole.
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(n[i]) < std::abs(n[k])) k = i;
  Direction axis{0.0, 0.0, 0.0};
  axis[k] = 1.0;
  const Direction pole = normalized(cross(n, axis));
  const Direction e1 = cross(pole, n);
  return {n, e1, pole};
}

// Golden-section search of g on [lo, hi]; returns the abscissa of the best
// point seen and its value.
template <typename G>
std::pair<double, double> golden(const G& g, double lo, double hi, double tol) {
  constexpr double r = 0.6180339887498949;  // (sqrt 5 - 1) / 2
  double a = lo, b = hi;
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = g(x1), f2 = g(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = g(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = g(x2);
    }
  }
  return f1 <= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace

Direction from_angles(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

std::array<double, 2> to_angles(const Direction& n) {
  const double theta = std::acos(std::clamp(n[2], -1.0, 1.0));
  double phi = std::atan2(n[1], n[0]);
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  return {theta, phi};
}

std::vector<Direction> fibonacci_points(int count) {
  std::vector<Direction> pts;
  pts.reserve(static_cast<std::size_t>(count));
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * i;
    pts.push_back({rho * std::cos(phi), rho * std::sin(phi), z});
  }
  return pts;
}

Minimum refine(const Objective& f, Minimum best, int rounds, double window) {
  const double max_window = std::max(window, std::numbers::pi / 2.0);
  constexpr double half_pi = std::numbers::pi / 2.0;
  constexpr double tol = 1e-12;
  for (int round = 0; round < rounds; ++round) {
    const Frame fr = frame_around(best.n);

    auto [dphi, vphi] = golden([&](double p) { return f(fr.at(half_pi, p)); }, -window, window, tol);
    auto [dtheta, vtheta] =
        golden([&](double t) { return f(fr.at(half_pi + t, dphi)); }, -window, window, tol);

    const double step = std::hypot(dphi, dtheta);
    if (vtheta < best.value) {
      best = {vtheta, fr.at(half_pi + dtheta, dphi)};
    } else if (vphi < best.value) {
      best = {vphi, fr.at(half_pi, dphi)};
    }
    if (step > 0.8 * window) {
      window = std::min(2.0 * window, max_window);
    } else {
      window = std::max(std::max(4.0 * step, 0.25 * window), 1e-9);
    }
  }
  return best;
}

}  // namespace xip::sphere
