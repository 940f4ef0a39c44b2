#include "xip/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "xip/csv.hpp"
#include "xip/errors.hpp"

namespace xip {

namespace {

constexpr double kRouteTolerance = 1e-10;

using ScalarFn = std::function<double(double)>;

struct Slope {
  double value = 0.0;
  double error = 0.0;
};

// One-sided derivative at t0 (dir = -1 left, +1 right) from two Richardson levels.
Slope one_sided_slope(const ScalarFn& f, double t0, double f0, double delta, int dir) {
  auto diff = [&](double h) { return (f(t0 + dir * h) - f0) / (dir * h); };
  const double d1 = diff(delta);
  const double d2 = diff(delta / 2.0);
  const double d4 = diff(delta / 4.0);
  const double r1 = 2.0 * d2 - d1;
  const double r2 = 2.0 * d4 - d2;
  return {(4.0 * r2 - r1) / 3.0, std::abs(r2 - r1)};
}

struct SlopePair {
  Slope left, right;
  bool usable = false;
};

SlopePair slopes_around(const ScalarFn& f, double t_star, double spacing) {
  SlopePair out;
  const double left_delta = std::min(spacing, t_star);
  if (left_delta < 1e-8) return out;
  const double f0 = f(t_star);
  out.left = one_sided_slope(f, t_star, f0, left_delta, -1);
  out.right = one_sided_slope(f, t_star, f0, spacing, +1);
  out.usable = true;
  return out;
}

bool significant_jump(const SlopePair& s, double floor) {
  if (!s.usable) return false;
  const double jump = std::abs(s.right.value - s.left.value);
  return jump > std::max(floor, 10.0 * (s.left.error + s.right.error));
}

double grid_spacing(const Trajectory& tr, std::size_t k) { return tr.times[k] - tr.times[k - 1]; }

double angle_between(const sphere::Direction& a, const sphere::Direction& b) {
  const double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  return std::acos(std::min(1.0, std::abs(dot)));
}

double abs_dot(const sphere::Direction& a, const sphere::Direction& b) {
  return std::abs(a[0] * b[0] + a[1] * b[1] + a[2] * b[2]);
}

template <typename F>
double bisect_first_root(F g, double lo, double hi) {
  // g(lo) > 0 >= g(hi)
  for (int i = 0; i < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> TimeGrid::times() const {
  if (points < 1) throw ParamOutOfRange("time grid needs at least one point");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw ParamOutOfRange("time horizon must be non-negative");
  std::vector<double> out(static_cast<std::size_t>(points));
  if (points == 1) {
    out[0] = 0.0;
    return out;
  }
  for (int k = 0; k < points; ++k) out[k] = t_max * k / (points - 1);
  return out;
}

TimeGrid TimeGrid::default_for(const ChannelFamily& family) { return {family.default_horizon(), 2001}; }

Trajectory evolve(const ChannelFamily& family, const XState& initial, const std::vector<double>& times,
                  const EvolveOptions& opts) {
  if (const auto v = validate(initial); !v.empty()) {
    throw InvalidState("initial state is not a density matrix: " + v.front().name + " (" +
                       format_number(v.front().magnitude) + ")");
  }
  if (times.empty()) throw ParamOutOfRange("time grid is empty");
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!std::isfinite(times[k]) || times[k] < 0.0) throw ParamOutOfRange("times must be finite and non-negative");
    if (k > 0 && !(times[k] > times[k - 1])) throw ParamOutOfRange("times must be strictly increasing");
  }

  Trajectory tr;
  tr.family = family;
  tr.initial = initial;
  tr.times = times;
  tr.discord_options = opts.discord;
  tr.states.reserve(times.size());
  tr.ip.reserve(times.size());
  for (double t : times) {
    tr.states.push_back(family.map(initial, t));
    tr.ip.push_back(interferometric_power(tr.states.back()));
  }

  const std::size_t n = times.size();
  const std::size_t checks = std::min<std::size_t>(static_cast<std::size_t>(std::max(opts.kraus_checks, 0)), n);
  if (checks > 0) {
    const Matrix4 rho0 = to_density_matrix(initial);
    for (std::size_t j = 0; j < checks; ++j) {
      const std::size_t k = checks == 1 ? 0 : (j * (n - 1)) / (checks - 1);
      const Matrix4 via_kraus = apply(family.kraus(times[k]), rho0);
      const double diff = max_abs_diff(via_kraus, to_density_matrix(tr.states[k]));
      if (diff > kRouteTolerance) {
        throw RouteMismatch(family.name() + ": coefficient map and Kraus operators differ by " +
                            format_number(diff) + " at t = " + format_number(times[k]));
      }
    }
  }

  if (opts.with_discord) {
    std::vector<DiscordResult> d;
    d.reserve(n);
    for (const auto& s : tr.states) d.push_back(discord(to_density_matrix(s), opts.discord));
    tr.discord = std::move(d);
  }
  return tr;
}

std::vector<SuddenChangeEvent> detect_kinks(const Trajectory& tr, const KinkOptions& opts) {
  std::vector<SuddenChangeEvent> events;
  auto branches_at = [&](double t) { return interferometric_power(tr.family.map(tr.initial, t)); };
  const ScalarFn ip_at = [&](double t) { return branches_at(t).value; };

  for (std::size_t k = 1; k < tr.size(); ++k) {
    const Branch before = tr.ip[k - 1].active;
    if (tr.ip[k].active == before) continue;

    double lo = tr.times[k - 1];
    double hi = tr.times[k];
    Branch after = tr.ip[k].active;
    while (hi - lo > opts.time_tolerance) {
      const double mid = 0.5 * (lo + hi);
      const Branch b = branches_at(mid).active;
      if (b == before) {
        lo = mid;
      } else {
        hi = mid;
        after = b;
      }
    }
    const double t_star = 0.5 * (lo + hi);
    const SlopePair s = slopes_around(ip_at, t_star, grid_spacing(tr, k));
    if (!significant_jump(s, opts.slope_jump_threshold)) continue;

    const IPBranches at = branches_at(t_star);
    SuddenChangeEvent ev;
    ev.t_star = t_star;
    ev.left_slope = s.left.value;
    ev.right_slope = s.right.value;
    ev.before = before;
    ev.after = after;
    ev.ip_value = at.value;
    ev.branch_gap = std::abs(at.branch(before) - at.branch(after));
    events.push_back(ev);
  }
  return events;
}

std::vector<DiscordChangeEvent> detect_discord_kinks(const Trajectory& tr, const KinkOptions& opts) {
  if (!tr.discord) throw ParamOutOfRange("trajectory was evolved without discord");
  const auto& d = *tr.discord;
  const DiscordOptions& dopt = tr.discord_options;
  auto rho_at = [&](double t) { return to_density_matrix(tr.family.map(tr.initial, t)); };
  auto discord_at = [&](double t) { return discord(rho_at(t), dopt); };
  const ScalarFn value_at = [&](double t) { return discord_at(t).value; };

  std::vector<DiscordChangeEvent> events;
  for (std::size_t k = 1; k < tr.size(); ++k) {
    sphere::Direction dlo = d[k - 1].argmin.direction();
    sphere::Direction dhi = d[k].argmin.direction();
    if (angle_between(dlo, dhi) <= opts.discord_angle_jump) continue;

    // A rotation inside a degenerate set of minimizers costs nothing; a genuine
    // switch between separated minima leaves each sample's optimum suboptimal at
    // the neighbouring time by roughly |slope jump| times the spacing.
    const double h = grid_spacing(tr, k);
    const Matrix4 rho_lo = rho_at(tr.times[k - 1]);
    const Matrix4 rho_hi = rho_at(tr.times[k]);
    const double gap = (measured_conditional_entropy(rho_lo, dopt.side, dhi) -
                        measured_conditional_entropy(rho_lo, dopt.side, dlo)) +
                       (measured_conditional_entropy(rho_hi, dopt.side, dlo) -
                        measured_conditional_entropy(rho_hi, dopt.side, dhi));
    if (gap <= 0.5 * opts.slope_jump_threshold * h) continue;

    double lo = tr.times[k - 1];
    double hi = tr.times[k];
    MeasurementAngles before = d[k - 1].argmin;
    MeasurementAngles after = d[k].argmin;
    while (hi - lo > opts.discord_time_tolerance) {
      const double mid = 0.5 * (lo + hi);
      const DiscordResult r = discord_at(mid);
      const sphere::Direction dm = r.argmin.direction();
      if (abs_dot(dm, dlo) >= abs_dot(dm, dhi)) {
        lo = mid;
        dlo = dm;
        before = r.argmin;
      } else {
        hi = mid;
        dhi = dm;
        after = r.argmin;
      }
    }
    const double t_star = 0.5 * (lo + hi);
    const SlopePair s = slopes_around(value_at, t_star, h);
    if (!significant_jump(s, opts.slope_jump_threshold)) continue;
    events.push_back({t_star, s.left.value, s.right.value, before, after});
  }
  return events;
}

std::optional<double> predict_phase_t0(const CorrelationMatrix& c, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ParamOutOfRange("tau must be positive");
  const double cmax = std::max(std::abs(c.c[0]), std::abs(c.c[1]));
  const double c3 = std::abs(c.c[2]);
  if (c3 == 0.0 || c3 >= cmax) return std::nullopt;
  return -(2.0 / tau) * std::log(c3 / cmax);
}

bool predict_amplitude_kink(const CorrelationMatrix& c) {
  return std::abs(c.c[2]) < std::max(std::abs(c.c[0]), std::abs(c.c[1]));
}

std::optional<double> predict_bath_kink(const CorrelationMatrix& c, double bath_exponent, double omega_c) {
  if (c.c[0] == c.c[1]) throw ConstantIP("c1 == c2: the common bath leaves the state unchanged");
  if (!(omega_c > 0.0) || !std::isfinite(omega_c)) throw ParamOutOfRange("omega_c must be positive");
  const double mean = std::abs(c.c[0] + c.c[1]) / 2.0;
  const double half_diff = std::abs(c.c[0] - c.c[1]) / 2.0;
  const double c3 = std::abs(c.c[2]);
  if (c3 >= mean + half_diff || c3 <= mean) return std::nullopt;

  const double gamma_star = -std::log((c3 - mean) / half_diff) / 4.0;
  auto g = [&](double t) { return gamma_star - bath_gamma(t, bath_exponent, omega_c); };

  // Gamma(t) need not be monotone, so scan for the first crossing.
  double prev = 0.0;
  double step = 0.01 / omega_c;
  const double horizon = 1e4 / omega_c;
  for (double t = step; t <= horizon; t += step) {
    if (g(t) <= 0.0) return bisect_first_root(g, prev, t);
    prev = t;
    if (t > 20.0 / omega_c) step *= 1.05;
  }
  return std::nullopt;
}

std::optional<double> predict_colored_nu(const CorrelationMatrix& c, double a, double tau) {
  const double cmax = std::max(std::abs(c.c[0]), std::abs(c.c[1]));
  const double c3 = std::abs(c.c[2]);
  if (c3 == 0.0 || c3 >= cmax) return std::nullopt;
  auto g = [&](double nu) {
    const double lambda = colored_dephasing_lambda(nu, a, tau);
    return lambda * lambda * cmax - c3;
  };
  constexpr double kStep = 1e-3;
  constexpr double kMaxNu = 20.0;
  for (int k = 1; k * kStep <= kMaxNu + 1e-12; ++k) {
    const double nu = k * kStep;
    if (g(nu) <= 0.0) return bisect_first_root(g, nu - kStep, nu);
  }
  return std::nullopt;
}

std::optional<double> predicted_kink_time(const ChannelFamily& family, const XState& initial) {
  if (!initial.is_bell_diagonal()) return std::nullopt;
  const CorrelationMatrix c = CorrelationMatrix::from(initial);
  switch (family.kind) {
    case ChannelKind::Phase:
      return predict_phase_t0(c, family.tau);
    case ChannelKind::Colored:
      return predict_colored_nu(c, family.a, family.tau);
    case ChannelKind::Bath:
      return predict_bath_kink(c, family.bath_exponent, family.omega_c);
    case ChannelKind::Amplitude:
    case ChannelKind::Depolarizing:
      break;
  }
  return std::nullopt;
}

}  // namespace xip
