#pragma once

// Evolution of X states through channel families, sudden-change (kink)
// detection on the resulting interferometric power and discord curves, and the
// analytic kink predictors for each channel.

#include <optional>
#include <vector>

#include "xip/channels.hpp"
#include "xip/discord.hpp"
#include "xip/errors.hpp"
#include "xip/ip.hpp"
#include "xip/states.hpp"

namespace xip {

struct TimeGrid {
  double t_max = 5.0;
  int points = 2001;

  // Uniform grid on [0, t_max]; a single point means {0}.
  std::vector<double> times() const;
  // 2001 points over the family's default horizon.
  static TimeGrid default_for(const ChannelFamily& family);
};

struct EvolveOptions {
  bool with_discord = false;
  DiscordOptions discord;
  int kraus_checks = 5;  // grid points re-evaluated through the Kraus operators
};

struct Trajectory {
  ChannelFamily family;
  XState initial;
  std::vector<double> times;
  std::vector<XState> states;
  std::vector<IPBranches> ip;  // ip[k].value and ip[k].active per time
  std::optional<std::vector<DiscordResult>> discord;
  DiscordOptions discord_options;

  std::size_t size() const { return times.size(); }
};

// Throws InvalidState for an invalid initial state, ParamOutOfRange for an empty or
// non-increasing grid, and RouteMismatch when the Kraus cross-check fails.
Trajectory evolve(const ChannelFamily& family, const XState& initial, const std::vector<double>& times,
                  const EvolveOptions& opts = {});

struct SuddenChangeEvent {
  double t_star = 0.0;
  double left_slope = 0.0;
  double right_slope = 0.0;
  Branch before = Branch::M11;
  Branch after = Branch::M11;
  double ip_value = 0.0;    // IP at t_star
  double branch_gap = 0.0;  // |M_before - M_after| at t_star
};

struct DiscordChangeEvent {
  double t_star = 0.0;
  double left_slope = 0.0;
  double right_slope = 0.0;
  MeasurementAngles before;
  MeasurementAngles after;
};

struct KinkOptions {
  double slope_jump_threshold = 1e-6;
  double time_tolerance = 1e-10;
  // Minimum rotation (radians) of the optimal measurement between neighbouring
  // samples that marks a discord kink candidate.
  double discord_angle_jump = 0.2;
  double discord_time_tolerance = 1e-9;
};

// Active-branch switches of the IP, located by bisection and kept when the
// one-sided slopes differ by more than the threshold.
std::vector<SuddenChangeEvent> detect_kinks(const Trajectory& tr, const KinkOptions& opts = {});

// Jumps of the optimal measurement direction, located by bisection and kept when
// the one-sided discord slopes differ. Throws ParamOutOfRange without discord data.
std::vector<DiscordChangeEvent> detect_discord_kinks(const Trajectory& tr, const KinkOptions& opts = {});

// Phase noise: t0 = -(2 / tau) ln(|c3| / max(|c1|, |c2|)) when 0 < |c3| < max(|c1|, |c2|).
std::optional<double> predict_phase_t0(const CorrelationMatrix& c, double tau);

// Amplitude noise: |c3| < max(|c1|, |c2|). Sufficient, not necessary.
bool predict_amplitude_kink(const CorrelationMatrix& c);

// Common bath: first time max(|c1(t)|, |c2(t)|) reaches |c3|. Throws ConstantIP when c1 == c2.
std::optional<double> predict_bath_kink(const CorrelationMatrix& c, double bath_exponent, double omega_c);

// Colored dephasing: first root of Lambda^2(nu) max(|c1|, |c2|) = |c3| on (0, 20].
std::optional<double> predict_colored_nu(const CorrelationMatrix& c, double a, double tau);

// Predicted kink time for the family when a closed-form predictor exists
// (phase, colored, bath). Amplitude and depolarizing yield nullopt.
std::optional<double> predicted_kink_time(const ChannelFamily& family, const XState& initial);

}  // namespace xip
