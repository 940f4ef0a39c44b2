#include "xip/commands.hpp"

#include <algorithm>
#include <cmath>

#include "xip/channels.hpp"
#include "xip/csv.hpp"
#include "xip/errors.hpp"
#include "xip/states.hpp"

namespace xip {

namespace {

XState parse_valid_state(const std::string& literal) {
  const XState s = parse_state(literal);
  if (const auto v = validate(s); !v.empty()) {
    throw InvalidState("not a density matrix: " + v.front().name + " (" + format_number(v.front().magnitude) + ")");
  }
  return s;
}

std::string side_name(Qubit q) { return q == Qubit::A ? "A" : "B"; }

void print_branches(std::ostream& out, const IPBranches& b) {
  out << "ip: " << format_number(b.value) << '\n';
  out << "branch: " << to_string(b.active) << '\n';
  out << "M11: " << format_number(b.m11) << '\n';
  out << "M22: " << format_number(b.m22) << '\n';
  out << "M33: " << format_number(b.m33) << '\n';
  if (b.fallback) out << "note: closed form degenerate, response-matrix eigenvalue used\n";
  if (b.rule_disagrees) out << "warning: two-candidate rule disagrees with the three-way minimum\n";
}

void print_prediction(std::ostream& out, const ChannelFamily& family, const XState& s,
                      const std::vector<SuddenChangeEvent>& events) {
  if (!s.is_bell_diagonal()) {
    out << "prediction: not available for states with nonzero magnetizations\n";
    return;
  }
  const CorrelationMatrix c = CorrelationMatrix::from(s);
  switch (family.kind) {
    case ChannelKind::Amplitude:
      out << "prediction: |c3| < max(|c1|, |c2|) " << (predict_amplitude_kink(c) ? "holds" : "does not hold")
          << " (sufficient condition only)\n";
      return;
    case ChannelKind::Depolarizing:
      out << "prediction: no sudden change\n";
      return;
    default:
      break;
  }
  std::optional<double> t;
  try {
    t = predicted_kink_time(family, s);
  } catch (const ConstantIP&) {
    out << "prediction: IP is constant (c1 == c2)\n";
    return;
  }
  if (!t) {
    out << "prediction: none\n";
    return;
  }
  out << "prediction: t* = " << format_number(*t);
  if (!events.empty()) out << ", difference = " << format_number(events.front().t_star - *t, 3);
  out << '\n';
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const ParamOutOfRange*>(&e)) return kExitParse;
  if (dynamic_cast<const InvalidState*>(&e) || dynamic_cast<const NotXShaped*>(&e)) return kExitInvalidState;
  if (dynamic_cast<const ChannelSpecError*>(&e)) return kExitChannelSpec;
  return kExitNumerical;
}

std::vector<double> GridSpec::times_for(const ChannelFamily& family) const {
  return TimeGrid{t_max.value_or(family.default_horizon()), points}.times();
}

int cmd_ip(const IpCommand& cmd, std::ostream& out) {
  const XState s = parse_valid_state(cmd.state);
  const IPBranches b = interferometric_power(s);
  out << "state: " << describe(s) << '\n';
  print_branches(out, b);
  if (cmd.oracle) {
    const Matrix4 rho = to_density_matrix(s);
    const double general = ip_general(rho);
    const BruteForceResult brute = ip_bruteforce(rho, cmd.brute);
    out << "general: " << format_number(general) << '\n';
    out << "bruteforce: " << format_number(brute.value) << '\n';
    out << "bruteforce direction: " << format_number(brute.argmin.n[0]) << ' ' << format_number(brute.argmin.n[1])
        << ' ' << format_number(brute.argmin.n[2]) << '\n';
    const double spread = std::max({std::abs(b.value - general), std::abs(b.value - brute.value),
                                    std::abs(general - brute.value)});
    out << "max route discrepancy: " << format_number(spread, 3) << '\n';
  }
  return kExitOk;
}

int cmd_discord(const DiscordCommand& cmd, std::ostream& out) {
  const XState s = parse_valid_state(cmd.state);
  const DiscordResult d = discord(to_density_matrix(s), cmd.discord);
  out << "state: " << describe(s) << '\n';
  out << "discord: " << format_number(d.value) << '\n';
  out << "side: " << side_name(d.side) << '\n';
  out << "theta: " << format_number(d.argmin.theta) << '\n';
  out << "phi: " << format_number(d.argmin.phi) << '\n';
  return kExitOk;
}

void write_trajectory_csv(const Trajectory& tr, std::ostream& out) {
  out << "t,r,s,c1,c2,c3,ip,branch";
  if (tr.discord) out << ",discord";
  out << '\n';
  for (std::size_t k = 0; k < tr.size(); ++k) {
    const XState& s = tr.states[k];
    out << format_number(tr.times[k]) << ',' << format_number(s.r) << ',' << format_number(s.sB) << ','
        << format_number(s.c1) << ',' << format_number(s.c2) << ',' << format_number(s.c3) << ','
        << format_number(tr.ip[k].value) << ',' << to_string(tr.ip[k].active);
    if (tr.discord) out << ',' << format_number((*tr.discord)[k].value);
    out << '\n';
  }
}

int cmd_evolve(const EvolveCommand& cmd, std::ostream& out) {
  const ChannelFamily family = ChannelFamily::parse(cmd.channel);
  const XState s = parse_valid_state(cmd.state);
  EvolveOptions opts;
  opts.with_discord = cmd.with_discord;
  opts.discord = cmd.discord;
  write_trajectory_csv(evolve(family, s, cmd.grid.times_for(family), opts), out);
  return kExitOk;
}

int cmd_kinks(const EvolveCommand& cmd, std::ostream& out) {
  const ChannelFamily family = ChannelFamily::parse(cmd.channel);
  const XState s = parse_valid_state(cmd.state);
  EvolveOptions opts;
  opts.with_discord = cmd.with_discord;
  opts.discord = cmd.discord;
  const auto times = cmd.grid.times_for(family);
  const Trajectory tr = evolve(family, s, times, opts);
  const auto events = detect_kinks(tr);

  const char* var = family.kind == ChannelKind::Colored ? "nu" : "t";
  out << "channel: " << family.spec() << '\n';
  out << "state: " << describe(s) << '\n';
  out << "grid: " << times.size() << " points on [0, " << format_number(times.back()) << "]\n";
  if (events.empty()) out << "no sudden change\n";
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& e = events[i];
    out << "kink " << i + 1 << ": " << var << "* = " << format_number(e.t_star)
        << ", left slope = " << format_number(e.left_slope) << ", right slope = " << format_number(e.right_slope)
        << ", " << to_string(e.before) << " -> " << to_string(e.after) << ", ip = " << format_number(e.ip_value)
        << '\n';
  }
  print_prediction(out, family, s, events);

  if (tr.discord) {
    const auto dk = detect_discord_kinks(tr);
    out << "discord kinks: " << dk.size() << " (side " << side_name(cmd.discord.side) << ")\n";
    for (std::size_t i = 0; i < dk.size(); ++i) {
      out << "discord kink " << i + 1 << ": " << var << "* = " << format_number(dk[i].t_star)
          << ", left slope = " << format_number(dk[i].left_slope)
          << ", right slope = " << format_number(dk[i].right_slope) << '\n';
    }
  }
  if (family.kind == ChannelKind::Bath) {
    out << "note: the original figure caption for this bath model states the opposite assignment "
           "(a sudden change only for the smaller c3); these results follow the crossing condition "
           "|c3| > |c1 + c2| / 2\n";
  }
  return kExitOk;
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out) {
  if (opts.samples < 1) throw ParamOutOfRange("samples must be positive");
  const VerifyReport report = run_verification(opts);
  out << "seed: " << opts.seed << ", samples: " << opts.samples << '\n';
  print_report(out, report);
  return report.passed() ? kExitOk : kExitVerifyFailure;
}

std::vector<double> AxisRange::values() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  for (int k = 0; k < count; ++k) out[k] = lo + (hi - lo) * k / (count - 1);
  return out;
}

CorrelationGrid parse_correlation_grid(std::string_view spec) {
  CorrelationGrid grid;
  bool seen[3] = {false, false, false};
  for (const auto& field : split_fields(spec, ',')) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw ParseError("grid field '" + field + "' lacks '='");
    const std::string key = field.substr(0, eq);
    const auto parts = split_fields(std::string_view(field).substr(eq + 1), ':');
    if (parts.size() != 3) throw ParseError("grid field '" + field + "' must have the form name=lo:hi:count");
    const auto lo = parse_double(parts[0]);
    const auto hi = parse_double(parts[1]);
    const auto n = parse_integer(parts[2]);
    if (!lo || !hi || !n || *n < 1 || *n > 100000) throw ParseError("malformed grid field '" + field + "'");
    int idx = -1;
    if (key == "c1") idx = 0;
    if (key == "c2") idx = 1;
    if (key == "c3") idx = 2;
    if (idx < 0) throw ParseError("unknown grid axis '" + key + "'");
    if (seen[idx]) throw ParseError("grid axis '" + key + "' given twice");
    seen[idx] = true;
    AxisRange& axis = idx == 0 ? grid.c1 : idx == 1 ? grid.c2 : grid.c3;
    axis = {*lo, *hi, static_cast<int>(*n)};
  }
  if (!(seen[0] && seen[1] && seen[2])) throw ParseError("grid needs c1, c2 and c3 axes");
  return grid;
}

int cmd_sweep(const SweepCommand& cmd, std::ostream& out, std::ostream& err) {
  const ChannelFamily family = ChannelFamily::parse(cmd.channel);
  const CorrelationGrid grid = parse_correlation_grid(cmd.c_grid);
  const auto times = cmd.grid.times_for(family);
  int skipped = 0;
  out << "c1,c2,c3,hasKink,tStar\n";
  for (double c1 : grid.c1.values()) {
    for (double c2 : grid.c2.values()) {
      for (double c3 : grid.c3.values()) {
        const XState s = XState::bell(c1, c2, c3);
        if (!validate(s).empty()) {
          ++skipped;
          continue;
        }
        const auto events = detect_kinks(evolve(family, s, times));
        out << format_number(c1) << ',' << format_number(c2) << ',' << format_number(c3) << ','
            << (events.empty() ? 0 : 1) << ',';
        if (!events.empty()) out << format_number(events.front().t_star);
        out << '\n';
      }
    }
  }
  err << "skipped " << skipped << " invalid state" << (skipped == 1 ? "" : "s") << '\n';
  return kExitOk;
}

}  // namespace xip
