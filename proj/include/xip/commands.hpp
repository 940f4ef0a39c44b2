#pragma once

// Command implementations behind the `xip` executable. Each writes its report to
// the given stream and returns the process exit code; library errors propagate
// and are mapped by exit_code_for.

#include <exception>
#include <optional>
#include <ostream>
#include <string>

#include "xip/discord.hpp"
#include "xip/dynamics.hpp"
#include "xip/ip.hpp"
#include "xip/verify.hpp"

namespace xip {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailure = 1,
  kExitParse = 2,
  kExitInvalidState = 3,
  kExitChannelSpec = 4,
  kExitNumerical = 5,
};

int exit_code_for(const std::exception& e);

struct GridSpec {
  std::optional<double> t_max;  // family default when unset
  int points = 2001;

  std::vector<double> times_for(const ChannelFamily& family) const;
};

struct IpCommand {
  std::string state;
  bool oracle = false;
  BruteForceOptions brute;
};

struct DiscordCommand {
  std::string state;
  DiscordOptions discord;
};

struct EvolveCommand {
  std::string state;
  std::string channel;
  GridSpec grid;
  bool with_discord = false;
  DiscordOptions discord;
};

struct SweepCommand {
  std::string channel;
  std::string c_grid;  // "c1=a:b:n,c2=a:b:n,c3=a:b:n"
  GridSpec grid;
};

int cmd_ip(const IpCommand& cmd, std::ostream& out);
int cmd_discord(const DiscordCommand& cmd, std::ostream& out);
int cmd_evolve(const EvolveCommand& cmd, std::ostream& out);
int cmd_kinks(const EvolveCommand& cmd, std::ostream& out);
int cmd_verify(const VerifyOptions& opts, std::ostream& out);
// Invalid grid points are skipped and counted on `err`.
int cmd_sweep(const SweepCommand& cmd, std::ostream& out, std::ostream& err);

// CSV header and rows: t,r,s,c1,c2,c3,ip,branch[,discord].
void write_trajectory_csv(const Trajectory& tr, std::ostream& out);

struct AxisRange {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;

  std::vector<double> values() const;
};

struct CorrelationGrid {
  AxisRange c1, c2, c3;
};

// Throws ParseError for a malformed grid.
CorrelationGrid parse_correlation_grid(std::string_view spec);

}  // namespace xip
