#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "xip/commands.hpp"
#include "xip/csv.hpp"
#include "xip/errors.hpp"

namespace {

const std::set<std::string> kFlags{"oracle", "discord", "canary"};

struct ConfigEntry {
  std::string key;
  std::string value;
};

std::vector<ConfigEntry> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw xip::ParseError("cannot open config file '" + path + "'");
  std::vector<ConfigEntry> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw xip::ParseError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    if (key.empty()) throw xip::ParseError(path + ":" + std::to_string(lineno) + ": empty key");
    entries.push_back({key, value});
  }
  return entries;
}

bool truthy(const std::string& v) { return v == "1" || v == "true" || v == "yes" || v == "on"; }

// Splices config entries in as flags right after the subcommand name, so that
// later command-line flags take precedence (options keep their last value).
std::vector<std::string> expand_config(const CLI::App& app, std::vector<std::string> args) {
  std::string path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw xip::ParseError("--config needs a file argument");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return rest;

  std::size_t sub_pos = rest.size();
  const CLI::App* sub = nullptr;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (const auto* s = app.get_subcommand_no_throw(rest[i])) {
      sub_pos = i;
      sub = s;
      break;
    }
  }
  if (sub == nullptr) throw xip::ParseError("--config requires a command");

  std::vector<std::string> injected;
  for (const auto& e : read_config(path)) {
    if (sub->get_option_no_throw("--" + e.key) == nullptr) {
      throw xip::ParseError("config key '" + e.key + "' is not an option of '" + sub->get_name() + "'");
    }
    if (kFlags.count(e.key)) {
      if (truthy(e.value)) injected.push_back("--" + e.key);
    } else {
      injected.push_back("--" + e.key + "=" + e.value);
    }
  }
  rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(sub_pos) + 1, injected.begin(), injected.end());
  return rest;
}

xip::Qubit parse_side(const std::string& s) { return (s == "B" || s == "b") ? xip::Qubit::B : xip::Qubit::A; }

void add_grid_options(CLI::App* cmd, xip::GridSpec& grid, std::optional<double>& t_max) {
  cmd->add_option("--tmax", t_max, "End of the time grid (nu for colored); family default when omitted");
  cmd->add_option("--points", grid.points, "Number of grid points")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interferometric power, discord and sudden-change dynamics of two-qubit X states", "xip"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_placeholder;
  app.add_option("--config", config_placeholder, "File of key=value lines; command-line flags override it");

  std::string output;
  auto add_output = [&](CLI::App* cmd) { cmd->add_option("-o,--output", output, "Write to this file instead of stdout"); };

  xip::IpCommand ip_cmd;
  auto* ip = app.add_subcommand("ip", "Interferometric power of a state");
  ip->add_option("state,--state", ip_cmd.state, "\"r,s,c1,c2,c3\" or \"c1,c2,c3\"")->required();
  ip->add_flag("--oracle", ip_cmd.oracle, "Also run the general and brute-force routes");
  ip->add_option("--oracle-grid", ip_cmd.brute.coarse_grid, "Brute-force coarse grid size (squared)");
  ip->add_option("--oracle-refine", ip_cmd.brute.refine_iters, "Brute-force refinement rounds");
  add_output(ip);

  xip::DiscordCommand discord_cmd;
  std::string discord_side = "A";
  auto* dc = app.add_subcommand("discord", "Quantum discord of a state");
  dc->add_option("state,--state", discord_cmd.state, "\"r,s,c1,c2,c3\" or \"c1,c2,c3\"")->required();
  dc->add_option("--side", discord_side, "Measured qubit")->check(CLI::IsMember({"A", "B", "a", "b"}));
  dc->add_option("--grid", discord_cmd.discord.grid, "Theta grid size")->check(CLI::Range(4, 4096));
  dc->add_option("--refine", discord_cmd.discord.refine_iters, "Refinement rounds")->check(CLI::NonNegativeNumber);
  add_output(dc);

  xip::EvolveCommand evolve_cmd;
  std::optional<double> evolve_tmax;
  std::string evolve_side = "A";
  auto add_trajectory_options = [&](CLI::App* cmd) {
    cmd->add_option("state,--state", evolve_cmd.state, "Initial state")->required();
    cmd->add_option("-c,--channel", evolve_cmd.channel, "Channel spec, e.g. amplitude:tau=1")->required();
    add_grid_options(cmd, evolve_cmd.grid, evolve_tmax);
    cmd->add_flag("--discord", evolve_cmd.with_discord, "Also compute discord along the trajectory");
    cmd->add_option("--side", evolve_side, "Measured qubit for discord")->check(CLI::IsMember({"A", "B", "a", "b"}));
    cmd->add_option("--discord-grid", evolve_cmd.discord.grid, "Discord theta grid size")->check(CLI::Range(4, 4096));
    add_output(cmd);
  };
  auto* ev = app.add_subcommand("evolve", "Trajectory CSV: t,r,s,c1,c2,c3,ip,branch[,discord]");
  add_trajectory_options(ev);
  auto* kk = app.add_subcommand("kinks", "Locate sudden changes along a trajectory");
  add_trajectory_options(kk);

  xip::VerifyOptions verify_opts;
  auto* vf = app.add_subcommand("verify", "Run the seeded self-verification suites");
  vf->add_option("--seed", verify_opts.seed, "RNG seed");
  vf->add_option("--samples", verify_opts.samples, "Samples per suite")->check(CLI::PositiveNumber);
  vf->add_flag("--canary", verify_opts.canary, "Corrupt the Bell-diagonal formula to exercise the harness");

  xip::SweepCommand sweep_cmd;
  std::optional<double> sweep_tmax;
  auto* sw = app.add_subcommand("sweep", "Kink map over a grid of Bell-diagonal states");
  sw->add_option("-c,--channel", sweep_cmd.channel, "Channel spec")->required();
  sw->add_option("--grid", sweep_cmd.c_grid, "c1=lo:hi:n,c2=lo:hi:n,c3=lo:hi:n")->required();
  add_grid_options(sw, sweep_cmd.grid, sweep_tmax);
  add_output(sw);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(app, std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : xip::kExitParse;
  } catch (const xip::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return xip::exit_code_for(e);
  }

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!output.empty()) {
    file.open(output, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open '" << output << "' for writing\n";
      return xip::kExitParse;
    }
    out = &file;
  }

  try {
    if (*ip) return xip::cmd_ip(ip_cmd, *out);
    if (*dc) {
      discord_cmd.discord.side = parse_side(discord_side);
      return xip::cmd_discord(discord_cmd, *out);
    }
    if (*ev || *kk) {
      evolve_cmd.grid.t_max = evolve_tmax;
      evolve_cmd.discord.side = parse_side(evolve_side);
      return *ev ? xip::cmd_evolve(evolve_cmd, *out) : xip::cmd_kinks(evolve_cmd, *out);
    }
    if (*vf) return xip::cmd_verify(verify_opts, *out);
    if (*sw) {
      sweep_cmd.grid.t_max = sweep_tmax;
      return xip::cmd_sweep(sweep_cmd, *out, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return xip::exit_code_for(e);
  }
  return xip::kExitParse;
}
