// Command-line runner: `ngrover <subcommand> [--flags]` or `ngrover --config FILE`.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "ngrover/experiments.hpp"
#include "ngrover/measures.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInvariant = 2;

const std::map<std::string, std::string>& flag_help() {
  static const std::map<std::string, std::string> help{
      {"n", "qubit count(s), comma list"},
      {"marked", "marked basis index"},
      {"noise", "identity|x|y|z|hadamard|yz-hadamard|custom"},
      {"a", "custom noise a as RE,IM"},
      {"b", "custom noise b as RE,IM"},
      {"theta", "custom noise phase"},
      {"m", "noise strength(s), comma list; first m qubits"},
      {"positions", "explicit noisy qubit slots, comma list (overrides m)"},
      {"p", "noise probability grid"},
      {"mu", "memory parameter grid"},
      {"steps", "number of Grover steps / measure horizon"},
      {"temperatures", "ancilla temperatures for thermal"},
      {"trials", "random states per dilation check"},
      {"output", "output path, '-' for stdout"},
      {"format", "csv|json"},
      {"jobs", "parallel sweep workers"},
  };
  return help;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grover search under Markovian-correlated noise"};
  app.require_subcommand(0, 1);

  std::string config_path;
  app.add_option("--config", config_path, "key = value config file; flags override it");

  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  for (const auto& [key, text] : flag_help()) {
    options[key] = app.add_option("--" + key, values[key], text);
  }
  for (const auto& name : ngrover::subcommands()) {
    app.add_subcommand(name, "run the " + name + " experiment")->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  ngrover::ExperimentConfig cfg;
  try {
    if (!config_path.empty()) {
      for (const auto& [key, value] : ngrover::load_config_file(config_path)) {
        ngrover::apply_setting(cfg, key, value);
      }
    }
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) ngrover::apply_setting(cfg, key, values[key]);
    }
    const auto chosen = app.get_subcommands();
    if (!chosen.empty()) cfg.subcommand = chosen.front()->get_name();
    if (cfg.subcommand.empty()) throw ngrover::ConfigError("no subcommand given");

    const ngrover::ResultTable table = ngrover::run(cfg);
    ngrover::emit(table, cfg.format, cfg.output);
    if (table.violation) {
      std::cerr << "invariant violated: " << table.violation->first << " (deviation "
                << ngrover::format_number(table.violation->second) << ")\n";
      return kExitInvariant;
    }
  } catch (const ngrover::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ngrover::InvariantViolation& e) {
    std::cerr << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}
