#pragma once

// Batch experiment runner behind the command-line tool.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ngrover/linalg.hpp"
#include "ngrover/noise.hpp"

namespace ngrover {

inline constexpr const char* kArtifactVersion = "1.0.0";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string subcommand;
  std::vector<int> n{3};
  std::size_t marked = 0;
  std::string noise = "x";
  Complex a{1.0, 0.0};  ///< custom noise only
  Complex b{0.0, 0.0};
  double theta = 0.0;
  std::vector<int> m{1};
  std::vector<int> positions;  ///< overrides m when non-empty
  std::vector<double> p{0.5};
  std::vector<double> mu{0.5};
  int steps = 25;
  std::vector<double> temperatures{1.0};
  int trials = 20;
  std::string output;  ///< empty or "-" for stdout
  std::string format = "csv";
  int jobs = 1;
};

const std::vector<std::string>& subcommands();
/// Keys accepted by apply_setting (the long flag names).
const std::vector<std::string>& config_keys();

/// Parses `key = value` lines; `#` starts a comment. Throws ConfigError.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> load_config_file(const std::string& path);

/// Sets one field from its textual form. Throws ConfigError.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Checks domain bounds for the chosen subcommand. Throws ConfigError.
void validate(const ExperimentConfig& cfg);

SingleQubitUnitary noise_unitary(const ExperimentConfig& cfg);

/// First t with s[t-1] < s[t] > s[t+1]; the argmax when there is none.
std::size_t first_local_maximum(const std::vector<double>& s);

struct ResultTable {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Set when a verification subcommand finds a failed check.
  std::optional<std::pair<std::string, double>> violation;
};

/// Runs the configured experiment. Throws ConfigError or InvariantViolation.
ResultTable run(const ExperimentConfig& cfg);

std::string format_number(double v);
std::string to_csv(const ResultTable& table);
std::string to_json(const ResultTable& table);
/// Inverse of to_csv (metadata and values).
ResultTable parse_csv(const std::string& text);

/// Writes to `path`, or stdout for an empty path or "-". Throws
/// std::runtime_error on I/O failure.
void emit(const ResultTable& table, const std::string& format, const std::string& path);

}  // namespace ngrover
