#include "ngrover/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ngrover/collision.hpp"
#include "ngrover/grover.hpp"
#include "ngrover/markov.hpp"
#include "ngrover/measures.hpp"

namespace ngrover {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& raw, const std::string& key) {
  const std::string s = trim(raw);
  double v = 0.0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  if (!s.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError("invalid number '" + s + "' for " + key);
  }
  return v;
}

long long parse_integer(const std::string& raw, const std::string& key) {
  const std::string s = trim(raw);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("invalid integer '" + s + "' for " + key);
  }
  return v;
}

std::vector<double> parse_doubles(const std::string& s, const std::string& key) {
  std::vector<double> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_double(part, key));
  if (out.empty()) throw ConfigError("empty list for " + key);
  return out;
}

std::vector<int> parse_ints(const std::string& s, const std::string& key) {
  std::vector<int> out;
  for (const auto& part : split(s, ',')) out.push_back(static_cast<int>(parse_integer(part, key)));
  return out;
}

Complex parse_complex(const std::string& s, const std::string& key) {
  const auto parts = split(s, ',');
  if (parts.size() == 1) return {parse_double(parts[0], key), 0.0};
  if (parts.size() == 2) return {parse_double(parts[0], key), parse_double(parts[1], key)};
  throw ConfigError("expected RE or RE,IM for " + key);
}

template <class T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_floating_point_v<T>) {
      out += format_number(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

std::string complex_text(Complex c) { return format_number(c.real()) + "," + format_number(c.imag()); }

// Runs f(0..count-1) on up to `jobs` threads; results keep index order and the
// lowest-index exception is rethrown.
template <class F>
auto parallel_map(std::size_t count, int jobs, F f) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<std::optional<R>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), count);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

struct NoiseChoice {
  int strength = 0;
  NoiseSpec spec;
};

std::vector<NoiseChoice> noise_choices(const ExperimentConfig& cfg) {
  const SingleQubitUnitary u = noise_unitary(cfg);
  if (!cfg.positions.empty()) {
    return {{static_cast<int>(cfg.positions.size()), NoiseSpec{u, cfg.positions}}};
  }
  std::vector<NoiseChoice> out;
  for (int m : cfg.m) out.push_back({m, NoiseSpec::prefix(u, m)});
  return out;
}

// Cartesian product n x noise x p x mu, row-major.
struct Point {
  int n;
  NoiseChoice noise;
  double p;
  double mu;
};

std::vector<Point> grid(const ExperimentConfig& cfg) {
  std::vector<Point> out;
  const auto choices = noise_choices(cfg);
  for (int n : cfg.n) {
    for (const auto& c : choices) {
      for (double p : cfg.p) {
        for (double mu : cfg.mu) out.push_back({n, c, p, mu});
      }
    }
  }
  return out;
}

std::string label(const std::string& name, const Point& pt) {
  return name + "[n=" + std::to_string(pt.n) + ";m=" + std::to_string(pt.noise.strength) +
         ";p=" + format_number(pt.p) + ";mu=" + format_number(pt.mu) + "]";
}

ResultTable series_table(const std::vector<std::string>& labels,
                         const std::vector<std::vector<double>>& series, int steps) {
  ResultTable table;
  table.columns.push_back("t");
  table.columns.insert(table.columns.end(), labels.begin(), labels.end());
  for (int t = 0; t <= steps; ++t) {
    std::vector<double> row{static_cast<double>(t)};
    for (const auto& s : series) row.push_back(s[static_cast<std::size_t>(t)]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<double> noisy_series(const Point& pt, std::size_t marked, int steps) {
  return markov_evolve(GroverInstance(pt.n, marked), pt.noise.spec, MarkovNoiseParams(pt.p, pt.mu),
                       steps)
      .success;
}

ResultTable run_ideal(const ExperimentConfig& cfg) {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> series;
  for (int n : cfg.n) {
    labels.push_back("P[n=" + std::to_string(n) + "]");
    series.push_back(ideal_success_series(GroverInstance(n, cfg.marked), cfg.steps));
  }
  return series_table(labels, series, cfg.steps);
}

ResultTable run_noisy(const ExperimentConfig& cfg) {
  const auto points = grid(cfg);
  auto series = parallel_map(points.size(), cfg.jobs,
                             [&](std::size_t i) { return noisy_series(points[i], cfg.marked, cfg.steps); });
  std::vector<std::string> labels;
  for (const auto& pt : points) labels.push_back(label("P", pt));
  return series_table(labels, series, cfg.steps);
}

ResultTable run_invariance(const ExperimentConfig& cfg) {
  const SingleQubitUnitary u = noise_unitary(cfg);
  const bool parity = classify_noise(u).tag == NoiseClassTag::ParityInvariant;
  struct Base {
    int n;
    double p, mu;
  };
  std::vector<Base> bases;
  for (int n : cfg.n)
    for (double p : cfg.p)
      for (double mu : cfg.mu) bases.push_back({n, p, mu});

  auto results = parallel_map(bases.size(), cfg.jobs, [&](std::size_t i) {
    const Base& b = bases[i];
    const GroverInstance inst(b.n, cfg.marked);
    const MarkovNoiseParams params(b.p, b.mu);
    const auto reference_odd = markov_evolve(inst, NoiseSpec::prefix(u, 1), params, cfg.steps).success;
    const auto reference_even =
        b.n >= 2 ? markov_evolve(inst, NoiseSpec::prefix(u, 2), params, cfg.steps).success
                 : reference_odd;
    std::vector<double> dev(static_cast<std::size_t>(cfg.steps) + 1, 0.0);
    for (unsigned mask = 1; mask < (1U << b.n); ++mask) {
      NoiseSpec spec{u, {}};
      for (int slot = 0; slot < b.n; ++slot) {
        if (mask & (1U << slot)) spec.positions.push_back(slot);
      }
      const auto& ref = parity && spec.strength() % 2 == 0 ? reference_even : reference_odd;
      const auto s = markov_evolve(inst, spec, params, cfg.steps).success;
      for (std::size_t t = 0; t < s.size(); ++t) dev[t] = std::max(dev[t], std::abs(s[t] - ref[t]));
    }
    return std::pair{reference_odd, dev};
  });

  std::vector<std::string> labels;
  std::vector<std::vector<double>> series;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    const std::string key = "[n=" + std::to_string(bases[i].n) + ";p=" +
                            format_number(bases[i].p) + ";mu=" + format_number(bases[i].mu) + "]";
    labels.push_back("P" + key);
    labels.push_back("deviation" + key);
    series.push_back(std::move(results[i].first));
    series.push_back(std::move(results[i].second));
  }
  return series_table(labels, series, cfg.steps);
}

ResultTable run_firstmax(const ExperimentConfig& cfg) {
  const auto points = grid(cfg);
  auto series = parallel_map(points.size(), cfg.jobs,
                             [&](std::size_t i) { return noisy_series(points[i], cfg.marked, cfg.steps); });
  ResultTable table;
  table.columns = {"n", "m", "p", "mu", "t_star", "P_t_star"};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto t = first_local_maximum(series[i]);
    table.rows.push_back({static_cast<double>(points[i].n),
                          static_cast<double>(points[i].noise.strength), points[i].p, points[i].mu,
                          static_cast<double>(t), series[i][t]});
  }
  return table;
}

ResultTable run_measure(const ExperimentConfig& cfg, bool cp) {
  const auto points = grid(cfg);
  auto values = parallel_map(points.size(), cfg.jobs, [&](std::size_t i) {
    const Point& pt = points[i];
    const GroverInstance inst(pt.n, cfg.marked);
    const MarkovNoiseParams params(pt.p, pt.mu);
    return cp ? n_cp(inst, pt.noise.spec, params, cfg.steps).value
              : n_blp(inst, pt.noise.spec, params, cfg.steps).value;
  });
  ResultTable table;
  table.columns = {"n", "m", "p", "mu", cp ? "N_CP" : "N_BLP"};
  for (std::size_t i = 0; i < points.size(); ++i) {
    table.rows.push_back({static_cast<double>(points[i].n),
                          static_cast<double>(points[i].noise.strength), points[i].p, points[i].mu,
                          values[i]});
  }
  return table;
}

ResultTable run_thermal(const ExperimentConfig& cfg) {
  const auto base = grid(cfg);
  std::vector<std::pair<Point, double>> points;
  for (const auto& pt : base)
    for (double temp : cfg.temperatures) points.emplace_back(pt, temp);
  auto values = parallel_map(points.size(), cfg.jobs, [&](std::size_t i) {
    const auto& [pt, temp] = points[i];
    return n_blp(GroverInstance(pt.n, cfg.marked), pt.noise.spec, MarkovNoiseParams(pt.p, pt.mu),
                 cfg.steps, thermal_weights(temp))
        .value;
  });
  ResultTable table;
  table.columns = {"n", "m", "p", "mu", "temperature", "N_BLP"};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& [pt, temp] = points[i];
    table.rows.push_back({static_cast<double>(pt.n), static_cast<double>(pt.noise.strength), pt.p,
                          pt.mu, temp, values[i]});
  }
  return table;
}

ResultTable run_dilation_check(const ExperimentConfig& cfg) {
  constexpr double kUnitaryTol = 1e-10;
  constexpr double kRouteTol = 1e-12;
  constexpr double kMixerTol = 1e-8;
  const auto points = grid(cfg);
  auto rows = parallel_map(points.size(), cfg.jobs, [&](std::size_t i) {
    const Point& pt = points[i];
    const GroverInstance inst(pt.n, cfg.marked);
    const MarkovNoiseParams params(pt.p, pt.mu);
    const ComplexMatrix g = grover_operator(inst);
    const ComplexMatrix chi = build_chi(pt.n, pt.noise.spec);
    const ComplexMatrix gp = noisy_grover(g, chi);
    std::vector<std::vector<double>> out;
    for (StepKind kind : {StepKind::Initial, StepKind::Steady}) {
      const DilationUnitary u = dilation_unitary(kind, params, g, gp);
      const KrausSet k = kraus_step(kind, params, g, gp);
      const DilationReport rep = verify_dilation(u, k, cfg.trials, kRouteTol, 0x5eed + i);
      const MixerFactorization mix = extract_mixer(u, chi, g, kMixerTol);
      const bool ok = rep.passed && rep.unitarity_defect <= kUnitaryTol &&
                      rep.kraus_mismatch <= kRouteTol && mix.factorized &&
                      mix.unitarity_defect <= kMixerTol;
      out.push_back({static_cast<double>(pt.n), static_cast<double>(pt.noise.strength), pt.p, pt.mu,
                     kind == StepKind::Initial ? 0.0 : 1.0, rep.unitarity_defect,
                     rep.kraus_mismatch, rep.max_deviation, k.completeness_defect(),
                     k.unitality_defect(), mix.residual, mix.unitarity_defect,
                     static_cast<double>(mix.control_state), ok ? 1.0 : 0.0});
    }
    return out;
  });
  ResultTable table;
  table.columns = {"n", "m", "p", "mu", "steady", "unitarity_defect", "kraus_mismatch",
                   "route_deviation", "completeness_defect", "unitality_defect", "mixer_residual",
                   "mixer_unitarity_defect", "control_state", "passed"};
  for (auto& group : rows) {
    for (auto& row : group) {
      if (row.back() == 0.0 && !table.violation) {
        table.violation = {"dilation_check", std::max({row[5], row[6], row[7], row[10]})};
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

ResultTable run_oracle_check(const ExperimentConfig& cfg) {
  constexpr double kTol = 1e-10;
  const auto points = grid(cfg);
  auto dist = parallel_map(points.size(), cfg.jobs, [&](std::size_t i) {
    const Point& pt = points[i];
    const GroverInstance inst(pt.n, cfg.marked);
    const MarkovNoiseParams params(pt.p, pt.mu);
    const auto trace = markov_evolve(inst, pt.noise.spec, params, cfg.steps, {true, false});
    return trace_distance(trace.states.back(), history_oracle(inst, pt.noise.spec, params, cfg.steps));
  });
  ResultTable table;
  table.columns = {"n", "m", "p", "mu", "steps", "trace_distance", "passed"};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const bool ok = dist[i] <= kTol;
    if (!ok && !table.violation) table.violation = {"oracle_equivalence", dist[i]};
    table.rows.push_back({static_cast<double>(points[i].n),
                          static_cast<double>(points[i].noise.strength), points[i].p, points[i].mu,
                          static_cast<double>(cfg.steps), dist[i], ok ? 1.0 : 0.0});
  }
  return table;
}

std::vector<std::pair<std::string, std::string>> echo(const ExperimentConfig& cfg) {
  return {
      {"artifact", "ngrover"},
      {"version", kArtifactVersion},
      {"subcommand", cfg.subcommand},
      {"n", join(cfg.n)},
      {"marked", std::to_string(cfg.marked)},
      {"noise", cfg.noise},
      {"a", complex_text(cfg.a)},
      {"b", complex_text(cfg.b)},
      {"theta", format_number(cfg.theta)},
      {"m", join(cfg.m)},
      {"positions", join(cfg.positions)},
      {"p", join(cfg.p)},
      {"mu", join(cfg.mu)},
      {"steps", std::to_string(cfg.steps)},
      {"temperatures", join(cfg.temperatures)},
      {"trials", std::to_string(cfg.trials)},
  };
}

}  // namespace

std::size_t first_local_maximum(const std::vector<double>& s) {
  for (std::size_t t = 1; t + 1 < s.size(); ++t) {
    if (s[t] > s[t - 1] && s[t] > s[t + 1]) return t;
  }
  return static_cast<std::size_t>(std::max_element(s.begin(), s.end()) - s.begin());
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"ideal",  "noisy",   "invariance",     "firstmax",
                                              "blp",    "cpdiv",   "thermal",        "dilation-check",
                                              "oracle-check"};
  return names;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "subcommand", "n",     "marked",       "noise",  "a",      "b",      "theta", "m",
      "positions",  "p",     "mu",           "steps",  "temperatures", "trials", "output", "format",
      "jobs"};
  return keys;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (std::find(config_keys().begin(), config_keys().end(), key) == config_keys().end()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "subcommand") {
    cfg.subcommand = trim(value);
  } else if (key == "n") {
    cfg.n = parse_ints(value, key);
  } else if (key == "marked") {
    const long long v = parse_integer(value, key);
    if (v < 0) throw ConfigError("marked must be non-negative");
    cfg.marked = static_cast<std::size_t>(v);
  } else if (key == "noise") {
    cfg.noise = trim(value);
  } else if (key == "a") {
    cfg.a = parse_complex(value, key);
  } else if (key == "b") {
    cfg.b = parse_complex(value, key);
  } else if (key == "theta") {
    cfg.theta = parse_double(value, key);
  } else if (key == "m") {
    cfg.m = parse_ints(value, key);
  } else if (key == "positions") {
    cfg.positions = trim(value).empty() ? std::vector<int>{} : parse_ints(value, key);
  } else if (key == "p") {
    cfg.p = parse_doubles(value, key);
  } else if (key == "mu") {
    cfg.mu = parse_doubles(value, key);
  } else if (key == "steps") {
    cfg.steps = static_cast<int>(parse_integer(value, key));
  } else if (key == "temperatures") {
    cfg.temperatures = parse_doubles(value, key);
  } else if (key == "trials") {
    cfg.trials = static_cast<int>(parse_integer(value, key));
  } else if (key == "output") {
    cfg.output = trim(value);
  } else if (key == "format") {
    cfg.format = trim(value);
  } else if (key == "jobs") {
    cfg.jobs = static_cast<int>(parse_integer(value, key));
  } else {
    throw ConfigError("unknown setting '" + key + "'");
  }
}

SingleQubitUnitary noise_unitary(const ExperimentConfig& cfg) {
  try {
    if (cfg.noise == "custom") return single_qubit_unitary(cfg.a, cfg.b, cfg.theta);
    return presets::by_name(cfg.noise);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void validate(const ExperimentConfig& cfg) {
  const auto& names = subcommands();
  if (std::find(names.begin(), names.end(), cfg.subcommand) == names.end()) {
    throw ConfigError("unknown subcommand '" + cfg.subcommand + "'");
  }
  if (cfg.n.empty()) throw ConfigError("n: at least one value required");
  int max_n = GroverInstance::kMaxQubits;
  if (cfg.subcommand == "cpdiv") max_n = 5;
  if (cfg.subcommand == "invariance") max_n = 8;
  if (cfg.subcommand == "dilation-check" || cfg.subcommand == "thermal" ||
      cfg.subcommand == "blp") {
    max_n = 7;
  }
  for (int n : cfg.n) {
    if (n < 1 || n > max_n) {
      throw ConfigError("n = " + std::to_string(n) + " outside [1, " + std::to_string(max_n) +
                        "] for " + cfg.subcommand);
    }
    if (cfg.marked >= (std::size_t{1} << n)) throw ConfigError("marked index >= 2^n");
    if (!cfg.positions.empty()) {
      try {
        validate(NoiseSpec{SingleQubitUnitary{}, cfg.positions}, n);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
    for (int m : cfg.m) {
      if (m < 1 || m > n) throw ConfigError("m = " + std::to_string(m) + " outside [1, n]");
    }
  }
  if (cfg.m.empty() && cfg.positions.empty()) throw ConfigError("m: at least one value required");
  noise_unitary(cfg);
  for (double p : cfg.p)
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p = " + format_number(p) + " outside [0, 1]");
  for (double mu : cfg.mu)
    if (!(mu >= 0.0 && mu <= 1.0)) throw ConfigError("mu = " + format_number(mu) + " outside [0, 1]");
  for (double t : cfg.temperatures)
    if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("temperatures must be positive");

  int min_steps = 0;
  if (cfg.subcommand == "noisy" || cfg.subcommand == "invariance" || cfg.subcommand == "firstmax") {
    min_steps = 1;
  }
  if (cfg.subcommand == "blp" || cfg.subcommand == "cpdiv" || cfg.subcommand == "thermal") {
    min_steps = 2;
  }
  if (cfg.steps < min_steps) {
    throw ConfigError("steps must be >= " + std::to_string(min_steps) + " for " + cfg.subcommand);
  }
  if (cfg.subcommand == "oracle-check" && cfg.steps > kMaxHistorySteps) {
    throw ConfigError("steps must be <= " + std::to_string(kMaxHistorySteps) + " for oracle-check");
  }
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
  if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("format must be csv or json");
  if (cfg.jobs < 1) throw ConfigError("jobs must be >= 1");
}

ResultTable run(const ExperimentConfig& cfg) {
  validate(cfg);
  ResultTable table;
  const std::string& s = cfg.subcommand;
  if (s == "ideal") table = run_ideal(cfg);
  else if (s == "noisy") table = run_noisy(cfg);
  else if (s == "invariance") table = run_invariance(cfg);
  else if (s == "firstmax") table = run_firstmax(cfg);
  else if (s == "blp") table = run_measure(cfg, false);
  else if (s == "cpdiv") table = run_measure(cfg, true);
  else if (s == "thermal") table = run_thermal(cfg);
  else if (s == "dilation-check") table = run_dilation_check(cfg);
  else table = run_oracle_check(cfg);
  table.meta = echo(cfg);
  return table;
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drops the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string to_csv(const ResultTable& table) {
  std::string out;
  for (const auto& [k, v] : table.meta) out += "# " + k + "=" + v + "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  if (!table.columns.empty()) out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const ResultTable& table) {
  nlohmann::ordered_json j;
  j["meta"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : table.meta) j["meta"][k] = v;
  j["columns"] = table.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) j["rows"].push_back(row);
  return j.dump(2) + "\n";
}

ResultTable parse_csv(const std::string& text) {
  ResultTable table;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw std::runtime_error("parse_csv: bad metadata line");
      table.meta.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
    } else if (!header) {
      table.columns = split(line, ',');
      header = true;
    } else {
      std::vector<double> row;
      for (const auto& cell : split(line, ',')) row.push_back(parse_double(cell, "csv cell"));
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

void emit(const ResultTable& table, const std::string& format, const std::string& path) {
  const std::string body = format == "json" ? to_json(table) : to_csv(table);
  if (path.empty() || path == "-") {
    std::cout << body << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << body;
  out.close();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace ngrover
