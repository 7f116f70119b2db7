#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ngrover/experiments.hpp"
#include "ngrover/grover.hpp"
#include "ngrover/measures.hpp"

using namespace ngrover;

namespace {

ExperimentConfig config(const std::string& sub, std::initializer_list<std::pair<const char*, const char*>> kv) {
  ExperimentConfig cfg;
  cfg.subcommand = sub;
  for (const auto& [k, v] : kv) apply_setting(cfg, k, v);
  return cfg;
}

std::size_t column(const ResultTable& t, const std::string& name) {
  const auto it = std::find(t.columns.begin(), t.columns.end(), name);
  if (it == t.columns.end()) throw std::out_of_range("no column " + name);
  return static_cast<std::size_t>(it - t.columns.begin());
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST(Ideal, PeakAtFourForFiveQubits) {
  const ResultTable t = run(config("ideal", {{"n", "5"}, {"steps", "10"}}));
  ASSERT_EQ(t.columns, (std::vector<std::string>{"t", "P[n=5]"}));
  ASSERT_EQ(t.rows.size(), 11u);
  std::size_t best = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    if (t.rows[i][1] > t.rows[best][1]) best = i;
  EXPECT_EQ(best, 4u);
  EXPECT_NEAR(t.rows[0][1], 1.0 / 32.0, 1e-15);
}

TEST(Noisy, NoNoiseMatchesIdeal) {
  const ResultTable noisy = run(config("noisy", {{"n", "6"}, {"p", "0"}, {"mu", "0,0.7"}, {"steps", "12"}}));
  const auto ideal = ideal_success_series(GroverInstance(6), 12);
  ASSERT_EQ(noisy.columns.size(), 3u);
  EXPECT_EQ(noisy.columns[1], "P[n=6;m=1;p=0;mu=0]");
  for (std::size_t t = 0; t < ideal.size(); ++t) {
    EXPECT_NEAR(noisy.rows[t][1], ideal[t], 1e-12);
    EXPECT_NEAR(noisy.rows[t][2], ideal[t], 1e-12);
  }
}

TEST(Invariance, GoodNoiseDeviationVanishes) {
  const ResultTable t =
      run(config("invariance", {{"n", "4"}, {"noise", "z"}, {"m", "1,2,3,4"}, {"p", "0.4"}, {"mu", "0.6"}}));
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (t.columns[c].rfind("dev", 0) != 0) continue;
    for (const auto& row : t.rows) EXPECT_LE(row[c], 1e-9) << t.columns[c];
  }
}

TEST(Firstmax, StrictLocalMaximum) {
  EXPECT_EQ(first_local_maximum({0.1, 0.3, 0.2, 0.9, 0.1}), 1u);
  EXPECT_EQ(first_local_maximum({0.1, 0.2, 0.3}), 2u);
  EXPECT_EQ(first_local_maximum({0.5, 0.5, 0.5}), 0u);
  const ResultTable t = run(config("firstmax", {{"n", "5"}, {"p", "0"}, {"steps", "10"}}));
  EXPECT_EQ(t.rows.front()[column(t, "t_star")], 4.0);
}

TEST(Measures, TableValuesMatchLibrary) {
  const ResultTable t = run(config("blp", {{"n", "3"}, {"p", "0.33"}, {"mu", "0.3,0.9"}, {"steps", "45"}}));
  ASSERT_EQ(t.rows.size(), 2u);
  const auto v = n_blp(GroverInstance(3), NoiseSpec::prefix(presets::sigma_x(), 1),
                       MarkovNoiseParams(0.33, 0.9), 45).value;
  EXPECT_EQ(t.rows[1][column(t, "N_BLP")], v);
  EXPECT_LE(t.rows[0][column(t, "N_BLP")], 1e-9);
}

TEST(Checks, DilationAndOraclePass) {
  const ResultTable d = run(config("dilation-check", {{"n", "3"}, {"p", "0.2,0.8"}, {"mu", "0.1,0.9"}, {"trials", "3"}}));
  EXPECT_FALSE(d.violation.has_value());
  for (const auto& row : d.rows) EXPECT_EQ(row[column(d, "passed")], 1.0);
  const ResultTable o = run(config("oracle-check", {{"n", "3"}, {"steps", "6"}}));
  EXPECT_FALSE(o.violation.has_value());
  EXPECT_LE(o.rows.front()[column(o, "trace_distance")], 1e-10);
}

TEST(Output, CsvLayout) {
  const ResultTable t = run(config("ideal", {{"n", "3"}, {"steps", "2"}}));
  const std::string csv = to_csv(t);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  EXPECT_EQ(csv.rfind("# artifact=ngrover\n# version=1.0.0\n", 0), 0u);
  EXPECT_NE(csv.find("# subcommand=ideal\n"), std::string::npos);
  EXPECT_NE(csv.find("\nt,P[n=3]\n0,0.125\n"), std::string::npos);
  EXPECT_EQ(csv.back(), '\n');
}

TEST(Output, NumbersUseFifteenSignificantDigits) {
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333333");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1e-20), "1e-20");
  EXPECT_EQ(format_number(2.0), "2");
}

TEST(Output, CsvRoundTrip) {
  const ResultTable t = run(config("noisy", {{"n", "4"}, {"p", "0.3"}, {"mu", "0.2,0.8"}, {"steps", "7"}}));
  const ResultTable back = parse_csv(to_csv(t));
  EXPECT_EQ(back.meta, t.meta);
  EXPECT_EQ(back.columns, t.columns);
  ASSERT_EQ(back.rows.size(), t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    for (std::size_t j = 0; j < t.rows[i].size(); ++j) {
      EXPECT_NEAR(back.rows[i][j], t.rows[i][j], 1e-14 * std::max(1.0, std::abs(t.rows[i][j])));
    }
  }
}

TEST(Output, EmptyTableIsHeaderOnly) {
  ResultTable t;
  t.meta = {{"version", "1.0.0"}};
  t.columns = {"n", "N_BLP"};
  EXPECT_EQ(to_csv(t), "# version=1.0.0\nn,N_BLP\n");
  EXPECT_NE(to_json(t).find("\"rows\": []"), std::string::npos);
}

TEST(Output, JsonCarriesMetaColumnsRows) {
  const std::string json = to_json(run(config("ideal", {{"n", "2"}, {"steps", "1"}})));
  EXPECT_NE(json.find("\"meta\""), std::string::npos);
  EXPECT_NE(json.find("\"columns\""), std::string::npos);
  EXPECT_NE(json.find("\"rows\""), std::string::npos);
  EXPECT_EQ(json.back(), '\n');
}

TEST(Output, EmitWritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "ngrover_emit_test.csv";
  const ResultTable t = run(config("ideal", {{"n", "3"}, {"steps", "3"}}));
  emit(t, "csv", path.string());
  EXPECT_EQ(read_file(path), to_csv(t));
  std::filesystem::remove(path);
  EXPECT_THROW(emit(t, "csv", "/nonexistent-dir/x.csv"), std::runtime_error);
}

TEST(Determinism, IdenticalAcrossRunsAndJobCounts) {
  const auto cfg = config("noisy", {{"n", "3,4"}, {"m", "1,2"}, {"p", "0.2,0.6"}, {"mu", "0,0.9"}, {"steps", "9"}});
  const std::string once = to_csv(run(cfg));
  EXPECT_EQ(to_csv(run(cfg)), once);
  auto parallel = cfg;
  parallel.jobs = 4;
  EXPECT_EQ(to_csv(run(parallel)), once);
}

TEST(Config, ParsesKeyValueLines) {
  const auto kv = parse_config_text("# comment\n n = 3,4 \n\nmu=0.5 # trailing\n");
  ASSERT_EQ(kv.size(), 2u);
  EXPECT_EQ(kv.at("n"), "3,4");
  EXPECT_EQ(kv.at("mu"), "0.5");
  EXPECT_THROW(parse_config_text("bogus = 1\n"), ConfigError);
  EXPECT_THROW(parse_config_text("n 3\n"), ConfigError);
  EXPECT_THROW(load_config_file("/nonexistent/file.cfg"), ConfigError);
}

TEST(Config, LaterSettingsOverrideEarlier) {
  ExperimentConfig cfg;
  for (const auto& [k, v] : parse_config_text("n = 3\np = 0.1\n")) apply_setting(cfg, k, v);
  apply_setting(cfg, "p", "0.9");
  EXPECT_EQ(cfg.n, std::vector<int>{3});
  EXPECT_EQ(cfg.p, std::vector<double>{0.9});
}

TEST(Config, RejectsMalformedValues) {
  ExperimentConfig cfg;
  EXPECT_THROW(apply_setting(cfg, "n", "three"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "p", "0.5x"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "marked", "-1"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "colour", "red"), ConfigError);
}

TEST(Validation, DomainBounds) {
  EXPECT_THROW(run(config("nope", {})), ConfigError);
  EXPECT_THROW(run(config("noisy", {{"p", "1.5"}})), ConfigError);
  EXPECT_THROW(run(config("noisy", {{"mu", "-0.1"}})), ConfigError);
  EXPECT_THROW(run(config("noisy", {{"n", "3"}, {"m", "4"}})), ConfigError);
  EXPECT_THROW(run(config("noisy", {{"n", "3"}, {"marked", "8"}})), ConfigError);
  EXPECT_THROW(run(config("noisy", {{"noise", "w"}})), ConfigError);
  EXPECT_THROW(run(config("noisy", {{"positions", "0,0"}})), ConfigError);
  EXPECT_THROW(run(config("cpdiv", {{"n", "6"}})), ConfigError);
  EXPECT_THROW(run(config("blp", {{"steps", "1"}})), ConfigError);
  EXPECT_THROW(run(config("oracle-check", {{"steps", "21"}})), ConfigError);
  EXPECT_THROW(run(config("thermal", {{"temperatures", "0"}})), ConfigError);
  EXPECT_THROW(run(config("ideal", {{"format", "xml"}})), ConfigError);
  EXPECT_THROW(run(config("ideal", {{"jobs", "0"}})), ConfigError);
}

TEST(CustomNoise, NormalizationChecked) {
  const auto ok = config("noisy", {{"noise", "custom"}, {"a", "0,0"}, {"b", "1,0"}, {"theta", "3.141592653589793"}, {"steps", "5"}});
  const auto x = config("noisy", {{"noise", "x"}, {"steps", "5"}});
  const ResultTable a = run(ok);
  const ResultTable b = run(x);
  for (std::size_t t = 0; t < a.rows.size(); ++t) EXPECT_NEAR(a.rows[t][1], b.rows[t][1], 1e-12);
  EXPECT_THROW(run(config("noisy", {{"noise", "custom"}, {"a", "1,0"}, {"b", "1,0"}})), ConfigError);
}

TEST(CustomNoise, PositionsOverridePrefix) {
  const ResultTable at = run(config("noisy", {{"n", "3"}, {"positions", "2"}, {"p", "0.5"}, {"steps", "6"}}));
  const ResultTable prefix = run(config("noisy", {{"n", "3"}, {"m", "1"}, {"p", "0.5"}, {"steps", "6"}}));
  ASSERT_EQ(at.columns.size(), 2u);
  EXPECT_EQ(at.columns[1], prefix.columns[1]);
  for (std::size_t t = 0; t < at.rows.size(); ++t) EXPECT_NEAR(at.rows[t][1], prefix.rows[t][1], 1e-12);
  EXPECT_NE(to_csv(at).find("# positions=2\n"), std::string::npos);
}
