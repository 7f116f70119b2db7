#include <gtest/gtest.h>

#include <cmath>

#include "ngrover/measures.hpp"

using namespace ngrover;

namespace {

const NoiseSpec kSigmaX1 = NoiseSpec::prefix(presets::sigma_x(), 1);

}  // namespace

TEST(BlpPair, SecondMemberIsValidWithFlatSpectrum) {
  for (int n = 1; n <= 5; ++n) {
    const GroverInstance inst(n);
    const StatePair pair = blp_pair(inst);
    EXPECT_TRUE(assert_density(pair.second, 1e-12).passed);
    const RealVector ev = hermitian_eigenvalues(pair.second);
    const double big_n = static_cast<double>(inst.dim());
    int nonzero = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (std::abs(ev(i)) > 1e-12) {
        ++nonzero;
        EXPECT_NEAR(ev(i), 2.0 / big_n, 1e-12);
      }
    }
    EXPECT_EQ(nonzero, static_cast<int>(inst.dim() / 2));
  }
}

TEST(BlpPair, MembersAreOrthogonal) {
  for (int n = 1; n <= 6; ++n) {
    const StatePair pair = blp_pair(GroverInstance(n));
    EXPECT_EQ(std::abs((pair.first * pair.second).trace()), 0.0);
    EXPECT_NEAR(trace_distance(pair.first, pair.second), 1.0, 1e-12);
  }
}

TEST(Increments, SumsOnlyRisesAboveThreshold) {
  EXPECT_DOUBLE_EQ(sum_positive_increments({1.0, 0.5, 0.7, 0.6, 0.9}), 0.5);
  EXPECT_EQ(sum_positive_increments({0.5, 0.5 + 1e-13, 0.5}), 0.0);
  EXPECT_EQ(sum_positive_increments({}), 0.0);
  EXPECT_EQ(sum_positive_increments({0.3}), 0.0);
}

TEST(NBlp, ZeroWithoutNoise) {
  const GroverInstance inst(3);
  for (double mu : {0.0, 0.5, 1.0}) {
    EXPECT_LE(n_blp(inst, kSigmaX1, MarkovNoiseParams(0.0, mu), 45).value, 1e-9) << mu;
  }
}

TEST(NBlp, ZeroWithCertainNoise) {
  const GroverInstance inst(3);
  for (double mu : {0.0, 0.5, 1.0}) {
    EXPECT_LE(n_blp(inst, kSigmaX1, MarkovNoiseParams(1.0, mu), 45).value, 1e-9) << mu;
  }
}

TEST(NBlp, BackflowOnlyWithStrongMemory) {
  const GroverInstance inst(3);
  EXPECT_GT(n_blp(inst, kSigmaX1, MarkovNoiseParams(0.33, 0.9), 45).value, 1e-4);
  EXPECT_LE(n_blp(inst, kSigmaX1, MarkovNoiseParams(0.33, 0.3), 45).value, 1e-9);
}

TEST(NBlp, ResultStructureAndInvariants) {
  const GroverInstance inst(3);
  const MarkovNoiseParams params(0.5, 0.85);
  const MeasureResult r = n_blp(inst, kSigmaX1, params, 40);
  ASSERT_EQ(r.series.size(), 41u);
  ASSERT_EQ(r.joint_series.size(), 41u);
  EXPECT_EQ(r.horizon, 40);
  EXPECT_TRUE(r.witness_only);
  EXPECT_GE(r.value, 0.0);
  EXPECT_DOUBLE_EQ(r.value, sum_positive_increments(r.series));
  EXPECT_NEAR(r.series[0], 1.0, 1e-12);
  for (double d : r.series) EXPECT_LE(d, r.series[0] + 1e-10);
  for (std::size_t t = 2; t < r.joint_series.size(); ++t) {
    EXPECT_LE(r.joint_series[t], r.joint_series[t - 1] + 1e-10);
  }
  const MeasureResult again = n_blp(inst, kSigmaX1, params, 40);
  EXPECT_EQ(again.value, r.value);
  EXPECT_EQ(again.series, r.series);
}

TEST(NBlp, LongerHorizonNeverDecreasesValue) {
  const GroverInstance inst(3);
  for (double mu : {0.6, 0.8, 0.95}) {
    const MarkovNoiseParams params(0.4, mu);
    double previous = 0.0;
    for (int horizon : {5, 10, 20, 40}) {
      const double v = n_blp(inst, kSigmaX1, params, horizon).value;
      EXPECT_GE(v, previous);
      previous = v;
    }
  }
}

TEST(NBlp, DenseChannelPathMatchesStructuredPath) {
  const GroverInstance inst(3);
  const MarkovNoiseParams params(0.45, 0.9);
  const ComplexMatrix g = grover_operator(inst);
  const ComplexMatrix gp = noisy_grover(g, build_chi(3, kSigmaX1));
  const MeasureResult structured = n_blp(inst, kSigmaX1, params, 30);
  const MeasureResult dense = n_blp(blp_pair(inst), collision_channel(g, gp, params), 30);
  for (std::size_t t = 0; t < structured.series.size(); ++t) {
    EXPECT_NEAR(structured.series[t], dense.series[t], 1e-12);
  }
  EXPECT_NEAR(structured.value, dense.value, 1e-10);
}

TEST(NBlp, RejectsShortHorizon) {
  EXPECT_THROW(n_blp(GroverInstance(3), kSigmaX1, MarkovNoiseParams(0.5, 0.5), 1),
               std::invalid_argument);
}

TEST(NCp, InitialTraceNorm) {
  for (int n = 2; n <= 4; ++n) {
    const GroverInstance inst(n);
    const MeasureResult r = n_cp(inst, kSigmaX1, MarkovNoiseParams(0.5, 0.5), 2);
    EXPECT_NEAR(r.series[0], std::sqrt(1.0 - 1.0 / static_cast<double>(inst.dim())), 1e-12);
  }
  EXPECT_NEAR(n_cp(GroverInstance(3), kSigmaX1, MarkovNoiseParams(0.5, 0.5), 2).series[0], 0.93541,
              1e-5);
}

TEST(NCp, BrokenDivisibilityWithStrongMemory) {
  const MeasureResult r = n_cp(GroverInstance(3), kSigmaX1, MarkovNoiseParams(0.5, 0.9), 20);
  EXPECT_GT(r.value, 1e-4);
  EXPECT_TRUE(r.witness_only);
  EXPECT_EQ(r.series.size(), 21u);
  EXPECT_DOUBLE_EQ(r.value, sum_positive_increments(r.series));
}

TEST(NCp, ExtendedSpaceMatchesFactorizedOracle) {
  for (double mu : {0.2, 0.9}) {
    const GroverInstance inst(3, 2);
    const NoiseSpec spec = NoiseSpec::prefix(presets::hadamard(), 2);
    const MarkovNoiseParams params(0.35, mu);
    const MeasureResult r = n_cp(inst, spec, params, 12);
    const auto oracle = n_cp_factorized_series(inst, spec, params, 12);
    for (std::size_t t = 0; t < oracle.size(); ++t) EXPECT_NEAR(r.series[t], oracle[t], 1e-12);
  }
}

TEST(NCp, ZeroValueIsStillOnlyAWitness) {
  const MeasureResult r = n_cp(GroverInstance(2), kSigmaX1, MarkovNoiseParams(0.0, 0.0), 6);
  EXPECT_TRUE(r.witness_only);
  EXPECT_GE(r.value, 0.0);
}

TEST(TemperatureSweep, ColdColumnMatchesPureAncillas) {
  const GroverInstance inst(3);
  const auto points = temperature_sweep(inst, kSigmaX1, {0.33, 0.5}, {0.5, 0.9}, 45, {0.01});
  ASSERT_EQ(points.size(), 4u);
  for (const auto& pt : points) {
    const double pure = n_blp(inst, kSigmaX1, MarkovNoiseParams(pt.p, pt.mu), 45).value;
    EXPECT_NEAR(pt.value, pure, 1e-5) << pt.p << " " << pt.mu;
  }
}

TEST(TemperatureSweep, HotterBathCarriesLessBackflow) {
  const auto points = temperature_sweep(GroverInstance(3), kSigmaX1, {0.5}, {0.9}, 45, {0.5, 2.0});
  ASSERT_EQ(points.size(), 2u);
  EXPECT_EQ(points[0].temperature, 0.5);
  EXPECT_LE(points[1].value, points[0].value);
}

TEST(TemperatureSweep, NoNoiseRowIsSmall) {
  // Excited ancilla columns of U still route G' at p = 0, so the row is
  // small rather than identically zero; it vanishes without memory.
  const auto points = temperature_sweep(GroverInstance(3), kSigmaX1, {0.0}, {0.0, 0.5, 0.9, 1.0}, 45,
                                        {0.1, 0.3, 0.5, 1.0, 5.0});
  for (const auto& pt : points) {
    EXPECT_LE(pt.value, 0.03) << pt.mu << " " << pt.temperature;
    if (pt.mu == 0.0) EXPECT_LE(pt.value, 1e-9);
  }
  const auto quiet = temperature_sweep(GroverInstance(3), kSigmaX1, {0.0}, {1.0}, 45, {0.3});
  const auto noisy = temperature_sweep(GroverInstance(3), kSigmaX1, {0.5}, {1.0}, 45, {0.3});
  EXPECT_GT(noisy.front().value, 10.0 * quiet.front().value);
}

TEST(TemperatureSweep, RejectsNonPositiveTemperature) {
  EXPECT_THROW(temperature_sweep(GroverInstance(3), kSigmaX1, {0.5}, {0.5}, 10, {0.0}),
               std::invalid_argument);
}

TEST(InvariantViolationType, CarriesNameAndDeviation) {
  const InvariantViolation e("joint_trace_distance_monotone", 0.25);
  EXPECT_EQ(e.name(), "joint_trace_distance_monotone");
  EXPECT_EQ(e.deviation(), 0.25);
  EXPECT_NE(std::string(e.what()).find("joint_trace_distance_monotone"), std::string::npos);
}
