#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ngrover/grover.hpp"
#include "ngrover/markov.hpp"

using namespace ngrover;

TEST(Instance, RejectsBadArguments) {
  EXPECT_THROW(GroverInstance(0), std::invalid_argument);
  EXPECT_THROW(GroverInstance(GroverInstance::kMaxQubits + 1), std::invalid_argument);
  EXPECT_THROW(GroverInstance(3, 8), std::invalid_argument);
  EXPECT_NO_THROW(GroverInstance(3, 7));
}

TEST(UniformSuperposition, SingleQubit) {
  const StateVector s = uniform_superposition(GroverInstance(1));
  ASSERT_EQ(s.size(), 2);
  EXPECT_NEAR(s(0).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s(1).real(), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(UniformSuperposition, FiveQubits) {
  const StateVector s = uniform_superposition(GroverInstance(5));
  ASSERT_EQ(s.size(), 32);
  for (Eigen::Index i = 0; i < 32; ++i) EXPECT_NEAR(std::abs(s(i) - 1.0 / std::sqrt(32.0)), 0.0, 1e-15);
  EXPECT_NEAR(s.norm(), 1.0, 1e-12);
}

TEST(UniformSuperposition, OverlapWithAnyMarkedState) {
  for (std::size_t w = 0; w < 16; ++w) {
    const GroverInstance inst(4, w);
    EXPECT_NEAR(std::abs(marked_state(inst).dot(uniform_superposition(inst)) - 0.25), 0.0, 1e-15);
  }
}

TEST(GroverOperator, UnitaryForSmallRegisters) {
  for (int n = 2; n <= 7; ++n) EXPECT_LT(unitarity_defect(grover_operator(GroverInstance(n, 1))), 1e-12);
}

TEST(GroverOperator, EqualsDiffuserTimesOracle) {
  for (int n = 2; n <= 6; ++n) {
    const GroverInstance inst(n, (std::size_t{1} << n) - 1);
    EXPECT_LT(max_abs_diff(grover_operator(inst), diffuser(inst) * oracle(inst)), 1e-12);
  }
}

TEST(GroverOperator, FourElementDatabaseHitsInOneStep) {
  const GroverInstance inst(2, 0);
  const Complex amp = marked_state(inst).dot(grover_operator(inst) * uniform_superposition(inst));
  EXPECT_NEAR(std::abs(amp - 1.0), 0.0, 1e-12);
}

TEST(GroverOperator, OrbitStaysInTwoDimensionalSpan) {
  const GroverInstance inst(6, 13);
  const ComplexMatrix g = grover_operator(inst);
  const StateVector w = marked_state(inst);
  StateVector s_bar = uniform_superposition(inst) - w * w.dot(uniform_superposition(inst));
  s_bar.normalize();
  StateVector psi = uniform_superposition(inst);
  for (int t = 0; t <= 50; ++t) {
    const StateVector rest = psi - w * w.dot(psi) - s_bar * s_bar.dot(psi);
    EXPECT_LE(rest.norm(), 1e-10) << "t=" << t;
    psi = g * psi;
  }
}

TEST(SuccessSeries, StartsAtOneOverN) {
  for (int n = 1; n <= 6; ++n) {
    const auto p = ideal_success_series(GroverInstance(n), 0);
    ASSERT_EQ(p.size(), 1u);
    EXPECT_NEAR(p[0], 1.0 / std::ldexp(1.0, n), 1e-15);
  }
}

TEST(SuccessSeries, FiveQubitsPeaksAtFour) {
  const auto p = ideal_success_series(GroverInstance(5), 10);
  ASSERT_EQ(p.size(), 11u);
  EXPECT_EQ(std::max_element(p.begin(), p.end()) - p.begin(), 4);
  const double oracle = std::pow(std::sin(9.0 * std::asin(1.0 / std::sqrt(32.0))), 2);
  EXPECT_NEAR(p[4], oracle, 1e-12);
  EXPECT_NEAR(p[4], 0.99918, 1e-5);
}

TEST(SuccessSeries, ClosedFormRotation) {
  for (int n = 2; n <= 7; ++n) {
    const double half = std::asin(1.0 / std::sqrt(std::ldexp(1.0, n)));
    const auto p = ideal_success_series(GroverInstance(n, 3 % (1 << n)), 30);
    for (int t = 0; t <= 30; ++t) {
      EXPECT_NEAR(p[static_cast<std::size_t>(t)], std::pow(std::sin((2 * t + 1) * half), 2), 1e-10);
    }
  }
}

TEST(SuccessSeries, ReachesNearCertaintyWithinPeriod) {
  for (int n = 2; n <= 8; ++n) {
    const double big_n = std::ldexp(1.0, n);
    const auto p = ideal_success_series(GroverInstance(n),
                                        static_cast<int>(std::ceil(std::numbers::pi * std::sqrt(big_n))));
    EXPECT_GE(*std::max_element(p.begin(), p.end()), 1.0 - 1.0 / big_n);
  }
}

TEST(SuccessSeries, MatchesNoiselessMarkovRun) {
  const GroverInstance inst(4, 9);
  const auto ideal = ideal_success_series(inst, 20);
  for (double mu : {0.0, 0.5, 1.0}) {
    const auto noisy = markov_evolve(inst, NoiseSpec::prefix(presets::hadamard(), 2),
                                     MarkovNoiseParams(0.0, mu), 20)
                           .success;
    for (std::size_t t = 0; t < ideal.size(); ++t) EXPECT_NEAR(noisy[t], ideal[t], 1e-12);
  }
}

TEST(OptimalIterations, Examples) {
  EXPECT_EQ(optimal_iterations(32), 4);
  EXPECT_EQ(optimal_iterations(4), 1);
  EXPECT_EQ(optimal_iterations(64), 6);
  EXPECT_THROW(optimal_iterations(2), std::invalid_argument);
}
