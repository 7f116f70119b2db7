#pragma once

// Discrete-time non-Markovianity witnesses. Both measures use fixed inputs
// (no maximization), so a zero value does not certify Markovianity.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ngrover/collision.hpp"
#include "ngrover/grover.hpp"
#include "ngrover/markov.hpp"
#include "ngrover/noise.hpp"

namespace ngrover {

/// Raised when a numerical invariant fails mid-run.
class InvariantViolation : public std::runtime_error {
 public:
  InvariantViolation(std::string name, double deviation);

  const std::string& name() const { return name_; }
  double deviation() const { return deviation_; }

 private:
  std::string name_;
  double deviation_;
};

struct StatePair {
  DensityMatrix first;
  DensityMatrix second;
};

/// first = |s><s|, second = (1/N) [[1, -1], [-1, 1]] in N/2 blocks.
StatePair blp_pair(const GroverInstance& inst);

struct MeasureResult {
  double value = 0.0;
  std::vector<double> series;        ///< D(t) or Gamma(t), t = 0..horizon
  std::vector<double> joint_series;  ///< walker (x) system distances (BLP only)
  int horizon = 0;
  bool witness_only = true;          ///< value 0 does not imply Markovianity
};

inline constexpr double kIncrementThreshold = 1e-12;
inline constexpr double kJointMonotoneTol = 1e-10;

/// Sum of the increments series[t+1] - series[t] above `threshold`.
double sum_positive_increments(const std::vector<double>& series,
                               double threshold = kIncrementThreshold);

/// Trace-distance back-flow over the canonical pair. Without a bath the
/// structured walker channel is used; with one the 16-operator thermal set.
/// Throws InvariantViolation if the joint distance increases for t >= 1.
MeasureResult n_blp(const GroverInstance& inst, const NoiseSpec& spec,
                    const MarkovNoiseParams& params, int horizon,
                    const std::optional<ThermalBath>& bath = std::nullopt);

/// Same as n_blp for an arbitrary system pair.
MeasureResult n_blp(const StatePair& pair, const CollisionChannel& channel, int horizon);

/// CP-divisibility witness. R = (1_N / N) (x) |+><+| (x) (|s><s| - |w><w|) on
/// spectator (x) walker (x) system, evolved by 1_N (x) K; Gamma_t is half the
/// trace norm after tracing out the walker.
MeasureResult n_cp(const GroverInstance& inst, const NoiseSpec& spec,
                   const MarkovNoiseParams& params, int horizon);

/// Gamma_t without the spectator: (1/2) || Tr_walker Phi_t(|+><+| (x) X) ||_1.
std::vector<double> n_cp_factorized_series(const GroverInstance& inst, const NoiseSpec& spec,
                                           const MarkovNoiseParams& params, int horizon);

struct TemperaturePoint {
  double p = 0.0;
  double mu = 0.0;
  double temperature = 0.0;
  double value = 0.0;
};

/// n_blp with a thermal bath at every (p, mu, T) point, in row-major order
/// of the three lists.
std::vector<TemperaturePoint> temperature_sweep(const GroverInstance& inst, const NoiseSpec& spec,
                                                const std::vector<double>& ps,
                                                const std::vector<double>& mus, int horizon,
                                                const std::vector<double>& temperatures);

}  // namespace ngrover
