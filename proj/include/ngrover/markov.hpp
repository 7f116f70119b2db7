#pragma once

// Register evolution under Markovian-correlated noise.
//
// A two-level walker (|g> = index 0, |g'> = index 1) decides at every step
// whether the ideal G or the noisy G' = chi G fires. Joint states live on
// walker (x) system, so a 2N x 2N matrix splits into N x N blocks R[k][l]
// with k, l the walker indices.

#include <cstddef>
#include <vector>

#include "ngrover/grover.hpp"
#include "ngrover/linalg.hpp"
#include "ngrover/noise.hpp"

namespace ngrover {

class MarkovNoiseParams {
 public:
  /// Throws std::invalid_argument unless p, mu are in [0, 1].
  MarkovNoiseParams(double p, double mu);

  double p() const { return p_; }
  double mu() const { return mu_; }

 private:
  double p_;
  double mu_;
};

/// Walker transition probabilities p_{k|l} (probability of k given l).
/// Columns sum to one: ideal_given_ideal + noisy_given_ideal = 1, etc.
struct TransitionProbs {
  double ideal_given_ideal = 1.0;  ///< p_{g|g}
  double noisy_given_ideal = 0.0;  ///< p_{g'|g}
  double ideal_given_noisy = 1.0;  ///< p_{g|g'}
  double noisy_given_noisy = 0.0;  ///< p_{g'|g'}
};

/// p_{k|l} = (1 - mu) p_k + mu [k = l], with p_g = 1 - p, p_{g'} = p.
TransitionProbs conditional_probs(const MarkovNoiseParams& params);
/// First-step probabilities: p_{k|l} = p_k regardless of l.
TransitionProbs stationary_probs(const MarkovNoiseParams& params);

/// R0 = |+><+| (x) rho0 with |+> = (|g> + |g'>)/sqrt 2.
ComplexMatrix initial_joint_state(const DensityMatrix& rho0);
ComplexMatrix initial_joint_state(const GroverInstance& inst);

/// Tr_walker of a 2N x 2N joint state.
DensityMatrix reduce_walker(const ComplexMatrix& joint);

/// The walker-controlled channel: one step maps R to
///   |g><g|   (x) G  (p_{g|g} R_gg  + p_{g|g'} R_g'g') G^dagger
/// + |g'><g'| (x) G' (p_{g'|g} R_gg + p_{g'|g'} R_g'g') G'^dagger,
/// which is exactly the four-operator Kraus map of the collision model
/// evaluated block by block.
class WalkerChannel {
 public:
  WalkerChannel(ComplexMatrix ideal, ComplexMatrix noisy, const MarkovNoiseParams& params);

  /// `first_step` selects the stationary probabilities, otherwise the
  /// conditionals.
  ComplexMatrix apply(const ComplexMatrix& joint, bool first_step) const;

  /// The S0 / S transfer operators in the population-transfer reading: the
  /// |k><l| (x) Phi^k term moves walker population l into k, then applies
  /// Phi^k. Matches apply() on every input.
  ComplexMatrix transfer(const ComplexMatrix& joint, bool first_step) const;

  const ComplexMatrix& ideal() const { return ideal_; }
  const ComplexMatrix& noisy() const { return noisy_; }
  const TransitionProbs& first() const { return first_; }
  const TransitionProbs& steady() const { return steady_; }
  std::size_t system_dim() const { return static_cast<std::size_t>(ideal_.rows()); }

 private:
  ComplexMatrix ideal_;
  ComplexMatrix noisy_;
  TransitionProbs first_;
  TransitionProbs steady_;
};

WalkerChannel make_channel(const GroverInstance& inst, const NoiseSpec& spec,
                           const MarkovNoiseParams& params);

/// Per-step record of an evolution. success[t] = <w|rho_t|w> for t = 0..T.
struct EvolutionTrace {
  std::vector<double> success;
  std::vector<DensityMatrix> states;        ///< rho_t, only when requested
  std::vector<ComplexMatrix> joint_states;  ///< R_t, only when requested
  double max_trace_defect = 0.0;            ///< max_t |Tr R_t - 1|
};

struct TraceOptions {
  bool keep_states = false;
  bool keep_joint = false;
};

EvolutionTrace markov_evolve(const GroverInstance& inst, const NoiseSpec& spec,
                             const MarkovNoiseParams& params, int steps, TraceOptions opts = {});

/// Same evolution from an arbitrary system start, reusing a prepared channel.
EvolutionTrace evolve_with(const WalkerChannel& channel, const DensityMatrix& rho0,
                           std::size_t marked, int steps, TraceOptions opts = {});

/// Upper bound on the enumeration horizon (2^T histories).
inline constexpr int kMaxHistorySteps = 20;

/// rho_T by explicit enumeration of all 2^T noise histories, each weighted
/// p_{i_T|i_{T-1}} ... p_{i_2|i_1} p_{i_1}, propagated as pure states.
DensityMatrix history_oracle(const GroverInstance& inst, const NoiseSpec& spec,
                             const MarkovNoiseParams& params, int steps);

/// Closed form for |<w|G'^t|s>|^2 with sigma_x noise:
/// (1/N) cos^2(theta t) (tan(theta/2) tan(theta t) - 1)^2, theta = arccos(2/N).
double perfect_memory_success(std::size_t database_size, double t);
/// pi / theta - 1/2.
double perfect_memory_first_maximum(std::size_t database_size);

}  // namespace ngrover
