#pragma once

// Collisional model for the walker + register dynamics.
//
// Every step a fresh pair of ancilla qubits collides with walker (x) system
// through a unitary on ancilla_1 (x) ancilla_2 (x) walker (x) system
// (dimension 8N). Block (r, c) of the 8 x 8 grid of N x N blocks has
// r = 4 a1 + 2 a2 + walker.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ngrover/linalg.hpp"
#include "ngrover/markov.hpp"

namespace ngrover {

enum class StepKind { Initial, Steady };

struct KrausSet {
  std::vector<ComplexMatrix> ops;
  std::vector<std::string> labels;

  std::size_t dim() const { return ops.empty() ? 0 : static_cast<std::size_t>(ops.front().rows()); }
  /// sum_k K R K^dagger
  ComplexMatrix apply(const ComplexMatrix& r) const;
  /// max |sum K^dagger K - 1|
  double completeness_defect() const;
  /// max |sum K K^dagger - 1|; nonzero for a non-unital map
  double unitality_defect() const;
};

/// Four operators on walker (x) system:
///   sqrt(p_{g|g}) [[G,0],[0,0]],  sqrt(p_{g|g'}) [[0,G],[0,0]],
///   sqrt(p_{g'|g}) [[0,0],[G',0]], sqrt(p_{g'|g'}) [[0,0],[0,G']].
/// The initial kind uses the stationary probabilities.
KrausSet kraus_step(StepKind kind, const MarkovNoiseParams& params, const ComplexMatrix& g,
                    const ComplexMatrix& g_noisy);

struct DilationUnitary {
  ComplexMatrix matrix;
  StepKind kind = StepKind::Steady;

  std::size_t walker_system_dim() const { return static_cast<std::size_t>(matrix.rows() / 4); }
  /// <alpha|U|beta> as an operator on walker (x) system; alpha, beta in 0..3.
  ComplexMatrix ancilla_block(int alpha, int beta) const;
};

/// The 8N x 8N collision unitary with the printed block layout.
DilationUnitary dilation_unitary(StepKind kind, const MarkovNoiseParams& params,
                                 const ComplexMatrix& g, const ComplexMatrix& g_noisy);

/// K_alpha = <alpha|U|00>.
KrausSet pure_ancilla_kraus(const DilationUnitary& u);

struct DilationReport {
  int trials = 0;
  double unitarity_defect = 0.0;
  double kraus_mismatch = 0.0;  ///< max |<alpha|U|00> - K_alpha|
  double max_deviation = 0.0;   ///< max trace distance between the two routes
  double tolerance = 0.0;
  bool passed = false;
};

inline constexpr double kDilationUnitarityTol = 1e-10;

/// Compares Tr_anc[U (|00><00| (x) R) U^dagger] with sum K R K^dagger on
/// seeded random states R. Passes when the route deviation and the Kraus
/// mismatch are within `tol` and U is unitary within kDilationUnitarityTol.
/// A sign flip of a single block leaves the channel unchanged, so the Kraus
/// mismatch is what catches it.
DilationReport verify_dilation(const DilationUnitary& u, const KrausSet& kraus, int trials,
                               double tol = 1e-12, std::uint64_t seed = 0x5eed);

using Matrix8c = Eigen::Matrix<Complex, 8, 8>;

struct MixerFactorization {
  Matrix8c mixer = Matrix8c::Zero();  ///< M' on ancilla_1 (x) ancilla_2 (x) walker
  double residual = 0.0;              ///< max |M_full - M' (x) 1_N|
  double unitarity_defect = 0.0;      ///< max |M'^dagger M' - 1|
  int control_state = 1;              ///< ancilla_1 state that triggers chi
  bool factorized = false;
};

/// Recovers M' from U = (controlled-chi) (M' (x) 1_N) (1_8 (x) G). Both
/// control conventions are tried; the one with the smaller residual wins.
MixerFactorization extract_mixer(const DilationUnitary& u, const ComplexMatrix& chi,
                                 const ComplexMatrix& g, double tol = 1e-8);

/// The 4 x 4 blocks printed alongside the decomposition. Column j of `plus`
/// (resp. `minus`), padded with a unit entry at index 4 + j, is a +1
/// (resp. -1) eigenvector of the mixer.
struct MixerEigenBlocks {
  Eigen::Matrix4d plus;   ///< "B"
  Eigen::Matrix4d minus;  ///< "A"
};

/// As printed. Requires every conditional probability to be positive.
MixerEigenBlocks printed_mixer_blocks(const TransitionProbs& probs);
/// As printed except minus(3, 2) = (sqrt(p_{g'|g}) - 1) / sqrt(p_{g|g}).
MixerEigenBlocks corrected_mixer_blocks(const TransitionProbs& probs);

/// Relative eigen-equation residuals: entries 0..3 for the `plus` columns,
/// 4..7 for the `minus` columns.
std::array<double, 8> mixer_eigen_residuals(const Matrix8c& mixer, const MixerEigenBlocks& blocks);

struct ThermalBath {
  double temperature = 0.0;
  double z1 = 1.0;  ///< 1 / (1 + e^{-1/T})
  double z2 = 0.0;  ///< e^{-1/T} / (1 + e^{-1/T})
};

/// Throws std::invalid_argument unless T > 0.
ThermalBath thermal_weights(double temperature);

/// Sixteen operators K_{alpha beta} = pi_beta <alpha|U|beta> with
/// pi_00 = z1, pi_01 = pi_10 = sqrt(z1 z2), pi_11 = z2.
KrausSet thermal_kraus(const DilationUnitary& u, const ThermalBath& bath);

/// The per-step Kraus sets of a collision run: `first` for t = 1, `steady`
/// afterwards.
struct CollisionChannel {
  KrausSet first;
  KrausSet steady;
};

CollisionChannel collision_channel(const ComplexMatrix& g, const ComplexMatrix& g_noisy,
                                   const MarkovNoiseParams& params,
                                   const std::optional<ThermalBath>& bath = std::nullopt);

/// R_t = sum K R_{t-1} K^dagger with dense Kraus operators.
EvolutionTrace collision_evolve(const CollisionChannel& channel, const ComplexMatrix& joint0,
                                std::size_t marked, int steps, TraceOptions opts = {});

}  // namespace ngrover
