#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "ngrover/grover.hpp"
#include "ngrover/linalg.hpp"

namespace ngrover {

/// U = [[a, b], [-conj(b) e^{i theta}, conj(a) e^{i theta}]], |a|^2 + |b|^2 = 1.
struct SingleQubitUnitary {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};
  double theta = 0.0;

  ComplexMatrix matrix() const;
};

/// Validating constructor; throws std::invalid_argument when |a|^2 + |b|^2
/// deviates from 1 by more than `tol`. theta is reduced into [0, 2 pi).
SingleQubitUnitary single_qubit_unitary(Complex a, Complex b, double theta, double tol = 1e-10);

namespace presets {
SingleQubitUnitary identity();
SingleQubitUnitary sigma_x();
SingleQubitUnitary sigma_y();
SingleQubitUnitary sigma_z();
/// (sigma_x + sigma_z) / sqrt 2
SingleQubitUnitary hadamard();
/// (sigma_y + sigma_z) / sqrt 2
SingleQubitUnitary yz_hadamard();
/// Looks up one of: identity, x, y, z, hadamard, yz-hadamard.
SingleQubitUnitary by_name(std::string_view name);
}  // namespace presets

/// Noise unitary U acting on a set of qubit slots (0 = most significant).
struct NoiseSpec {
  SingleQubitUnitary u;
  std::vector<int> positions;

  int strength() const { return static_cast<int>(positions.size()); }

  /// U^{(x) m} (x) 1^{(x)(n - m)}: the first m slots.
  static NoiseSpec prefix(const SingleQubitUnitary& u, int m);
};

/// Throws if positions are empty, repeated, or outside [0, n).
void validate(const NoiseSpec& spec, int qubits);

/// chi = tensor over slots of (U at noisy positions, 1_2 elsewhere).
ComplexMatrix build_chi(int qubits, const NoiseSpec& spec);

/// G' = chi G.
ComplexMatrix noisy_grover(const ComplexMatrix& grover, const ComplexMatrix& chi);

/// Number of noisy slots at which the basis index has a 1 bit.
int noisy_bit_count(std::size_t index, int qubits, const NoiseSpec& spec);

struct ClosedFormOverlaps {
  Complex psi_q;      ///< row sum of chi for a row with q one-bits on the noisy slots
  Complex s_chi_s;    ///< <s|chi|s>
  Complex w_chi_s;    ///< <w|chi|s> = psi_q / sqrt N
  Complex w_chi_w;    ///< <w|chi|w> = e^{i q theta} a^{m-q} conj(a)^q
  double one_step_success;  ///< P_m(1) = |(1 - 4/N)<w|chi|s> + (2/sqrt N)<w|chi|w>|^2
};

ClosedFormOverlaps closed_form_overlaps(const SingleQubitUnitary& u, int qubits, int m, int q);

/// Two-step success probability for sigma_y noise:
/// (1/N) |(4/N)(1 - 4/N)(-1)^m - 8/N + 3|^2.
double sigma_y_two_step_success(std::size_t database_size, int m);

enum class NoiseClassTag { FullInvariant, ParityInvariant, NotGood };
enum class CanonicalNoise { Identity, X, Y, Z, None };

struct NoiseClass {
  NoiseClassTag tag = NoiseClassTag::NotGood;
  CanonicalNoise canonical = CanonicalNoise::None;
};

/// Classifies U up to a global phase, normalized on the first nonzero entry.
NoiseClass classify_noise(const SingleQubitUnitary& u, double tol = 1e-10);

std::string_view to_string(NoiseClassTag tag);
std::string_view to_string(CanonicalNoise c);

/// The sigma_x dynamics restricted to the invariant basis {|s_bar>, |w>, |w'>}.
struct ReducedSigmaX {
  Eigen::Matrix3d grover;
  Eigen::Matrix3d noisy;
  Eigen::Vector3d start;  ///< |s> = (sqrt((N-2)/N), 1/sqrt N, 1/sqrt N)
};

ReducedSigmaX sigma_x_reduced(std::size_t database_size);

/// Partner index of the marked state under a prefix-layout bit-flip noise
/// (|b| = 1): N - N/2^m - w + 2 (w mod N/2^m), on 0-based indices.
std::size_t w_prime(std::size_t w, int m, int qubits);
/// Dispatches on U: w for |a| = 1, the formula above for |b| = 1. Throws for
/// non-permutation U.
std::size_t w_prime(const SingleQubitUnitary& u, std::size_t w, int m, int qubits);

}  // namespace ngrover
