#pragma once

#include <cstddef>
#include <vector>

#include "ngrover/linalg.hpp"

namespace ngrover {

/// An n-qubit search space of N = 2^n elements with one marked basis index.
///
/// Indices are 0-based; element label x = 1..N maps to index x - 1. Qubit 0 is
/// the most significant bit of the index (leftmost tensor factor).
class GroverInstance {
 public:
  static constexpr int kMaxQubits = 14;

  explicit GroverInstance(int qubits, std::size_t marked = 0);

  int qubits() const { return qubits_; }
  std::size_t dim() const { return std::size_t{1} << qubits_; }
  std::size_t marked() const { return marked_; }

 private:
  int qubits_;
  std::size_t marked_;
};

StateVector uniform_superposition(const GroverInstance& inst);
StateVector marked_state(const GroverInstance& inst);

/// D = 2|s><s| - 1.
ComplexMatrix diffuser(const GroverInstance& inst);
/// O = 1 - 2|w><w|.
ComplexMatrix oracle(const GroverInstance& inst);

/// G = -1 + 2|s><s| - (4/sqrt N)|s><w| + 2|w><w|, assembled term by term.
ComplexMatrix grover_operator(const GroverInstance& inst);

/// P(t) = |<w|G^t|s>|^2 for t = 0..steps (steps + 1 entries).
std::vector<double> ideal_success_series(const GroverInstance& inst, int steps);

/// floor((pi/4) sqrt N); requires N >= 4.
int optimal_iterations(std::size_t database_size);

}  // namespace ngrover
