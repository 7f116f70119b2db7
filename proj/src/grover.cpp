#include "ngrover/grover.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ngrover {

GroverInstance::GroverInstance(int qubits, std::size_t marked) : qubits_(qubits), marked_(marked) {
  if (qubits < 1 || qubits > kMaxQubits) {
    throw std::invalid_argument("GroverInstance: qubit count " + std::to_string(qubits) +
                                " outside [1, " + std::to_string(kMaxQubits) + "]");
  }
  if (marked >= dim()) {
    throw std::invalid_argument("GroverInstance: marked index " + std::to_string(marked) +
                                " outside [0, " + std::to_string(dim()) + ")");
  }
}

StateVector uniform_superposition(const GroverInstance& inst) {
  const auto n = static_cast<Eigen::Index>(inst.dim());
  return StateVector::Constant(n, Complex(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
}

StateVector marked_state(const GroverInstance& inst) {
  return basis_state(inst.dim(), inst.marked());
}

ComplexMatrix diffuser(const GroverInstance& inst) {
  const auto n = static_cast<Eigen::Index>(inst.dim());
  return 2.0 * projector(uniform_superposition(inst)) - ComplexMatrix::Identity(n, n);
}

ComplexMatrix oracle(const GroverInstance& inst) {
  const auto n = static_cast<Eigen::Index>(inst.dim());
  return ComplexMatrix::Identity(n, n) - 2.0 * projector(marked_state(inst));
}

ComplexMatrix grover_operator(const GroverInstance& inst) {
  const auto n = static_cast<Eigen::Index>(inst.dim());
  const StateVector s = uniform_superposition(inst);
  const StateVector w = marked_state(inst);
  const double scale = 4.0 / std::sqrt(static_cast<double>(n));
  return -ComplexMatrix::Identity(n, n) + 2.0 * s * s.adjoint() - scale * s * w.adjoint() +
         2.0 * w * w.adjoint();
}

std::vector<double> ideal_success_series(const GroverInstance& inst, int steps) {
  if (steps < 0) throw std::invalid_argument("ideal_success_series: negative step count");
  const ComplexMatrix g = grover_operator(inst);
  const auto w = static_cast<Eigen::Index>(inst.marked());
  StateVector psi = uniform_superposition(inst);
  std::vector<double> series;
  series.reserve(static_cast<std::size_t>(steps) + 1);
  series.push_back(std::norm(psi(w)));
  for (int t = 1; t <= steps; ++t) {
    psi = g * psi;
    series.push_back(std::norm(psi(w)));
  }
  return series;
}

int optimal_iterations(std::size_t database_size) {
  if (database_size < 4) throw std::invalid_argument("optimal_iterations: requires N >= 4");
  return static_cast<int>(
      std::floor(std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(database_size))));
}

}  // namespace ngrover
