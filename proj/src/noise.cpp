#include "ngrover/noise.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ngrover {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex phase(double angle) { return std::polar(1.0, angle); }

// Divides out the phase of the first entry with modulus above tol.
ComplexMatrix phase_normalized(const ComplexMatrix& m, double tol) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (std::abs(m(i, j)) > tol) return m / (m(i, j) / std::abs(m(i, j)));
    }
  }
  return m;
}

}  // namespace

ComplexMatrix SingleQubitUnitary::matrix() const {
  const Complex e = phase(theta);
  ComplexMatrix u(2, 2);
  u << a, b, -std::conj(b) * e, std::conj(a) * e;
  return u;
}

SingleQubitUnitary single_qubit_unitary(Complex a, Complex b, double theta, double tol) {
  const double norm = std::norm(a) + std::norm(b);
  if (std::abs(norm - 1.0) > tol) {
    throw std::invalid_argument("single_qubit_unitary: |a|^2 + |b|^2 = " + std::to_string(norm) +
                                ", expected 1");
  }
  if (!std::isfinite(theta)) throw std::invalid_argument("single_qubit_unitary: theta not finite");
  double reduced = std::fmod(theta, kTwoPi);
  if (reduced < 0.0) reduced += kTwoPi;
  return SingleQubitUnitary{a, b, reduced};
}

namespace presets {

SingleQubitUnitary identity() { return {Complex(1.0, 0.0), Complex(0.0, 0.0), 0.0}; }
SingleQubitUnitary sigma_x() { return {Complex(0.0, 0.0), Complex(1.0, 0.0), std::numbers::pi}; }
SingleQubitUnitary sigma_y() { return {Complex(0.0, 0.0), Complex(0.0, -1.0), std::numbers::pi}; }
SingleQubitUnitary sigma_z() { return {Complex(1.0, 0.0), Complex(0.0, 0.0), std::numbers::pi}; }

SingleQubitUnitary hadamard() {
  const double r = std::numbers::sqrt2 / 2.0;
  return {Complex(r, 0.0), Complex(r, 0.0), std::numbers::pi};
}

SingleQubitUnitary yz_hadamard() {
  const double r = std::numbers::sqrt2 / 2.0;
  return {Complex(r, 0.0), Complex(0.0, -r), std::numbers::pi};
}

SingleQubitUnitary by_name(std::string_view name) {
  if (name == "identity" || name == "i") return identity();
  if (name == "x") return sigma_x();
  if (name == "y") return sigma_y();
  if (name == "z") return sigma_z();
  if (name == "hadamard" || name == "h") return hadamard();
  if (name == "yz-hadamard") return yz_hadamard();
  throw std::invalid_argument("unknown noise preset '" + std::string(name) + "'");
}

}  // namespace presets

NoiseSpec NoiseSpec::prefix(const SingleQubitUnitary& u, int m) {
  if (m < 1) throw std::invalid_argument("NoiseSpec::prefix: noise strength must be >= 1");
  NoiseSpec spec{u, {}};
  for (int i = 0; i < m; ++i) spec.positions.push_back(i);
  return spec;
}

void validate(const NoiseSpec& spec, int qubits) {
  if (spec.positions.empty()) throw std::invalid_argument("NoiseSpec: no noisy positions");
  if (spec.strength() > qubits) {
    throw std::invalid_argument("NoiseSpec: noise strength exceeds qubit count");
  }
  std::vector<int> sorted = spec.positions;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("NoiseSpec: repeated noisy position");
  }
  if (sorted.front() < 0 || sorted.back() >= qubits) {
    throw std::invalid_argument("NoiseSpec: position out of range [0, " + std::to_string(qubits) +
                                ")");
  }
}

ComplexMatrix build_chi(int qubits, const NoiseSpec& spec) {
  validate(spec, qubits);
  const ComplexMatrix u = spec.u.matrix();
  ComplexMatrix chi = ComplexMatrix::Identity(1, 1);
  for (int slot = 0; slot < qubits; ++slot) {
    const bool noisy =
        std::find(spec.positions.begin(), spec.positions.end(), slot) != spec.positions.end();
    chi = tensor(chi, noisy ? u : pauli::identity());
  }
  return chi;
}

ComplexMatrix noisy_grover(const ComplexMatrix& grover, const ComplexMatrix& chi) {
  if (grover.rows() != chi.cols() || grover.rows() != grover.cols() || chi.rows() != chi.cols()) {
    throw std::invalid_argument("noisy_grover: dimension mismatch");
  }
  return chi * grover;
}

int noisy_bit_count(std::size_t index, int qubits, const NoiseSpec& spec) {
  int q = 0;
  for (int slot : spec.positions) {
    if ((index >> (qubits - 1 - slot)) & 1U) ++q;
  }
  return q;
}

ClosedFormOverlaps closed_form_overlaps(const SingleQubitUnitary& u, int qubits, int m, int q) {
  if (m < 0 || m > qubits || q < 0 || q > m) {
    throw std::invalid_argument("closed_form_overlaps: requires 0 <= q <= m <= n");
  }
  const double n_dim = std::ldexp(1.0, qubits);
  const Complex e = phase(u.theta);
  const Complex top = u.a + u.b;
  const Complex bottom = std::conj(u.a) - std::conj(u.b);

  ClosedFormOverlaps out;
  out.psi_q = std::pow(e, q) * std::pow(top, m - q) * std::pow(bottom, q);
  out.s_chi_s = std::ldexp(1.0, qubits - m) / n_dim * std::pow(top + e * bottom, m);
  out.w_chi_s = out.psi_q / std::sqrt(n_dim);
  out.w_chi_w = std::pow(e, q) * std::pow(u.a, m - q) * std::pow(std::conj(u.a), q);
  out.one_step_success =
      std::norm((1.0 - 4.0 / n_dim) * out.w_chi_s + 2.0 / std::sqrt(n_dim) * out.w_chi_w);
  return out;
}

double sigma_y_two_step_success(std::size_t database_size, int m) {
  if (database_size < 8 || m < 1) {
    throw std::invalid_argument("sigma_y_two_step_success: requires N >= 8, m >= 1");
  }
  const double n = static_cast<double>(database_size);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const double inner = (4.0 / n) * (1.0 - 4.0 / n) * sign - 8.0 / n + 3.0;
  return inner * inner / n;
}

NoiseClass classify_noise(const SingleQubitUnitary& u, double tol) {
  const ComplexMatrix normalized = phase_normalized(u.matrix(), tol);
  const std::array<std::pair<CanonicalNoise, ComplexMatrix>, 4> candidates{{
      {CanonicalNoise::Identity, pauli::identity()},
      {CanonicalNoise::X, pauli::x()},
      {CanonicalNoise::Z, pauli::z()},
      {CanonicalNoise::Y, pauli::y()},
  }};
  for (const auto& [label, pauli_matrix] : candidates) {
    if (max_abs_diff(normalized, phase_normalized(pauli_matrix, tol)) <= tol) {
      const auto tag = label == CanonicalNoise::Y ? NoiseClassTag::ParityInvariant
                                                  : NoiseClassTag::FullInvariant;
      return {tag, label};
    }
  }
  return {NoiseClassTag::NotGood, CanonicalNoise::None};
}

std::string_view to_string(NoiseClassTag tag) {
  switch (tag) {
    case NoiseClassTag::FullInvariant: return "FullInvariant";
    case NoiseClassTag::ParityInvariant: return "ParityInvariant";
    case NoiseClassTag::NotGood: return "NotGood";
  }
  return "?";
}

std::string_view to_string(CanonicalNoise c) {
  switch (c) {
    case CanonicalNoise::Identity: return "identity";
    case CanonicalNoise::X: return "x";
    case CanonicalNoise::Y: return "y";
    case CanonicalNoise::Z: return "z";
    case CanonicalNoise::None: return "none";
  }
  return "?";
}

ReducedSigmaX sigma_x_reduced(std::size_t database_size) {
  if (database_size < 4) throw std::invalid_argument("sigma_x_reduced: requires N >= 4");
  const double n = static_cast<double>(database_size);
  const double r = std::sqrt(n - 2.0);
  const double d = 2.0 * (n - 2.0) / n - 1.0;
  ReducedSigmaX out;
  out.grover << d, -2.0 * r / n, 2.0 * r / n,
                2.0 * r / n, -2.0 / n + 1.0, 2.0 / n,
                2.0 * r / n, -2.0 / n, 2.0 / n - 1.0;
  out.noisy << d, -2.0 * r / n, 2.0 * r / n,
               2.0 * r / n, -2.0 / n, 2.0 / n - 1.0,
               2.0 * r / n, -2.0 / n + 1.0, 2.0 / n;
  out.start << std::sqrt((n - 2.0) / n), 1.0 / std::sqrt(n), 1.0 / std::sqrt(n);
  return out;
}

std::size_t w_prime(std::size_t w, int m, int qubits) {
  const std::size_t n = std::size_t{1} << qubits;
  if (m < 1 || m > qubits || w >= n) throw std::invalid_argument("w_prime: bad arguments");
  const std::size_t block = n >> m;
  return n - block + 2 * (w % block) - w;
}

std::size_t w_prime(const SingleQubitUnitary& u, std::size_t w, int m, int qubits) {
  constexpr double tol = 1e-10;
  if (std::abs(std::abs(u.a) - 1.0) <= tol) return w;
  if (std::abs(std::abs(u.b) - 1.0) <= tol) return w_prime(w, m, qubits);
  throw std::invalid_argument("w_prime: chi is not a generalized permutation (|a|, |b| != 1)");
}

}  // namespace ngrover
