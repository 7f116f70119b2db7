#include "ngrover/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <stdexcept>

namespace ngrover {

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix tensor(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) out = tensor(out, f);
  return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  StateVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& r, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  if (r.rows() != r.cols()) throw std::invalid_argument("partial_trace: matrix is not square");
  if (dims.empty()) throw std::invalid_argument("partial_trace: no subsystem dimensions");
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  if (total != static_cast<std::size_t>(r.rows())) {
    throw std::invalid_argument("partial_trace: product of dims " + std::to_string(total) +
                                " does not match matrix dimension " + std::to_string(r.rows()));
  }
  std::vector<bool> kept(dims.size(), false);
  for (auto k : keep) {
    if (k >= dims.size()) throw std::invalid_argument("partial_trace: keep index out of range");
    kept[k] = true;
  }

  // Split every flat index into (kept part, traced part) in mixed radix.
  std::size_t kept_dim = 1;
  for (std::size_t s = 0; s < dims.size(); ++s) {
    if (kept[s]) kept_dim *= dims[s];
  }
  std::vector<std::size_t> kept_index(total), traced_index(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    std::size_t k = 0, t = 0, kscale = 1, tscale = 1;
    for (std::size_t s = dims.size(); s-- > 0;) {
      const std::size_t digit = rest % dims[s];
      rest /= dims[s];
      if (kept[s]) {
        k += digit * kscale;
        kscale *= dims[s];
      } else {
        t += digit * tscale;
        tscale *= dims[s];
      }
    }
    kept_index[flat] = k;
    traced_index[flat] = t;
  }

  ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
  for (std::size_t row = 0; row < total; ++row) {
    for (std::size_t col = 0; col < total; ++col) {
      if (traced_index[row] == traced_index[col]) {
        out(kept_index[row], kept_index[col]) += r(row, col);
      }
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& r, std::initializer_list<std::size_t> dims,
                            std::initializer_list<std::size_t> keep) {
  return partial_trace(r, std::span<const std::size_t>(dims.begin(), dims.size()),
                       std::span<const std::size_t>(keep.begin(), keep.size()));
}

double hermiticity_defect(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("hermiticity_defect: not square");
  if (h.size() == 0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

RealVector hermitian_eigenvalues(const ComplexMatrix& h, double tol) {
  const double defect = hermiticity_defect(h);
  if (defect > tol) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian (defect " +
                                std::to_string(defect) + ")");
  }
  // Symmetrize so round-off in the input does not leak into the solver.
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  return solver.eigenvalues();
}

double trace_norm(const HermitianOperator& h, double tol) {
  return hermitian_eigenvalues(h, tol).cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  return 0.5 * trace_norm(rho - sigma);
}

std::string DensityReport::summary() const {
  char buf[200];
  std::snprintf(buf, sizeof buf, "%s (hermiticity %.3e, trace %.3e, min eigenvalue %.3e, tol %.1e)",
                passed ? "valid" : "INVALID", hermiticity_defect, trace_defect, min_eigenvalue,
                tolerance);
  return buf;
}

DensityReport assert_density(const ComplexMatrix& rho, double tol) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("assert_density: not square");
  DensityReport report;
  report.tolerance = tol;
  report.hermiticity_defect = hermiticity_defect(rho);
  report.trace_defect = std::abs(rho.trace() - Complex(1.0, 0.0));
  const ComplexMatrix sym = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  report.min_eigenvalue = rho.size() == 0 ? 0.0 : solver.eigenvalues().minCoeff();
  report.passed = report.hermiticity_defect <= tol && report.trace_defect <= tol &&
                  report.min_eigenvalue >= -tol;
  return report;
}

ComplexMatrix projector(const StateVector& psi) { return psi * psi.adjoint(); }

StateVector basis_state(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::invalid_argument("basis_state: index out of range");
  StateVector e = StateVector::Zero(static_cast<Eigen::Index>(dim));
  e(static_cast<Eigen::Index>(index)) = 1.0;
  return e;
}

double unitarity_defect(const ComplexMatrix& u) {
  const ComplexMatrix gram = u.adjoint() * u;
  return (gram - ComplexMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: dimension mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

DensityMatrix random_density(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto d = static_cast<Eigen::Index>(dim);
  ComplexMatrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

namespace pauli {

ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }

ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

}  // namespace pauli
}  // namespace ngrover
