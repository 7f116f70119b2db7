#pragma once

// Dense complex linear algebra shared by every simulation module.
//
// Multi-space operators follow one global factor order:
//   ancilla_1 (x) ancilla_2 (x) walker (x) system
// with the leftmost factor most significant in the flattened index.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ngrover {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// A DensityMatrix / HermitianOperator is a ComplexMatrix that satisfies the
// checks below; the aliases document intent at call sites.
using DensityMatrix = ComplexMatrix;
using HermitianOperator = ComplexMatrix;

inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEigenvalueFloor = -1e-10;

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor(std::span<const ComplexMatrix> factors);
StateVector tensor(const StateVector& a, const StateVector& b);

/// Traces out every subsystem whose index is not in `keep`.
///
/// `dims` lists the subsystem dimensions in factor order; their product must
/// equal the matrix dimension. The kept subsystems retain their relative
/// order. Throws std::invalid_argument on any shape mismatch.
ComplexMatrix partial_trace(const ComplexMatrix& r, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);
ComplexMatrix partial_trace(const ComplexMatrix& r, std::initializer_list<std::size_t> dims,
                            std::initializer_list<std::size_t> keep);

/// Max entrywise |H - H^dagger|.
double hermiticity_defect(const ComplexMatrix& h);

/// Ascending eigenvalues of a Hermitian matrix. Throws if `h` is not
/// Hermitian within `tol`.
RealVector hermitian_eigenvalues(const ComplexMatrix& h, double tol = kHermiticityTol);

double trace_norm(const HermitianOperator& h, double tol = kHermiticityTol);
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

struct DensityReport {
  double hermiticity_defect = 0.0;
  double trace_defect = 0.0;
  double min_eigenvalue = 0.0;
  double tolerance = 0.0;
  bool passed = false;

  explicit operator bool() const { return passed; }
  std::string summary() const;
};

/// Report-style validity check; never throws for square input.
DensityReport assert_density(const ComplexMatrix& rho, double tol = kHermiticityTol);

ComplexMatrix projector(const StateVector& psi);
StateVector basis_state(std::size_t dim, std::size_t index);

/// Max entrywise |U^dagger U - 1|.
double unitarity_defect(const ComplexMatrix& u);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Full-rank random mixed state G G^dagger / Tr from a seeded Ginibre draw.
DensityMatrix random_density(std::size_t dim, std::uint64_t seed);

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

}  // namespace ngrover
