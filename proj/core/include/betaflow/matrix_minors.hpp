#pragma once

#include <vector>

#include <Eigen/Core>

#include "betaflow/poly_flow.hpp"
#include "betaflow/rng.hpp"

namespace betaflow {

/// Real symmetric matrix; construction rejects asymmetric input.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(Eigen::MatrixXd entries);
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  Eigen::Index order() const noexcept { return entries_.rows(); }

 private:
  Eigen::MatrixXd entries_;
};

/// Complex Hermitian matrix; construction rejects input without exact
/// conjugate symmetry.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(Eigen::MatrixXcd entries);
  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
  Eigen::Index order() const noexcept { return entries_.rows(); }

 private:
  Eigen::MatrixXcd entries_;
};

/// Which Haar group conjugates the diagonal spectrum.
enum class MatrixEnsemble { Orthogonal = 1, Unitary = 2 };

inline constexpr Eigen::Index kMaxSymmetricOrder = 512;
inline constexpr Eigen::Index kMaxHermitianOrder = 256;

/// Ascending eigenvalues (Householder tridiagonalization + implicit QR).
std::vector<double> symmetric_eigenvalues(const SymmetricMatrix& m);

/// Ascending eigenvalues via the real embedding [[Re, -Im], [Im, Re]], whose
/// spectrum is each eigenvalue twice. Input with zero imaginary part goes
/// straight to symmetric_eigenvalues.
std::vector<double> hermitian_eigenvalues(const HermitianMatrix& m);

/// Spectra of the top-left (n-m) x (n-m) minors of U* diag(lambda0) U for
/// m = 0..n-1, with U Haar on O(n) or U(n).
std::vector<RootVector> minor_spectrum_chain(const RootVector& lambda0, MatrixEnsemble ensemble,
                                             SeedSpec seed);

}  // namespace betaflow
