#include "betaflow/matrix_minors.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "betaflow/errors.hpp"

namespace betaflow {

SymmetricMatrix::SymmetricMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1)
    throw InvalidParameter("symmetric matrix must be square and non-empty");
  for (Eigen::Index j = 0; j < order(); ++j)
    for (Eigen::Index i = j + 1; i < order(); ++i)
      if (entries_(i, j) != entries_(j, i)) throw InvalidParameter("matrix is not symmetric");
}

HermitianMatrix::HermitianMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1)
    throw InvalidParameter("Hermitian matrix must be square and non-empty");
  for (Eigen::Index j = 0; j < order(); ++j)
    for (Eigen::Index i = j; i < order(); ++i)
      if (entries_(i, j) != std::conj(entries_(j, i)))
        throw InvalidParameter("matrix is not Hermitian");
}

std::vector<double> symmetric_eigenvalues(const SymmetricMatrix& m) {
  if (m.order() > kMaxSymmetricOrder)
    throw InvalidParameter("symmetric_eigenvalues: order above 512");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.entries(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericError("symmetric eigensolver hit its iteration cap",
                       static_cast<double>(m.order()));
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& m) {
  const Eigen::Index n = m.order();
  if (n > kMaxHermitianOrder) throw InvalidParameter("hermitian_eigenvalues: order above 256");
  const Eigen::MatrixXd re = m.entries().real();
  const Eigen::MatrixXd im = m.entries().imag();
  if ((im.array() == 0.0).all()) return symmetric_eigenvalues(SymmetricMatrix(re));

  Eigen::MatrixXd big(2 * n, 2 * n);
  big << re, -im, im, re;
  const auto doubled = symmetric_eigenvalues(SymmetricMatrix(std::move(big)));

  const double norm = m.entries().cwiseAbs().maxCoeff() * static_cast<double>(n);
  const double tol = 1e-9 * std::max(norm, 1.0);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double lo = doubled[2 * i];
    const double hi = doubled[2 * i + 1];
    if (hi - lo > tol)
      throw NumericError("Hermitian embedding eigenvalues failed to pair", hi - lo);
    out[i] = lo;
  }
  return out;
}

std::vector<RootVector> minor_spectrum_chain(const RootVector& lambda0, MatrixEnsemble ensemble,
                                             SeedSpec seed) {
  const auto n = static_cast<Eigen::Index>(lambda0.degree());
  if (n < 1 || n > kMaxHermitianOrder)
    throw InvalidParameter("minor_spectrum_chain: degree must be in [1, 256]");
  if (n == 1) return {lambda0};  // conjugation by a unit scalar leaves d unchanged

  Eigen::VectorXd diag(n);
  for (Eigen::Index i = 0; i < n; ++i) diag(i) = lambda0[static_cast<std::size_t>(i)];

  std::vector<RootVector> chain;
  chain.reserve(static_cast<std::size_t>(n));
  RandomStream rng(seed);

  if (ensemble == MatrixEnsemble::Orthogonal) {
    const Eigen::MatrixXd u = haar_orthogonal(static_cast<std::size_t>(n), rng);
    Eigen::MatrixXd full = u.transpose() * diag.asDiagonal() * u;
    full = 0.5 * (full + full.transpose()).eval();
    for (Eigen::Index size = n; size >= 1; --size) {
      SymmetricMatrix minor(full.topLeftCorner(size, size));
      chain.push_back(RootVector::from_unsorted(symmetric_eigenvalues(minor)));
    }
  } else {
    const Eigen::MatrixXcd u = haar_unitary(static_cast<std::size_t>(n), rng);
    Eigen::MatrixXcd full = u.adjoint() * diag.cast<std::complex<double>>().asDiagonal() * u;
    full = 0.5 * (full + full.adjoint()).eval();
    for (Eigen::Index i = 0; i < n; ++i) full(i, i) = full(i, i).real();
    for (Eigen::Index size = n; size >= 1; --size) {
      HermitianMatrix minor(full.topLeftCorner(size, size));
      chain.push_back(RootVector::from_unsorted(hermitian_eigenvalues(minor)));
    }
  }
  return chain;
}

}  // namespace betaflow
