#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <string>

#include "qte/errors.hpp"

namespace qte {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

constexpr double kHermiticityTol = 1e-10;

// Largest entrywise deviation from A = A^†.
inline double hermiticity_defect(const ComplexMatrix& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const ComplexMatrix& a, double tol = kHermiticityTol) {
  return a.rows() == a.cols() && a.rows() >= 1 && hermiticity_defect(a) <= tol;
}

// Kronecker product: (a ⊗ b)(i·br + k, j·bc + l) = a(i,j) · b(k,l).
inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Eigendecomposition of a Hermitian matrix. values are real and
// nondecreasing; vectors holds the matching orthonormal eigenvectors in
// its columns, so a = vectors · diag(values) · vectors^†.
struct Spectrum {
  RealVector values;
  ComplexMatrix vectors;
};

inline Spectrum hermitian_eigen(const ComplexMatrix& a, double herm_tol = kHermiticityTol) {
  if (a.rows() != a.cols() || a.rows() < 1)
    throw BadDimension("hermitian_eigen: need a nonempty square matrix, got " +
                       std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  if (!is_hermitian(a, herm_tol))
    throw NotHermitian("hermitian_eigen: defect " + std::to_string(hermiticity_defect(a)) +
                       " exceeds tolerance " + std::to_string(herm_tol));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success)
    throw Error("hermitian_eigen: eigensolver did not converge");
  Spectrum s{solver.eigenvalues(), solver.eigenvectors()};

  // The decomposition must reproduce the input to near machine precision;
  // anything worse indicates a solver misuse bug, not a tolerance question.
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  const double defect =
      (a - s.vectors * s.values.asDiagonal() * s.vectors.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-10 * scale)
    throw Error("hermitian_eigen: reconstruction defect " + std::to_string(defect));
  return s;
}

// Singular values in nonincreasing order (σ_i ≥ 0).
inline RealVector singular_values(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues();
}

// Trace norm ‖a‖₁ = Σ σ_i.
inline double trace_norm(const ComplexMatrix& a) {
  return singular_values(a).sum();
}

}  // namespace qte
