#pragma once

#include <vector>

#include "gpw/matrix.hpp"

namespace gpw {

struct JacobiOptions {
  // Stop once the off-diagonal Frobenius mass drops below rel_tol * ||A||_F.
  double rel_tol = 1e-13;
  int max_sweeps = 100;
};

// Largest ||A - A^dagger||_max accepted as Hermitian.
inline constexpr double kHermitianTolerance = 1e-10;

struct EigenSystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column i belongs to values[i]
};

// Cyclic complex Jacobi. Throws DimensionMismatch, NotHermitian or
// NoConvergence.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, JacobiOptions opts = {});
EigenSystem hermitian_eigensystem(const ComplexMatrix& a, JacobiOptions opts = {});

// Largest singular value, from the top eigenvalue of A^dagger A.
double spectral_norm(const ComplexMatrix& a, JacobiOptions opts = {});

// Smallest singular value of a square matrix, from the Hermitian dilation
// [[0, A], [A^dagger, 0]] whose spectrum is {+-sigma_i}. Working on the
// dilation keeps the absolute error near eps * ||A|| instead of the
// sqrt(eps) * ||A|| that the A^dagger A route gives near zero.
double min_singular_value(const ComplexMatrix& a, JacobiOptions opts = {});

// Gaussian elimination with partial pivoting. Throws SingularMatrix.
ComplexMatrix inverse(const ComplexMatrix& a);

// A^dagger A, made exactly Hermitian.
ComplexMatrix gram(const ComplexMatrix& a);

}  // namespace gpw
