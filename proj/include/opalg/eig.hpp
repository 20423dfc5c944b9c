/**
 * @file  eig.hpp
 * @brief Hermitian eigendecomposition via cyclic Jacobi rotations.
 *
 * Dimensions stay at or below 64, so a dependency-free cyclic Jacobi sweep
 * is both fast enough and, unlike faster tridiagonalization pipelines, easy
 * to audit for the tight reconstruction bounds the rest of the library
 * leans on.  Iteration is capped at 100 sweeps; convergence is declared
 * when the off-diagonal Frobenius mass falls below 1e-12 relative to the
 * input scale.
 */
#pragma once

#include <functional>

#include "opalg/matrix.hpp"

namespace opalg {

/// a = V diag(values) V*, eigenvalues ascending, V unitary (columns are
/// the eigenvectors, in eigenvalue order).
struct EigResult {
  std::vector<double> values;
  Mat vectors;

  /// Reassembles V f(diag) V* for scalar f; the workhorse behind every
  /// spectral operation in the library.
  Mat apply(const std::function<double(double)>& f) const;
  /// Largest eigenvalue (0 for the empty spectrum).
  double max_value() const;
  /// Smallest eigenvalue.
  double min_value() const;
};

/// Eigendecomposition of a Hermitian matrix.  Inputs failing the Hermitian
/// check at `herm_tol` are rejected; round-off sized asymmetry is averaged
/// away before iterating.
EigResult herm_eig(const Mat& a, double herm_tol = 1e-9);

/// Operator norm of a Hermitian matrix (max |eigenvalue|).
double herm_norm(const Mat& a);

/// Operator norm of an arbitrary matrix (largest singular value).
double op_norm(const Mat& m);

}  // namespace opalg
