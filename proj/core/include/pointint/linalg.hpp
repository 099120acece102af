#pragma once

#include <Eigen/Dense>

#include "pointint/error.hpp"
#include "pointint/spectral.hpp"

namespace pointint::linalg {

struct Determinant {
  cplx value;
  double min_pivot = 0.0;  // smallest |U_kk| of the LU factorization
  double threshold = 0.0;  // n * eps * max|entry|
  bool singular() const noexcept { return min_pivot <= threshold; }
};

/// Determinant by LU with partial pivoting. The matrix counts as singular
/// when its smallest pivot is at or below n * eps * max|entry|.
Determinant lu_determinant(const Eigen::MatrixXcd& a);

/// Solve a x = b by LU; throws `code` when the reciprocal condition
/// estimate drops below n * eps.
Eigen::MatrixXcd lu_solve(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, ErrorCode code);

struct SingularValueSpread {
  double smallest = 0.0;
  double largest = 0.0;
};

SingularValueSpread singular_value_spread(const Eigen::MatrixXcd& a);

/// Principal-branch z^{-1/2}. Throws BranchAmbiguity when z sits on the
/// negative real axis (the cut) and SingularDet when z vanishes.
cplx inverse_sqrt_principal(cplx z, double scale = 1.0);

}  // namespace pointint::linalg
