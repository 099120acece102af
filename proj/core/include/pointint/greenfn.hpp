#pragma once

#include <span>

#include <Eigen/Dense>

#include "pointint/spectral.hpp"

/// Resolvent kernels of -d^2/dx^2 with point interactions, and the
/// determinant form of the delta-field correlators.
namespace pointint::greenfn {

/// Free resolvent kernel e^{-m|x-y|} / (2m).
cplx free_green(const SpectralParameter& sp, double x, double y);

/// U_ij = delta_ij / V_i + G_E(a_i, a_j).
Eigen::MatrixXcd u_matrix(const SpectralParameter& sp, const PointInteractionConfig& cfg);

/// Perturbed kernel G_E - sum_ij G_E(x, a_i) (U^{-1})_ij G_E(a_j, y).
/// Throws SingularU when U is numerically singular.
cplx resolvent_kernel(const SpectralParameter& sp, const PointInteractionConfig& cfg, double x,
                      double y);

/// Same structure with U = B + G for a general hermitian extension matrix B.
cplx resolvent_kernel_general(const SpectralParameter& sp, std::span<const double> positions,
                              const HermitianExtensionMatrix& b, double x, double y);

/// delta_ij + V_i G_E(a_i, a_j). Diagonally similar to the symmetric
/// delta_ij + sqrt(V_i V_j) G_E(a_i, a_j), so both share a determinant.
Eigen::MatrixXcd weinstein_aronszajn_matrix(const SpectralParameter& sp,
                                            const PointInteractionConfig& cfg);

/// det(U) * prod V_i; equals det of weinstein_aronszajn_matrix.
cplx weinstein_aronszajn_via_u(const SpectralParameter& sp, const PointInteractionConfig& cfg);

/// <O_{V_1}(a_1) ... O_{V_N}(a_N)> = det(delta_ij + sqrt(V_i V_j) G_E(a_i, a_j))^{-1/2}
/// on the principal branch. Throws SingularDet or BranchAmbiguity.
cplx correlator_det(const SpectralParameter& sp, const PointInteractionConfig& cfg);

/// One-point value (1 + V/(2m))^{-1/2}.
cplx one_point(double strength, const SpectralParameter& sp);

}  // namespace pointint::greenfn
