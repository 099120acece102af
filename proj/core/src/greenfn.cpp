#include "pointint/greenfn.hpp"

#include <cmath>

#include "pointint/error.hpp"
#include "pointint/linalg.hpp"

namespace pointint::greenfn {

namespace {

Eigen::MatrixXcd green_gram(const SpectralParameter& sp, std::span<const double> a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      g(i, j) = free_green(sp, a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]);
    }
  }
  return g;
}

Eigen::VectorXcd green_column(const SpectralParameter& sp, std::span<const double> a, double x) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = free_green(sp, x, a[i]);
  return v;
}

cplx corrected_kernel(const SpectralParameter& sp, std::span<const double> a,
                      const Eigen::MatrixXcd& u, double x, double y) {
  const cplx bare = free_green(sp, x, y);
  if (a.empty()) return bare;
  const Eigen::VectorXcd gx = green_column(sp, a, x);
  const Eigen::VectorXcd gy = green_column(sp, a, y);
  const Eigen::VectorXcd z = linalg::lu_solve(u, gy, ErrorCode::SingularU);
  // transpose, not adjoint: the kernel is bilinear in (x, y)
  return bare - (gx.transpose() * z)(0);
}

}  // namespace

cplx free_green(const SpectralParameter& sp, double x, double y) {
  const cplx m = sp.m();
  return std::exp(-m * std::abs(x - y)) / (2.0 * m);
}

Eigen::MatrixXcd u_matrix(const SpectralParameter& sp, const PointInteractionConfig& cfg) {
  Eigen::MatrixXcd u = green_gram(sp, cfg.positions());
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    const double v = cfg.strength(i);
    if (v == 0.0) fail(ErrorCode::SingularExtension, "zero strength in U matrix");
    u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += 1.0 / v;
  }
  return u;
}

cplx resolvent_kernel(const SpectralParameter& sp, const PointInteractionConfig& cfg, double x,
                      double y) {
  cfg.check_extension(sp);
  return corrected_kernel(sp, cfg.positions(), u_matrix(sp, cfg), x, y);
}

cplx resolvent_kernel_general(const SpectralParameter& sp, std::span<const double> positions,
                              const HermitianExtensionMatrix& b, double x, double y) {
  if (static_cast<Eigen::Index>(positions.size()) != b.size()) {
    fail(ErrorCode::InvalidArgument, "extension matrix size differs from number of points");
  }
  for (std::size_t j = 1; j < positions.size(); ++j) {
    if (!(positions[j - 1] < positions[j])) {
      fail(ErrorCode::InvalidArgument, "positions must be strictly increasing");
    }
  }
  const Eigen::MatrixXcd u = b.entries() + green_gram(sp, positions);
  return corrected_kernel(sp, positions, u, x, y);
}

Eigen::MatrixXcd weinstein_aronszajn_matrix(const SpectralParameter& sp,
                                            const PointInteractionConfig& cfg) {
  Eigen::MatrixXcd d = green_gram(sp, cfg.positions());
  for (Eigen::Index i = 0; i < d.rows(); ++i) d.row(i) *= cfg.strength(static_cast<std::size_t>(i));
  d += Eigen::MatrixXcd::Identity(d.rows(), d.cols());
  return d;
}

cplx weinstein_aronszajn_via_u(const SpectralParameter& sp, const PointInteractionConfig& cfg) {
  cplx prod = 1.0;
  for (double v : cfg.strengths()) prod *= v;
  return linalg::lu_determinant(u_matrix(sp, cfg)).value * prod;
}

cplx correlator_det(const SpectralParameter& sp, const PointInteractionConfig& cfg) {
  cfg.check_extension(sp);
  const Eigen::MatrixXcd d = weinstein_aronszajn_matrix(sp, cfg);
  const auto det = linalg::lu_determinant(d);
  if (det.singular()) fail(ErrorCode::SingularDet, "Weinstein-Aronszajn determinant vanishes");
  return linalg::inverse_sqrt_principal(det.value);
}

cplx one_point(double strength, const SpectralParameter& sp) {
  check_extension(strength, sp);
  return linalg::inverse_sqrt_principal(1.0 + reduced_strength(strength, sp));
}

}  // namespace pointint::greenfn
