#include "pointint/linalg.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "pointint/error.hpp"

namespace pointint::linalg {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

Determinant lu_determinant(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) fail(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  const Eigen::Index n = a.rows();
  if (n == 0) return {cplx(1.0, 0.0), 1.0, 0.0};
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  const auto& packed = lu.matrixLU();
  double min_pivot = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < n; ++k) min_pivot = std::min(min_pivot, std::abs(packed(k, k)));
  const double max_entry = a.cwiseAbs().maxCoeff();
  return {lu.determinant(), min_pivot, static_cast<double>(n) * kEps * max_entry};
}

Eigen::MatrixXcd lu_solve(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, ErrorCode code) {
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond > static_cast<double>(a.rows()) * kEps)) {
    std::ostringstream os;
    os << "matrix is numerically singular (rcond = " << rcond << ")";
    fail(code, os.str());
  }
  return lu.solve(b);
}

SingularValueSpread singular_value_spread(const Eigen::MatrixXcd& a) {
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return {};
  return {s.minCoeff(), s.maxCoeff()};
}

cplx inverse_sqrt_principal(cplx z, double scale) {
  const double mag = std::abs(z);
  if (mag <= 64.0 * kEps * scale) fail(ErrorCode::SingularDet, "argument of ^(-1/2) vanishes");
  if (z.real() < 0.0 && std::abs(z.imag()) <= 64.0 * kEps * mag) {
    std::ostringstream os;
    os << "argument of ^(-1/2) lies on the principal branch cut: " << z;
    fail(ErrorCode::BranchAmbiguity, os.str());
  }
  return 1.0 / std::sqrt(z);
}

}  // namespace pointint::linalg
