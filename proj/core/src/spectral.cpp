#include "pointint/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pointint/error.hpp"

namespace pointint {

SpectralParameter::SpectralParameter(cplx m) : m_(m) {
  if (!std::isfinite(m.real()) || !std::isfinite(m.imag())) {
    fail(ErrorCode::InvalidArgument, "spectral parameter must be finite");
  }
  if (!(m.real() > 0.0)) {
    fail(ErrorCode::InvalidArgument, "spectral parameter requires Re m > 0");
  }
}

PointInteractionConfig::PointInteractionConfig(std::vector<PointInteraction> points) {
  if (points.empty()) {
    fail(ErrorCode::InvalidArgument, "point-interaction config needs at least one point");
  }
  for (const auto& p : points) {
    if (!std::isfinite(p.position) || !std::isfinite(p.strength)) {
      fail(ErrorCode::InvalidArgument, "point-interaction positions and strengths must be finite");
    }
  }
  std::stable_sort(points.begin(), points.end(),
                   [](const auto& l, const auto& r) { return l.position < r.position; });
  for (std::size_t j = 1; j < points.size(); ++j) {
    if (points[j].position == points[j - 1].position) {
      std::ostringstream os;
      os << "coincident point interactions at a = " << points[j].position;
      fail(ErrorCode::InvalidArgument, os.str());
    }
  }
  for (const auto& p : points) {
    if (p.strength == 0.0) continue;
    positions_.push_back(p.position);
    strengths_.push_back(p.strength);
  }
}

PointInteractionConfig::PointInteractionConfig(std::span<const double> positions,
                                               std::span<const double> strengths)
    : PointInteractionConfig([&] {
        if (positions.size() != strengths.size()) {
          fail(ErrorCode::InvalidArgument, "positions and strengths differ in length");
        }
        std::vector<PointInteraction> pts;
        pts.reserve(positions.size());
        for (std::size_t j = 0; j < positions.size(); ++j) pts.push_back({positions[j], strengths[j]});
        return pts;
      }()) {}

void check_extension(double v, const SpectralParameter& sp) {
  const cplx two_m = 2.0 * sp.m();
  const double scale = std::max(std::abs(two_m), std::abs(v));
  if (std::abs(two_m + v) <= 64.0 * std::numeric_limits<double>::epsilon() * scale) {
    std::ostringstream os;
    os << "1 + V/(2m) vanishes for V = " << v;
    fail(ErrorCode::SingularExtension, os.str());
  }
}

void PointInteractionConfig::check_extension(const SpectralParameter& sp) const {
  for (double v : strengths_) pointint::check_extension(v, sp);
}

HermitianExtensionMatrix::HermitianExtensionMatrix(Eigen::MatrixXcd entries)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    fail(ErrorCode::InvalidArgument, "extension matrix must be square and non-empty");
  }
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
    for (Eigen::Index j = i; j < entries_.cols(); ++j) {
      if (entries_(i, j) != std::conj(entries_(j, i))) {
        fail(ErrorCode::InvalidArgument, "extension matrix is not hermitian");
      }
    }
  }
}

HermitianExtensionMatrix HermitianExtensionMatrix::diagonal_from_strengths(
    std::span<const double> strengths) {
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(strengths.size()),
                                              static_cast<Eigen::Index>(strengths.size()));
  for (std::size_t j = 0; j < strengths.size(); ++j) {
    if (strengths[j] == 0.0) fail(ErrorCode::SingularExtension, "zero strength has no finite 1/V");
    b(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = 1.0 / strengths[j];
  }
  return HermitianExtensionMatrix(std::move(b));
}

}  // namespace pointint
