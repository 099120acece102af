#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace pointint {

using cplx = std::complex<double>;

/// Complex mass-like parameter m with Re m > 0; the energy is E = -m^2.
class SpectralParameter {
 public:
  explicit SpectralParameter(cplx m);
  SpectralParameter(double m) : SpectralParameter(cplx(m, 0.0)) {}  // NOLINT

  cplx m() const noexcept { return m_; }
  cplx energy() const noexcept { return -m_ * m_; }

 private:
  cplx m_;
};

struct PointInteraction {
  double position = 0.0;
  double strength = 0.0;
};

/// Point interactions V(x) = sum_j V_j delta(x - a_j).
///
/// Input is sorted by position; coincident positions are rejected and
/// zero-strength points are dropped, so size() may be smaller than the
/// number of points passed in (possibly zero).
class PointInteractionConfig {
 public:
  PointInteractionConfig() = default;
  explicit PointInteractionConfig(std::vector<PointInteraction> points);
  PointInteractionConfig(std::span<const double> positions, std::span<const double> strengths);

  std::size_t size() const noexcept { return positions_.size(); }
  bool empty() const noexcept { return positions_.empty(); }
  std::span<const double> positions() const noexcept { return positions_; }
  std::span<const double> strengths() const noexcept { return strengths_; }
  double position(std::size_t j) const { return positions_.at(j); }
  double strength(std::size_t j) const { return strengths_.at(j); }

  /// Throws SingularExtension if 1 + V_j/(2m) vanishes for some j.
  void check_extension(const SpectralParameter& sp) const;

 private:
  std::vector<double> positions_;
  std::vector<double> strengths_;
};

/// Reduced strength V/(2m).
inline cplx reduced_strength(double v, const SpectralParameter& sp) { return v / (2.0 * sp.m()); }

/// Throws SingularExtension when 1 + V/(2m) is numerically zero.
void check_extension(double v, const SpectralParameter& sp);

/// General self-adjoint extension parameter B; exactly hermitian as stored.
class HermitianExtensionMatrix {
 public:
  explicit HermitianExtensionMatrix(Eigen::MatrixXcd entries);

  static HermitianExtensionMatrix diagonal_from_strengths(std::span<const double> strengths);

  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
  Eigen::Index size() const noexcept { return entries_.rows(); }

 private:
  Eigen::MatrixXcd entries_;
};

}  // namespace pointint
