#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "pointint/spectral.hpp"

/// Boundary-value subspaces of local solutions and the tau function built
/// from them.
///
/// Coordinates: the boundary space W is C^{4N}. Interval j contributes four
/// consecutive entries (psi_{R,+}, psi_{L,-}, psi_{R,-}, psi_{L,+}) where
/// psi_{X,+-} = psi(x^X_j) +- psi'(x^X_j) / m. A subspace is stored as a
/// 4N x d basis matrix.
namespace pointint::tau {

struct Interval {
  double left = 0.0;
  double right = 0.0;
};

/// Disjoint ordered open intervals S_j = (x^L_j, x^R_j).
class Localization {
 public:
  explicit Localization(std::vector<Interval> intervals);

  /// x^{L,R}_j = a_j -+ g/3 with g the smallest gap between neighbours
  /// (g = 1 for a single point).
  static Localization around(std::span<const double> positions);

  std::size_t size() const noexcept { return intervals_.size(); }
  const Interval& operator[](std::size_t j) const { return intervals_.at(j); }
  std::span<const Interval> intervals() const noexcept { return intervals_; }

  /// Throws InvalidArgument unless a_j lies inside S_j for every j.
  void check_contains(std::span<const double> positions) const;

 private:
  std::vector<Interval> intervals_;
};

enum class Coord : int { RPlus = 0, LMinus = 1, RMinus = 2, LPlus = 3 };

inline Eigen::Index coord_index(std::size_t interval, Coord c) {
  return static_cast<Eigen::Index>(4 * interval) + static_cast<Eigen::Index>(c);
}

/// Flat 4N boundary vector.
using BoundaryVector = Eigen::VectorXcd;

/// Boundary image pi(psi) of one interval's local data, in coordinate order.
Eigen::Vector4cd boundary_coordinates(cplx value_left, cplx slope_left, cplx value_right,
                                      cplx slope_right, const SpectralParameter& sp);

class Subspace {
 public:
  /// Throws InvalidArgument if the columns are numerically dependent.
  explicit Subspace(Eigen::MatrixXcd basis);

  const Eigen::MatrixXcd& basis() const noexcept { return basis_; }
  Eigen::Index ambient_dimension() const noexcept { return basis_.rows(); }
  Eigen::Index dimension() const noexcept { return basis_.cols(); }

 private:
  Eigen::MatrixXcd basis_;
};

/// N_j(V): maps (psi_{R,+}, psi_{L,-}) to (psi_{R,-}, psi_{L,+}) for interior solutions.
Eigen::Matrix2cd n_matrix(const SpectralParameter& sp, const Interval& s, double position,
                          double strength);

/// Boundary values of solutions outside S (decaying at +-inf).
Subspace ext_subspace(const SpectralParameter& sp, const Localization& loc);

/// Boundary values of solutions inside S with the given jump strengths
/// (zeros allowed; all zeros gives the Friedrichs point).
Subspace int_subspace(const SpectralParameter& sp, const Localization& loc,
                      std::span<const double> positions, std::span<const double> strengths);
Subspace int_subspace(const SpectralParameter& sp, const Localization& loc,
                      const PointInteractionConfig& cfg);
Subspace friedrichs_subspace(const SpectralParameter& sp, const Localization& loc);

/// Direct sum of the single-interval exterior spaces: span of the
/// (psi_{R,-}, psi_{L,+}) coordinates. Projecting onto the Friedrichs point
/// along it is the trivializing map F.
Subspace local_ext_subspace(const Localization& loc);

struct Transversality {
  double smallest = 0.0;
  double largest = 0.0;
  bool transverse(double factor) const noexcept;  // smallest > factor * eps * largest
};

/// Singular-value spread of the stacked basis [W1 | W2].
Transversality transversality(const Subspace& w1, const Subspace& w2);

/// det(W1 -> W2 along W3) / det(W1 -> W2 along W4) in the stored bases.
/// Throws NotTransverse naming the failing pair.
cplx cross_ratio_tau(const Subspace& w1, const Subspace& w2, const Subspace& w3, const Subspace& w4);

/// Block-tridiagonal M with Q_j(V_{j+1}) above and T_j(V_j) below the diagonal.
Eigen::MatrixXcd m_matrix(const SpectralParameter& sp, const Localization& loc,
                          std::span<const double> positions, std::span<const double> strengths);

/// det(1 + M_{a,V}) / det(1 + M_0).
cplx tau_via_m(const SpectralParameter& sp, const Localization& loc,
               std::span<const double> positions, std::span<const double> strengths);
cplx tau_via_m(const SpectralParameter& sp, const Localization& loc, const PointInteractionConfig& cfg);

/// det(1 + M_0); identically 1.
cplx m0_determinant(const SpectralParameter& sp, const Localization& loc);

/// Matrix whose determinant is tau with the localization collapsed onto the points.
Eigen::MatrixXcd collapsed_matrix(const SpectralParameter& sp, const PointInteractionConfig& cfg);
cplx tau_collapsed(const SpectralParameter& sp, const PointInteractionConfig& cfg);

struct FinCheck {
  cplx tau;
  cplx correlator_ratio_pow;  // [<prod O> / prod <O_j>]^{-2}
};

FinCheck fin_check(const SpectralParameter& sp, const PointInteractionConfig& cfg);

}  // namespace pointint::tau
