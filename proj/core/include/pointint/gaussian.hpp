#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pointint/spectral.hpp"

/// Finite-dimensional Gaussian integration identities (real symmetric and
/// complex hermitian), checked as matrix identities and by Monte Carlo.
namespace pointint::gaussian {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Exponent -1/2 phi^T A phi - 1/2 mu^T B mu - phi^T C mu + J^T phi (real), or
/// -phi^+ A phi - mu^+ B mu - phi^+ C mu - mu^+ C^+ phi + J^+ phi + phi^+ J (complex).
template <class Scalar>
struct QuadraticForm {
  Matrix<Scalar> a;
  Matrix<Scalar> b;
  Matrix<Scalar> c;  // M x N
  Vector<Scalar> j;  // length M; may be empty (no source)
};

using RealQuadraticForm = QuadraticForm<double>;
using ComplexQuadraticForm = QuadraticForm<cplx>;

/// Throws InvalidArgument on shape or symmetry violations, SingularInput if
/// A or B is not invertible.
template <class Scalar>
void validate(const QuadraticForm<Scalar>& q);

template <class Scalar>
struct SchurDeterminants {
  Scalar block;   // det [[A, C], [C^T, B]]
  Scalar via_a;   // det A det(B - C^T A^{-1} C)
  Scalar via_b;   // det B det(A - C B^{-1} C^T)
  double residual() const;
};

template <class Scalar>
SchurDeterminants<Scalar> schur_partition_identity(const QuadraticForm<Scalar>& q);

template <class Scalar>
struct KreinPair {
  Matrix<Scalar> lhs;  // (A - C B^{-1} C^T)^{-1}
  Matrix<Scalar> rhs;  // A^{-1} + A^{-1} C (B - C^T A^{-1} C)^{-1} C^T A^{-1}
};

template <class Scalar>
KreinPair<Scalar> krein_matrices(const QuadraticForm<Scalar>& q);

/// Entry (i, j) of both sides.
template <class Scalar>
std::pair<Scalar, Scalar> krein_identity(const QuadraticForm<Scalar>& q, int i, int j);

/// Well-conditioned random instance: A, B positive definite, the joint block
/// matrix positive definite, every matrix inverted by the identities with
/// condition number <= 1e6 (resampled otherwise).
template <class Scalar>
QuadraticForm<Scalar> random_quadratic_form(int m, int n, std::mt19937_64& rng, double coupling = 0.4,
                                            bool with_source = true);

// --- Monte Carlo ---------------------------------------------------------------

enum class Kind { Real, Complex };

struct McCheck {
  std::string name;
  double estimate = 0.0;
  double expected = 0.0;
  double std_error = 0.0;
  bool pass() const noexcept;  // within 4 standard errors
};

struct McReport {
  Kind kind = Kind::Real;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<McCheck> checks;
  std::vector<std::string> skipped;
  bool all_pass() const noexcept;
};

inline constexpr std::uint64_t kDefaultSeed = 20070501;

/// Second moments, source-weighted moments, the coupled marginal and the
/// partition-function ratio, estimated from `samples` draws. The joint block
/// matrix must be positive definite (NotPositiveDefinite otherwise) and
/// M, N <= 4. Batches are seeded from `seed` and run on up to `threads` workers;
/// the report does not depend on the worker count.
McReport moment_check_mc(const RealQuadraticForm& q, std::size_t samples,
                         std::uint64_t seed = kDefaultSeed, unsigned threads = 1);
McReport moment_check_mc(const ComplexQuadraticForm& q, std::size_t samples,
                         std::uint64_t seed = kDefaultSeed, unsigned threads = 1);

}  // namespace pointint::gaussian
