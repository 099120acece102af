#pragma once

#include <functional>
#include <span>

#include <Eigen/Dense>

#include "pointint/bogolyubov.hpp"
#include "pointint/spectral.hpp"

/// Brute-force references used to validate the analytic routes: a
/// piecewise-exponential transfer construction of the resolvent and a
/// truncated Fock-space operator calculus.
namespace pointint::oracle {

/// Ladder operators on span{|0>, ..., |D-1>}.
class FockTruncation {
 public:
  explicit FockTruncation(int dimension);

  int dimension() const noexcept { return dimension_; }
  const Eigen::MatrixXd& annihilation() const noexcept { return a_; }
  const Eigen::MatrixXd& creation() const noexcept { return a_dag_; }
  Eigen::MatrixXd number() const;

  /// H = m a+ a.
  Eigen::MatrixXcd hamiltonian(const SpectralParameter& sp) const;
  /// phi = (a + a+) / sqrt(2m).
  Eigen::MatrixXcd phi(const SpectralParameter& sp) const;
  /// pi = i sqrt(m/2) (a+ - a).
  Eigen::MatrixXcd pi(const SpectralParameter& sp) const;

 private:
  int dimension_;
  Eigen::MatrixXd a_;
  Eigen::MatrixXd a_dag_;
};

/// Coefficients of c_plus e^{-m(x-r)} + c_minus e^{m(x-r)} on one segment,
/// with an overall factor e^{log_scale} kept out of the coefficients.
struct TransferState {
  cplx c_plus{0.0, 0.0};
  cplx c_minus{0.0, 0.0};
  double reference = 0.0;
  double log_scale = 0.0;
};

/// Resolvent kernel from the solutions decaying at -inf and +inf, propagated
/// through the jump conditions f'(a+) - f'(a-) = V f(a).
/// Throws ZeroWronskian when E is an eigenvalue.
cplx transfer_green(const SpectralParameter& sp, const PointInteractionConfig& cfg, double x,
                    double y);

/// Factor matrices of O = P_lambda Q_mu R_nu in the truncated basis.
Eigen::MatrixXcd p_factor(cplx lambda, const FockTruncation& t);
Eigen::MatrixXcd q_factor(cplx mu, const FockTruncation& t);
Eigen::MatrixXcd r_factor(cplx nu, const FockTruncation& t);

/// Truncated matrix of O_{lambda,mu,nu} = P_lambda Q_mu R_nu. Requires D >= 8.
Eigen::MatrixXcd build_operator(const bogolyubov::BogolyubovParams& p, const FockTruncation& t);

struct FockInsertion {
  Eigen::MatrixXcd op;
  double position = 0.0;
};

/// <0| O_1 e^{-H(x_2-x_1)} O_2 ... O_n |0> for position-sorted insertions.
cplx vev_product(std::span<const FockInsertion> ops, const SpectralParameter& sp);

/// Same, building each operator from its Bogolyubov parameters.
cplx vev_product(std::span<const bogolyubov::FieldInsertion> ops, const SpectralParameter& sp,
                 const FockTruncation& t);

struct Converged {
  cplx value;      // value at the requested dimension
  cplx doubled;    // value at twice the dimension
  double change;   // |value - doubled| / max(|doubled|, tiny)
};

/// Evaluates f(D) and f(2D); throws TruncationNotConverged when the relative
/// change exceeds the tolerance.
Converged converge_by_doubling(const std::function<cplx(int)>& f, int dimension, double tolerance);

}  // namespace pointint::oracle
