#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "pointint/spectral.hpp"

/// Normal-ordered SL(2) operators O = :exp(lambda a+^2/2 + mu a+ a + nu a^2/2):
/// with the vacuum normalization <0|O|0> = 1.
namespace pointint::bogolyubov {

struct BogolyubovParams {
  cplx lambda{0.0, 0.0};
  cplx mu{0.0, 0.0};
  cplx nu{0.0, 0.0};
};

/// Linear map (a, a+) -> (alpha a + beta a+, gamma a + delta a+) induced by
/// conjugation O (.) O^{-1}.
struct SL2Element {
  cplx alpha{1.0, 0.0};
  cplx beta{0.0, 0.0};
  cplx gamma{0.0, 0.0};
  cplx delta{1.0, 0.0};

  cplx det() const noexcept { return alpha * delta - beta * gamma; }
  static SL2Element identity() noexcept { return {}; }
};

SL2Element operator*(const SL2Element& l, const SL2Element& r) noexcept;

struct FieldInsertion {
  BogolyubovParams params;
  double position = 0.0;
};

struct FusionResult {
  BogolyubovParams params;
  cplx c12;
};

SL2Element sl2_from_params(const BogolyubovParams& p);
BogolyubovParams params_from_sl2(const SL2Element& s);

/// lambda = mu = nu = -(V/2m) / (1 + V/2m) for the field exp(-V phi^2 / 2).
BogolyubovParams delta_params(double strength, const SpectralParameter& sp);

/// Imaginary-time evolution e^{-Hx} O e^{Hx}: lambda e^{-2mx}, nu e^{2mx}.
BogolyubovParams evolve(const BogolyubovParams& p, double x, const SpectralParameter& sp);

/// O_1 O_2 = c12 O_3. The induced maps compose as sl2(p3) = sl2(p2) * sl2(p1).
FusionResult fuse(const BogolyubovParams& p1, const BogolyubovParams& p2);

/// <O_1(a1) O_2(a2)> = [1 - nu_1 lambda_2 e^{-2m(a2 - a1)}]^{-1/2}, a2 >= a1.
cplx two_point(const BogolyubovParams& p1, const BogolyubovParams& p2, double a1, double a2,
               const SpectralParameter& sp);

/// Vacuum expectation of the position-ordered product of normalized fields,
/// reduced by successive fusion.
cplx n_point_correlator(std::span<const FieldInsertion> insertions, const SpectralParameter& sp);

/// <O_{V_1}(a_1)...O_{V_N}(a_N)> with the one-point factors (1+V_j/2m)^{-1/2}
/// reinstated, computed by fusion.
cplx delta_correlator_via_fusion(const SpectralParameter& sp, const PointInteractionConfig& cfg);

// --- form factors ---------------------------------------------------------

/// Largest index accepted by the floating-point form-factor routines.
inline constexpr int kFormFactorMaxIndex = 170;

/// F_{k,l} = sqrt(k! l!) <k|O|l> from the closed even/odd sums, evaluated in
/// log space. Zero whenever k + l is odd. Throws Overflow past the stable range.
cplx form_factor(int k, int l, const BogolyubovParams& p);

/// <k|O|l> = F_{k,l} / sqrt(k! l!), evaluated in log space.
cplx matrix_element(int k, int l, const BogolyubovParams& p);

/// Table F_{k,l}, 0 <= k <= max_k, 0 <= l <= max_l, built in 100-digit
/// arithmetic from the seeds
/// F_{0,2l} = (2l)!/l! (nu/2)^l and the row recursion
/// F_{k+1,l} = lambda/(1+mu) F_{k,l+1} + l (1+mu - lambda nu/(1+mu)) F_{k,l-1}.
Eigen::MatrixXcd form_factor_table_recursive(int max_k, int max_l, const BogolyubovParams& p);

// --- Fock-space route to the resolvent -------------------------------------

struct FieldsOptions {
  int dimension = 64;
  double tolerance = 1e-10;  // relative change allowed when the truncation doubles
  bool check_convergence = true;
};

/// G_{E,V}(x,y) as <prod O_{V_j}(a_j) phi(x) phi(y)> / <prod O_{V_j}(a_j)>,
/// both evaluated in a truncated Fock space. Throws TruncationNotConverged
/// when doubling the truncation moves the result by more than the tolerance.
cplx resolvent_via_fields(const SpectralParameter& sp, const PointInteractionConfig& cfg, double x,
                          double y, const FieldsOptions& opts = {});

}  // namespace pointint::bogolyubov
