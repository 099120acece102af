#include "pointint/bogolyubov.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/multiprecision/cpp_complex.hpp>

#include "pointint/error.hpp"
#include "pointint/exact.hpp"
#include "pointint/greenfn.hpp"
#include "pointint/linalg.hpp"
#include "pointint/oracle.hpp"

namespace pointint::bogolyubov {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_nondegenerate_mu(cplx mu) {
  if (std::abs(1.0 + mu) <= 64.0 * kEps * std::max(1.0, std::abs(mu))) {
    fail(ErrorCode::DegenerateMu, "1 + mu vanishes");
  }
}

cplx fusion_denominator(const BogolyubovParams& p1, const BogolyubovParams& p2) {
  const cplx prod = p1.nu * p2.lambda;
  const cplx den = 1.0 - prod;
  if (std::abs(den) <= 64.0 * kEps * std::max(1.0, std::abs(prod))) {
    fail(ErrorCode::FusionSingular, "nu_1 lambda_2 = 1");
  }
  return den;
}

// log k! for 0 <= k <= 2 * kFormFactorMaxIndex + 1
const std::array<double, 2 * kFormFactorMaxIndex + 2>& log_factorials() {
  static const auto table = [] {
    std::array<double, 2 * kFormFactorMaxIndex + 2> t{};
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = std::lgamma(static_cast<double>(k) + 1.0);
    return t;
  }();
  return table;
}

void check_indices(int k, int l) {
  if (k < 0 || l < 0) fail(ErrorCode::InvalidArgument, "form-factor indices must be non-negative");
  if (k > kFormFactorMaxIndex || l > kFormFactorMaxIndex) {
    std::ostringstream os;
    os << "form factor index (" << k << ", " << l << ") beyond stable range " << kFormFactorMaxIndex;
    fail(ErrorCode::Overflow, os.str());
  }
}

// Sum over pairings of the closed even/odd expressions; log_shift is added to
// every term's log magnitude before exponentiation.
cplx closed_form_sum(int k, int l, const BogolyubovParams& p, double log_shift) {
  if ((k + l) % 2 != 0) return cplx(0.0, 0.0);
  const auto& lf = log_factorials();
  const int r = k % 2;
  const int kk = k / 2;
  const int ll = l / 2;
  const cplx half_lambda = p.lambda / 2.0;
  const cplx one_mu = 1.0 + p.mu;
  const cplx half_nu = p.nu / 2.0;

  cplx sum(0.0, 0.0);
  for (int j = 0; j <= std::min(kk, ll); ++j) {
    const int e_lambda = kk - j;
    const int e_mu = 2 * j + r;
    const int e_nu = ll - j;
    if ((e_lambda > 0 && half_lambda == 0.0) || (e_mu > 0 && one_mu == 0.0) ||
        (e_nu > 0 && half_nu == 0.0)) {
      continue;
    }
    cplx log_term = lf[static_cast<std::size_t>(k)] + lf[static_cast<std::size_t>(l)] -
                    lf[static_cast<std::size_t>(2 * j + r)] - lf[static_cast<std::size_t>(kk - j)] -
                    lf[static_cast<std::size_t>(ll - j)] + log_shift;
    if (e_lambda > 0) log_term += static_cast<double>(e_lambda) * std::log(half_lambda);
    if (e_mu > 0) log_term += static_cast<double>(e_mu) * std::log(one_mu);
    if (e_nu > 0) log_term += static_cast<double>(e_nu) * std::log(half_nu);
    sum += std::exp(log_term);
  }
  if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag())) {
    fail(ErrorCode::Overflow, "form factor is not representable in double precision");
  }
  return sum;
}

}  // namespace

SL2Element operator*(const SL2Element& l, const SL2Element& r) noexcept {
  return {l.alpha * r.alpha + l.beta * r.gamma, l.alpha * r.beta + l.beta * r.delta,
          l.gamma * r.alpha + l.delta * r.gamma, l.gamma * r.beta + l.delta * r.delta};
}

SL2Element sl2_from_params(const BogolyubovParams& p) {
  require_nondegenerate_mu(p.mu);
  const cplx one_mu = 1.0 + p.mu;
  return {1.0 / one_mu, -p.lambda / one_mu, p.nu / one_mu, one_mu - p.lambda * p.nu / one_mu};
}

BogolyubovParams params_from_sl2(const SL2Element& s) {
  const double scale = std::max({std::abs(s.alpha), std::abs(s.beta), std::abs(s.gamma),
                                 std::abs(s.delta), 1.0});
  if (std::abs(s.alpha) <= 64.0 * kEps * scale) {
    fail(ErrorCode::AlphaZero, "alpha = 0: no normal-ordered form exists");
  }
  return {-s.beta / s.alpha, 1.0 / s.alpha - 1.0, s.gamma / s.alpha};
}

BogolyubovParams delta_params(double strength, const SpectralParameter& sp) {
  check_extension(strength, sp);
  const cplx x = reduced_strength(strength, sp);
  const cplx v = -x / (1.0 + x);
  return {v, v, v};
}

BogolyubovParams evolve(const BogolyubovParams& p, double x, const SpectralParameter& sp) {
  const cplx e = std::exp(-2.0 * sp.m() * x);
  return {p.lambda * e, p.mu, p.nu / e};
}

FusionResult fuse(const BogolyubovParams& p1, const BogolyubovParams& p2) {
  require_nondegenerate_mu(p1.mu);
  require_nondegenerate_mu(p2.mu);
  const cplx den = fusion_denominator(p1, p2);
  const cplx one_mu1 = 1.0 + p1.mu;
  const cplx one_mu2 = 1.0 + p2.mu;
  BogolyubovParams out;
  out.lambda = p1.lambda + p2.lambda * one_mu1 * one_mu1 / den;
  // 1 + mu_3 = (1 + mu_1)(1 + mu_2) / (1 - nu_1 lambda_2)
  out.mu = (p1.mu + p2.mu + p1.mu * p2.mu + p1.nu * p2.lambda) / den;
  out.nu = p2.nu + p1.nu * one_mu2 * one_mu2 / den;
  return {out, linalg::inverse_sqrt_principal(den)};
}

cplx two_point(const BogolyubovParams& p1, const BogolyubovParams& p2, double a1, double a2,
               const SpectralParameter& sp) {
  if (a2 < a1) fail(ErrorCode::InvalidArgument, "two_point requires a2 >= a1");
  const cplx q = p1.nu * p2.lambda * std::exp(-2.0 * sp.m() * (a2 - a1));
  const cplx den = 1.0 - q;
  if (std::abs(den) <= 64.0 * kEps * std::max(1.0, std::abs(q))) {
    fail(ErrorCode::FusionSingular, "two-point branch point hit");
  }
  return linalg::inverse_sqrt_principal(den);
}

cplx n_point_correlator(std::span<const FieldInsertion> insertions, const SpectralParameter& sp) {
  if (insertions.empty()) return cplx(1.0, 0.0);
  for (std::size_t i = 1; i < insertions.size(); ++i) {
    if (insertions[i].position < insertions[i - 1].position) {
      fail(ErrorCode::InvalidArgument, "insertions must be ordered by position");
    }
  }
  // translation invariance: evolve relative to the first insertion
  const double origin = insertions.front().position;
  BogolyubovParams current = insertions.front().params;
  cplx constant(1.0, 0.0);
  for (std::size_t i = 1; i < insertions.size(); ++i) {
    const BogolyubovParams next = evolve(insertions[i].params, insertions[i].position - origin, sp);
    try {
      const FusionResult r = fuse(current, next);
      constant *= r.c12;
      current = r.params;
    } catch (const Error& e) {
      std::ostringstream os;
      os << "fusing insertion " << i << " into the product of insertions 0.." << i - 1 << ": "
         << e.what();
      fail(e.code(), os.str());
    }
  }
  return constant;
}

cplx delta_correlator_via_fusion(const SpectralParameter& sp, const PointInteractionConfig& cfg) {
  std::vector<FieldInsertion> ins;
  ins.reserve(cfg.size());
  cplx one_points(1.0, 0.0);
  for (std::size_t j = 0; j < cfg.size(); ++j) {
    ins.push_back({delta_params(cfg.strength(j), sp), cfg.position(j)});
    one_points *= greenfn::one_point(cfg.strength(j), sp);
  }
  return one_points * n_point_correlator(ins, sp);
}

cplx form_factor(int k, int l, const BogolyubovParams& p) {
  check_indices(k, l);
  return closed_form_sum(k, l, p, 0.0);
}

cplx matrix_element(int k, int l, const BogolyubovParams& p) {
  check_indices(k, l);
  const auto& lf = log_factorials();
  const double shift =
      -0.5 * (lf[static_cast<std::size_t>(k)] + lf[static_cast<std::size_t>(l)]);
  return closed_form_sum(k, l, p, shift);
}

Eigen::MatrixXcd form_factor_table_recursive(int max_k, int max_l, const BogolyubovParams& p) {
  if (max_k < 0 || max_l < 0) fail(ErrorCode::InvalidArgument, "table bounds must be non-negative");
  require_nondegenerate_mu(p.mu);
  // the recurrence amplifies rounding by many orders of magnitude when |1 + mu|
  // is small, so it runs in 100-digit arithmetic and is rounded at the end
  using Wide = boost::multiprecision::cpp_complex_100;
  const auto widen = [](cplx z) { return Wide(z.real(), z.imag()); };
  const exact::Params<Wide> wp{widen(p.lambda), widen(p.mu), widen(p.nu)};
  const auto table = exact::form_factor_table(max_k, max_l, wp);
  Eigen::MatrixXcd t(max_k + 1, max_l + 1);
  for (int k = 0; k <= max_k; ++k) {
    for (int l = 0; l <= max_l; ++l) {
      const Wide& v = table[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
      t(k, l) = cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
    }
  }
  if (!t.allFinite()) fail(ErrorCode::Overflow, "form-factor table is not representable in double precision");
  return t;
}

cplx resolvent_via_fields(const SpectralParameter& sp, const PointInteractionConfig& cfg, double x,
                          double y, const FieldsOptions& opts) {
  cfg.check_extension(sp);
  std::vector<BogolyubovParams> params;
  params.reserve(cfg.size());
  for (double v : cfg.strengths()) params.push_back(delta_params(v, sp));

  const auto ratio_at = [&](int dim) {
    const oracle::FockTruncation t(dim);
    std::vector<oracle::FockInsertion> fields;
    for (std::size_t j = 0; j < cfg.size(); ++j) {
      fields.push_back({oracle::build_operator(params[j], t), cfg.position(j)});
    }
    const cplx denominator = oracle::vev_product(fields, sp);

    const Eigen::MatrixXcd phi = t.phi(sp);
    for (double pos : {x, y}) {
      // phi commutes with O_V at equal time, so ties may go either way
      const auto at = std::upper_bound(fields.begin(), fields.end(), pos,
                                       [](double p, const auto& f) { return p < f.position; });
      fields.insert(at, oracle::FockInsertion{phi, pos});
    }
    const cplx numerator = oracle::vev_product(fields, sp);
    return numerator / denominator;
  };

  if (!opts.check_convergence) return ratio_at(opts.dimension);
  return oracle::converge_by_doubling(ratio_at, opts.dimension, opts.tolerance).value;
}

}  // namespace pointint::bogolyubov
