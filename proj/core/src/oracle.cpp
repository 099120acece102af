#include "pointint/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pointint/error.hpp"

namespace pointint::oracle {

FockTruncation::FockTruncation(int dimension) : dimension_(dimension) {
  if (dimension < 2) fail(ErrorCode::InvalidArgument, "Fock truncation needs D >= 2");
  a_ = Eigen::MatrixXd::Zero(dimension, dimension);
  for (int k = 0; k + 1 < dimension; ++k) a_(k, k + 1) = std::sqrt(static_cast<double>(k + 1));
  a_dag_ = a_.transpose();
}

Eigen::MatrixXd FockTruncation::number() const { return a_dag_ * a_; }

Eigen::MatrixXcd FockTruncation::hamiltonian(const SpectralParameter& sp) const {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dimension_, dimension_);
  for (int k = 0; k < dimension_; ++k) h(k, k) = sp.m() * static_cast<double>(k);
  return h;
}

Eigen::MatrixXcd FockTruncation::phi(const SpectralParameter& sp) const {
  return (a_ + a_dag_).cast<cplx>() / std::sqrt(2.0 * sp.m());
}

Eigen::MatrixXcd FockTruncation::pi(const SpectralParameter& sp) const {
  return cplx(0.0, 1.0) * std::sqrt(sp.m() / 2.0) * (a_dag_ - a_).cast<cplx>();
}

// --- transfer construction ---------------------------------------------------

namespace {

struct LocalValue {
  cplx f;        // scaled value
  cplx fp_over_m;  // scaled derivative / m
  double log_scale;
};

LocalValue evaluate(const TransferState& s, cplx m, double x) {
  const cplx md = m * (x - s.reference);
  const double shift = std::abs(md.real());
  const cplx grow = std::exp(md - shift);
  const cplx decay = std::exp(-md - shift);
  return {s.c_plus * decay + s.c_minus * grow, -s.c_plus * decay + s.c_minus * grow,
          s.log_scale + shift};
}

TransferState from_local(cplx f, cplx fp_over_m, double log_scale, double reference) {
  TransferState s{(f - fp_over_m) / 2.0, (f + fp_over_m) / 2.0, reference, log_scale};
  const double norm = std::max(std::abs(s.c_plus), std::abs(s.c_minus));
  if (norm > 0.0 && std::isfinite(norm)) {
    s.c_plus /= norm;
    s.c_minus /= norm;
    s.log_scale += std::log(norm);
  }
  return s;
}

// segments[s] covers (a_s, a_{s+1}) with a_0 = -inf, a_{N+1} = +inf
std::vector<TransferState> decaying_left(cplx m, std::span<const double> a, std::span<const double> v) {
  const std::size_t n = a.size();
  std::vector<TransferState> seg(n + 1);
  seg[0] = {cplx(0.0), cplx(1.0), n ? a[0] : 0.0, 0.0};
  for (std::size_t j = 0; j < n; ++j) {
    const LocalValue lv = evaluate(seg[j], m, a[j]);
    seg[j + 1] = from_local(lv.f, lv.fp_over_m + v[j] / m * lv.f, lv.log_scale, a[j]);
  }
  return seg;
}

std::vector<TransferState> decaying_right(cplx m, std::span<const double> a, std::span<const double> v) {
  const std::size_t n = a.size();
  std::vector<TransferState> seg(n + 1);
  seg[n] = {cplx(1.0), cplx(0.0), n ? a[n - 1] : 0.0, 0.0};
  for (std::size_t j = n; j-- > 0;) {
    // expanded about the right end of its segment, where both components are comparable
    const LocalValue lv = evaluate(seg[j + 1], m, a[j]);
    seg[j] = from_local(lv.f, lv.fp_over_m - v[j] / m * lv.f, lv.log_scale, a[j]);
  }
  return seg;
}

std::size_t segment_of(std::span<const double> a, double x) {
  return static_cast<std::size_t>(std::upper_bound(a.begin(), a.end(), x) - a.begin());
}

}  // namespace

cplx transfer_green(const SpectralParameter& sp, const PointInteractionConfig& cfg, double x,
                    double y) {
  const cplx m = sp.m();
  const auto a = cfg.positions();
  const auto v = cfg.strengths();
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);

  const auto left = decaying_left(m, a, v);
  const auto right = decaying_right(m, a, v);

  // values at a point are continuous, so either adjacent segment works
  const LocalValue minus_lo = evaluate(left[segment_of(a, lo)], m, lo);
  const LocalValue plus_lo = evaluate(right[segment_of(a, lo)], m, lo);
  const LocalValue plus_hi = evaluate(right[segment_of(a, hi)], m, hi);

  const cplx w1 = minus_lo.fp_over_m * plus_lo.f;
  const cplx w2 = minus_lo.f * plus_lo.fp_over_m;
  const cplx wronskian = w1 - w2;
  if (std::abs(wronskian) <= 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(w1) + std::abs(w2))) {
    fail(ErrorCode::ZeroWronskian, "decaying solutions are linearly dependent; E is an eigenvalue");
  }
  return minus_lo.f * plus_hi.f * std::exp(plus_hi.log_scale - plus_lo.log_scale) / (m * wronskian);
}

// --- truncated Fock operators ---------------------------------------------

namespace {

void require_dimension(const FockTruncation& t) {
  if (t.dimension() < 8) fail(ErrorCode::TruncationNotConverged, "operator construction needs D >= 8");
}

void require_finite(const Eigen::MatrixXcd& m, const char* what) {
  if (!m.allFinite()) {
    fail(ErrorCode::TruncationNotConverged, std::string(what) + " series produced non-finite entries");
  }
}

}  // namespace

Eigen::MatrixXcd p_factor(cplx lambda, const FockTruncation& t) {
  // exp(lambda/2 a+^2): the series terminates since a+^2 is nilpotent on the truncation;
  // right-multiplying by a+^2 shifts columns, term_n(k, l) = term_{n-1}(k, l+2) sqrt((l+1)(l+2))
  const int d = t.dimension();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(d, d);
  Eigen::MatrixXcd term = sum;
  for (int n = 1; 2 * n < d; ++n) {
    Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(d, d);
    for (int l = 0; l + 2 < d; ++l) {
      const double c = std::sqrt(static_cast<double>((l + 1) * (l + 2)));
      next.col(l) = term.col(l + 2) * (c * lambda / (2.0 * n));
    }
    term.swap(next);
    sum += term;
  }
  require_finite(sum, "P");
  return sum;
}

Eigen::MatrixXcd r_factor(cplx nu, const FockTruncation& t) {
  // exp(nu/2 a^2); term_n(k, l) = term_{n-1}(k, l-2) sqrt(l (l-1))
  const int d = t.dimension();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(d, d);
  Eigen::MatrixXcd term = sum;
  for (int n = 1; 2 * n < d; ++n) {
    Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(d, d);
    for (int l = 2; l < d; ++l) {
      const double c = std::sqrt(static_cast<double>(l * (l - 1)));
      next.col(l) = term.col(l - 2) * (c * nu / (2.0 * n));
    }
    term.swap(next);
    sum += term;
  }
  require_finite(sum, "R");
  return sum;
}

Eigen::MatrixXcd q_factor(cplx mu, const FockTruncation& t) {
  // :exp(mu a+ a): = sum_n mu^n/n! a+^n a^n is diagonal with
  // <k| . |k> = sum_n C(k, n) mu^n = (1 + mu)^k; the closed sum avoids the
  // alternating-series cancellation of the raw terms at large k.
  const int d = t.dimension();
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(d, d);
  cplx power(1.0, 0.0);
  for (int k = 0; k < d; ++k) {
    q(k, k) = power;
    power *= 1.0 + mu;
  }
  require_finite(q, "Q");
  return q;
}

Eigen::MatrixXcd build_operator(const bogolyubov::BogolyubovParams& p, const FockTruncation& t) {
  require_dimension(t);
  const Eigen::MatrixXcd q = q_factor(p.mu, t);
  // Q diagonal: P Q R = P (diag(q) R)
  Eigen::MatrixXcd qr = r_factor(p.nu, t);
  for (int k = 0; k < t.dimension(); ++k) qr.row(k) *= q(k, k);
  Eigen::MatrixXcd op = p_factor(p.lambda, t) * qr;
  require_finite(op, "operator");
  return op;
}

cplx vev_product(std::span<const FockInsertion> ops, const SpectralParameter& sp) {
  if (ops.empty()) return cplx(1.0, 0.0);
  const Eigen::Index d = ops.front().op.rows();
  Eigen::RowVectorXcd bra = Eigen::RowVectorXcd::Zero(d);
  bra(0) = 1.0;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].op.rows() != d || ops[i].op.cols() != d) {
      fail(ErrorCode::InvalidArgument, "insertions have mismatched truncation");
    }
    if (i > 0 && ops[i].position < ops[i - 1].position) {
      fail(ErrorCode::InvalidArgument, "insertions must be ordered by position");
    }
    if (i > 0) {
      const double gap = ops[i].position - ops[i - 1].position;
      const cplx step = std::exp(-sp.m() * gap);
      cplx factor(1.0, 0.0);
      for (Eigen::Index k = 0; k < d; ++k) {
        bra(k) *= factor;
        factor *= step;
      }
    }
    bra = bra * ops[i].op;
  }
  return bra(0);
}

cplx vev_product(std::span<const bogolyubov::FieldInsertion> ops, const SpectralParameter& sp,
                 const FockTruncation& t) {
  std::vector<FockInsertion> built;
  built.reserve(ops.size());
  for (const auto& ins : ops) built.push_back({build_operator(ins.params, t), ins.position});
  return vev_product(built, sp);
}

Converged converge_by_doubling(const std::function<cplx(int)>& f, int dimension, double tolerance) {
  const cplx value = f(dimension);
  const cplx doubled = f(2 * dimension);
  const double scale = std::max(std::abs(doubled), std::numeric_limits<double>::min());
  const double change = std::abs(value - doubled) / scale;
  if (!(change <= tolerance)) {
    std::ostringstream os;
    os << "D = " << dimension << " vs " << 2 * dimension << " differ by " << change
       << " (tolerance " << tolerance << ")";
    fail(ErrorCode::TruncationNotConverged, os.str());
  }
  return {value, doubled, change};
}

}  // namespace pointint::oracle
