#include "pointint/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "pointint/error.hpp"

namespace pointint::gaussian {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kMaxCondition = 1e6;
constexpr std::size_t kBatchSize = std::size_t{1} << 16;

template <class Scalar>
double condition_number(const Matrix<Scalar>& m) {
  const Eigen::JacobiSVD<Matrix<Scalar>> svd(m);
  const auto& s = svd.singularValues();
  return s.minCoeff() > 0.0 ? s.maxCoeff() / s.minCoeff() : std::numeric_limits<double>::infinity();
}

template <class Scalar>
Eigen::PartialPivLU<Matrix<Scalar>> checked_lu(const Matrix<Scalar>& m, const char* name) {
  Eigen::PartialPivLU<Matrix<Scalar>> lu(m);
  if (!(lu.rcond() > static_cast<double>(m.rows()) * kEps)) {
    fail(ErrorCode::SingularInput, std::string(name) + " is numerically singular");
  }
  return lu;
}

template <class Scalar>
Matrix<Scalar> joint_matrix(const QuadraticForm<Scalar>& q) {
  const Eigen::Index m = q.a.rows();
  const Eigen::Index n = q.b.rows();
  Matrix<Scalar> k(m + n, m + n);
  k << q.a, q.c, q.c.adjoint(), q.b;
  return k;
}

template <class Scalar>
Scalar standard_normal(std::mt19937_64& rng, std::normal_distribution<double>& nd) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return nd(rng);
  } else {
    const double re = nd(rng);
    const double im = nd(rng);
    return Scalar(re, im) / std::sqrt(2.0);
  }
}

template <class Scalar>
Matrix<Scalar> random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Matrix<Scalar> x(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) x(r, c) = standard_normal<Scalar>(rng, nd);
  }
  return x;
}

template <class Scalar>
Matrix<Scalar> random_positive_definite(Eigen::Index n, std::mt19937_64& rng) {
  const Matrix<Scalar> x = random_matrix<Scalar>(n, n, rng);
  Matrix<Scalar> a = x * x.adjoint() / static_cast<double>(n);
  a += 0.3 * Matrix<Scalar>::Identity(n, n);
  // exact (anti)symmetrization so the stored matrix is hermitian bit for bit
  const Matrix<Scalar> h = (a + a.adjoint()) / 2.0;
  Matrix<Scalar> out = h;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      if constexpr (std::is_same_v<Scalar, double>) {
        out(i, j) = out(j, i);
      } else {
        out(i, j) = std::conj(out(j, i));
      }
    }
    if constexpr (!std::is_same_v<Scalar, double>) out(i, i) = Scalar(out(i, i).real(), 0.0);
  }
  return out;
}

// --- Monte Carlo accumulation --------------------------------------------------

struct Accumulator {
  std::vector<double> sum;
  std::vector<double> sumsq;
  std::size_t count = 0;

  explicit Accumulator(std::size_t n = 0) : sum(n, 0.0), sumsq(n, 0.0) {}
  void add(std::size_t k, double v) {
    sum[k] += v;
    sumsq[k] += v * v;
  }
  void merge(const Accumulator& o) {
    for (std::size_t k = 0; k < sum.size(); ++k) {
      sum[k] += o.sum[k];
      sumsq[k] += o.sumsq[k];
    }
    count += o.count;
  }
};

template <class Scalar>
struct McPlan {
  std::vector<std::string> names;
  std::vector<double> expected;
  bool source = false;
  bool z_ratio = false;
};

template <class Scalar>
double real_part(Scalar v) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return v;
  } else {
    return v.real();
  }
}

template <class Scalar>
Scalar conj_of(Scalar v) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return v;
  } else {
    return std::conj(v);
  }
}

// Pushes the real (and, for complex off-diagonal entries, imaginary) parts.
template <class Scalar>
void push_entry(McPlan<Scalar>& plan, const std::string& name, Scalar expected, bool diagonal) {
  if constexpr (std::is_same_v<Scalar, double>) {
    (void)diagonal;
    plan.names.push_back(name);
    plan.expected.push_back(expected);
  } else {
    plan.names.push_back(name + ".re");
    plan.expected.push_back(expected.real());
    if (!diagonal) {
      plan.names.push_back(name + ".im");
      plan.expected.push_back(expected.imag());
    }
  }
}

template <class Scalar>
void record(Accumulator& acc, std::size_t& k, Scalar v, bool diagonal) {
  if constexpr (std::is_same_v<Scalar, double>) {
    (void)diagonal;
    acc.add(k++, v);
  } else {
    acc.add(k++, v.real());
    if (!diagonal) acc.add(k++, v.imag());
  }
}

std::string entry_name(const char* what, Eigen::Index i, Eigen::Index j) {
  std::ostringstream os;
  os << what << "(" << i << "," << j << ")";
  return os.str();
}

template <class Scalar>
McReport run_mc(const QuadraticForm<Scalar>& q, std::size_t samples, std::uint64_t seed,
                unsigned threads) {
  validate(q);
  const Eigen::Index m = q.a.rows();
  const Eigen::Index n = q.b.rows();
  if (m > 4 || n > 4) fail(ErrorCode::InvalidArgument, "Monte Carlo checks limited to dimensions <= 4");
  if (samples < 2) fail(ErrorCode::InvalidArgument, "Monte Carlo needs at least two samples");
  constexpr bool is_real = std::is_same_v<Scalar, double>;
  // complex measure: the exponent has no 1/2, covariance of phi is A^{-1}
  const double half = is_real ? 0.5 : 1.0;

  const Eigen::LLT<Matrix<Scalar>> chol_a(q.a);
  const Eigen::LLT<Matrix<Scalar>> chol_b(q.b);
  const Matrix<Scalar> joint = joint_matrix(q);
  const Eigen::LLT<Matrix<Scalar>> chol_k(joint);
  if (chol_a.info() != Eigen::Success || chol_b.info() != Eigen::Success ||
      chol_k.info() != Eigen::Success) {
    fail(ErrorCode::NotPositiveDefinite, "A, B and the joint block matrix must be positive definite");
  }
  Matrix<Scalar> doubled = joint;
  doubled.topRightCorner(m, n) *= 2.0;
  doubled.bottomLeftCorner(n, m) *= 2.0;
  const bool z_ratio = Eigen::LLT<Matrix<Scalar>>(doubled).info() == Eigen::Success;

  const Matrix<Scalar> a_inv = chol_a.solve(Matrix<Scalar>::Identity(m, m));
  const KreinPair<Scalar> krein = krein_matrices(q);
  const bool source = q.j.size() == m;

  McPlan<Scalar> plan;
  plan.source = source;
  plan.z_ratio = z_ratio;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) push_entry(plan, entry_name("second_moment", i, j), a_inv(i, j), i == j);
  }
  Vector<Scalar> shift;
  double source_weight = 1.0;
  if (source) {
    shift = a_inv * q.j;
    source_weight = std::exp(half * real_part<Scalar>((q.j.adjoint() * shift)(0)));
    plan.names.push_back("source_partition_ratio");
    plan.expected.push_back(source_weight);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = i; j < m; ++j) {
        const Scalar e = (a_inv(i, j) + shift(i) * conj_of(shift(j))) * source_weight;
        push_entry(plan, entry_name("source_moment", i, j), e, i == j);
      }
    }
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) {
      push_entry(plan, entry_name("coupled_marginal_lhs", i, j), krein.lhs(i, j), i == j);
      push_entry(plan, entry_name("coupled_marginal_rhs", i, j), krein.rhs(i, j), i == j);
    }
  }
  McReport report;
  report.kind = is_real ? Kind::Real : Kind::Complex;
  report.seed = seed;
  report.samples = samples;
  if (z_ratio) {
    const Scalar ratio = chol_a.matrixLLT().diagonal().prod() * chol_b.matrixLLT().diagonal().prod() /
                         chol_k.matrixLLT().diagonal().prod();
    // det = prod(diag L)^2 ; real: sqrt(det A det B / det K), complex: det A det B / det K
    const double r = std::abs(ratio);
    plan.names.push_back("coupling_partition_ratio");
    plan.expected.push_back(is_real ? r : r * r);
  } else {
    report.skipped.push_back("coupling_partition_ratio (infinite variance for this coupling)");
  }

  const std::size_t stats = plan.names.size();
  const std::size_t batches = (samples + kBatchSize - 1) / kBatchSize;
  std::vector<Accumulator> per_batch(batches, Accumulator(stats));

  const auto run_batch = [&](std::size_t b) {
    std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(b)};
    std::mt19937_64 rng(ss);
    std::normal_distribution<double> nd;
    Accumulator& acc = per_batch[b];
    const std::size_t begin = b * kBatchSize;
    const std::size_t end = std::min(samples, begin + kBatchSize);
    Vector<Scalar> z_phi(m), z_mu(n), z_joint(m + n);
    for (std::size_t s = begin; s < end; ++s) {
      for (Eigen::Index i = 0; i < m; ++i) z_phi(i) = standard_normal<Scalar>(rng, nd);
      for (Eigen::Index i = 0; i < n; ++i) z_mu(i) = standard_normal<Scalar>(rng, nd);
      for (Eigen::Index i = 0; i < m + n; ++i) z_joint(i) = standard_normal<Scalar>(rng, nd);
      // A = L L^+, phi = L^{-+} z has covariance A^{-1}
      const Vector<Scalar> phi = chol_a.matrixU().solve(z_phi);
      const Vector<Scalar> mu = chol_b.matrixU().solve(z_mu);
      const Vector<Scalar> pair = chol_k.matrixU().solve(z_joint);

      std::size_t k = 0;
      for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = i; j < m; ++j) record<Scalar>(acc, k, phi(i) * conj_of(phi(j)), i == j);
      }
      if (source) {
        // real: e^{J^T phi}; complex: e^{J^+ phi + phi^+ J}
        const Scalar jp = (q.j.adjoint() * phi)(0);
        const double w = std::exp(is_real ? real_part(jp) : 2.0 * real_part(jp));
        acc.add(k++, w);
        for (Eigen::Index i = 0; i < m; ++i) {
          for (Eigen::Index j = i; j < m; ++j) record<Scalar>(acc, k, phi(i) * conj_of(phi(j)) * w, i == j);
        }
      }
      for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = i; j < m; ++j) {
          const Scalar v = pair(i) * conj_of(pair(j));
          record<Scalar>(acc, k, v, i == j);
          record<Scalar>(acc, k, v, i == j);
        }
      }
      if (z_ratio) {
        // real: e^{-phi^T C mu}; complex: e^{-phi^+ C mu - mu^+ C^+ phi}
        const Scalar pcm = (phi.adjoint() * q.c * mu)(0);
        acc.add(k++, std::exp(is_real ? -real_part(pcm) : -2.0 * real_part(pcm)));
      }
    }
    acc.count = end - begin;
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(batches)));
  if (workers == 1) {
    for (std::size_t b = 0; b < batches; ++b) run_batch(b);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t b = w; b < batches; b += workers) run_batch(b);
      });
    }
    for (auto& t : pool) t.join();
  }
  Accumulator total(stats);
  for (const auto& acc : per_batch) total.merge(acc);

  const double count = static_cast<double>(total.count);
  for (std::size_t k = 0; k < stats; ++k) {
    const double mean = total.sum[k] / count;
    const double var = std::max(0.0, (total.sumsq[k] - count * mean * mean) / (count - 1.0));
    report.checks.push_back({plan.names[k], mean, plan.expected[k], std::sqrt(var / count)});
  }
  return report;
}

}  // namespace

template <class Scalar>
void validate(const QuadraticForm<Scalar>& q) {
  if (q.a.rows() == 0 || q.a.rows() != q.a.cols() || q.b.rows() == 0 || q.b.rows() != q.b.cols()) {
    fail(ErrorCode::InvalidArgument, "A and B must be non-empty square matrices");
  }
  if (q.c.rows() != q.a.rows() || q.c.cols() != q.b.rows()) {
    fail(ErrorCode::InvalidArgument, "C must be M x N");
  }
  if (q.j.size() != 0 && q.j.size() != q.a.rows()) {
    fail(ErrorCode::InvalidArgument, "source vector must have length M");
  }
  const auto check_hermitian = [](const Matrix<Scalar>& x, const char* name) {
    const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
    if ((x - x.adjoint()).cwiseAbs().maxCoeff() > 64.0 * kEps * scale) {
      fail(ErrorCode::InvalidArgument, std::string(name) + " is not symmetric/hermitian");
    }
  };
  check_hermitian(q.a, "A");
  check_hermitian(q.b, "B");
  checked_lu(q.a, "A");
  checked_lu(q.b, "B");
}

template <class Scalar>
double SchurDeterminants<Scalar>::residual() const {
  return std::max({std::abs(block - via_a), std::abs(block - via_b), std::abs(via_a - via_b)});
}

template <class Scalar>
SchurDeterminants<Scalar> schur_partition_identity(const QuadraticForm<Scalar>& q) {
  validate(q);
  const auto lu_a = checked_lu(q.a, "A");
  const auto lu_b = checked_lu(q.b, "B");
  const Matrix<Scalar> schur_a = q.b - q.c.adjoint() * lu_a.solve(q.c);
  const Matrix<Scalar> schur_b = q.a - q.c * lu_b.solve(q.c.adjoint());
  SchurDeterminants<Scalar> out;
  out.block = Eigen::PartialPivLU<Matrix<Scalar>>(joint_matrix(q)).determinant();
  out.via_a = lu_a.determinant() * Eigen::PartialPivLU<Matrix<Scalar>>(schur_a).determinant();
  out.via_b = lu_b.determinant() * Eigen::PartialPivLU<Matrix<Scalar>>(schur_b).determinant();
  return out;
}

template <class Scalar>
KreinPair<Scalar> krein_matrices(const QuadraticForm<Scalar>& q) {
  validate(q);
  const auto lu_a = checked_lu(q.a, "A");
  const auto lu_b = checked_lu(q.b, "B");
  const Eigen::Index m = q.a.rows();
  const Matrix<Scalar> id = Matrix<Scalar>::Identity(m, m);
  const Matrix<Scalar> schur_b = q.a - q.c * lu_b.solve(q.c.adjoint());
  const Matrix<Scalar> a_inv = lu_a.solve(id);
  const Matrix<Scalar> a_inv_c = lu_a.solve(q.c);
  const Matrix<Scalar> schur_a = q.b - q.c.adjoint() * a_inv_c;
  const auto lu_sa = checked_lu(schur_a, "B - C^T A^{-1} C");
  const auto lu_sb = checked_lu(schur_b, "A - C B^{-1} C^T");
  KreinPair<Scalar> out;
  out.lhs = lu_sb.solve(id);
  out.rhs = a_inv + a_inv_c * lu_sa.solve(a_inv_c.adjoint());
  return out;
}

template <class Scalar>
std::pair<Scalar, Scalar> krein_identity(const QuadraticForm<Scalar>& q, int i, int j) {
  const auto k = krein_matrices(q);
  if (i < 0 || j < 0 || i >= k.lhs.rows() || j >= k.lhs.cols()) {
    fail(ErrorCode::InvalidArgument, "Krein identity index out of range");
  }
  return {k.lhs(i, j), k.rhs(i, j)};
}

template <class Scalar>
QuadraticForm<Scalar> random_quadratic_form(int m, int n, std::mt19937_64& rng, double coupling,
                                            bool with_source) {
  if (m < 1 || n < 1) fail(ErrorCode::InvalidArgument, "dimensions must be positive");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    QuadraticForm<Scalar> q;
    q.a = random_positive_definite<Scalar>(m, rng);
    q.b = random_positive_definite<Scalar>(n, rng);
    q.c = random_matrix<Scalar>(m, n, rng) * (coupling / std::sqrt(static_cast<double>(std::max(m, n))));
    if (with_source) q.j = random_matrix<Scalar>(m, 1, rng).col(0) * 0.3;

    const Matrix<Scalar> joint = joint_matrix(q);
    if (Eigen::LLT<Matrix<Scalar>>(joint).info() != Eigen::Success) continue;
    const Matrix<Scalar> schur_a = q.b - q.c.adjoint() * q.a.partialPivLu().solve(q.c);
    const Matrix<Scalar> schur_b = q.a - q.c * q.b.partialPivLu().solve(q.c.adjoint());
    if (condition_number(q.a) > kMaxCondition || condition_number(q.b) > kMaxCondition ||
        condition_number(joint) > kMaxCondition || condition_number(schur_a) > kMaxCondition ||
        condition_number(schur_b) > kMaxCondition) {
      continue;
    }
    return q;
  }
  fail(ErrorCode::SingularInput, "could not draw a well-conditioned instance");
}

bool McCheck::pass() const noexcept { return std::abs(estimate - expected) <= 4.0 * std_error; }

bool McReport::all_pass() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const McCheck& c) { return c.pass(); });
}

McReport moment_check_mc(const RealQuadraticForm& q, std::size_t samples, std::uint64_t seed,
                         unsigned threads) {
  return run_mc(q, samples, seed, threads);
}

McReport moment_check_mc(const ComplexQuadraticForm& q, std::size_t samples, std::uint64_t seed,
                         unsigned threads) {
  return run_mc(q, samples, seed, threads);
}

template void validate<double>(const RealQuadraticForm&);
template void validate<cplx>(const ComplexQuadraticForm&);
template struct SchurDeterminants<double>;
template struct SchurDeterminants<cplx>;
template SchurDeterminants<double> schur_partition_identity(const RealQuadraticForm&);
template SchurDeterminants<cplx> schur_partition_identity(const ComplexQuadraticForm&);
template KreinPair<double> krein_matrices(const RealQuadraticForm&);
template KreinPair<cplx> krein_matrices(const ComplexQuadraticForm&);
template std::pair<double, double> krein_identity(const RealQuadraticForm&, int, int);
template std::pair<cplx, cplx> krein_identity(const ComplexQuadraticForm&, int, int);
template RealQuadraticForm random_quadratic_form<double>(int, int, std::mt19937_64&, double, bool);
template ComplexQuadraticForm random_quadratic_form<cplx>(int, int, std::mt19937_64&, double, bool);

}  // namespace pointint::gaussian
