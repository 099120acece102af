#include "pointint/tau.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pointint/error.hpp"
#include "pointint/greenfn.hpp"
#include "pointint/linalg.hpp"

namespace pointint::tau {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_lengths(const Localization& loc, std::span<const double> positions,
                   std::span<const double> strengths) {
  if (positions.size() != strengths.size() || positions.size() != loc.size()) {
    fail(ErrorCode::InvalidArgument, "localization, positions and strengths differ in length");
  }
  loc.check_contains(positions);
}

std::vector<double> all_strengths(const PointInteractionConfig& cfg) {
  return {cfg.strengths().begin(), cfg.strengths().end()};
}

// w_i = e^{-m (x^L_{i+1} - x^R_i)}
cplx gap_factor(const SpectralParameter& sp, const Localization& loc, std::size_t i) {
  return std::exp(-sp.m() * (loc[i + 1].left - loc[i].right));
}

Eigen::MatrixXcd stacked(const Subspace& a, const Subspace& b) {
  Eigen::MatrixXcd s(a.ambient_dimension(), a.dimension() + b.dimension());
  s << a.basis(), b.basis();
  return s;
}

}  // namespace

Localization::Localization(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  if (intervals_.empty()) fail(ErrorCode::InvalidArgument, "localization needs at least one interval");
  for (std::size_t j = 0; j < intervals_.size(); ++j) {
    const auto& s = intervals_[j];
    if (!std::isfinite(s.left) || !std::isfinite(s.right) || !(s.left < s.right)) {
      fail(ErrorCode::InvalidArgument, "interval endpoints must be finite with x^L < x^R");
    }
    if (j > 0 && !(intervals_[j - 1].right < s.left)) {
      fail(ErrorCode::InvalidArgument, "intervals must be disjoint and ordered");
    }
  }
}

Localization Localization::around(std::span<const double> positions) {
  if (positions.empty()) fail(ErrorCode::InvalidArgument, "localization needs at least one point");
  double gap = 1.0;
  if (positions.size() > 1) {
    gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j < positions.size(); ++j) gap = std::min(gap, positions[j] - positions[j - 1]);
  }
  std::vector<Interval> iv;
  iv.reserve(positions.size());
  for (double a : positions) iv.push_back({a - gap / 3.0, a + gap / 3.0});
  return Localization(std::move(iv));
}

void Localization::check_contains(std::span<const double> positions) const {
  if (positions.size() != intervals_.size()) {
    fail(ErrorCode::InvalidArgument, "localization and config differ in size");
  }
  for (std::size_t j = 0; j < positions.size(); ++j) {
    if (!(intervals_[j].left < positions[j] && positions[j] < intervals_[j].right)) {
      std::ostringstream os;
      os << "point a_" << j << " = " << positions[j] << " outside its interval";
      fail(ErrorCode::InvalidArgument, os.str());
    }
  }
}

Eigen::Vector4cd boundary_coordinates(cplx value_left, cplx slope_left, cplx value_right,
                                      cplx slope_right, const SpectralParameter& sp) {
  const cplx m = sp.m();
  Eigen::Vector4cd h;
  h(static_cast<int>(Coord::RPlus)) = value_right + slope_right / m;
  h(static_cast<int>(Coord::LMinus)) = value_left - slope_left / m;
  h(static_cast<int>(Coord::RMinus)) = value_right - slope_right / m;
  h(static_cast<int>(Coord::LPlus)) = value_left + slope_left / m;
  return h;
}

Subspace::Subspace(Eigen::MatrixXcd basis) : basis_(std::move(basis)) {
  if (basis_.cols() == 0 || basis_.cols() > basis_.rows()) {
    fail(ErrorCode::InvalidArgument, "subspace basis has invalid shape");
  }
  const auto sv = linalg::singular_value_spread(basis_);
  if (!(sv.smallest > static_cast<double>(basis_.rows()) * kEps * sv.largest)) {
    fail(ErrorCode::InvalidArgument, "subspace basis is rank deficient");
  }
}

Eigen::Matrix2cd n_matrix(const SpectralParameter& sp, const Interval& s, double position,
                          double strength) {
  check_extension(strength, sp);
  const cplx m = sp.m();
  const cplx x = reduced_strength(strength, sp);
  const cplx reflect = -x / (1.0 + x);
  Eigen::Matrix2cd n;
  n(0, 0) = reflect * std::exp(-2.0 * m * (s.right - position));
  n(1, 1) = reflect * std::exp(-2.0 * m * (position - s.left));
  n(0, 1) = std::exp(-m * (s.right - s.left)) / (1.0 + x);
  n(1, 0) = n(0, 1);
  return n;
}

Subspace ext_subspace(const SpectralParameter& sp, const Localization& loc) {
  const std::size_t n = loc.size();
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(4 * n),
                                              static_cast<Eigen::Index>(2 * n));
  Eigen::Index col = 0;
  // left tail e^{mx}: only h^{(1)}_{L,+}
  b(coord_index(0, Coord::LPlus), col++) = 1.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const cplx w = gap_factor(sp, loc, i);
    // e^{-mx} on the gap: h^{(i+1)}_{L,-} = w h^{(i)}_{R,-}
    b(coord_index(i, Coord::RMinus), col) = 1.0;
    b(coord_index(i + 1, Coord::LMinus), col++) = w;
    // e^{mx} on the gap: h^{(i)}_{R,+} = w h^{(i+1)}_{L,+}
    b(coord_index(i + 1, Coord::LPlus), col) = 1.0;
    b(coord_index(i, Coord::RPlus), col++) = w;
  }
  // right tail e^{-mx}: only h^{(N)}_{R,-}
  b(coord_index(n - 1, Coord::RMinus), col++) = 1.0;
  return Subspace(std::move(b));
}

Subspace int_subspace(const SpectralParameter& sp, const Localization& loc,
                      std::span<const double> positions, std::span<const double> strengths) {
  check_lengths(loc, positions, strengths);
  const std::size_t n = loc.size();
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(4 * n),
                                              static_cast<Eigen::Index>(2 * n));
  for (std::size_t j = 0; j < n; ++j) {
    const Eigen::Matrix2cd nj = n_matrix(sp, loc[j], positions[j], strengths[j]);
    const auto r = static_cast<Eigen::Index>(4 * j);
    const auto c = static_cast<Eigen::Index>(2 * j);
    b.block(r, c, 2, 2) = Eigen::Matrix2cd::Identity();
    b.block(r + 2, c, 2, 2) = nj;
  }
  return Subspace(std::move(b));
}

Subspace int_subspace(const SpectralParameter& sp, const Localization& loc,
                      const PointInteractionConfig& cfg) {
  const auto v = all_strengths(cfg);
  return int_subspace(sp, loc, cfg.positions(), v);
}

Subspace friedrichs_subspace(const SpectralParameter& sp, const Localization& loc) {
  std::vector<double> centres;
  centres.reserve(loc.size());
  for (const auto& s : loc.intervals()) centres.push_back(0.5 * (s.left + s.right));
  const std::vector<double> zeros(loc.size(), 0.0);
  return int_subspace(sp, loc, centres, zeros);
}

Subspace local_ext_subspace(const Localization& loc) {
  const std::size_t n = loc.size();
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(4 * n),
                                              static_cast<Eigen::Index>(2 * n));
  for (std::size_t j = 0; j < n; ++j) {
    b(coord_index(j, Coord::RMinus), static_cast<Eigen::Index>(2 * j)) = 1.0;
    b(coord_index(j, Coord::LPlus), static_cast<Eigen::Index>(2 * j + 1)) = 1.0;
  }
  return Subspace(std::move(b));
}

bool Transversality::transverse(double factor) const noexcept {
  return smallest > factor * kEps * largest;
}

Transversality transversality(const Subspace& w1, const Subspace& w2) {
  if (w1.ambient_dimension() != w2.ambient_dimension() ||
      w1.dimension() + w2.dimension() != w1.ambient_dimension()) {
    fail(ErrorCode::InvalidArgument, "subspaces are not complementary in dimension");
  }
  const auto sv = linalg::singular_value_spread(stacked(w1, w2));
  return {sv.smallest, sv.largest};
}

cplx cross_ratio_tau(const Subspace& w1, const Subspace& w2, const Subspace& w3, const Subspace& w4) {
  const Eigen::Index n = w1.ambient_dimension();
  for (const Subspace* w : {&w1, &w2, &w3, &w4}) {
    if (w->ambient_dimension() != n || 2 * w->dimension() != n) {
      fail(ErrorCode::InvalidArgument, "cross-ratio needs four half-dimensional subspaces");
    }
  }
  const Eigen::Index k = n / 2;
  const auto projection_det = [&](const Subspace& along, const char* name) {
    const Eigen::MatrixXcd split = stacked(w2, along);
    const auto sv = linalg::singular_value_spread(split);
    if (!(sv.smallest > static_cast<double>(n) * kEps * sv.largest)) {
      fail(ErrorCode::NotTransverse, std::string("W2 and ") + name + " are not transverse");
    }
    // w1 = W2 c2 + along c3; keep the W2 coordinates
    const Eigen::MatrixXcd coords = split.partialPivLu().solve(w1.basis());
    return linalg::lu_determinant(coords.topRows(k)).value;
  };
  const cplx num = projection_det(w3, "W3");
  const cplx den = projection_det(w4, "W4");
  if (den == 0.0) fail(ErrorCode::NotTransverse, "W1 projects degenerately along W4");
  return num / den;
}

Eigen::MatrixXcd m_matrix(const SpectralParameter& sp, const Localization& loc,
                          std::span<const double> positions, std::span<const double> strengths) {
  check_lengths(loc, positions, strengths);
  const std::size_t n = loc.size();
  std::vector<Eigen::Matrix2cd> nm;
  nm.reserve(n);
  for (std::size_t j = 0; j < n; ++j) nm.push_back(n_matrix(sp, loc[j], positions[j], strengths[j]));

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(2 * n),
                                              static_cast<Eigen::Index>(2 * n));
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const cplx w = gap_factor(sp, loc, j);
    const auto r = static_cast<Eigen::Index>(2 * j);
    // Q_j(V_{j+1}): first row (-w gamma_{j+1}, -w delta_{j+1})
    m(r, r + 2) = -w * nm[j + 1](1, 0);
    m(r, r + 3) = -w * nm[j + 1](1, 1);
    // T_j(V_j): second row (-w alpha_j, -w beta_j)
    m(r + 3, r) = -w * nm[j](0, 0);
    m(r + 3, r + 1) = -w * nm[j](0, 1);
  }
  return m;
}

cplx m0_determinant(const SpectralParameter& sp, const Localization& loc) {
  std::vector<double> centres;
  for (const auto& s : loc.intervals()) centres.push_back(0.5 * (s.left + s.right));
  const std::vector<double> zeros(loc.size(), 0.0);
  Eigen::MatrixXcd m0 = m_matrix(sp, loc, centres, zeros);
  m0 += Eigen::MatrixXcd::Identity(m0.rows(), m0.cols());
  return linalg::lu_determinant(m0).value;
}

cplx tau_via_m(const SpectralParameter& sp, const Localization& loc,
               std::span<const double> positions, std::span<const double> strengths) {
  Eigen::MatrixXcd mv = m_matrix(sp, loc, positions, strengths);
  mv += Eigen::MatrixXcd::Identity(mv.rows(), mv.cols());
  const auto num = linalg::lu_determinant(mv);
  if (num.singular()) {
    fail(ErrorCode::NotTransverse, "det(1 + M) vanishes: interior and exterior spaces intersect");
  }
  const cplx den = m0_determinant(sp, loc);
  return num.value / den;
}

cplx tau_via_m(const SpectralParameter& sp, const Localization& loc, const PointInteractionConfig& cfg) {
  const auto v = all_strengths(cfg);
  return tau_via_m(sp, loc, cfg.positions(), v);
}

Eigen::MatrixXcd collapsed_matrix(const SpectralParameter& sp, const PointInteractionConfig& cfg) {
  cfg.check_extension(sp);
  const std::size_t n = cfg.size();
  const auto dim = static_cast<Eigen::Index>(2 * n);
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Identity(dim, dim);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const cplx e = std::exp(-sp.m() * (cfg.position(j + 1) - cfg.position(j)));
    const cplx x_here = reduced_strength(cfg.strength(j), sp);
    const cplx x_next = reduced_strength(cfg.strength(j + 1), sp);
    const auto r = static_cast<Eigen::Index>(2 * j);
    const cplx q = e / (1.0 + x_next);
    t(r, r + 2) = -q;
    t(r, r + 3) = q * x_next;
    const cplx tt = e / (1.0 + x_here);
    t(r + 3, r) = tt * x_here;
    t(r + 3, r + 1) = -tt;
  }
  return t;
}

cplx tau_collapsed(const SpectralParameter& sp, const PointInteractionConfig& cfg) {
  return linalg::lu_determinant(collapsed_matrix(sp, cfg)).value;
}

FinCheck fin_check(const SpectralParameter& sp, const PointInteractionConfig& cfg) {
  const cplx t = tau_collapsed(sp, cfg);
  cplx one_points(1.0, 0.0);
  for (double v : cfg.strengths()) one_points *= greenfn::one_point(v, sp);
  const cplx ratio = greenfn::correlator_det(sp, cfg) / one_points;
  return {t, 1.0 / (ratio * ratio)};
}

}  // namespace pointint::tau
