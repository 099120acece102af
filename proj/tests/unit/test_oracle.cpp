#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "pointint/bogolyubov.hpp"
#include "pointint/error.hpp"
#include "pointint/greenfn.hpp"
#include "pointint/oracle.hpp"
#include "test_util.hpp"

using namespace pointint;
using namespace pointint::oracle;
using bogolyubov::BogolyubovParams;
using testutil::rel;

namespace {

using Mat = Eigen::MatrixXcd;

double block_error(const Mat& a, const Mat& b, int n) {
  return (a.topLeftCorner(n, n) - b.topLeftCorner(n, n)).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("FockTruncation ladder matrices") {
  const FockTruncation t(30);
  const auto& ad = t.creation();
  for (int k = 0; k + 1 < 30; ++k) CHECK(ad(k + 1, k) == std::sqrt(k + 1.0));
  CHECK((t.annihilation() - ad.transpose()).norm() == 0.0);
  const Eigen::MatrixXd comm = t.annihilation() * ad - ad * t.annihilation();
  CHECK((comm.topLeftCorner(29, 29) - Eigen::MatrixXd::Identity(29, 29)).cwiseAbs().maxCoeff() < 1e-13);
  CHECK_THROWS_AS(FockTruncation(1), Error);
}

TEST_CASE("transfer_green examples") {
  const SpectralParameter one(1.0);
  const PointInteractionConfig empty;
  for (double x : {-3.0, 0.0, 2.5}) {
    CHECK(rel(transfer_green(one, empty, x, 0.4), greenfn::free_green(one, x, 0.4)) < 1e-15);
  }
  const PointInteractionConfig cfg(std::vector<PointInteraction>{{0.0, 2.0}});
  CHECK(std::abs(transfer_green(one, cfg, 0.0, 0.0) - 0.25) < 1e-15);
}

TEST_CASE("transfer_green symmetry and jump conditions") {
  const SpectralParameter sp(cplx(1.4, -0.5));
  const PointInteractionConfig cfg(
      std::vector<PointInteraction>{{-1.0, 0.5}, {-0.2, 3.0}, {0.5, -0.3}, {1.9, 1.2}});
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 40; ++i) {
    const double x = u(rng);
    const double y = u(rng);
    CHECK(rel(transfer_green(sp, cfg, x, y), transfer_green(sp, cfg, y, x)) < 1e-12);
    CHECK(rel(transfer_green(sp, cfg, x, y), greenfn::resolvent_kernel(sp, cfg, x, y)) < 1e-12);
  }
  const double y = 0.9;
  const auto g = [&](double x) { return transfer_green(sp, cfg, x, y); };
  for (std::size_t j = 0; j < cfg.size(); ++j) {
    const double a = cfg.position(j);
    const double h = 1e-5;
    const cplx right = (-3.0 * g(a) + 4.0 * g(a + h) - g(a + 2 * h)) / (2 * h);
    const cplx left = (3.0 * g(a) - 4.0 * g(a - h) + g(a - 2 * h)) / (2 * h);
    CHECK(rel(right - left, cfg.strength(j) * g(a)) < 1e-8);
  }
}

TEST_CASE("transfer_green survives spans beyond the exp range") {
  const SpectralParameter sp(4.0);
  const PointInteractionConfig cfg(std::vector<PointInteraction>{{0.0, 1.0}, {150.0, 2.0}, {300.0, 0.5}});
  const cplx g = transfer_green(sp, cfg, 299.9, 300.0);
  CHECK(std::isfinite(g.real()));
  CHECK(rel(g, greenfn::resolvent_kernel(sp, cfg, 299.9, 300.0)) < 1e-12);
}

TEST_CASE("transfer_green detects the bound state") {
  // -2 delta(x) has its bound state at E = -1
  const PointInteractionConfig cfg(std::vector<PointInteraction>{{0.0, -2.0}});
  try {
    transfer_green(SpectralParameter(1.0), cfg, 0.0, 0.5);
    FAIL("expected ZeroWronskian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroWronskian);
  }
}

TEST_CASE("factor matrices match the literal series") {
  const int d = 14;
  const FockTruncation t(d);
  const Mat a = t.annihilation().cast<cplx>();
  const Mat ad = t.creation().cast<cplx>();
  const cplx mu(0.15, -0.1);
  Mat q = Mat::Zero(d, d);
  Mat ad_n = Mat::Identity(d, d), a_n = Mat::Identity(d, d);
  double fact = 1.0;
  cplx mu_n(1.0, 0.0);
  for (int n = 0; n < d; ++n) {
    q += mu_n / fact * ad_n * a_n;
    ad_n = ad_n * ad;
    a_n = a_n * a;
    mu_n *= mu;
    fact *= n + 1.0;
  }
  CHECK((q - q_factor(mu, t)).cwiseAbs().maxCoeff() < 1e-12);

  const cplx lam(0.3, 0.2);
  Mat p = Mat::Identity(d, d), term = Mat::Identity(d, d);
  for (int n = 1; n < d; ++n) {
    term = term * (lam / 2.0) * ad * ad / static_cast<double>(n);
    p += term;
  }
  CHECK((p - p_factor(lam, t)).cwiseAbs().maxCoeff() < 1e-12);
  const cplx nu(-0.4, 0.1);
  Mat r = Mat::Identity(d, d);
  term = Mat::Identity(d, d);
  for (int n = 1; n < d; ++n) {
    term = term * (nu / 2.0) * a * a / static_cast<double>(n);
    r += term;
  }
  CHECK((r - r_factor(nu, t)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("build_operator basics") {
  const FockTruncation t(40);
  CHECK((build_operator({}, t) - Mat::Identity(40, 40)).norm() == 0.0);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int i = 0; i < 10; ++i) {
    const BogolyubovParams p{cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
    const Mat op = build_operator(p, t);
    CHECK(op(0, 0) == cplx(1.0, 0.0));
    for (int k = 0; k < 10; ++k) {
      for (int l = 0; l < 10; ++l) {
        const cplx f = bogolyubov::matrix_element(k, l, p);
        CHECK(std::abs(op(k, l) - f) < 1e-10 * std::max(1.0, std::abs(f)));
      }
    }
  }
  CHECK_THROWS_AS(build_operator({}, FockTruncation(6)), Error);
}

TEST_CASE("elementary factors conjugate the ladder operators") {
  const int d = 64;
  const int keep = d - 5;
  const FockTruncation t(d);
  const Mat a = t.annihilation().cast<cplx>();
  const Mat ad = t.creation().cast<cplx>();
  const cplx lam(0.35, 0.1), mu(-0.25, 0.2), nu(0.3, -0.2);

  const Mat p = p_factor(lam, t), p_inv = p_factor(-lam, t);
  CHECK(block_error(p * a * p_inv, a - lam * ad, keep) < 1e-8);
  CHECK(block_error(p * ad * p_inv, ad, keep) < 1e-8);

  const Mat q = q_factor(mu, t);
  const Mat q_inv = q.diagonal().cwiseInverse().asDiagonal();
  CHECK(block_error(q * a * q_inv, a / (1.0 + mu), keep) < 1e-8);
  CHECK(block_error(q * ad * q_inv, (1.0 + mu) * ad, keep) < 1e-8);

  const Mat r = r_factor(nu, t), r_inv = r_factor(-nu, t);
  CHECK(block_error(r * a * r_inv, a, keep) < 1e-8);
  CHECK(block_error(r * ad * r_inv, ad + nu * a, keep) < 1e-8);
}

TEST_CASE("delta operator is the normalized exp(-V phi^2 / 2)") {
  const SpectralParameter one(1.0);
  const double v = 1.3;
  const FockTruncation big(220);
  const Eigen::MatrixXd phi = big.phi(one).real();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(phi * phi);
  const Eigen::MatrixXd expo =
      es.eigenvectors() * (-0.5 * v * es.eigenvalues().array()).exp().matrix().asDiagonal() *
      es.eigenvectors().transpose();
  const Mat op = build_operator(bogolyubov::delta_params(v, one), big) * greenfn::one_point(v, one);
  CHECK(block_error(op, expo.cast<cplx>(), 20) < 1e-10);
}

TEST_CASE("vev_product") {
  const SpectralParameter one(1.0);
  const FockTruncation t(80);
  const std::vector<bogolyubov::FieldInsertion> single{{{0.3, -0.2, 0.4}, 0.7}};
  CHECK(std::abs(vev_product(single, one, t) - 1.0) < 1e-15);

  const auto d = bogolyubov::delta_params(2.0, one);
  const std::vector<bogolyubov::FieldInsertion> two{{d, 0.0}, {d, std::log(2.0)}};
  const cplx c = vev_product(two, one, t) * std::pow(greenfn::one_point(2.0, one), 2);
  CHECK(std::abs(c - 1.0 / std::sqrt(3.75)) < 1e-12);

  const SpectralParameter sp(cplx(0.9, 0.2));
  const std::vector<bogolyubov::FieldInsertion> three{
      {{cplx(0.2, 0.1), -0.3, cplx(0.4, 0.2)}, -0.4},
      {{cplx(-0.5, 0.3), 0.2, 0.1}, 0.3},
      {{0.3, cplx(0.1, 0.1), -0.6}, 1.0}};
  CHECK(rel(vev_product(three, sp, t), bogolyubov::n_point_correlator(three, sp)) < 1e-9);
}

TEST_CASE("operator product equals c12 times the fused operator") {
  const FockTruncation t(160);
  const BogolyubovParams p1{cplx(0.2, 0.1), cplx(-0.3, 0.1), cplx(0.4, -0.2)};
  const BogolyubovParams p2{cplx(-0.3, 0.2), cplx(0.2, 0.0), cplx(0.1, 0.3)};
  const auto f = bogolyubov::fuse(p1, p2);
  const Mat prod = build_operator(p1, t) * build_operator(p2, t);
  CHECK(block_error(prod, f.c12 * build_operator(f.params, t), 12) < 1e-9);
}

TEST_CASE("converge_by_doubling") {
  const auto c = converge_by_doubling([](int d) { return cplx(1.0 + std::pow(0.5, d), 0.0); }, 64, 1e-10);
  CHECK(c.change < 1e-15);
  CHECK_THROWS_AS(converge_by_doubling([](int d) { return cplx(1.0 / d, 0.0); }, 8, 1e-10), Error);
}
