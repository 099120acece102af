#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pointint/error.hpp"
#include "pointint/greenfn.hpp"
#include "test_util.hpp"

using namespace pointint;
using namespace pointint::greenfn;
using testutil::rel;

namespace {

PointInteractionConfig make(std::vector<PointInteraction> pts) { return PointInteractionConfig(std::move(pts)); }

// (1/pi) int_0^K cos(kx)/(1+k^2) dk with K on a zero of sin(Kx), composite Simpson
double fourier_green(double x) {
  const double upper = 2000.0 * std::numbers::pi / x;
  const int n = 2'000'000;
  const double h = upper / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double k = i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * std::cos(k * x) / (1.0 + k * k);
  }
  return s * h / 3.0 / std::numbers::pi;
}

}  // namespace

TEST_CASE("free_green examples") {
  const SpectralParameter one(1.0);
  CHECK(free_green(one, 0.0, 0.0).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(free_green(one, 0.0, std::log(2.0)).real() == doctest::Approx(0.25).epsilon(1e-15));
  const SpectralParameter c(cplx(2.0, 1.0));
  CHECK(free_green(c, 1.0, 3.0) == free_green(c, 3.0, 1.0));
}

TEST_CASE("free_green matches a Fourier quadrature of the Green function") {
  const double q = fourier_green(std::log(2.0));
  CHECK(std::abs(q - 0.25) < 1e-8);
  CHECK(std::abs(q - free_green(SpectralParameter(1.0), 0.0, std::log(2.0)).real()) < 1e-8);
}

TEST_CASE("u_matrix examples") {
  const SpectralParameter one(1.0);
  const auto u1 = u_matrix(one, make({{0.0, 2.0}}));
  REQUIRE(u1.rows() == 1);
  CHECK(std::abs(u1(0, 0) - 1.0) < 1e-15);

  const auto u2 = u_matrix(one, make({{0.0, 2.0}, {std::log(2.0), 2.0}}));
  CHECK(std::abs(u2(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(u2(1, 1) - 1.0) < 1e-15);
  CHECK(std::abs(u2(0, 1) - 0.25) < 1e-15);
  CHECK(u2(0, 1) == u2(1, 0));

  const SpectralParameter c(cplx(0.7, 0.4));
  const auto u3 = u_matrix(c, make({{-1.0, 0.3}, {0.2, -0.5}, {1.7, 4.0}}));
  CHECK((u3 - u3.transpose()).norm() == 0.0);
}

TEST_CASE("resolvent_kernel examples") {
  const SpectralParameter one(1.0);
  const auto cfg = make({{0.0, 2.0}});
  CHECK(std::abs(resolvent_kernel(one, cfg, 0.0, 0.0) - 0.25) < 1e-15);
  const double expected = std::exp(-5.0) / 2.0 - std::exp(-5.0) / 4.0;
  CHECK(rel(resolvent_kernel(one, cfg, 0.0, 5.0), expected) < 1e-14);

  const auto dropped = make({{0.0, 0.0}, {1.0, 0.0}});
  CHECK(dropped.empty());
  CHECK(resolvent_kernel(one, dropped, 0.3, -0.8) == free_green(one, 0.3, -0.8));
}

TEST_CASE("resolvent_kernel_general examples") {
  const SpectralParameter one(1.0);
  const std::vector<double> pos{-0.4, 0.5, 1.3};
  const std::vector<double> v{1.5, 0.7, 3.0};
  const auto b = HermitianExtensionMatrix::diagonal_from_strengths(v);
  const PointInteractionConfig cfg(pos, v);
  for (double x : {-1.0, 0.0, 0.9}) {
    for (double y : {-0.3, 1.3, 2.0}) {
      CHECK(rel(resolvent_kernel_general(one, pos, b, x, y), resolvent_kernel(one, cfg, x, y)) < 1e-14);
    }
  }

  const std::vector<double> origin{0.0};
  const HermitianExtensionMatrix b1(Eigen::MatrixXcd::Constant(1, 1, 1.0));
  CHECK(std::abs(resolvent_kernel_general(one, origin, b1, 0.0, 0.0) - 1.0 / 3.0) < 1e-15);

  const HermitianExtensionMatrix huge(Eigen::MatrixXcd::Constant(1, 1, 1e14));
  CHECK(rel(resolvent_kernel_general(one, origin, huge, 0.2, 0.7), free_green(one, 0.2, 0.7)) < 1e-12);

  Eigen::MatrixXcd off(2, 2);
  off << 1.0, cplx(0.1, 0.2), cplx(0.1, 0.2), 1.0;
  CHECK_THROWS_AS(HermitianExtensionMatrix{off}, Error);
}

TEST_CASE("correlator_det examples") {
  const SpectralParameter one(1.0);
  CHECK(std::abs(correlator_det(one, make({{0.0, 2.0}})) - 1.0 / std::sqrt(2.0)) < 1e-15);
  const auto two = make({{0.0, 2.0}, {std::log(2.0), 2.0}});
  CHECK(std::abs(weinstein_aronszajn_matrix(one, two).determinant() - 3.75) < 1e-14);
  CHECK(std::abs(correlator_det(one, two) - 1.0 / std::sqrt(3.75)) < 1e-15);
  CHECK(std::abs(correlator_det(one, two).real() - 0.51639778) < 1e-8);
  CHECK(correlator_det(one, make({{0.0, 0.0}})) == cplx(1.0, 0.0));
}

TEST_CASE("resolvent_kernel is symmetric") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const SpectralParameter sp(cplx(1.3, 0.6));
  const auto cfg = make({{-1.1, 0.8}, {0.0, -0.4}, {0.9, 2.5}, {1.6, 1.1}});
  for (int i = 0; i < 50; ++i) {
    const double x = u(rng);
    const double y = u(rng);
    CHECK(rel(resolvent_kernel(sp, cfg, x, y), resolvent_kernel(sp, cfg, y, x)) < 1e-12);
  }
}

TEST_CASE("resolvent_kernel satisfies the defect equation") {
  const SpectralParameter sp(cplx(0.9, 0.3));
  const auto cfg = make({{-0.5, 1.7}, {0.4, 0.6}, {1.2, 3.1}});
  const double y = 0.1;
  const auto g = [&](double x) { return resolvent_kernel(sp, cfg, x, y); };

  for (double x : {-1.3, -0.2, 0.8, 2.0}) {
    const double h = 1e-3;
    const cplx d2 = (g(x + h) - 2.0 * g(x) + g(x - h)) / (h * h);
    CHECK(rel(d2, sp.m() * sp.m() * g(x)) < 1e-6);
  }
  for (std::size_t j = 0; j < cfg.size(); ++j) {
    const double a = cfg.position(j);
    const double h = 1e-5;
    const cplx right = (-3.0 * g(a) + 4.0 * g(a + h) - g(a + 2 * h)) / (2 * h);
    const cplx left = (3.0 * g(a) - 4.0 * g(a - h) + g(a - 2 * h)) / (2 * h);
    CHECK(rel(right - left, cfg.strength(j) * g(a)) < 1e-8);
  }
}

TEST_CASE("Weinstein-Aronszajn consistency") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> v(-1.5, 4.0);
  std::uniform_real_distribution<double> gap(0.2, 2.0);
  const SpectralParameter sp(cplx(1.1, 0.2));
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<PointInteraction> pts;
    double a = 0.0;
    for (int j = 0; j < 4; ++j) {
      double s = v(rng);
      if (std::abs(s) < 0.1) s = 0.5;
      pts.push_back({a, s});
      a += gap(rng);
    }
    const auto cfg = make(pts);
    const cplx wa = weinstein_aronszajn_matrix(sp, cfg).determinant();
    CHECK(rel(wa, weinstein_aronszajn_via_u(sp, cfg)) < 1e-12);
    if (wa.real() > 0.0 || std::abs(wa.imag()) > 1e-6) {
      const cplx c = correlator_det(sp, cfg);
      CHECK(rel(1.0 / (c * c), wa) < 1e-12);
    }
  }
}

TEST_CASE("correlator_det factorizes at large separation") {
  const SpectralParameter sp(1.5);
  const double sep = 40.0 / 1.5;
  const auto cfg = make({{0.0, 2.0}, {sep, 0.7}, {2 * sep, 5.0}});
  const cplx product = one_point(2.0, sp) * one_point(0.7, sp) * one_point(5.0, sp);
  CHECK(rel(correlator_det(sp, cfg), product) < 1e-10);
}

TEST_CASE("greenfn error paths") {
  CHECK_THROWS_AS(SpectralParameter(0.0), Error);
  CHECK_THROWS_AS(SpectralParameter(cplx(-1.0, 2.0)), Error);
  CHECK_THROWS_AS(make({{0.0, 1.0}, {0.0, 2.0}}), Error);
  CHECK_THROWS_AS(make({{std::nan(""), 1.0}}), Error);

  const SpectralParameter one(1.0);
  try {
    resolvent_kernel(one, make({{0.0, -2.0}}), 0.0, 0.0);
    FAIL("expected SingularExtension");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularExtension);
  }
  try {
    correlator_det(one, make({{0.0, -3.0}}));
    FAIL("expected BranchAmbiguity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BranchAmbiguity);
  }
}
