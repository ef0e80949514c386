#include <doctest.h>

#include <cmath>
#include <random>

#include "farfield/cutoff.hpp"
#include "farfield/oracle.hpp"
#include "test_helpers.hpp"

using namespace farfield;
using namespace farfield::testing;

TEST_CASE("eval_dense: named values and linearity") {
  const AsymExpansion inv_r = single_term(2, 1, 0, SphereFn::constant(2, 1.0));
  const double x10[2] = {10.0, 0.0};
  CHECK(eval_dense(inv_r, x10) == doctest::Approx(0.1).epsilon(1e-14));

  const AsymExpansion logr_r = single_term(2, 1, 1, SphereFn::constant(2, 1.0));
  const double xe[2] = {std::exp(1.0), 0.0};
  CHECK(eval_dense(logr_r, xe) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));

  std::mt19937_64 rng(2);
  const AsymExpansion u = random_expansion(rng, 2, 3, 4);
  const AsymExpansion v = random_expansion(rng, 2, 3, 4);
  const double p[2] = {7.0, -3.0};
  CHECK(eval_dense(add(u, scale(v, 2.5)), p) ==
        doctest::Approx(eval_dense(u, p) + 2.5 * eval_dense(v, p)).epsilon(1e-12));

  // inside the cutoff hole everything vanishes
  const double origin[2] = {0.3, 0.2};
  CHECK(eval_dense(u, origin) == 0.0);
}

TEST_CASE("fd_laplacian: quadratic and harmonic checks") {
  auto quad = [](const double* x) { return x[0] * x[0] + x[1] * x[1]; };
  const double p[2] = {3.0, 1.0};
  const FdResult r = fd_laplacian(2, quad, p, 1e-3);
  CHECK(r.value == doctest::Approx(4.0).epsilon(1e-8));

  auto logr = [](const double* x) {
    return 0.5 * std::log(x[0] * x[0] + x[1] * x[1]);
  };
  const double far[2] = {30.0, 40.0};  // r=50
  const FdResult h = fd_laplacian(2, logr, far, 0.05);
  CHECK(std::abs(h.value) < 1e-8);

  auto invr3 = [](const double* x) {
    const double rr = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    return 1.0 / rr;
  };
  const double far3[3] = {20.0, 10.0, 5.0};
  CHECK(std::abs(fd_laplacian(3, invr3, far3, 0.05).value) < 1e-9);
}

TEST_CASE("fd_laplacian matches the symbolic laplacian on expansions") {
  const AsymExpansion u = single_term(2, 1, 1, cos_fn(2));
  const AsymExpansion lap = laplacian(u);
  auto f = [&](const double* x) { return eval_dense(u, x); };
  for (double r : {50.0, 100.0, 200.0}) {
    const double x[2] = {r * std::cos(0.3), r * std::sin(0.3)};
    const double sym = eval_dense(lap, x);
    const double fd = fd_laplacian_stencil(2, f, x, r / 400.0);
    CHECK(std::abs(fd - sym) <= 1e-4 * std::abs(sym));
  }
}

TEST_CASE("fd_laplacian convergence order is ~2") {
  std::mt19937_64 rng(4);
  const AsymExpansion u = random_expansion(rng, 2, 4, 6, 3, 0);
  const AsymExpansion lap = laplacian(u);
  auto f = [&](const double* x) { return eval_dense(u, x); };
  const double r = 100.0;
  const double x[2] = {r * std::cos(1.1), r * std::sin(1.1)};
  const double sym = eval_dense(lap, x);
  const double h = r / 400.0;
  const double e1 = std::abs(fd_laplacian_stencil(2, f, x, h) - sym);
  const double e2 = std::abs(fd_laplacian_stencil(2, f, x, h / 2.0) - sym);
  const double order = std::log2(e1 / e2);
  CHECK(order > 1.8);
  CHECK(order < 2.2);
}

TEST_CASE("fd_jacobian: linear map recovered exactly") {
  auto lin = [](const double* x, double* out) {
    out[0] = 2.0 * x[0] - 3.0 * x[1];
    out[1] = 0.5 * x[0] + 4.0 * x[1];
  };
  const double p[2] = {1.0, 2.0};
  const FdJacobian J = fd_jacobian(2, lin, p, 1e-3);
  CHECK(J.at(0, 0, 2) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(J.at(0, 1, 2) == doctest::Approx(-3.0).epsilon(1e-10));
  CHECK(J.at(1, 0, 2) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(J.at(1, 1, 2) == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(matrix_det(J.m, 2) == doctest::Approx(9.5).epsilon(1e-9));
}

TEST_CASE("stencil domain guard") {
  auto f = [](const double* x) { return x[0]; };
  const double p[2] = {9.9, 0.0};
  CHECK_THROWS_AS((void)fd_laplacian(2, f, p, 0.1, 10.0), StencilOutOfDomain);
}

TEST_CASE("CompactField: exact integral of a polynomial bump") {
  // b(r) = (1-r^2)^3 inside the unit disk: integral = pi/4
  auto bump = [](const double* x) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    if (r2 >= 1.0) return 0.0;
    const double t = 1.0 - r2;
    return t * t * t;
  };
  const CompactField g = sample_compact_field(2, bump, 1.0);
  CHECK(g.integral() == doctest::Approx(kPi / 4.0).epsilon(1e-12));

  // d=3: ball integral 4 pi int_0^1 (1-r^2)^3 r^2 dr = 4 pi * 16/315
  auto bump3 = [](const double* x) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    if (r2 >= 1.0) return 0.0;
    const double t = 1.0 - r2;
    return t * t * t;
  };
  const CompactField g3 = sample_compact_field(3, bump3, 1.0, {}, 64, 32);
  CHECK(g3.integral() == doctest::Approx(64.0 * kPi / 315.0).epsilon(1e-11));
}

TEST_CASE("moment: exact values and refinement estimate") {
  auto field = [](const double* x) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    if (r2 >= 1.0) return 0.0;
    const double t = 1.0 - r2;
    return t * t * x[0];  // odd in x
  };
  const CompactField g = sample_compact_field(2, field, 1.0);
  const MomentResult m0 = moment(g, Polynomial::one());
  CHECK(std::abs(m0.value) < 1e-13);
  // int x * field = int x^2 (1-r^2)^2 = pi int_0^1 (1-r^2)^2 r^3 dr = pi/24
  const MomentResult m1 = moment(g, Polynomial::coordinate(1));
  CHECK(m1.value == doctest::Approx(kPi / 24.0).epsilon(1e-12));
  CHECK(m1.error_estimate < 1e-10);
  CHECK_THROWS((void)moment(g, Polynomial::monomial(3, 2, 0, 1.0)));  // degree 5
}

TEST_CASE("integrate_flow: translation has unit determinant") {
  auto u = [](const double*, double* out) {
    out[0] = 0.7;
    out[1] = -0.3;
  };
  const double x0[2] = {1.0, 1.0};
  const FlowResult r = integrate_flow(2, u, x0);
  CHECK(r.max_abs_det_minus_1 < 1e-11);
  CHECK(r.trajectory.back()[0] == doctest::Approx(1.7).epsilon(1e-12));
  CHECK(r.trajectory.back()[1] == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("integrate_flow: rotation field is volume preserving") {
  // u = (-y, x)/r^2, circular trajectories
  VectorExpansion u(2);
  u[0] = single_term(2, 1, 0, sin_fn(1, -1.0));
  u[1] = single_term(2, 1, 0, cos_fn(1));
  const double x0[2] = {2.5, 0.0};
  const FlowResult r = integrate_flow(2, flow_field(u), x0);
  CHECK(r.max_abs_det_minus_1 <= 1e-6);
  const auto& last = r.trajectory.back();
  CHECK(std::hypot(last[0], last[1]) == doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("integrate_flow: determinant drift decreases ~16x under halving") {
  // strong rotational field: RK4 truncation well above the fd noise
  auto u = [](const double* x, double* out) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    out[0] = -8.0 * x[1] / r2;
    out[1] = 8.0 * x[0] / r2;
  };
  const double x0[2] = {2.0, 0.0};
  FlowOptions o1;
  o1.step = 2e-2;
  FlowOptions o2;
  o2.step = 1e-2;
  const double e1 = integrate_flow(2, u, x0, o1).max_abs_det_minus_1;
  const double e2 = integrate_flow(2, u, x0, o2).max_abs_det_minus_1;
  CHECK(e2 > 1e-12);  // above the fd floor
  const double ratio = e1 / e2;
  CHECK(ratio > 8.0);
  CHECK(ratio < 40.0);
}

TEST_CASE("integrate_flow: d=3 rigid rotation preserves volume") {
  auto u = [](const double* x, double* out) {
    out[0] = -0.8 * x[1];
    out[1] = 0.8 * x[0];
    out[2] = 0.0;
  };
  const double x0[3] = {2.0, 0.0, 1.0};
  const FlowResult r = integrate_flow(3, u, x0);
  CHECK(r.max_abs_det_minus_1 <= 1e-8);
  CHECK(std::hypot(r.trajectory.back()[0], r.trajectory.back()[1]) ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK(r.trajectory.back()[2] == doctest::Approx(1.0));
}

TEST_CASE("integrate_flow: unstable fields raise StepUnstable") {
  auto u = [](const double* x, double* out) {
    out[0] = x[0] * x[0] * x[0];  // finite-time blowup
    out[1] = 0.0;
  };
  const double x0[2] = {3.0, 0.0};
  FlowOptions o;
  o.t_final = 5.0;
  o.step = 0.5;
  o.max_halvings = 1;
  CHECK_THROWS_AS((void)integrate_flow(2, u, x0, o), StepUnstable);
}

TEST_CASE("cutoff ramp is C^2 with the documented plateau") {
  CHECK(cutoff(0.5) == 0.0);
  CHECK(cutoff(2.5) == 1.0);
  CHECK(cutoff(1.5) == doctest::Approx(0.5));
  const double h = 1e-6;
  for (double r : {1.2, 1.5, 1.8}) {
    CHECK((cutoff(r + h) - cutoff(r - h)) / (2 * h) ==
          doctest::Approx(cutoff_d1(r)).epsilon(1e-7));
    CHECK((cutoff_d1(r + h) - cutoff_d1(r - h)) / (2 * h) ==
          doctest::Approx(cutoff_d2(r)).epsilon(1e-6));
  }
}
