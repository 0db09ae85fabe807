#include <doctest.h>

#include <cmath>

#include "isocap/measure.hpp"
#include "isocap/nfunction.hpp"
#include "isocap/profiles.hpp"
#include "isocap/semigroup.hpp"
#include "oracles.hpp"

using namespace isocap;
using oracles::want;

namespace {
SemigroupParams quick(int n = 1201, double dt = 2e-3, double theta = 0.5) {
  return SemigroupParams{n, dt, theta};
}
}  // namespace

TEST_CASE("curvature kernel closed forms") {
  CHECK(K_const(1.0, 0.5) == doctest::Approx(want("K_1_05")).epsilon(1e-14));
  CHECK(K_const(0.0, 0.3) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(K_const(std::numeric_limits<double>::infinity(), 0.3) == 0.0);
  CHECK(inv_sqrt_K_integral(0.0, 0.5) ==
        doctest::Approx(want("dual_l1_coeff_kappa0_t05")).epsilon(1e-12));
  CHECK(inv_sqrt_K_integral(0.0, 0.18) == doctest::Approx(0.6).epsilon(1e-12));
  // kappa > 0 shrinks K, so the integral of K^{-1/2} grows.
  CHECK(inv_sqrt_K_integral(1.0, 0.5) > inv_sqrt_K_integral(0.0, 0.5));
  CHECK(K_power_integral(0.0, 0.5, 1.0) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(K_power_integral(0.0, 0.5, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("spectral gaps of the two exactly solvable measures") {
  SemigroupSolver ou(ModelMeasure1D::make_gaussian(), quick(2001));
  CHECK(ou.spectral_gap() == doctest::Approx(1.0).epsilon(2e-4));
  SemigroupSolver uni(ModelMeasure1D::make_uniform(0.0, 2.0), quick(2001));
  CHECK(uni.spectral_gap() == doctest::Approx(want("lambda1_uniform")).epsilon(1e-5));
}

TEST_CASE("semigroup axioms hold for several measures") {
  for (auto mu : {ModelMeasure1D::make_gaussian(), ModelMeasure1D::make_uniform(-1.0, 1.0),
                  ModelMeasure1D::make_double_well()}) {
    SemigroupSolver S(mu, quick());
    auto rep = verify_semigroup_axioms(S);
    CHECK(rep.verdict() == "pass");
  }
}

TEST_CASE("evolution rounds to whole steps") {
  SemigroupSolver S(ModelMeasure1D::make_uniform(0.0, 1.0), quick(301, 0.02));
  auto f0 = S.project([](double x) { return x; });
  auto r = S.evolve_detail(f0, 0.05);
  CHECK(r.steps == 3);
  CHECK(r.t_effective == doctest::Approx(0.06).epsilon(1e-14));
  auto r0 = S.evolve_detail(f0, 0.0);
  CHECK(r0.steps == 0);
  CHECK(S.integrate(r.f) == doctest::Approx(S.integrate(f0)).epsilon(1e-12));
}

TEST_CASE("ornstein-uhlenbeck variance identity") {
  SemigroupSolver S(ModelMeasure1D::make_gaussian(), quick(2001, 1e-3));
  auto f0 = S.project([](double x) { return x; });
  double t = 0.5;
  auto pt = S.evolve(f0, t);
  // P_t x = e^{-t} x, so the L2 norm contracts by e^{-t}.
  CHECK(S.lq_norm(pt, 2.0) == doctest::Approx(std::exp(-t)).epsilon(1e-4));
  // Variance identity P_t(x^2) - (P_t x)^2 = 1 - e^{-2t} at the origin node.
  auto sq = S.project([](double x) { return x * x; });
  auto pt2 = S.evolve(sq, t);
  int mid = int(S.grid().size()) / 2;
  CHECK(pt2[mid] - pt[mid] * pt[mid] ==
        doctest::Approx(-std::expm1(-2.0 * t)).epsilon(1e-3));
}

TEST_CASE("gradient estimate verification on the gaussian") {
  SemigroupSolver S(ModelMeasure1D::make_gaussian(), quick(2001, 1e-3));
  auto rep = verify_gradient_estimate(S, [](double x) { return x; }, 0.5);
  CHECK(rep.verdict() == "pass");
}

TEST_CASE("l1 commutation verification on the gaussian") {
  SemigroupSolver S(ModelMeasure1D::make_gaussian(), quick(2001, 1e-3));
  Fn1 ind = mollified_tail_indicator(S.measure(), 0.3, 3.0 * S.cell_width());
  auto rep = verify_dual_l1_commutation(S, ind, 0.25);
  CHECK(rep.verdict() == "pass");
}

TEST_CASE("decay verification refuses unverified constants") {
  SemigroupSolver S(ModelMeasure1D::make_gaussian(), quick());
  auto N = NFunction::power(2.0);
  VerifiedConstant bogus{0.5, false, "made up"};
  Fn1 f0 = centered(S, mollified_tail_indicator(S.measure(), 0.5, 3.0 * S.cell_width()));
  CHECK_THROWS_AS((void)verify_decay_high_q(S, N, 2.0, bogus, f0, {0.0, 0.1}),
                  std::invalid_argument);
  // Non-centered data is rejected as well.
  auto D = decay_constant_from_capacity(S.measure(), N, 2.0);
  REQUIRE(D.verified);
  CHECK_THROWS_AS(
      (void)verify_decay_high_q(S, N, 2.0, D, [](double) { return 1.0; }, {0.0, 0.1}),
      std::invalid_argument);
}

TEST_CASE("decay verification passes with the capacity constant") {
  SemigroupSolver S(ModelMeasure1D::make_gaussian(), quick(1601, 1e-3));
  auto N = NFunction::power(2.0);
  auto D = decay_constant_from_capacity(S.measure(), N, 2.0);
  REQUIRE(D.verified);
  CHECK(D.value > 0.0);
  Fn1 f0 = centered(S, mollified_tail_indicator(S.measure(), 0.5, 3.0 * S.cell_width()));
  auto rep = verify_decay_high_q(S, N, 2.0, D, f0, {0.0, 0.5, 1.0});
  CHECK(rep.verdict() == "pass");
}

TEST_CASE("mollified indicator integrates to its mass") {
  auto mu = ModelMeasure1D::make_gaussian();
  Fn1 ind = mollified_tail_indicator(mu, 0.3, 0.01);
  double mass = mu.expectation_of(ind);
  CHECK(mass == doctest::Approx(0.3).epsilon(5e-3));
  CHECK(ind(mu.x_hi()) == doctest::Approx(1.0));
  CHECK(ind(mu.x_lo()) == doctest::Approx(0.0));
}

TEST_CASE("heat flow lower bound respects the profile") {
  SemigroupSolver S(ModelMeasure1D::make_gaussian(), quick(1601, 1e-3));
  auto r = isoperimetric_via_semigroup_detail(S, 0.5, 0.2);
  CHECK(r.identity_gap < 1e-12);
  CHECK(r.lower_bound > 0.0);
  CHECK(r.lower_bound <= iso_profile(S.measure(), 0.5) * (1.0 + 1e-9));
  // Shorter flow times sharpen the bound.
  auto r2 = isoperimetric_via_semigroup_detail(S, 0.5, 0.05);
  CHECK(r2.lower_bound >= r.lower_bound * (1.0 - 1e-9));
}

TEST_CASE("heat flow bound rejects non-semi-convex measures") {
  SemigroupSolver S(ModelMeasure1D::make_power_alpha(0.5), quick(801));
  CHECK_THROWS_AS((void)isoperimetric_via_semigroup(S, 0.5, 0.1), std::invalid_argument);
}
