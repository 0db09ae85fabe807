#include <doctest.h>

#include <cmath>

#include "isocap/measure.hpp"
#include "isocap/nfunction.hpp"
#include "isocap/orlicz.hpp"
#include "oracles.hpp"

using namespace isocap;
using oracles::want;

TEST_CASE("power N-function basics") {
  auto N = NFunction::power(2.5);
  CHECK(N(2.0) == doctest::Approx(std::pow(2.0, 2.5)).epsilon(1e-14));
  CHECK(N.inverse(N(0.7)) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(N.adjoint(0.1) == doctest::Approx(std::pow(0.1, 1.0 / 2.5)).epsilon(1e-12));
  CHECK(N.adjoint(0.0) == 0.0);
  CHECK(N.is_young());
  CHECK(N.qmono(2.5));
  CHECK(N.qmono(2.0));        // N(t)^{1/2}/t = t^{1/4} nondecreasing
  CHECK_FALSE(NFunction::power(2.0).qmono(3.0));
  CHECK_THROWS_AS(NFunction::power(0.5), std::invalid_argument);
}

TEST_CASE("phi_q N-function against bisection oracle") {
  auto N = NFunction::phi_q(2.0);
  CHECK(N(1.5) == doctest::Approx(std::pow(1.5, 2.0) * std::log1p(std::pow(1.5, 2.0))));
  for (double y : {1e-6, 0.01, 1.0, 50.0, 1e6})
    CHECK(N.inverse(y) == doctest::Approx(oracles::phi_q_inverse_bisect(y, 2.0)).epsilon(1e-10));
  CHECK(N.adjoint(0.1) == doctest::Approx(want("phi2_adjoint_01")).epsilon(1e-12));
  CHECK(N.qmono(2.0));
  CHECK(N.is_young());
}

TEST_CASE("adjoint is the tail transform") {
  // adjoint(1/N(s)) = 1/s on the strictly increasing range.
  for (auto N : {NFunction::power(1.5), NFunction::phi_q(1.3)})
    for (double s : {0.5, 1.0, 2.0, 7.0})
      CHECK(N.adjoint(1.0 / N(s)) == doctest::Approx(1.0 / s).epsilon(1e-10));
}

TEST_CASE("tabulated N-function interpolates and extrapolates") {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i <= 40; ++i) {
    double t = std::pow(10.0, -4.0 + 8.0 * i / 40.0);
    pts.push_back({t, t * t});
  }
  auto N = NFunction::from_table(pts);
  CHECK(N(0.03) == doctest::Approx(0.0009).epsilon(1e-10));
  CHECK(N(3e5) == doctest::Approx(9e10).epsilon(1e-8));  // end-slope extrapolation
  CHECK(N.inverse(4.0) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(N.qmono(2.0));
}

TEST_CASE("luxemburg norm equals L2 norm for N = t^2") {
  auto mu = ModelMeasure1D::make_gaussian();
  auto N = NFunction::power(2.0);
  auto f = mu.sample([](double x) { return x + 0.3 * std::sin(x); });
  CHECK(orlicz_norm(mu, f, N) == doctest::Approx(mu.lq_norm(f, 2.0)).epsilon(1e-10));
}

TEST_CASE("luxemburg norm against independent bisection") {
  auto mu = ModelMeasure1D::make_gaussian();
  auto f = mu.sample([](double x) { return std::abs(x) + 0.1 * x * x; });
  for (auto N : {NFunction::phi_q(2.0), NFunction::power(1.5)}) {
    double lib = orlicz_norm(mu, f, N);
    double ref = oracles::luxemburg_bisect(f, mu.weights(), [&](double t) { return N(t); });
    CHECK(lib == doctest::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("luxemburg norm is positively homogeneous") {
  auto mu = ModelMeasure1D::make_double_well();
  auto N = NFunction::phi_q(1.5);
  auto f = mu.sample([](double x) { return std::sin(3.0 * x); });
  GridFunction g = f;
  for (auto& v : g) v *= 2.5;
  CHECK(orlicz_norm(mu, g, N) == doctest::Approx(2.5 * orlicz_norm(mu, f, N)).epsilon(1e-10));
  GridFunction zero(f.size(), 0.0);
  CHECK(orlicz_norm(mu, zero, N) == 0.0);
}

TEST_CASE("weak norm lower-bounds the strong norm and matches the oracle") {
  auto mu = ModelMeasure1D::make_gaussian();
  auto N = NFunction::power(2.0);
  auto f = mu.sample([](double x) { return std::abs(x); });
  double weak = weak_orlicz_norm(mu, f, N);
  CHECK(weak == doctest::Approx(want("gauss_absx_weak_l2")).epsilon(2e-3));
  CHECK(weak <= orlicz_norm(mu, f, N) * (1.0 + 1e-9));
}

TEST_CASE("indicator dual norm") {
  auto N = NFunction::phi_q(2.0);
  CHECK(dual_norm_indicator(0.3, N) == doctest::Approx(want("phi2_dual_ind_03")).epsilon(1e-12));
  // a * N^{-1}(1/a) for the power case is a^{1-1/q}.
  CHECK(dual_norm_indicator(0.25, NFunction::power(2.0)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS((void)dual_norm_indicator(0.0, N), std::invalid_argument);
}

TEST_CASE("layer-cake dual upper bound is tight on indicators") {
  auto mu = ModelMeasure1D::make_gaussian();
  auto N = NFunction::power(2.0);
  double x07 = mu.quantile(0.7);
  auto ind = mu.sample([&](double x) { return x >= x07 ? 1.0 : 0.0; });
  double mass = mu.integral_of(ind);
  double upper = dual_norm_upper(mu, ind, N);
  CHECK(upper >= dual_norm_indicator(mass, N) * (1.0 - 1e-9));
  CHECK(upper <= dual_norm_indicator(mass, N) * (1.0 + 1e-6));
  // The pairing against any unit-norm g stays below the upper bound.
  auto g = mu.sample([](double x) { return x; });
  double ng = orlicz_norm(mu, g, N);
  double pairing = 0.0;
  for (size_t i = 0; i < g.size(); ++i) pairing += mu.weights()[i] * (g[i] / ng) * ind[i];
  CHECK(pairing <= upper + 1e-12);
}

TEST_CASE("recentering ratio stays below two") {
  auto mu = ModelMeasure1D::make_gaussian();
  auto N = NFunction::phi_q(2.0);
  for (auto f : {Fn1([](double x) { return x; }), Fn1([](double x) { return x * x * x + x; }),
                 Fn1([](double x) { return std::exp(-x) * std::sin(2.0 * x); })}) {
    double r = recentering_ratio(mu, f, N);
    CHECK(r > 0.0);
    CHECK(r <= 2.0 + 1e-9);
  }
  CHECK_THROWS_AS((void)recentering_ratio(mu, [](double) { return 1.0; }, N),
                  std::invalid_argument);
}
