#include <doctest.h>

#include <cmath>

#include "isocap/measure.hpp"
#include "oracles.hpp"

using namespace isocap;
using oracles::want;

TEST_CASE("gaussian density and normalization") {
  auto mu = ModelMeasure1D::make_gaussian();
  CHECK(mu.density(0.0) == doctest::Approx(want("gauss_density0")).epsilon(1e-14));
  CHECK(mu.log_norm() == doctest::Approx(want("gauss_log_norm")).epsilon(1e-13));
  CHECK(mu.kappa() == 0.0);  // convex potential: zero convexity defect
  CHECK(mu.semi_convex());
  CHECK(std::abs(mu.median()) < 1e-12);
}

TEST_CASE("gaussian cdf and quantile") {
  auto mu = ModelMeasure1D::make_gaussian();
  CHECK(mu.quantile(0.75) == doctest::Approx(want("gauss_quantile_075")).epsilon(1e-10));
  CHECK(mu.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  for (double t : {0.01, 0.1, 0.3, 0.5, 0.7, 0.99})
    CHECK(mu.cdf(mu.quantile(t)) == doctest::Approx(t).epsilon(1e-10));
  CHECK_THROWS_AS((void)mu.quantile(-0.1), std::invalid_argument);
  CHECK_THROWS_AS((void)mu.quantile(1.1), std::invalid_argument);
}

TEST_CASE("p-exponential measures") {
  auto mu4 = ModelMeasure1D::make_p_exponential(4.0);
  CHECK(mu4.density(0.0) == doctest::Approx(1.0 / want("pexp4_Z")).epsilon(1e-12));
  CHECK(mu4.cdf(0.7) == doctest::Approx(want("pexp4_cdf_07")).epsilon(1e-12));

  // p = 2 is the sqrt(2)-rescaled gaussian.
  auto mu2 = ModelMeasure1D::make_p_exponential(2.0);
  auto g = ModelMeasure1D::make_gaussian();
  CHECK(mu2.quantile(0.75) == doctest::Approx(g.quantile(0.75) / std::sqrt(2.0)).epsilon(1e-9));
  CHECK(mu2.kappa() == 0.0);
}

TEST_CASE("power-alpha measure") {
  auto mu = ModelMeasure1D::make_power_alpha(0.5);
  CHECK(mu.cdf(0.5) == doctest::Approx(want("power_half_cdf_05")).epsilon(1e-12));
  CHECK(mu.quantile(0.75) == doctest::Approx(want("power_half_quantile_075")).epsilon(1e-10));
  CHECK(mu.x_lo() == doctest::Approx(-1.0));
  CHECK(mu.x_hi() == doctest::Approx(1.0));
  CHECK_FALSE(mu.semi_convex());
  CHECK(std::isinf(mu.kappa()));
}

TEST_CASE("uniform measure") {
  auto mu = ModelMeasure1D::make_uniform(-1.0, 3.0);
  CHECK(mu.density(0.0) == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(mu.cdf(1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mu.quantile(0.25) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(mu.kappa() == doctest::Approx(0.0));
  CHECK_THROWS_AS(ModelMeasure1D::make_uniform(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("double-well basics") {
  auto mu = ModelMeasure1D::make_double_well();
  CHECK(std::abs(mu.median()) < 1e-10);
  // Bimodal: density dips at the origin.
  CHECK(mu.density(0.0) < mu.density(1.0));
  CHECK(mu.kappa() > 0.0);
  for (double t : {0.05, 0.25, 0.5, 0.75})
    CHECK(mu.cdf(mu.quantile(t)) == doctest::Approx(t).epsilon(1e-9));
}

TEST_CASE("quadrature integrates to one and matches moments") {
  for (auto mu : {ModelMeasure1D::make_gaussian(), ModelMeasure1D::make_uniform(0.0, 1.0),
                  ModelMeasure1D::make_power_alpha(0.5), ModelMeasure1D::make_double_well()}) {
    auto ones = mu.sample([](double) { return 1.0; });
    CHECK(mu.integral_of(ones) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(mu.mass_defect() < ModelMeasure1D::kMassDefectTol);
  }
  auto g = ModelMeasure1D::make_gaussian();
  CHECK(g.expectation_of([](double x) { return x * x; }) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(g.expectation_of([](double x) { return x; }) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("norms and medians of sampled functions") {
  auto mu = ModelMeasure1D::make_gaussian();
  auto f = mu.sample([](double x) { return x; });
  CHECK(mu.lq_norm(f, 2.0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(mu.median_of(f)) < 2e-3);  // grid-width accuracy
  auto c = mu.sample([](double) { return 3.0; });
  CHECK(mu.sup_norm(c) == doctest::Approx(3.0));
  CHECK(mu.median_of(c) == doctest::Approx(3.0));
}

TEST_CASE("tabulated potential reproduces the gaussian") {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i <= 80; ++i) {
    double x = -8.0 + 16.0 * i / 80.0;
    pts.push_back({x, 0.5 * x * x});
  }
  auto mu = ModelMeasure1D::make_from_table(pts);
  auto g = ModelMeasure1D::make_gaussian();
  CHECK(mu.density(0.0) == doctest::Approx(g.density(0.0)).epsilon(1e-5));
  CHECK(mu.quantile(0.75) == doctest::Approx(g.quantile(0.75)).epsilon(1e-4));
  CHECK_THROWS_AS(ModelMeasure1D::make_from_table({{0.0, 0.0}, {1.0, 1.0}}),
                  std::invalid_argument);
}

TEST_CASE("truncation bookkeeping") {
  auto g = ModelMeasure1D::make_gaussian();
  CHECK(g.truncated_lo());
  CHECK(g.truncated_hi());
  CHECK(g.x_hi() < g.natural_hi());
  auto u = ModelMeasure1D::make_uniform(0.0, 1.0);
  CHECK_FALSE(u.truncated_lo());
  CHECK(u.x_lo() == doctest::Approx(0.0));
  CHECK(u.x_hi() == doctest::Approx(1.0));
}
