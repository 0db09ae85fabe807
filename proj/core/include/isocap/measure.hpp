#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isocap/numerics.hpp"

namespace isocap {

// Values of a function at the quadrature nodes of a measure.
using GridFunction = std::vector<double>;

// Potential description of a probability measure dmu = exp(-psi(x)) dx / Z on
// an interval. psi_raw is the unnormalized potential; if log_norm (= log Z) is
// absent it is computed by quadrature. interior_breaks mark points where psi
// is only piecewise smooth so quadrature panels never straddle them.
struct Potential {
  std::string name;
  Fn1 psi_raw;
  Fn1 dpsi;
  Fn1 d2psi;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  std::vector<double> interior_breaks;
  std::optional<double> log_norm;
  // Convexity defect: sup max(-psi'', 0). Infinity means psi is not
  // semi-convex and curvature-based bounds do not apply.
  std::optional<double> kappa;
  bool semi_convex = true;
};

// One-dimensional model measure with cached quadrature tables. Instances are
// immutable after construction; copies share state and are safe to use from
// several threads at once.
class ModelMeasure1D {
 public:
  static constexpr double kDensityCut = 1e-16;   // relative density at truncation
  static constexpr double kMassDefectTol = 1e-8;
  static constexpr int kDefaultGrid = 2048;

  static ModelMeasure1D from_potential(const Potential& pot, int grid_size = kDefaultGrid);

  static ModelMeasure1D make_gaussian(int grid_size = kDefaultGrid);
  static ModelMeasure1D make_p_exponential(double p, int grid_size = kDefaultGrid);
  static ModelMeasure1D make_uniform(double a, double b, int grid_size = kDefaultGrid);
  static ModelMeasure1D make_power_alpha(double alpha, int grid_size = kDefaultGrid);
  static ModelMeasure1D make_double_well(int grid_size = kDefaultGrid);
  // Natural cubic spline through (x, psi) points; at least four points,
  // strictly increasing x. The support is [x_front, x_back].
  static ModelMeasure1D make_from_table(const std::vector<std::pair<double, double>>& psi_points,
                                        int grid_size = kDefaultGrid);

  const std::string& name() const;

  // Truncated support actually used by quadrature. For compactly supported
  // measures these equal the natural bounds; unbounded tails are cut where
  // the density falls below kDensityCut relative to its maximum.
  double x_lo() const;
  double x_hi() const;
  double natural_lo() const;
  double natural_hi() const;
  bool truncated_lo() const;
  bool truncated_hi() const;

  double psi(double x) const;       // normalized: density = exp(-psi(x))
  double dpsi(double x) const;
  double d2psi(double x) const;
  double density(double x) const;
  double log_norm() const;          // log of the normalizing constant
  double kappa() const;
  bool semi_convex() const;

  double cdf(double x) const;       // clamped to [0,1] outside the support
  double quantile(double t) const;  // t in [0,1]; throws outside
  double median() const;

  // Interior points where psi is only piecewise smooth; quadrature panels
  // never straddle them.
  const std::vector<double>& breakpoints() const;

  // Quadrature nodes/weights for integrals against the measure. Weights are
  // positive and sum to one up to the recorded mass defect.
  const std::vector<double>& nodes() const;
  const std::vector<double>& weights() const;
  double mass_defect() const;

  GridFunction sample(const Fn1& f) const;
  double integral_of(const GridFunction& f) const;
  double expectation_of(const Fn1& f) const;
  // Lower median: the smallest sampled value whose cumulative weight reaches
  // one half. Exact for continuous strictly monotone data up to grid width.
  double median_of(const GridFunction& f) const;
  double lq_norm(const GridFunction& f, double q) const;
  double sup_norm(const GridFunction& f) const;

 private:
  struct Impl;
  explicit ModelMeasure1D(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

}  // namespace isocap
