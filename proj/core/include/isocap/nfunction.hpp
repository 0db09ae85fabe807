#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace isocap {

// Orlicz integrand N: [0,inf) -> [0,inf), increasing with N(0) = 0, together
// with its inverse and the tail transform N^(t) = 1/N^{-1}(1/t) used against
// measure masses. Instances are immutable and cheap to copy.
class NFunction {
 public:
  // N(t) = t^q, q >= 1.
  static NFunction power(double q);
  // N(t) = t^q log(1 + t^q), q in [1, 2].
  static NFunction phi_q(double q);
  // Log-log linear interpolation through (t, N(t)) samples; both coordinates
  // must be positive and strictly increasing. Extrapolates the end slopes.
  static NFunction from_table(const std::vector<std::pair<double, double>>& points);

  double operator()(double t) const;
  double inverse(double y) const;

  // adjoint(t) = 1/N^{-1}(1/t) for t > 0, adjoint(0) = 0. Satisfies
  // adjoint(1/N(s)) = 1/s wherever N is strictly increasing.
  double adjoint(double t) const;
  NFunction adjoint_function() const;

  bool is_young() const;
  // Whether t -> N(t)^{1/q}/t is nondecreasing, probed on a log grid.
  bool qmono(double q) const;

  const std::string& name() const;

 private:
  struct Impl;
  explicit NFunction(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

}  // namespace isocap
