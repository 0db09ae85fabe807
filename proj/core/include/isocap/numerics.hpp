#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace isocap {

using Fn1 = std::function<double(double)>;

// Gauss-Legendre rule on [-1, 1]. Nodes are symmetric and strictly increasing.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Nodes are computed once per order via Newton iteration on the Legendre
// recurrence and cached; weights sum to 2 up to roundoff.
const GaussRule& gauss_legendre(int n);

// Integral of f over [a, b] with a single n-point rule.
double gauss(const Fn1& f, double a, double b, int n = 16);

// Integral over consecutive panels [b0,b1], [b1,b2], ...
double integrate_panels(const Fn1& f, const std::vector<double>& boundaries, int n = 16);

// Integral over [a, b] with `panels` equal panels, refined by doubling until
// two consecutive refinements differ by at most rel_tol in relative terms.
double integrate_adaptive(const Fn1& f, double a, double b,
                          double rel_tol = 1e-11, int panels = 32, int max_doublings = 8);

// Panel boundaries on [lo, hi]. A "hot" end gets dyadically shrinking panels
// so that integrable endpoint singularities are resolved; the innermost panel
// width is about (hi-lo)*2^-48. Cold ends get uniform panels. Returns at
// least two boundaries; n is a target for the total panel count.
std::vector<double> graded_boundaries(double lo, double hi, bool hot_lo, bool hot_hi, int n);

// Root of f on [lo, hi]; requires a sign change. Plain bisection, 200 rounds.
double bisect(const Fn1& f, double lo, double hi);

// Root of f on [lo, hi] with derivative df. Newton steps that leave the
// bracket fall back to bisection, so convergence is unconditional.
double newton_bisect(const Fn1& f, const Fn1& df, double lo, double hi, double x0,
                     double x_tol = 1e-15, int max_iter = 120);

// Golden-section minimizer for a unimodal f on [lo, hi].
double golden_min(const Fn1& f, double lo, double hi, int iters = 80);

// n points log-spaced on [lo, hi]; lo and hi must be positive.
std::vector<double> log_spaced(double lo, double hi, int n);

// n points linearly spaced on [lo, hi], endpoints included.
std::vector<double> lin_spaced(double lo, double hi, int n);

// Cubic step: 0 below 0, 1 above 1, 3u^2 - 2u^3 between; C^1 everywhere.
double smoothstep(double u);
double smoothstep_deriv(double u);

}  // namespace isocap
