#pragma once

#include "isocap/measure.hpp"
#include "isocap/nfunction.hpp"

namespace isocap {

// Luxemburg norm inf{v > 0 : integral of N(|f|/v) dmu <= 1}, computed by
// geometric bracketing and bisection in log v. Requires a Young N.
double orlicz_norm(const ModelMeasure1D& mu, const GridFunction& f, const NFunction& N);

// sup over levels t > 0 of t * adjoint(mu(|f| >= t)), evaluated at the
// distinct sampled levels and at midpoints between consecutive levels.
double weak_orlicz_norm(const ModelMeasure1D& mu, const GridFunction& f, const NFunction& N);

// Exact norm of an indicator of mass a in the associate (dual) pairing:
// sup{ integral over A of g : ||g||_N <= 1 } = a * N^{-1}(1/a).
double dual_norm_indicator(double mass, const NFunction& N);

// Upper bound for sup{ integral f g : ||g||_N <= 1 } via the layer-cake
// decomposition of f+ and f-. Tight for indicators.
double dual_norm_upper(const ModelMeasure1D& mu, const GridFunction& f, const NFunction& N);

// ||f - mean|| / ||f - median||. Throws for degenerate (essentially
// constant) inputs. Bounded by 2 for any Young N.
double recentering_ratio(const ModelMeasure1D& mu, const Fn1& f, const NFunction& N);

}  // namespace isocap
