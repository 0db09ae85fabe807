#pragma once

#include <string>
#include <vector>

#include "isocap/measure.hpp"
#include "isocap/numerics.hpp"

namespace isocap {

// Test function with an analytic derivative, evaluated pointwise on the
// support of a measure.
struct Probe {
  std::string name;
  Fn1 f;
  Fn1 df;
};

// Deterministic probe family for measuring functional constants:
//  - capacity-optimal tail profiles at several mass levels (q > 1 only;
//    skipped when the optimal-slope integral diverges),
//  - mollified tail indicators (cubic smoothstep over a narrow window),
//  - linear ramps (identity and an inter-quartile clamp),
//  - band-limited random trigonometric sums seeded reproducibly.
// The same (measure, q, seed) always yields the same family in the same
// order, independent of platform.
std::vector<Probe> make_probe_family(const ModelMeasure1D& mu, double q, unsigned seed = 0);

}  // namespace isocap
