#pragma once

#include <stdexcept>

namespace isocap {

// A mathematical hypothesis needed by the requested quantity does not hold
// (wrong monotonicity class, missing curvature bound, non-Young integrand).
// Kept distinct from plain argument errors so callers can map it to a
// dedicated exit status.
struct hypothesis_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace isocap
