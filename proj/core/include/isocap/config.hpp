#pragma once

#include <string>
#include <utility>
#include <vector>

#include "isocap/measure.hpp"
#include "isocap/nfunction.hpp"
#include "isocap/semigroup.hpp"
#include "isocap/transitions.hpp"

namespace isocap {

// Declarative descriptions of run inputs, fillable from JSON. Parsing is
// strict: unknown keys are rejected so configuration typos never silently
// fall back to defaults.

struct MeasureSpec {
  std::string kind = "gaussian";  // p_exponential, uniform, power_alpha, double_well, table
  double p = 2.0;                 // p_exponential exponent
  double a = -1.0, b = 1.0;       // uniform interval
  double alpha = 0.5;             // power_alpha exponent
  int grid_size = ModelMeasure1D::kDefaultGrid;
  std::vector<std::pair<double, double>> table;  // (x, psi) rows for kind = table

  ModelMeasure1D make() const;
};

struct NFuncSpec {
  std::string kind = "power";  // phi_q, table
  double q = 2.0;
  std::vector<std::pair<double, double>> table;  // (t, N(t)) rows for kind = table

  NFunction make() const;
};

struct TGridSpec {
  double lo = 1e-3;
  double hi = 0.5;
  int n = 50;

  // Log-spaced grid inside (0, 1/2].
  std::vector<double> make() const;
};

struct RunConfig {
  MeasureSpec measure;
  NFuncSpec nfunc;
  SemigroupParams solver;
  TGridSpec tgrid;
  double q = 2.0;
  unsigned seed = 0;
  std::string out;
  ConverseConstants converse;
};

// Overwrites only the fields present in the JSON text; throws
// std::invalid_argument on malformed JSON, unknown keys, or out-of-range
// values.
void apply_json_config(RunConfig& cfg, const std::string& json_text);

RunConfig run_config_from_json_text(const std::string& json_text);

}  // namespace isocap
