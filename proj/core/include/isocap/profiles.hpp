#pragma once

#include <string>
#include <vector>

#include "isocap/measure.hpp"

namespace isocap {

// Winning candidate of the isoperimetric search at a given mass.
struct IsoCandidate {
  double value = 0.0;
  std::string side;  // "left-tail", "right-tail", "interval", "two-interval"
};

// Boundary-measure profile queries against one measure. Construction caches
// quantile/density tables used by the interval search, so sweeps are cheap.
// Half-lines are exact candidates for log-concave measures (kappa == 0);
// otherwise unions of at most two intervals are searched on a coarse mass
// grid and the best candidate is polished with exact quantiles.
class IsoProfiler {
 public:
  explicit IsoProfiler(const ModelMeasure1D& mu, int search_grid = 64);
  IsoCandidate at(double t) const;  // t in [0,1]
  double value(double t) const { return at(t).value; }
  bool halfline_only() const { return halfline_only_; }

 private:
  IsoCandidate search(double t) const;
  ModelMeasure1D mu_;
  bool halfline_only_;
  std::vector<double> levels_, xq_, rhoq_;
};

double iso_profile(const ModelMeasure1D& mu, double t);
IsoCandidate iso_profile_detail(const ModelMeasure1D& mu, double t);
// min(I(t), I(1-t)) for t in [0,1/2].
double iso_tilde(const ModelMeasure1D& mu, double t);

// inf of the isoperimetric profile over a dense t-grid in [a, b]; equals the
// 1-capacity between masses a and b when the profile is continuous there.
double cap1_profile(const ModelMeasure1D& mu, double a, double b, int scan_grid = 512);

// Exact q-capacity across the gap [x_gap_lo, x_gap_hi]: the minimizing
// potential has slope proportional to density^{-1/(q-1)}, so
// Cap = (integral of density^{-1/(q-1)})^{-1/p} with p = q/(q-1).
// Empty gap yields +infinity; a density vanishing fast enough inside the gap
// yields 0.
double capq_halfline(const ModelMeasure1D& mu, double q, double x_gap_lo, double x_gap_hi);

// min over the right-tail candidate (inner mass t on the right, zero set the
// left half) and the left-tail mirror. q > 1, t in (0, 1/2].
double capq_profile(const ModelMeasure1D& mu, double q, double t);

// Independent discrete check: minimize sum |dPhi/dx|^q rho dx over grid
// functions clamped on the mass-t tail and the opposite mass-1/2 set, via the
// discrete Euler-Lagrange reconstruction. First-order accurate in 1/grid.
double capq_grid_oracle(const ModelMeasure1D& mu, double q, double t, int grid_size);

// q -> 1 limit of the discrete program: the optimal unit jump concentrates on
// the cheapest cell, so the value is the minimal cell density between the
// clamped tail sets of masses a and b (both tail orientations tried).
double cap1_grid_oracle(const ModelMeasure1D& mu, double a, double b, int grid_size);

enum class ProfileKind { iso, iso_tilde, cap_q };

// Sampled profile with log-log interpolation between grid points.
struct ProfileTable {
  ProfileKind kind = ProfileKind::iso;
  double q = 0.0;
  std::vector<double> t;
  std::vector<double> v;
  std::vector<std::string> side;  // candidate side per row (empty for cap_q)

  double value(double at) const;
  // inf over the sampled grid restricted to [a, b], interpolated endpoints.
  double inf_on(double a, double b) const;
};

ProfileTable make_profile_table(const ModelMeasure1D& mu, ProfileKind kind, double q, int n,
                                double t_lo, double t_hi);

}  // namespace isocap
