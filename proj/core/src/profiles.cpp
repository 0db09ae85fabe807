#include "isocap/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace isocap {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

IsoProfiler::IsoProfiler(const ModelMeasure1D& mu, int search_grid) : mu_(mu) {
  halfline_only_ = (mu.kappa() == 0.0 && mu.semi_convex());
  if (halfline_only_) return;
  // Lattice of quantiles for the interval search; 16x finer than the anchor
  // stride so interval masses snap to nearby lattice levels.
  int m = std::max(64, search_grid) * 16;
  levels_.resize(m + 1);
  xq_.resize(m + 1);
  rhoq_.resize(m + 1);
  for (int i = 0; i <= m; ++i) {
    levels_[i] = double(i) / m;
    xq_[i] = mu.quantile(levels_[i]);
    rhoq_[i] = mu.density(xq_[i]);
  }
}

// Best union of at most two intervals with total mass min(t, 1-t); the
// boundary cost is invariant under complementation, so evaluating at the
// smaller mass covers complements with more components.
IsoCandidate IsoProfiler::search(double t) const {
  double m = std::min(t, 1.0 - t);
  const int L = int(levels_.size()) - 1;
  const int stride = 16;
  auto rho_at = [&](double mass) {
    int i = int(std::lround(mass * L));
    return rhoq_[std::min(std::max(i, 0), L)];
  };
  double best = kInf;
  double b_s1 = 0, b_u = 0, b_s2 = 0;
  for (int ju = 0; ju <= 16; ++ju) {
    double u = m * ju / 16.0;  // mass of the first interval
    double rest = m - u;
    for (int a1 = 0; a1 <= L; a1 += stride) {
      double s1 = levels_[a1];
      if (s1 + u > 1.0 + 1e-12) break;
      double c1 = 0.0;
      if (u > 0.0) {
        if (s1 > 0.0) c1 += rho_at(s1);
        if (s1 + u < 1.0) c1 += rho_at(s1 + u);
      }
      if (rest <= 0.0) {
        if (c1 < best) {
          best = c1;
          b_s1 = s1;
          b_u = u;
          b_s2 = s1 + u;
        }
        continue;
      }
      int a2_min = u > 0.0 ? int(std::ceil((s1 + u) * L)) : a1;
      for (int a2 = a2_min; a2 <= L; a2 += stride) {
        double s2 = levels_[std::min(a2, L)];
        if (s2 + rest > 1.0 + 1e-12) break;
        double c = c1;
        if (s2 > 0.0) c += rho_at(s2);
        if (s2 + rest < 1.0) c += rho_at(s2 + rest);
        if (c < best) {
          best = c;
          b_s1 = s1;
          b_u = u;
          b_s2 = s2;
        }
      }
    }
  }
  // Polish the winner with exact quantiles; masses are kept, only the lattice
  // rounding of the densities is removed.
  double rest = m - b_u;
  double val = 0.0;
  auto rho_exact = [&](double mass) { return mu_.density(mu_.quantile(mass)); };
  if (b_u > 0.0) {
    if (b_s1 > 0.0) val += rho_exact(b_s1);
    if (b_s1 + b_u < 1.0) val += rho_exact(b_s1 + b_u);
  }
  if (rest > 0.0) {
    if (b_s2 > 0.0) val += rho_exact(b_s2);
    if (b_s2 + rest < 1.0) val += rho_exact(b_s2 + rest);
  }
  bool two = b_u > 0.0 && rest > 0.0 && b_s2 > b_s1 + b_u;
  return {val, two ? "two-interval" : "interval"};
}

IsoCandidate IsoProfiler::at(double t) const {
  if (t < -1e-12 || t > 1.0 + 1e-12 || !std::isfinite(t))
    throw std::invalid_argument("iso_profile: t outside [0,1]");
  t = std::min(std::max(t, 0.0), 1.0);
  if (t == 0.0 || t == 1.0) return {0.0, "right-tail"};
  double left = mu_.density(mu_.quantile(t));
  double right = mu_.density(mu_.quantile(1.0 - t));
  IsoCandidate c{std::min(left, right), left <= right ? "left-tail" : "right-tail"};
  if (!halfline_only_) {
    IsoCandidate s = search(t);
    if (s.value < c.value) c = s;
  }
  return c;
}

double iso_profile(const ModelMeasure1D& mu, double t) { return IsoProfiler(mu).at(t).value; }

IsoCandidate iso_profile_detail(const ModelMeasure1D& mu, double t) {
  return IsoProfiler(mu).at(t);
}

double iso_tilde(const ModelMeasure1D& mu, double t) {
  if (t < -1e-12 || t > 0.5 + 1e-12 || !std::isfinite(t))
    throw std::invalid_argument("iso_tilde: t outside [0,1/2]");
  IsoProfiler prof(mu);
  t = std::min(std::max(t, 0.0), 0.5);
  return std::min(prof.at(t).value, prof.at(1.0 - t).value);
}

double cap1_profile(const ModelMeasure1D& mu, double a, double b, int scan_grid) {
  if (!(a > 0.0 && a <= b && b < 1.0)) throw std::invalid_argument("cap1_profile: need 0 < a <= b < 1");
  IsoProfiler prof(mu);
  if (a == b) return prof.at(a).value;
  double inf = kInf;
  for (int i = 0; i <= scan_grid; ++i)
    inf = std::min(inf, prof.at(a + (b - a) * i / scan_grid).value);
  return inf;
}

double capq_halfline(const ModelMeasure1D& mu, double q, double x_gap_lo, double x_gap_hi) {
  if (!(q > 1.0)) throw std::invalid_argument("capq_halfline: q must exceed 1");
  double lo = std::max(x_gap_lo, mu.x_lo());
  double hi = std::min(x_gap_hi, mu.x_hi());
  if (!(lo < hi)) return kInf;
  double e = 1.0 / (q - 1.0);
  double p = q / (q - 1.0);
  auto integrand = [&](double x) {
    double a = e * mu.psi(x);
    return a > 700.0 ? kInf : std::exp(a);
  };
  std::vector<double> cuts{lo};
  for (double b : mu.breakpoints())
    if (b > lo && b < hi) cuts.push_back(b);
  cuts.push_back(hi);

  double prev = -1.0, J = 0.0;
  for (int n_per = 32; n_per <= 1024; n_per *= 2) {
    J = 0.0;
    for (size_t s = 0; s + 1 < cuts.size(); ++s) {
      auto bd = graded_boundaries(cuts[s], cuts[s + 1], true, true, n_per);
      J += integrate_panels(integrand, bd);
    }
    if (!std::isfinite(J)) return 0.0;  // density vanishes fast enough in the gap
    if (prev >= 0.0 && std::abs(J - prev) <= 1e-10 * J) break;
    prev = J;
  }
  return std::pow(J, -1.0 / p);
}

double capq_profile(const ModelMeasure1D& mu, double q, double t) {
  if (!(q > 1.0)) throw std::invalid_argument("capq_profile: q must exceed 1");
  if (!(t > 0.0 && t <= 0.5)) throw std::invalid_argument("capq_profile: t outside (0,1/2]");
  double med = mu.median();
  double right = capq_halfline(mu, q, med, mu.quantile(1.0 - t));
  double left = capq_halfline(mu, q, mu.quantile(t), med);
  return std::min(left, right);
}

double capq_grid_oracle(const ModelMeasure1D& mu, double q, double t, int grid_size) {
  if (!(q > 1.0)) throw std::invalid_argument("capq_grid_oracle: q must exceed 1");
  if (!(t > 0.0 && t <= 0.5)) throw std::invalid_argument("capq_grid_oracle: t outside (0,1/2]");
  if (grid_size < 16) throw std::invalid_argument("capq_grid_oracle: grid too small");
  int n = grid_size;
  double h = (mu.x_hi() - mu.x_lo()) / (n - 1);
  std::vector<double> x(n), F(n);
  for (int i = 0; i < n; ++i) {
    x[i] = mu.x_lo() + i * h;
    F[i] = mu.cdf(x[i]);
  }
  double e = 1.0 / (q - 1.0);
  double p = q / (q - 1.0);
  // Sum of rho(midpoint)^{-1/(q-1)} h over the cells strictly between the
  // clamped sets; the discrete optimum of sum |dPhi|^q rho h has value
  // T^{1-q}, whose q-th root is T^{-1/p}.
  auto gap_value = [&](int cell_lo, int cell_hi) {  // cells [cell_lo, cell_hi)
    if (cell_lo >= cell_hi) return kInf;
    double T = 0.0;
    for (int i = cell_lo; i < cell_hi; ++i) {
      double rho = mu.density(0.5 * (x[i] + x[i + 1]));
      if (rho <= 0.0) return 0.0;
      double a = e * (-std::log(rho));
      if (a > 700.0) return 0.0;
      T += std::exp(a) * h;
    }
    return std::pow(T, -1.0 / p);
  };
  // Right candidate: Phi = 1 where F >= 1-t, Phi = 0 where F <= 1/2.
  int io = -1, iz = -1;
  for (int i = 0; i < n; ++i) {
    if (F[i] <= 0.5) iz = i;
    if (io < 0 && F[i] >= 1.0 - t) io = i;
  }
  if (io < 0 || iz < 0) throw std::invalid_argument("capq_grid_oracle: infeasible set specification");
  double right = gap_value(iz, io);
  // Left mirror: Phi = 1 where F <= t, Phi = 0 where F >= 1/2.
  int il = -1, ir = -1;
  for (int i = n - 1; i >= 0; --i) {
    if (F[i] >= 0.5) ir = i;
    if (il < 0 && F[i] <= t) il = i;
  }
  if (il < 0 || ir < 0) throw std::invalid_argument("capq_grid_oracle: infeasible set specification");
  double left = gap_value(il, ir);
  return std::min(left, right);
}

double cap1_grid_oracle(const ModelMeasure1D& mu, double a, double b, int grid_size) {
  if (!(a > 0.0 && a < b && b < 1.0)) throw std::invalid_argument("cap1_grid_oracle: need 0 < a < b < 1");
  if (grid_size < 16) throw std::invalid_argument("cap1_grid_oracle: grid too small");
  int n = grid_size;
  double h = (mu.x_hi() - mu.x_lo()) / (n - 1);
  std::vector<double> x(n), F(n);
  for (int i = 0; i < n; ++i) {
    x[i] = mu.x_lo() + i * h;
    F[i] = mu.cdf(x[i]);
  }
  // The unit total variation concentrates on the cheapest cell of the gap.
  auto gap_value = [&](int cell_lo, int cell_hi) {
    if (cell_lo >= cell_hi) return kInf;
    double best = kInf;
    for (int i = cell_lo; i < cell_hi; ++i)
      best = std::min(best, mu.density(0.5 * (x[i] + x[i + 1])));
    return best;
  };
  // Right orientation: Phi = 1 where F >= 1-a, Phi = 0 where F <= 1-b.
  int io = -1, iz = -1;
  for (int i = 0; i < n; ++i) {
    if (F[i] <= 1.0 - b) iz = i;
    if (io < 0 && F[i] >= 1.0 - a) io = i;
  }
  if (io < 0 || iz < 0) throw std::invalid_argument("cap1_grid_oracle: infeasible set specification");
  double right = gap_value(iz, io);
  // Left mirror: Phi = 1 where F <= a, Phi = 0 where F >= b.
  int il = -1, ir = -1;
  for (int i = n - 1; i >= 0; --i) {
    if (F[i] >= b) ir = i;
    if (il < 0 && F[i] <= a) il = i;
  }
  if (il < 0 || ir < 0) throw std::invalid_argument("cap1_grid_oracle: infeasible set specification");
  double left = gap_value(il, ir);
  return std::min(left, right);
}

double ProfileTable::value(double at) const {
  if (t.size() < 2) throw std::logic_error("ProfileTable: too few rows");
  if (!(at > 0.0)) throw std::invalid_argument("ProfileTable: t must be positive");
  at = std::min(std::max(at, t.front()), t.back());
  size_t j = size_t(std::upper_bound(t.begin(), t.end(), at) - t.begin());
  j = std::min(std::max<size_t>(j, 1), t.size() - 1) - 1;
  double t0 = t[j], t1 = t[j + 1], v0 = v[j], v1 = v[j + 1];
  if (v0 > 0.0 && v1 > 0.0) {
    double w = std::log(at / t0) / std::log(t1 / t0);
    return std::exp((1.0 - w) * std::log(v0) + w * std::log(v1));
  }
  double w = (at - t0) / (t1 - t0);
  return (1.0 - w) * v0 + w * v1;
}

double ProfileTable::inf_on(double a, double b) const {
  if (!(a <= b)) throw std::invalid_argument("ProfileTable::inf_on: a > b");
  double m = std::min(value(a), value(b));
  for (size_t i = 0; i < t.size(); ++i)
    if (t[i] >= a && t[i] <= b) m = std::min(m, v[i]);
  return m;
}

ProfileTable make_profile_table(const ModelMeasure1D& mu, ProfileKind kind, double q, int n,
                                double t_lo, double t_hi) {
  if (n < 2) throw std::invalid_argument("make_profile_table: need at least two rows");
  if (!(t_lo > 0.0 && t_lo < t_hi)) throw std::invalid_argument("make_profile_table: bad t range");
  if (kind == ProfileKind::cap_q && !(t_hi < 0.5))
    throw std::invalid_argument("make_profile_table: cap_q requires t_hi < 1/2 (finite values)");
  if (kind != ProfileKind::cap_q && t_hi > (kind == ProfileKind::iso ? 1.0 : 0.5))
    throw std::invalid_argument("make_profile_table: t_hi out of range for kind");
  ProfileTable tab;
  tab.kind = kind;
  tab.q = q;
  tab.t = log_spaced(t_lo, t_hi, n);
  tab.v.resize(n);
  if (kind == ProfileKind::cap_q) {
    for (int i = 0; i < n; ++i) tab.v[i] = capq_profile(mu, q, tab.t[i]);
  } else {
    IsoProfiler prof(mu);
    tab.side.resize(n);
    for (int i = 0; i < n; ++i) {
      IsoCandidate c = prof.at(tab.t[i]);
      if (kind == ProfileKind::iso_tilde) {
        IsoCandidate c2 = prof.at(1.0 - tab.t[i]);
        if (c2.value < c.value) c = c2;
      }
      tab.v[i] = c.value;
      tab.side[i] = c.side;
    }
  }
  return tab;
}

}  // namespace isocap
