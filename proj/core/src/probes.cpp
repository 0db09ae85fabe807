#include "isocap/probes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <random>

namespace isocap {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::string level_name(const char* base, const char* side, double t) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s-%s-t=%.4g", base, side, t);
  return buf;
}

// Cumulative table of density^{-1/(q-1)} across a gap, supporting pointwise
// evaluation of the capacity-optimal profile and its exact derivative.
struct OptimalSlope {
  ModelMeasure1D mu;
  double e;
  std::vector<double> bounds;
  std::vector<double> prefix;  // prefix[i] = integral over bounds[0..i]
  double total = 0.0;

  OptimalSlope(const ModelMeasure1D& m, double q, double lo, double hi) : mu(m), e(1.0 / (q - 1.0)) {
    auto integrand = [this](double x) {
      double rho = mu.density(x);
      if (rho <= 0.0) return std::numeric_limits<double>::infinity();
      double a = e * (-std::log(rho));
      return a > 700.0 ? std::numeric_limits<double>::infinity() : std::exp(a);
    };
    std::vector<double> cuts{lo};
    for (double b : mu.breakpoints())
      if (b > lo && b < hi) cuts.push_back(b);
    cuts.push_back(hi);
    for (size_t s = 0; s + 1 < cuts.size(); ++s) {
      auto bd = graded_boundaries(cuts[s], cuts[s + 1], true, true, 24);
      bounds.insert(bounds.end(), bd.begin(), s + 2 < cuts.size() ? bd.end() - 1 : bd.end());
    }
    if (bounds.back() != hi) bounds.push_back(hi);
    prefix.resize(bounds.size(), 0.0);
    for (size_t i = 0; i + 1 < bounds.size(); ++i)
      prefix[i + 1] = prefix[i] + gauss(integrand, bounds[i], bounds[i + 1], 16);
    total = prefix.back();
  }

  bool valid() const { return std::isfinite(total) && total > 0.0; }

  double mass_to(double x) const {
    if (x <= bounds.front()) return 0.0;
    if (x >= bounds.back()) return total;
    auto it = std::upper_bound(bounds.begin(), bounds.end(), x);
    size_t i = size_t(it - bounds.begin()) - 1;
    auto integrand = [this](double y) {
      double rho = mu.density(y);
      if (rho <= 0.0) return std::numeric_limits<double>::infinity();
      return std::exp(e * (-std::log(rho)));
    };
    return prefix[i] + gauss(integrand, bounds[i], x, 16);
  }

  double slope_at(double x) const {
    if (x <= bounds.front() || x >= bounds.back()) return 0.0;
    double rho = mu.density(x);
    if (rho <= 0.0) return 0.0;
    double a = e * (-std::log(rho));
    return a > 700.0 ? 0.0 : std::exp(a) / total;
  }
};

void add_optimal_tail_probes(std::vector<Probe>& out, const ModelMeasure1D& mu, double q) {
  if (!(q > 1.0)) return;
  double med = mu.median();
  auto levels = log_spaced(0.02, 0.4, 8);
  for (double t : levels) {
    // Right tail: 0 left of the median, 1 on the mass-t right tail.
    {
      double hi = mu.quantile(1.0 - t);
      if (hi > med) {
        auto tab = std::make_shared<OptimalSlope>(mu, q, med, hi);
        if (tab->valid()) {
          out.push_back({level_name("tail-opt", "right", t),
                         [tab](double x) { return std::min(1.0, tab->mass_to(x) / tab->total); },
                         [tab](double x) { return tab->slope_at(x); }});
        }
      }
    }
    // Left mirror: 1 on the mass-t left tail, 0 right of the median.
    {
      double lo = mu.quantile(t);
      if (lo < med) {
        auto tab = std::make_shared<OptimalSlope>(mu, q, lo, med);
        if (tab->valid()) {
          out.push_back({level_name("tail-opt", "left", t),
                         [tab](double x) { return std::min(1.0, (tab->total - tab->mass_to(x)) / tab->total); },
                         [tab](double x) { return -tab->slope_at(x); }});
        }
      }
    }
  }
}

void add_indicator_probes(std::vector<Probe>& out, const ModelMeasure1D& mu) {
  double w = (mu.x_hi() - mu.x_lo()) / 128.0;
  auto levels = log_spaced(0.005, 0.45, 32);
  for (size_t i = 0; i < levels.size(); ++i) {
    double t = levels[i];
    bool right = (i % 2 == 0);
    double c = mu.quantile(right ? 1.0 - t : t);
    double a = c - 0.5 * w;
    if (right) {
      out.push_back({level_name("indicator", "right", t),
                     [a, w](double x) { return smoothstep((x - a) / w); },
                     [a, w](double x) { return smoothstep_deriv((x - a) / w) / w; }});
    } else {
      out.push_back({level_name("indicator", "left", t),
                     [a, w](double x) { return smoothstep(1.0 - (x - a) / w); },
                     [a, w](double x) { return -smoothstep_deriv(1.0 - (x - a) / w) / w; }});
    }
  }
}

void add_ramp_probes(std::vector<Probe>& out, const ModelMeasure1D& mu) {
  out.push_back({"ramp-identity", [](double x) { return x; }, [](double) { return 1.0; }});
  double a = mu.quantile(0.25), b = mu.quantile(0.75);
  if (b > a) {
    out.push_back({"ramp-interquartile",
                   [a, b](double x) { return std::min(1.0, std::max(0.0, (x - a) / (b - a))); },
                   [a, b](double x) { return (x > a && x < b) ? 1.0 / (b - a) : 0.0; }});
  }
}

void add_random_probes(std::vector<Probe>& out, const ModelMeasure1D& mu, unsigned seed) {
  std::mt19937_64 gen(seed);
  auto uniform = [&gen]() {
    // Top 53 bits, identical on every platform.
    return double(gen() >> 11) * 0x1.0p-53;
  };
  double lo = mu.x_lo(), span = mu.x_hi() - mu.x_lo();
  constexpr int kModes = 5;
  for (int r = 0; r < 8; ++r) {
    std::vector<double> as(kModes), bs(kModes);
    for (int k = 0; k < kModes; ++k) {
      as[k] = (2.0 * uniform() - 1.0) / (k + 1);
      bs[k] = (2.0 * uniform() - 1.0) / (k + 1);
    }
    char nm[32];
    std::snprintf(nm, sizeof(nm), "random-%d", r);
    out.push_back({nm,
                   [as, bs, lo, span](double x) {
                     double y = (x - lo) / span, v = 0.0;
                     for (int k = 0; k < kModes; ++k) {
                       double w = 2.0 * kPi * (k + 1) * y;
                       v += as[size_t(k)] * std::sin(w) + bs[size_t(k)] * std::cos(w);
                     }
                     return v;
                   },
                   [as, bs, lo, span](double x) {
                     double y = (x - lo) / span, v = 0.0;
                     for (int k = 0; k < kModes; ++k) {
                       double w = 2.0 * kPi * (k + 1) * y;
                       double c = 2.0 * kPi * (k + 1) / span;
                       v += c * (as[size_t(k)] * std::cos(w) - bs[size_t(k)] * std::sin(w));
                     }
                     return v;
                   }});
  }
}

}  // namespace

std::vector<Probe> make_probe_family(const ModelMeasure1D& mu, double q, unsigned seed) {
  std::vector<Probe> out;
  add_optimal_tail_probes(out, mu, q);
  add_indicator_probes(out, mu);
  add_ramp_probes(out, mu);
  add_random_probes(out, mu, seed);
  return out;
}

}  // namespace isocap
