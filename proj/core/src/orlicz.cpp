#include "isocap/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "isocap/errors.hpp"

namespace isocap {

namespace {

void check_finite(const GridFunction& f) {
  for (double v : f)
    if (!std::isfinite(v)) throw std::invalid_argument("orlicz: non-finite sample");
}

}  // namespace

double orlicz_norm(const ModelMeasure1D& mu, const GridFunction& f, const NFunction& N) {
  if (!N.is_young()) throw hypothesis_error("orlicz_norm: N is not a Young function");
  if (f.size() != mu.weights().size()) throw std::invalid_argument("orlicz_norm: size mismatch");
  check_finite(f);
  const auto& w = mu.weights();
  double fmax = 0.0;
  for (double v : f) fmax = std::max(fmax, std::abs(v));
  if (fmax == 0.0) return 0.0;

  auto G = [&](double v) {
    double s = 0.0;
    for (size_t i = 0; i < f.size(); ++i) {
      double a = std::abs(f[i]);
      if (a > 0.0) s += w[i] * N(a / v);
    }
    return s;
  };

  // G(fmax / N^{-1}(1)) <= total mass, so this is an upper bracket up to the
  // mass defect.
  double hi = fmax / N.inverse(1.0);
  for (int i = 0; i < 60 && G(hi) > 1.0; ++i) hi *= 1.5;
  double lo = hi;
  int guard = 0;
  while (G(lo) <= 1.0) {
    lo *= 0.5;
    if (++guard > 2000) return 0.0;  // all of |f| sits on negligible weight
  }
  for (int i = 0; i < 64; ++i) {
    double mid = std::sqrt(lo * hi);
    if (G(mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

double weak_orlicz_norm(const ModelMeasure1D& mu, const GridFunction& f, const NFunction& N) {
  if (!N.is_young()) throw hypothesis_error("weak_orlicz_norm: N is not a Young function");
  if (f.size() != mu.weights().size())
    throw std::invalid_argument("weak_orlicz_norm: size mismatch");
  check_finite(f);
  const auto& w = mu.weights();
  std::vector<std::pair<double, double>> lv(f.size());
  for (size_t i = 0; i < f.size(); ++i) lv[i] = {std::abs(f[i]), w[i]};
  std::sort(lv.begin(), lv.end());

  // Suffix masses at distinct levels: mass(|f| >= level).
  std::vector<double> levels, suffix;
  double acc = 0.0;
  for (size_t i = lv.size(); i-- > 0;) {
    acc += lv[i].second;
    if (i == 0 || lv[i - 1].first != lv[i].first) {
      levels.push_back(lv[i].first);
      suffix.push_back(acc);
    }
  }
  std::reverse(levels.begin(), levels.end());
  std::reverse(suffix.begin(), suffix.end());

  double best = 0.0;
  auto term = [&](double t, double mass) {
    if (t <= 0.0 || mass <= 0.0) return 0.0;
    return t * N.adjoint(std::min(mass, 1.0));
  };
  for (size_t j = 0; j < levels.size(); ++j) {
    best = std::max(best, term(levels[j], suffix[j]));
    if (j + 1 < levels.size())
      best = std::max(best, term(0.5 * (levels[j] + levels[j + 1]), suffix[j + 1]));
  }
  return best;
}

double dual_norm_indicator(double mass, const NFunction& N) {
  if (!(mass > 0.0 && mass <= 1.0))
    throw std::invalid_argument("dual_norm_indicator: mass outside (0,1]");
  return mass * N.inverse(1.0 / mass);
}

double dual_norm_upper(const ModelMeasure1D& mu, const GridFunction& f, const NFunction& N) {
  if (f.size() != mu.weights().size()) throw std::invalid_argument("dual_norm_upper: size mismatch");
  check_finite(f);
  const auto& w = mu.weights();
  auto part_bound = [&](double sign) {
    std::vector<std::pair<double, double>> lv;
    for (size_t i = 0; i < f.size(); ++i) {
      double v = sign * f[i];
      if (v > 0.0) lv.emplace_back(v, w[i]);
    }
    if (lv.empty()) return 0.0;
    std::sort(lv.begin(), lv.end());
    // Suffix masses, then sum (t_j - t_{j-1}) * ||chi||_* across levels.
    double s = 0.0, suffix = 0.0, prev_level = 0.0;
    std::vector<std::pair<double, double>> dist;
    for (size_t i = lv.size(); i-- > 0;) {
      suffix += lv[i].second;
      if (i == 0 || lv[i - 1].first != lv[i].first) dist.emplace_back(lv[i].first, suffix);
    }
    std::reverse(dist.begin(), dist.end());
    for (auto& [t, m] : dist) {
      s += (t - prev_level) * dual_norm_indicator(std::min(m, 1.0), N);
      prev_level = t;
    }
    return s;
  };
  return part_bound(1.0) + part_bound(-1.0);
}

double recentering_ratio(const ModelMeasure1D& mu, const Fn1& f, const NFunction& N) {
  GridFunction g = mu.sample(f);
  double mean = mu.integral_of(g);
  double med = mu.median_of(g);
  double scale = mu.sup_norm(g);
  GridFunction gm = g, gd = g;
  for (auto& v : gm) v -= mean;
  for (auto& v : gd) v -= med;
  double den = orlicz_norm(mu, gd, N);
  if (den <= 1e-13 * std::max(scale, 1.0))
    throw std::invalid_argument("recentering_ratio: essentially constant input");
  return orlicz_norm(mu, gm, N) / den;
}

}  // namespace isocap
