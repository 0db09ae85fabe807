#include "isocap/numerics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace isocap {

namespace {

GaussRule compute_rule(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  // Roots of P_n via Newton from the Chebyshev-like initial guess. The
  // recurrence also yields P_n' for the weight formula w = 2/((1-x^2) P_n'^2).
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;  // initial guesses enumerate roots right to left
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1 || n > 512) throw std::invalid_argument("gauss_legendre: order out of range");
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

double gauss(const Fn1& f, double a, double b, int n) {
  const GaussRule& r = gauss_legendre(n);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
  return s * half;
}

double integrate_panels(const Fn1& f, const std::vector<double>& boundaries, int n) {
  double s = 0.0;
  for (size_t i = 0; i + 1 < boundaries.size(); ++i) s += gauss(f, boundaries[i], boundaries[i + 1], n);
  return s;
}

double integrate_adaptive(const Fn1& f, double a, double b, double rel_tol, int panels,
                          int max_doublings) {
  auto eval = [&](int m) {
    double s = 0.0;
    double h = (b - a) / m;
    for (int i = 0; i < m; ++i) s += gauss(f, a + i * h, a + (i + 1) * h);
    return s;
  };
  double prev = eval(panels);
  for (int d = 0; d < max_doublings; ++d) {
    panels *= 2;
    double cur = eval(panels);
    if (std::abs(cur - prev) <= rel_tol * (std::abs(cur) + 1e-300)) return cur;
    prev = cur;
  }
  return prev;
}

std::vector<double> graded_boundaries(double lo, double hi, bool hot_lo, bool hot_hi, int n) {
  if (!(lo < hi)) throw std::invalid_argument("graded_boundaries: empty interval");
  if (n < 2) n = 2;
  std::vector<double> b;
  if (hot_lo && hot_hi) {
    double mid = 0.5 * (lo + hi);
    auto left = graded_boundaries(lo, mid, true, false, n / 2);
    auto right = graded_boundaries(mid, hi, false, true, n - n / 2);
    b = left;
    b.insert(b.end(), right.begin() + 1, right.end());
    return b;
  }
  if (!hot_lo && !hot_hi) {
    for (int i = 0; i <= n; ++i) b.push_back(lo + (hi - lo) * i / n);
    return b;
  }
  // One hot end: dyadic panels covering half the interval next to it, the
  // rest uniform. 48 levels put the innermost width near 3e-15 * (hi-lo).
  int g = std::min(48, std::max(4, n / 2));
  int u = std::max(2, n - g);
  double zone = 0.5 * (hi - lo);
  if (hot_lo) {
    b.push_back(lo);
    for (int j = 1; j <= g; ++j) b.push_back(lo + zone * std::ldexp(1.0, j - g));
    for (int i = 1; i <= u; ++i) b.push_back(lo + zone + (hi - lo - zone) * i / u);
  } else {
    for (int i = 0; i < u; ++i) b.push_back(lo + (hi - lo - zone) * i / u);
    for (int j = g; j >= 1; --j) b.push_back(hi - zone * std::ldexp(1.0, j - g));
    b.push_back(hi);
  }
  return b;
}

double bisect(const Fn1& f, double lo, double hi) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) throw std::invalid_argument("bisect: no sign change");
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double newton_bisect(const Fn1& f, const Fn1& df, double lo, double hi, double x0, double x_tol,
                     int max_iter) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) throw std::invalid_argument("newton_bisect: no sign change");
  double x = std::min(std::max(x0, lo), hi);
  for (int i = 0; i < max_iter; ++i) {
    double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0) == (flo > 0)) {
      lo = x;
    } else {
      hi = x;
    }
    double d = df(x);
    double xn = (d != 0.0) ? x - fx / d : lo;
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    if (std::abs(xn - x) <= x_tol * (1.0 + std::abs(x))) return xn;
    x = xn;
  }
  return x;
}

double golden_min(const Fn1& f, double lo, double hi, int iters) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && b - a > 1e-300; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  if (!(lo > 0) || !(hi > 0) || n < 1) throw std::invalid_argument("log_spaced: bad arguments");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i) out[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> lin_spaced(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("lin_spaced: bad arguments");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  out.back() = hi;
  return out;
}

double smoothstep(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * u * (3.0 - 2.0 * u);
}

double smoothstep_deriv(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  return 6.0 * u * (1.0 - u);
}

}  // namespace isocap
