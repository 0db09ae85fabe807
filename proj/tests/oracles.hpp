#pragma once

// Frozen expected values plus small self-contained numerical oracles used to
// cross-check library results. The oracles here deliberately avoid the
// library's own quadrature and root-finding paths.

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace oracles {

inline const std::map<std::string, double>& expected() {
  static const std::map<std::string, double> table = [] {
    std::map<std::string, double> t;
    std::ifstream in(ISOCAP_ORACLE_FILE);
    if (!in) throw std::runtime_error("cannot open oracle file " ISOCAP_ORACLE_FILE);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream ss(line);
      std::string name, eq;
      double value;
      if (ss >> name >> eq >> value && eq == "=") t[name] = value;
    }
    return t;
  }();
  return table;
}

inline double want(const std::string& name) {
  auto it = expected().find(name);
  if (it == expected().end()) throw std::runtime_error("missing oracle value: " + name);
  return it->second;
}

// Adaptive Simpson with explicit error control; independent of the library's
// Gauss-Legendre panels.
inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Luxemburg norm by plain scan-free bisection on lambda, given sampled
// values and weights. 200 iterations pin the root to full precision.
inline double luxemburg_bisect(const std::vector<double>& vals, const std::vector<double>& w,
                               const std::function<double(double)>& N) {
  auto excess = [&](double lam) {
    double s = 0.0;
    for (size_t i = 0; i < vals.size(); ++i) s += w[i] * N(std::abs(vals[i]) / lam);
    return s - 1.0;
  };
  double lo = 1e-12, hi = 1e12;
  for (int i = 0; i < 200; ++i) {
    double mid = std::sqrt(lo * hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

// Inverse of t^q log(1+t^q) by bisection.
inline double phi_q_inverse_bisect(double y, double q) {
  if (y <= 0.0) return 0.0;
  auto f = [&](double t) { return std::pow(t, q) * std::log1p(std::pow(t, q)); };
  double lo = 1e-18, hi = 1.0;
  while (f(hi) < y) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracles
