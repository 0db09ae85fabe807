#include "isocap/nfunction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isocap/numerics.hpp"

namespace isocap {

struct NFunction::Impl {
  std::string name;
  Fn1 eval;
  Fn1 inv;
  bool young = false;
};

NFunction::NFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

namespace {

// Solve u*log1p(u) = y for u >= 0. Newton with a bisection guard; the map is
// increasing and convex for u >= 0.
double ulog1pu_inv(double y) {
  if (y < 0 || !std::isfinite(y)) throw std::invalid_argument("phi_q inverse: bad argument");
  if (y == 0.0) return 0.0;
  double hi = std::max(2.0, y);  // u log1p(u) >= u for u >= 2
  auto g = [y](double u) { return u * std::log1p(u) - y; };
  auto dg = [](double u) { return std::log1p(u) + u / (1.0 + u); };
  double u0 = (y < 1.0) ? std::sqrt(y) : y / std::log1p(y);
  return newton_bisect(g, dg, 0.0, hi, u0);
}

// Midpoint convexity plus monotonicity on a log grid of probe points.
bool probe_young(const Fn1& N, double t_lo, double t_hi) {
  auto ts = log_spaced(t_lo, t_hi, 257);
  double prev = 0.0;
  for (double t : ts) {
    double v = N(t);
    if (!(v >= 0) || !std::isfinite(v)) return false;
    if (v < prev * (1.0 - 1e-12)) return false;
    prev = v;
  }
  for (size_t i = 0; i + 2 < ts.size(); i += 2) {
    double a = ts[i], b = ts[i + 2], m = ts[i + 1];
    double lin = N(a) + (N(b) - N(a)) * (m - a) / (b - a);
    if (N(m) > lin * (1.0 + 1e-9) + 1e-300) return false;
  }
  return true;
}

}  // namespace

NFunction NFunction::power(double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("NFunction::power: q must be >= 1");
  auto impl = std::make_shared<Impl>();
  impl->name = "power(" + std::to_string(q) + ")";
  impl->eval = [q](double t) { return std::pow(t, q); };
  impl->inv = [q](double y) { return std::pow(y, 1.0 / q); };
  impl->young = true;
  return NFunction(impl);
}

NFunction NFunction::phi_q(double q) {
  if (!(q >= 1.0 && q <= 2.0)) throw std::invalid_argument("NFunction::phi_q: q must be in [1,2]");
  auto impl = std::make_shared<Impl>();
  impl->name = "phi_q(" + std::to_string(q) + ")";
  impl->eval = [q](double t) {
    double u = std::pow(t, q);
    return u * std::log1p(u);
  };
  impl->inv = [q](double y) { return std::pow(ulog1pu_inv(y), 1.0 / q); };
  impl->young = true;  // composition of the convex increasing u log1p(u) with t^q
  return NFunction(impl);
}

NFunction NFunction::from_table(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw std::invalid_argument("NFunction::from_table: need two points");
  auto lt = std::make_shared<std::vector<double>>();
  auto ly = std::make_shared<std::vector<double>>();
  for (auto& [t, y] : points) {
    if (!(t > 0) || !(y > 0)) throw std::invalid_argument("NFunction::from_table: need positive samples");
    if (!lt->empty() && !(std::log(t) > lt->back() && std::log(y) > ly->back()))
      throw std::invalid_argument("NFunction::from_table: samples must be strictly increasing");
    lt->push_back(std::log(t));
    ly->push_back(std::log(y));
  }
  auto interp = [](const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    size_t j = size_t(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
    j = std::min(std::max<size_t>(j, 1), xs.size() - 1) - 1;
    double s = (ys[j + 1] - ys[j]) / (xs[j + 1] - xs[j]);
    return ys[j] + s * (x - xs[j]);
  };
  auto impl = std::make_shared<Impl>();
  impl->name = "table[" + std::to_string(points.size()) + "]";
  impl->eval = [lt, ly, interp](double t) {
    if (t <= 0) return 0.0;
    return std::exp(interp(*lt, *ly, std::log(t)));
  };
  impl->inv = [lt, ly, interp](double y) {
    if (y <= 0) return 0.0;
    return std::exp(interp(*ly, *lt, std::log(y)));
  };
  impl->young =
      probe_young(impl->eval, std::exp(lt->front()), std::exp(lt->back()));
  return NFunction(impl);
}

double NFunction::operator()(double t) const {
  if (t < 0 || !std::isfinite(t)) throw std::invalid_argument("NFunction: negative argument");
  if (t == 0.0) return 0.0;
  return impl_->eval(t);
}

double NFunction::inverse(double y) const {
  if (y < 0 || !std::isfinite(y)) throw std::invalid_argument("NFunction::inverse: bad argument");
  if (y == 0.0) return 0.0;
  return impl_->inv(y);
}

double NFunction::adjoint(double t) const {
  if (t < 0 || !std::isfinite(t)) throw std::invalid_argument("NFunction::adjoint: bad argument");
  if (t == 0.0) return 0.0;
  return 1.0 / impl_->inv(1.0 / t);
}

NFunction NFunction::adjoint_function() const {
  auto parent = impl_;
  auto impl = std::make_shared<Impl>();
  impl->name = parent->name + "^adj";
  impl->eval = [parent](double t) { return t == 0.0 ? 0.0 : 1.0 / parent->inv(1.0 / t); };
  // (N^)^{-1}(y) = 1/N(1/y): substituting shows eval(inv(y)) = y.
  impl->inv = [parent](double y) { return y == 0.0 ? 0.0 : 1.0 / parent->eval(1.0 / y); };
  impl->young = probe_young(impl->eval, 1e-6, 1e6);
  return NFunction(impl);
}

bool NFunction::is_young() const { return impl_->young; }

bool NFunction::qmono(double q) const {
  if (!(q >= 1.0)) throw std::invalid_argument("NFunction::qmono: q must be >= 1");
  auto ts = log_spaced(1e-6, 1e6, 513);
  double prev = -std::numeric_limits<double>::infinity();
  for (double t : ts) {
    double v = impl_->eval(t);
    if (!(v > 0)) continue;
    double logr = std::log(v) / q - std::log(t);
    if (logr < prev - 1e-9) return false;
    prev = logr;
  }
  return true;
}

const std::string& NFunction::name() const { return impl_->name; }

}  // namespace isocap
