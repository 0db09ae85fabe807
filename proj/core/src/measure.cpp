#include "isocap/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace isocap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Natural cubic spline with clamped evaluation outside the knot range.
class CubicSpline {
 public:
  explicit CubicSpline(const std::vector<std::pair<double, double>>& pts) {
    size_t n = pts.size();
    if (n < 4) throw std::invalid_argument("table measure: need at least four points");
    x_.resize(n);
    y_.resize(n);
    for (size_t i = 0; i < n; ++i) {
      x_[i] = pts[i].first;
      y_[i] = pts[i].second;
      if (!std::isfinite(x_[i]) || !std::isfinite(y_[i]))
        throw std::invalid_argument("table measure: non-finite entry");
      if (i > 0 && !(x_[i] > x_[i - 1]))
        throw std::invalid_argument("table measure: x values must be strictly increasing");
    }
    m_.assign(n, 0.0);
    // Tridiagonal system for interior second derivatives, natural ends.
    std::vector<double> diag(n, 2.0), rhs(n, 0.0), sub(n, 0.0), sup(n, 0.0);
    for (size_t i = 1; i + 1 < n; ++i) {
      double hl = x_[i] - x_[i - 1], hr = x_[i + 1] - x_[i];
      sub[i] = hl / (hl + hr);
      sup[i] = hr / (hl + hr);
      rhs[i] = 6.0 / (hl + hr) * ((y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl);
    }
    for (size_t i = 1; i + 1 < n; ++i) {
      double w = sub[i] / diag[i - 1];
      diag[i] -= w * sup[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    for (size_t i = n - 2; i >= 1; --i) m_[i] = (rhs[i] - sup[i] * m_[i + 1]) / diag[i];
  }

  size_t cell(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    size_t j = (it == x_.begin()) ? 1 : size_t(it - x_.begin());
    return std::min(std::max<size_t>(j, 1), x_.size() - 1) - 1;
  }

  double eval(double x) const {
    x = std::min(std::max(x, x_.front()), x_.back());
    size_t j = cell(x);
    double h = x_[j + 1] - x_[j], a = (x_[j + 1] - x) / h, b = (x - x_[j]) / h;
    return a * y_[j] + b * y_[j + 1] +
           ((a * a * a - a) * m_[j] + (b * b * b - b) * m_[j + 1]) * h * h / 6.0;
  }

  double deriv(double x) const {
    x = std::min(std::max(x, x_.front()), x_.back());
    size_t j = cell(x);
    double h = x_[j + 1] - x_[j], a = (x_[j + 1] - x) / h, b = (x - x_[j]) / h;
    return (y_[j + 1] - y_[j]) / h +
           (-(3 * a * a - 1) * m_[j] + (3 * b * b - 1) * m_[j + 1]) * h / 6.0;
  }

  double deriv2(double x) const {
    x = std::min(std::max(x, x_.front()), x_.back());
    size_t j = cell(x);
    double h = x_[j + 1] - x_[j], a = (x_[j + 1] - x) / h, b = (x - x_[j]) / h;
    return a * m_[j] + b * m_[j + 1];
  }

  const std::vector<double>& knots() const { return x_; }

 private:
  std::vector<double> x_, y_, m_;
};

}  // namespace

struct ModelMeasure1D::Impl {
  std::string name;
  Fn1 psi_raw, dpsi_fn, d2psi_fn;
  double nat_lo = -kInf, nat_hi = kInf;
  double xlo = 0, xhi = 0;
  bool trunc_lo = false, trunc_hi = false;
  double logZ = 0;
  double Zraw = 0;  // quadrature value of the unnormalized mass over [xlo, xhi]
  std::vector<double> breaks;  // interior non-smooth points inside the support
  std::vector<double> pb;      // panel boundaries
  std::vector<double> prefix;  // raw mass of panels before index k
  std::vector<double> nds, wts;
  double defect = 0;
  double kap = 0;
  bool semicvx = true;
  double med = 0;

  double raw_density(double x) const { return std::exp(-psi_raw(x)); }

  double cdf_raw(double x) const {  // unnormalized mass of [xlo, x]
    if (x <= xlo) return 0.0;
    if (x >= xhi) return Zraw;
    size_t k = size_t(std::upper_bound(pb.begin(), pb.end(), x) - pb.begin());
    k = std::min(std::max<size_t>(k, 1), pb.size() - 1) - 1;
    return prefix[k] + gauss([this](double u) { return raw_density(u); }, pb[k], x);
  }

  double quantile_impl(double t) const {
    if (t < -1e-12 || t > 1.0 + 1e-12 || !std::isfinite(t))
      throw std::invalid_argument("quantile: t outside [0,1]");
    t = std::min(std::max(t, 0.0), 1.0);
    if (t == 0.0) return xlo;
    if (t == 1.0) return xhi;
    double m = t * Zraw;
    size_t k = size_t(std::upper_bound(prefix.begin(), prefix.end(), m) - prefix.begin());
    k = std::min(std::max<size_t>(k, 1), prefix.size() - 1) - 1;
    double a = pb[k], b = pb[k + 1];
    auto g = [&](double x) { return cdf_raw(x) - m; };
    auto dg = [&](double x) { return raw_density(x); };
    double frac = (m - prefix[k]) / std::max(prefix[k + 1] - prefix[k], 1e-300);
    return newton_bisect(g, dg, a, b, a + frac * (b - a));
  }
};

ModelMeasure1D::ModelMeasure1D(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

namespace {

// Per-section panel boundaries with grading toward interior breakpoints,
// concatenated across sections.
std::vector<double> build_panels(double xlo, double xhi, const std::vector<double>& breaks,
                                 int n_target) {
  std::vector<double> cuts{xlo};
  for (double b : breaks)
    if (b > xlo && b < xhi) cuts.push_back(b);
  cuts.push_back(xhi);
  std::sort(cuts.begin(), cuts.end());

  double total = xhi - xlo;
  std::vector<double> pb{xlo};
  for (size_t s = 0; s + 1 < cuts.size(); ++s) {
    double a = cuts[s], b = cuts[s + 1];
    int n = std::max(8, int(std::lround(double(n_target) * (b - a) / total)));
    bool hot_lo = (s > 0);
    bool hot_hi = (s + 2 < cuts.size());
    auto sec = graded_boundaries(a, b, hot_lo, hot_hi, n);
    pb.insert(pb.end(), sec.begin() + 1, sec.end());
  }
  return pb;
}

}  // namespace

ModelMeasure1D ModelMeasure1D::from_potential(const Potential& pot, int grid_size) {
  if (grid_size < 64) throw std::invalid_argument("measure: grid_size must be at least 64");
  if (!pot.psi_raw) throw std::invalid_argument("measure: psi_raw is required");
  auto impl = std::make_shared<Impl>();
  impl->name = pot.name;
  impl->psi_raw = pot.psi_raw;
  impl->dpsi_fn = pot.dpsi;
  impl->d2psi_fn = pot.d2psi;
  impl->nat_lo = pot.lo;
  impl->nat_hi = pot.hi;
  if (!(pot.lo < pot.hi)) throw std::invalid_argument("measure: empty support");

  const double cut = -std::log(kDensityCut);
  const auto& psi = pot.psi_raw;

  // Working window containing the potential minimum. Infinite sides are
  // expanded until psi clears the truncation threshold.
  double wlo = std::isfinite(pot.lo) ? pot.lo : -1.0;
  double whi = std::isfinite(pot.hi) ? pot.hi : 1.0;
  if (!std::isfinite(pot.lo) && std::isfinite(pot.hi)) wlo = pot.hi - 2.0;
  if (std::isfinite(pot.lo) && !std::isfinite(pot.hi)) whi = pot.lo + 2.0;

  auto sample_min = [&](double a, double b, int n) {
    double m = kInf;
    for (int i = 0; i <= n; ++i) {
      double v = psi(a + (b - a) * i / n);
      if (std::isfinite(v)) m = std::min(m, v);
    }
    return m;
  };
  double psi_min = sample_min(wlo, whi, 512);
  for (int round = 0; round < 200; ++round) {
    bool grew = false;
    if (!std::isfinite(pot.lo) && psi(wlo) - psi_min < cut + 5.0) {
      double nlo = wlo - std::max(1.0, whi - wlo);
      psi_min = std::min(psi_min, sample_min(nlo, wlo, 128));
      wlo = nlo;
      grew = true;
    }
    if (!std::isfinite(pot.hi) && psi(whi) - psi_min < cut + 5.0) {
      double nhi = whi + std::max(1.0, whi - wlo);
      psi_min = std::min(psi_min, sample_min(whi, nhi, 128));
      whi = nhi;
      grew = true;
    }
    if (!grew) break;
    if (round == 199) throw std::runtime_error("measure: tail too heavy to truncate");
  }

  auto cross = [&](double a, double b) {
    return bisect([&](double x) { return psi(x) - psi_min - cut; }, a, b);
  };
  if (std::isfinite(pot.lo)) {
    impl->xlo = pot.lo;
  } else {
    // Leftmost point at threshold between the window edge and some point
    // near the minimum.
    double inner = wlo;
    while (psi(inner) - psi_min >= cut && inner < whi) inner += (whi - wlo) / 4096.0;
    impl->xlo = cross(wlo, inner);
    impl->trunc_lo = true;
  }
  if (std::isfinite(pot.hi)) {
    impl->xhi = pot.hi;
  } else {
    double inner = whi;
    while (psi(inner) - psi_min >= cut && inner > wlo) inner -= (whi - wlo) / 4096.0;
    impl->xhi = cross(inner, whi);
    impl->trunc_hi = true;
  }
  if (!(impl->xlo < impl->xhi)) throw std::runtime_error("measure: degenerate truncated support");

  for (double b : pot.interior_breaks)
    if (b > impl->xlo && b < impl->xhi) impl->breaks.push_back(b);
  std::sort(impl->breaks.begin(), impl->breaks.end());

  impl->pb = build_panels(impl->xlo, impl->xhi, impl->breaks, std::max(16, grid_size / 16));

  const GaussRule& rule = gauss_legendre(16);
  size_t npan = impl->pb.size() - 1;
  impl->prefix.assign(npan + 1, 0.0);
  impl->nds.reserve(npan * 16);
  std::vector<double> raw_w;
  raw_w.reserve(npan * 16);
  for (size_t k = 0; k < npan; ++k) {
    double a = impl->pb[k], b = impl->pb[k + 1];
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double pm = 0.0;
    for (int i = 0; i < 16; ++i) {
      double x = mid + half * rule.nodes[i];
      double w = rule.weights[i] * half * std::exp(-psi(x));
      impl->nds.push_back(x);
      raw_w.push_back(w);
      pm += w;
    }
    impl->prefix[k + 1] = impl->prefix[k] + pm;
  }
  impl->Zraw = impl->prefix.back();
  if (!(impl->Zraw > 0) || !std::isfinite(impl->Zraw))
    throw std::runtime_error("measure: unnormalizable potential");

  impl->logZ = pot.log_norm ? *pot.log_norm : std::log(impl->Zraw);
  impl->wts.resize(raw_w.size());
  double tot = 0.0;
  for (size_t i = 0; i < raw_w.size(); ++i) {
    impl->wts[i] = raw_w[i] * std::exp(-impl->logZ);
    tot += impl->wts[i];
  }
  impl->defect = std::abs(tot - 1.0);
  if (impl->defect > kMassDefectTol)
    throw std::runtime_error("measure: mass defect " + std::to_string(impl->defect) +
                             " exceeds tolerance; check log_norm or grid_size");

  impl->semicvx = pot.semi_convex;
  if (pot.kappa) {
    impl->kap = *pot.kappa;
  } else if (!pot.semi_convex) {
    impl->kap = kInf;
  } else if (pot.d2psi) {
    double k = 0.0;
    for (double x : impl->nds) k = std::max(k, -pot.d2psi(x));
    impl->kap = std::max(0.0, k);
  } else {
    throw std::invalid_argument("measure: kappa requires d2psi or an explicit value");
  }
  if (!std::isfinite(impl->kap)) impl->semicvx = false;

  impl->med = impl->quantile_impl(0.5);
  return ModelMeasure1D(std::shared_ptr<const Impl>(impl));
}

const std::string& ModelMeasure1D::name() const { return impl_->name; }
double ModelMeasure1D::x_lo() const { return impl_->xlo; }
double ModelMeasure1D::x_hi() const { return impl_->xhi; }
double ModelMeasure1D::natural_lo() const { return impl_->nat_lo; }
double ModelMeasure1D::natural_hi() const { return impl_->nat_hi; }
bool ModelMeasure1D::truncated_lo() const { return impl_->trunc_lo; }
bool ModelMeasure1D::truncated_hi() const { return impl_->trunc_hi; }

double ModelMeasure1D::psi(double x) const { return impl_->psi_raw(x) + impl_->logZ; }

double ModelMeasure1D::dpsi(double x) const {
  if (!impl_->dpsi_fn) throw std::logic_error("measure: dpsi not available");
  return impl_->dpsi_fn(x);
}

double ModelMeasure1D::d2psi(double x) const {
  if (!impl_->d2psi_fn) throw std::logic_error("measure: d2psi not available");
  return impl_->d2psi_fn(x);
}

double ModelMeasure1D::density(double x) const {
  if (x < impl_->nat_lo || x > impl_->nat_hi) return 0.0;
  return std::exp(-impl_->psi_raw(x) - impl_->logZ);
}

double ModelMeasure1D::log_norm() const { return impl_->logZ; }
double ModelMeasure1D::kappa() const { return impl_->kap; }
bool ModelMeasure1D::semi_convex() const { return impl_->semicvx; }

double ModelMeasure1D::cdf(double x) const {
  double v = impl_->cdf_raw(x) / impl_->Zraw;
  return std::min(std::max(v, 0.0), 1.0);
}

double ModelMeasure1D::quantile(double t) const { return impl_->quantile_impl(t); }

double ModelMeasure1D::median() const { return impl_->med; }

const std::vector<double>& ModelMeasure1D::breakpoints() const { return impl_->breaks; }

const std::vector<double>& ModelMeasure1D::nodes() const { return impl_->nds; }
const std::vector<double>& ModelMeasure1D::weights() const { return impl_->wts; }
double ModelMeasure1D::mass_defect() const { return impl_->defect; }

GridFunction ModelMeasure1D::sample(const Fn1& f) const {
  GridFunction out(impl_->nds.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = f(impl_->nds[i]);
  return out;
}

double ModelMeasure1D::integral_of(const GridFunction& f) const {
  if (f.size() != impl_->wts.size()) throw std::invalid_argument("integral_of: size mismatch");
  double s = 0.0;
  for (size_t i = 0; i < f.size(); ++i) s += impl_->wts[i] * f[i];
  return s;
}

double ModelMeasure1D::expectation_of(const Fn1& f) const { return integral_of(sample(f)); }

double ModelMeasure1D::median_of(const GridFunction& f) const {
  if (f.size() != impl_->wts.size()) throw std::invalid_argument("median_of: size mismatch");
  std::vector<size_t> idx(f.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return f[a] < f[b]; });
  double half = 0.5 * std::accumulate(impl_->wts.begin(), impl_->wts.end(), 0.0);
  double acc = 0.0;
  for (size_t j : idx) {
    acc += impl_->wts[j];
    if (acc >= half) return f[j];
  }
  return f[idx.back()];
}

double ModelMeasure1D::lq_norm(const GridFunction& f, double q) const {
  if (!(q >= 1.0)) throw std::invalid_argument("lq_norm: q must be >= 1");
  if (f.size() != impl_->wts.size()) throw std::invalid_argument("lq_norm: size mismatch");
  double s = 0.0;
  for (size_t i = 0; i < f.size(); ++i) s += impl_->wts[i] * std::pow(std::abs(f[i]), q);
  return std::pow(s, 1.0 / q);
}

double ModelMeasure1D::sup_norm(const GridFunction& f) const {
  double s = 0.0;
  for (double v : f) s = std::max(s, std::abs(v));
  return s;
}

ModelMeasure1D ModelMeasure1D::make_gaussian(int grid_size) {
  Potential pot;
  pot.name = "gaussian";
  pot.psi_raw = [](double x) { return 0.5 * x * x; };
  pot.dpsi = [](double x) { return x; };
  pot.d2psi = [](double) { return 1.0; };
  pot.log_norm = 0.5 * std::log(2.0 * M_PI);
  pot.kappa = 0.0;
  return from_potential(pot, grid_size);
}

ModelMeasure1D ModelMeasure1D::make_p_exponential(double p, int grid_size) {
  if (!(p >= 1.0)) throw std::invalid_argument("p_exponential: p must be >= 1");
  Potential pot;
  pot.name = "p_exponential(" + std::to_string(p) + ")";
  pot.psi_raw = [p](double x) { return std::pow(std::abs(x), p); };
  pot.dpsi = [p](double x) {
    if (x == 0.0) return 0.0;
    return p * std::pow(std::abs(x), p - 1.0) * (x > 0 ? 1.0 : -1.0);
  };
  pot.d2psi = [p](double x) {
    if (x == 0.0) return p == 2.0 ? 2.0 : (p > 2.0 ? 0.0 : kInf);
    return p * (p - 1.0) * std::pow(std::abs(x), p - 2.0);
  };
  pot.interior_breaks = {0.0};
  pot.log_norm = std::log(2.0) + std::lgamma(1.0 + 1.0 / p);
  // Convex potential: the essential convexity defect is zero even where
  // psi'' blows up or has a kink on a null set.
  pot.kappa = 0.0;
  return from_potential(pot, grid_size);
}

ModelMeasure1D ModelMeasure1D::make_uniform(double a, double b, int grid_size) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("uniform: need finite a < b");
  Potential pot;
  pot.name = "uniform(" + std::to_string(a) + "," + std::to_string(b) + ")";
  pot.psi_raw = [](double) { return 0.0; };
  pot.dpsi = [](double) { return 0.0; };
  pot.d2psi = [](double) { return 0.0; };
  pot.lo = a;
  pot.hi = b;
  pot.log_norm = std::log(b - a);
  pot.kappa = 0.0;
  return from_potential(pot, grid_size);
}

ModelMeasure1D ModelMeasure1D::make_power_alpha(double alpha, int grid_size) {
  if (!(alpha > 0.0)) throw std::invalid_argument("power_alpha: alpha must be positive");
  Potential pot;
  pot.name = "power_alpha(" + std::to_string(alpha) + ")";
  pot.psi_raw = [alpha](double x) { return -alpha * std::log(std::abs(x)); };
  pot.dpsi = [alpha](double x) { return -alpha / x; };
  pot.d2psi = [alpha](double x) { return alpha / (x * x); };
  pot.lo = -1.0;
  pot.hi = 1.0;
  pot.interior_breaks = {0.0};
  pot.log_norm = std::log(2.0 / (1.0 + alpha));
  // The density vanishes at an interior point, so no finite curvature bound
  // holds across the support.
  pot.kappa = kInf;
  pot.semi_convex = false;
  return from_potential(pot, grid_size);
}

ModelMeasure1D ModelMeasure1D::make_double_well(int grid_size) {
  Potential pot;
  pot.name = "double_well";
  pot.psi_raw = [](double x) { return 0.25 * x * x * x * x - 0.5 * x * x; };
  pot.dpsi = [](double x) { return x * x * x - x; };
  pot.d2psi = [](double x) { return 3.0 * x * x - 1.0; };
  pot.kappa = 1.0;  // sup of (1 - 3x^2)_+
  return from_potential(pot, grid_size);
}

ModelMeasure1D ModelMeasure1D::make_from_table(
    const std::vector<std::pair<double, double>>& psi_points, int grid_size) {
  auto spl = std::make_shared<CubicSpline>(psi_points);
  Potential pot;
  pot.name = "table";
  pot.psi_raw = [spl](double x) { return spl->eval(x); };
  pot.dpsi = [spl](double x) { return spl->deriv(x); };
  pot.d2psi = [spl](double x) { return spl->deriv2(x); };
  pot.lo = spl->knots().front();
  pot.hi = spl->knots().back();
  // Spline second derivative is piecewise linear, so its extrema sit at the
  // knots.
  double k = 0.0;
  for (double x : spl->knots()) k = std::max(k, -spl->deriv2(x));
  pot.kappa = std::max(0.0, k);
  return from_potential(pot, grid_size);
}

}  // namespace isocap
