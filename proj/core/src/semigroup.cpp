#include "isocap/semigroup.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "isocap/errors.hpp"
#include "isocap/orlicz.hpp"
#include "isocap/profiles.hpp"

namespace isocap {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(const char* pattern, double v) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

}  // namespace

SemigroupSolver::SemigroupSolver(const ModelMeasure1D& mu, SemigroupParams params)
    : mu_(mu), params_(params) {
  if (params_.grid_n < 8) throw std::invalid_argument("SemigroupSolver: grid too small");
  if (!(params_.dt > 0.0)) throw std::invalid_argument("SemigroupSolver: dt must be positive");
  if (!(params_.theta >= 0.5 && params_.theta <= 1.0))
    throw std::invalid_argument("SemigroupSolver: theta outside [1/2, 1]");
  int n = params_.grid_n;
  h_ = (mu_.x_hi() - mu_.x_lo()) / (n - 1);
  x_.resize(n);
  w_.resize(n);
  cond_.resize(n - 1);
  // Two-point Gauss offsets for cell quadrature; the nodes avoid cell
  // centers and edges, so isolated density zeros never poison a cell.
  const double d = h_ / (2.0 * std::sqrt(3.0));
  auto cell_mass = [&](double lo, double hi) {
    double c = 0.5 * (lo + hi), s = 0.5 * (hi - lo) / std::sqrt(3.0);
    return 0.5 * (hi - lo) * (mu_.density(c - s) + mu_.density(c + s));
  };
  for (int i = 0; i < n; ++i) {
    x_[i] = mu_.x_lo() + i * h_;
    if (i == 0)
      w_[i] = cell_mass(x_[i], x_[i] + 0.5 * h_);
    else if (i == n - 1)
      w_[i] = cell_mass(x_[i] - 0.5 * h_, x_[i]);
    else
      w_[i] = cell_mass(x_[i] - 0.5 * h_, x_[i] + 0.5 * h_);
  }
  double total = 0.0;
  for (double w : w_) total += w;
  if (!(total > 0.0)) throw std::invalid_argument("SemigroupSolver: degenerate density on grid");
  // Scaling the node weights and conductances together leaves the generator
  // unchanged and makes the discrete measure a probability measure exactly.
  for (double& w : w_) w /= total;
  for (int i = 0; i + 1 < n; ++i) {
    // Resistance form: the exact steady two-point flux is (f_{i+1} - f_i)
    // divided by the integral of 1/rho across the cell. This stays
    // second-order for smooth densities and keeps the chain connected when
    // the density has an integrable interior zero.
    double m = 0.5 * (x_[i] + x_[i + 1]);
    double resist = 0.5 * h_ * (1.0 / mu_.density(m - d) + 1.0 / mu_.density(m + d));
    cond_[i] = 1.0 / (resist * total);
  }
}

GridFunction SemigroupSolver::project(const Fn1& f) const {
  GridFunction out(x_.size());
  for (size_t i = 0; i < x_.size(); ++i) out[i] = f(x_[i]);
  return out;
}

GridFunction SemigroupSolver::step_once(const GridFunction& f, double theta) const {
  size_t n = x_.size();
  double dt = params_.dt;
  // rhs = (W + (1-theta) dt S) f with S the flux-form stiffness matrix.
  GridFunction rhs(n), diag(n), lower(n - 1), upper(n - 1);
  for (size_t i = 0; i < n; ++i) {
    double cl = i > 0 ? cond_[i - 1] : 0.0;
    double cr = i + 1 < n ? cond_[i] : 0.0;
    double flux = 0.0;
    if (i + 1 < n) flux += cr * (f[i + 1] - f[i]);
    if (i > 0) flux -= cl * (f[i] - f[i - 1]);
    rhs[i] = w_[i] * f[i] + (1.0 - theta) * dt * flux;
    diag[i] = w_[i] + theta * dt * (cl + cr);
  }
  for (size_t i = 0; i + 1 < n; ++i) lower[i] = upper[i] = -theta * dt * cond_[i];
  // Thomas elimination; the matrix is strictly diagonally dominant.
  for (size_t i = 1; i < n; ++i) {
    double m = lower[i - 1] / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  GridFunction out(n);
  out[n - 1] = rhs[n - 1] / diag[n - 1];
  for (size_t i = n - 1; i-- > 0;) out[i] = (rhs[i] - upper[i] * out[i + 1]) / diag[i];
  return out;
}

SemigroupSolver::EvolveResult SemigroupSolver::evolve_detail(const GridFunction& f0,
                                                             double t) const {
  if (f0.size() != x_.size()) throw std::invalid_argument("evolve: grid size mismatch");
  if (!(t >= 0.0)) throw std::invalid_argument("evolve: negative time");
  EvolveResult res;
  if (t == 0.0) {
    res.f = f0;
    return res;
  }
  int steps = std::max<long long>(1, std::llround(t / params_.dt));
  res.steps = steps;
  res.t_effective = steps * params_.dt;

  double lo0 = kInf, hi0 = -kInf;
  for (double v : f0) {
    lo0 = std::min(lo0, v);
    hi0 = std::max(hi0, v);
  }
  double range_eps = 1e-9 * (hi0 - lo0) + 1e-12;

  auto run = [&](double theta, bool enforce_range) {
    GridFunction f = f0;
    double norm_prev = std::sqrt(inner(f, f));
    for (int s = 0; s < steps; ++s) {
      f = step_once(f, theta);
      double norm = std::sqrt(inner(f, f));
      if (norm > norm_prev * (1.0 + 1e-10) + 1e-300)
        throw std::runtime_error("semigroup evolution unstable: L2 norm grew");
      norm_prev = norm;
      if (enforce_range) {
        for (double v : f)
          if (v < lo0 - range_eps || v > hi0 + range_eps) return std::make_pair(false, f);
      }
    }
    return std::make_pair(true, f);
  };

  if (params_.theta < 1.0) {
    auto [ok, f] = run(params_.theta, true);
    if (ok) {
      res.f = std::move(f);
      return res;
    }
    res.positivity_fallback = true;
  }
  res.f = run(1.0, false).second;
  return res;
}

GridFunction SemigroupSolver::evolve(const GridFunction& f0, double t) const {
  return evolve_detail(f0, t).f;
}

double SemigroupSolver::integrate(const GridFunction& f) const {
  double s = 0.0;
  for (size_t i = 0; i < w_.size(); ++i) s += w_[i] * f[i];
  return s;
}

double SemigroupSolver::inner(const GridFunction& f, const GridFunction& g) const {
  double s = 0.0;
  for (size_t i = 0; i < w_.size(); ++i) s += w_[i] * f[i] * g[i];
  return s;
}

double SemigroupSolver::lq_norm(const GridFunction& f, double q) const {
  if (!(q >= 1.0)) throw std::invalid_argument("lq_norm: q must be at least 1");
  double s = 0.0;
  for (size_t i = 0; i < w_.size(); ++i) s += w_[i] * std::pow(std::abs(f[i]), q);
  return std::pow(s, 1.0 / q);
}

double SemigroupSolver::sup_norm(const GridFunction& f) const {
  double s = 0.0;
  for (double v : f) s = std::max(s, std::abs(v));
  return s;
}

double SemigroupSolver::dirichlet(const GridFunction& f, const GridFunction& g) const {
  double s = 0.0;
  for (size_t i = 0; i + 1 < x_.size(); ++i)
    s += cond_[i] * (f[i + 1] - f[i]) * (g[i + 1] - g[i]);
  return s;
}

GridFunction SemigroupSolver::gradient(const GridFunction& f) const {
  size_t n = x_.size();
  GridFunction out(n);
  out[0] = (f[1] - f[0]) / h_;
  out[n - 1] = (f[n - 1] - f[n - 2]) / h_;
  for (size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) / (2.0 * h_);
  return out;
}

GridFunction SemigroupSolver::apply_generator(const GridFunction& f) const {
  size_t n = x_.size();
  GridFunction out(n);
  for (size_t i = 0; i < n; ++i) {
    double flux = 0.0;
    if (i + 1 < n) flux += cond_[i] * (f[i + 1] - f[i]);
    if (i > 0) flux -= cond_[i - 1] * (f[i] - f[i - 1]);
    out[i] = flux / w_[i];
  }
  return out;
}

double SemigroupSolver::spectral_gap() const {
  int n = int(x_.size());
  // Symmetrize -L as T = W^{-1/2} (-S) W^{-1/2}: same spectrum, tridiagonal.
  std::vector<double> d(n), e(n - 1);
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    double cl = i > 0 ? cond_[i - 1] : 0.0;
    double cr = i + 1 < n ? cond_[i] : 0.0;
    d[i] = (cl + cr) / w_[i];
    scale = std::max(scale, d[i]);
  }
  for (int i = 0; i + 1 < n; ++i) e[i] = -cond_[i] / std::sqrt(w_[i] * w_[i + 1]);
  lapack_int m = 0;
  std::vector<double> evals(2);
  std::vector<lapack_int> isuppz(4);
  lapack_int info =
      LAPACKE_dstevr(LAPACK_COL_MAJOR, 'N', 'I', n, d.data(), e.data(), 0.0, 0.0, 1, 2, 0.0, &m,
                     evals.data(), nullptr, n, isuppz.data());
  if (info != 0 || m < 2) throw std::runtime_error("spectral_gap: eigenvalue solve failed");
  double lam0 = evals[0], lam1 = evals[1];
  if (std::abs(lam0) > 1e-8 * std::max(lam1, 1.0) + 1e-10 * scale)
    throw std::runtime_error("spectral_gap: zero mode not resolved");
  return lam1;
}

double K_const(double kappa, double t) {
  if (!(kappa >= 0.0)) throw std::invalid_argument("K_const: negative curvature defect");
  if (!(t >= 0.0)) throw std::invalid_argument("K_const: negative time");
  if (!std::isfinite(kappa)) return 0.0;
  if (kappa == 0.0) return 2.0 * t;
  return -std::expm1(-2.0 * kappa * t) / kappa;
}

double inv_sqrt_K_integral(double kappa, double t) {
  if (!(kappa >= 0.0) || !(t >= 0.0)) throw std::invalid_argument("inv_sqrt_K_integral: bad arguments");
  if (t == 0.0) return 0.0;
  if (!std::isfinite(kappa)) return kInf;
  if (kappa == 0.0) return std::sqrt(2.0 * t);
  // s = u^2 removes the inverse square-root endpoint: 2u/sqrt(K(u^2)) is
  // bounded near zero because K(s) ~ 2s.
  auto g = [kappa](double u) { return 2.0 * u / std::sqrt(K_const(kappa, u * u)); };
  return integrate_adaptive(g, 0.0, std::sqrt(t), 1e-11, 32);
}

double K_power_integral(double kappa, double t, double expo) {
  if (!(kappa >= 0.0) || !(t >= 0.0) || !(expo >= 0.0))
    throw std::invalid_argument("K_power_integral: bad arguments");
  if (t == 0.0) return 0.0;
  if (expo == 0.0) return t;
  if (!std::isfinite(kappa)) return 0.0;
  if (kappa == 0.0) return std::pow(2.0, expo) * std::pow(t, expo + 1.0) / (expo + 1.0);
  auto g = [kappa, expo](double s) { return std::pow(K_const(kappa, s), expo); };
  return integrate_adaptive(g, 0.0, t, 1e-11, 32);
}

VerifiedConstant decay_constant_from_capacity(const ModelMeasure1D& mu, const NFunction& N,
                                              double q) {
  if (!(q > 1.0)) throw std::invalid_argument("decay_constant_from_capacity: q must exceed 1");
  double D2 = kInf;
  for (double t : log_spaced(0.005, 0.5, 30)) {
    double den = N.adjoint(t);
    if (den > 0.0) D2 = std::min(D2, capq_profile(mu, q, t) / den);
  }
  VerifiedConstant out;
  out.value = 0.125 * D2;
  out.verified = std::isfinite(D2) && D2 > 0.0;
  out.provenance = "capacity bracket lower edge D2/4, halved for mean recentering";
  return out;
}

Fn1 mollified_tail_indicator(const ModelMeasure1D& mu, double mass, double width) {
  if (!(mass > 0.0 && mass < 1.0)) throw std::invalid_argument("mollified_tail_indicator: bad mass");
  if (!(width > 0.0)) throw std::invalid_argument("mollified_tail_indicator: bad width");
  double a = mu.quantile(1.0 - mass) - 0.5 * width;
  return [a, width](double x) { return smoothstep((x - a) / width); };
}

Fn1 centered(const SemigroupSolver& S, const Fn1& f) {
  double c0 = S.integrate(S.project(f));
  return [f, c0](double x) { return f(x) - c0; };
}

VerificationReport verify_gradient_estimate(const SemigroupSolver& S, const Fn1& f0, double t,
                                            double tol) {
  if (!(t > 0.0)) throw std::invalid_argument("verify_gradient_estimate: t must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("verify_gradient_estimate: tol must be positive");
  VerificationReport rep;
  rep.title = "gradient-estimate";
  double kappa = S.measure().kappa();
  rep.note_env("measure", S.measure().name());
  rep.note_env("kappa", kappa);
  rep.note_env("t", t);
  rep.note_env("grid_n", double(S.params().grid_n));
  rep.note_env("dt", S.params().dt);

  GridFunction f = S.project(f0);
  GridFunction f2(f.size());
  for (size_t i = 0; i < f.size(); ++i) f2[i] = f[i] * f[i];
  auto u = S.evolve_detail(f, t);
  auto v = S.evolve_detail(f2, t);
  if (u.positivity_fallback || v.positivity_fallback) rep.note_env("fallback", "theta=1");
  double te = u.t_effective;
  double K = K_const(kappa, te);
  GridFunction grad = S.gradient(u.f);

  size_t n = f.size();
  double worst = kInf, wl = 0.0, wr = 0.0, wx = 0.0, scale = 1.0;
  for (size_t i = 1; i + 1 < n; ++i) {
    double lhs = K * grad[i] * grad[i];
    double rhs = v.f[i] - u.f[i] * u.f[i];
    scale = std::max(scale, std::abs(rhs));
    if (rhs - lhs < worst) {
      worst = rhs - lhs;
      wl = lhs;
      wr = rhs;
      wx = S.grid()[i];
    }
  }
  rep.add({"pointwise-worst-node", refs::reverse_poincare, wl, wr, tol * scale, false});
  rep.note_env("worst-x", wx);
  rep.note_env("K", K);

  bool rough_ok = kappa == 0.0 || (std::isfinite(kappa) && te <= 0.5 / kappa);
  if (rough_ok) {
    // K(kappa, t) >= t on this time range, so t |grad P_t f|^2 is the rough
    // form of the same estimate.
    double worst2 = kInf, wl2 = 0.0, wr2 = 0.0;
    for (size_t i = 1; i + 1 < n; ++i) {
      double lhs = te * grad[i] * grad[i];
      double rhs = v.f[i] - u.f[i] * u.f[i];
      if (rhs - lhs < worst2) {
        worst2 = rhs - lhs;
        wl2 = lhs;
        wr2 = rhs;
      }
    }
    rep.add({"rough-form-worst-node", refs::rough_curvature_K, wl2, wr2, tol * scale, false});
  }
  return rep;
}

VerificationReport verify_dual_l1_commutation(const SemigroupSolver& S, const Fn1& f0, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("verify_dual_l1_commutation: t must be positive");
  VerificationReport rep;
  rep.title = "l1-smoothing";
  double kappa = S.measure().kappa();
  rep.note_env("measure", S.measure().name());
  rep.note_env("kappa", kappa);
  rep.note_env("t", t);

  GridFunction f = S.project(f0);
  auto u = S.evolve_detail(f, t);
  double te = u.t_effective;
  GridFunction grad = S.gradient(u.f);
  GridFunction abs_grad(grad.size()), abs_f(f.size());
  for (size_t i = 0; i < grad.size(); ++i) abs_grad[i] = std::abs(grad[i]);
  for (size_t i = 0; i < f.size(); ++i) abs_f[i] = std::abs(f[i]);
  double grad_l1 = S.integrate(abs_grad);
  double f_l1 = S.integrate(abs_f);

  double coeff = inv_sqrt_K_integral(kappa, te);
  rep.note_env("coefficient", coeff);
  rep.add({"l1-smoothing", refs::l1_gradient_commutation, coeff * grad_l1, f_l1,
           1e-6 * std::max(1.0, f_l1), false});
  // sqrt(2t) <= coeff always (K <= 2s), so this closed form is implied.
  rep.add({"rough-closed-form", refs::rough_curvature_K, std::sqrt(2.0 * te) * grad_l1, f_l1,
           1e-6 * std::max(1.0, f_l1), false});
  return rep;
}

namespace {

VerificationReport verify_decay_impl(const SemigroupSolver& S, const NFunction& N, double q,
                                     const VerifiedConstant& D, const Fn1& f0,
                                     const std::vector<double>& ts, bool high) {
  if (high && !(q >= 2.0))
    throw std::invalid_argument("verify_decay_high_q: q must be at least 2");
  if (!high && !(q > 1.0 && q <= 2.0))
    throw std::invalid_argument("verify_decay_low_q: q outside (1, 2]");
  if (!D.verified)
    throw std::invalid_argument("decay verification refuses an unverified constant");
  if (!N.is_young()) throw hypothesis_error("decay verification: N is not a Young function");

  VerificationReport rep;
  rep.title = high ? "decay-l2-high-q" : "decay-lq-low-q";
  const ModelMeasure1D& mu = S.measure();
  double kappa = mu.kappa();
  rep.note_env("measure", mu.name());
  rep.note_env("N", N.name());
  rep.note_env("q", q);
  rep.note_env("kappa", kappa);
  rep.note_env("D", D.value);
  rep.note_env("D-provenance", D.provenance);

  GridFunction f = S.project(f0);
  double mean = S.integrate(f);
  if (std::abs(mean) > 1e-10 * std::max(1.0, S.sup_norm(f)))
    throw std::invalid_argument("decay verification requires a centered input");

  // Associate-norm upper estimate on the measure's quadrature nodes; the
  // decay bound is monotone in it, so an upper estimate keeps the asserted
  // inequality a consequence of the exact one.
  double nstar = dual_norm_upper(mu, mu.sample(f0), N);
  double sup = S.sup_norm(f);
  double l1 = 0.0;
  for (size_t i = 0; i < f.size(); ++i) l1 += S.node_weights()[i] * std::abs(f[i]);
  rep.note_env("norm-associate", nstar);
  rep.note_env("norm-sup", sup);
  rep.note_env("norm-l1", l1);

  double E0 = S.inner(f, f);
  double Eq = 0.0;
  for (size_t i = 0; i < f.size(); ++i)
    Eq += S.node_weights()[i] * std::pow(std::abs(f[i]), q);

  auto rhs_high = [&](double t) {
    double amp = (q - 1.0) * (2.0 * std::pow(D.value, q) /
                              (std::pow(nstar, q) * std::pow(sup, q - 2.0))) *
                 std::pow(E0, q - 1.0) * K_power_integral(kappa, t, 0.5 * (q - 2.0));
    return E0 * std::pow(1.0 + amp, -1.0 / (q - 1.0));
  };
  auto rhs_low = [&](double t) {
    double amp = (2.0 * D.value * D.value /
                  (std::pow(l1, 2.0 * (2.0 - q) / (q - 1.0)) * nstar * nstar)) *
                 std::pow(Eq, 2.0 / (q * (q - 1.0))) * t;
    return Eq * std::pow(1.0 + amp, -0.5 * q * (q - 1.0));
  };

  for (double t : ts) {
    if (!(t >= 0.0)) throw std::invalid_argument("decay verification: negative time");
    auto u = S.evolve_detail(f, t);
    double te = u.t_effective;
    double lhs, rhs;
    if (high) {
      lhs = S.inner(u.f, u.f);
      rhs = rhs_high(te);
    } else {
      lhs = 0.0;
      for (size_t i = 0; i < u.f.size(); ++i)
        lhs += S.node_weights()[i] * std::pow(std::abs(u.f[i]), q);
      rhs = rhs_low(te);
    }
    rep.add({fmt("decay-t=%.4g", t), high ? refs::decay_l2_high_q : refs::decay_lq_low_q, lhs,
             rhs, 1e-6 * std::max(1.0, rhs), false});
    if (q == 2.0) {
      double other = high ? rhs_low(te) : rhs_high(te);
      rep.add({fmt("q2-formulas-coincide-t=%.4g", t), refs::decay_l2_high_q,
               std::abs(rhs - other), 0.0, 1e-9 * std::max(1.0, rhs), false});
    }
  }
  return rep;
}

}  // namespace

VerificationReport verify_decay_high_q(const SemigroupSolver& S, const NFunction& N, double q,
                                       const VerifiedConstant& D, const Fn1& f0,
                                       const std::vector<double>& ts) {
  return verify_decay_impl(S, N, q, D, f0, ts, true);
}

VerificationReport verify_decay_low_q(const SemigroupSolver& S, const NFunction& N, double q,
                                      const VerifiedConstant& D, const Fn1& f0,
                                      const std::vector<double>& ts) {
  return verify_decay_impl(S, N, q, D, f0, ts, false);
}

HeatFlowIso isoperimetric_via_semigroup_detail(const SemigroupSolver& S, double a_mass, double t) {
  if (!(a_mass > 0.0 && a_mass < 1.0))
    throw std::invalid_argument("isoperimetric_via_semigroup: mass outside (0, 1)");
  if (!(t > 0.0)) throw std::invalid_argument("isoperimetric_via_semigroup: t must be positive");
  double kappa = S.measure().kappa();
  if (kappa > 0.0 && !(t <= 0.5 / kappa))
    throw std::invalid_argument("isoperimetric_via_semigroup: t exceeds 1/(2 kappa)");

  // theta = 1 and an even step count make P_{t/2} an exact matrix square
  // root of P_t, so the self-adjointness identity holds to roundoff.
  SemigroupSolver S1(S.measure(), {S.params().grid_n, S.params().dt, 1.0});
  int half_steps = std::max<long long>(1, std::llround(0.5 * t / S1.params().dt));
  double t_eff = 2.0 * half_steps * S1.params().dt;

  double cut = S.measure().quantile(1.0 - a_mass);
  GridFunction f(S1.grid().size());
  for (size_t i = 0; i < f.size(); ++i) f[i] = S1.grid()[i] >= cut ? 1.0 : 0.0;

  GridFunction g = S1.evolve(f, half_steps * S1.params().dt);
  GridFunction u = S1.evolve(g, half_steps * S1.params().dt);
  double mu_a = S1.integrate(f);
  double half_sq = S1.inner(g, g);
  double full_pair = S1.inner(f, u);

  HeatFlowIso out;
  out.set_mass = mu_a;
  out.t_effective = t_eff;
  out.identity_gap = std::abs(full_pair - half_sq);
  double denom = inv_sqrt_K_integral(kappa, t_eff);
  out.lower_bound = denom > 0.0 ? 2.0 * (mu_a - half_sq) / denom : 0.0;
  return out;
}

double isoperimetric_via_semigroup(const SemigroupSolver& S, double a_mass, double t) {
  return isoperimetric_via_semigroup_detail(S, a_mass, t).lower_bound;
}

VerificationReport verify_semigroup_axioms(const SemigroupSolver& S, unsigned seed) {
  VerificationReport rep;
  rep.title = "semigroup-axioms";
  rep.note_env("measure", S.measure().name());
  rep.note_env("grid_n", double(S.params().grid_n));
  rep.note_env("dt", S.params().dt);
  rep.note_env("theta", S.params().theta);
  rep.note_env("seed", double(seed));

  double lo = S.measure().x_lo(), span = S.measure().x_hi() - S.measure().x_lo();
  double phase = 0.1 * (seed % 7);
  GridFunction f = S.project([lo, span, phase](double x) {
    double y = (x - lo) / span;
    return std::sin(3.14159265358979323846 * (y + phase)) + 0.3 * std::cos(3.0 * 3.14159265358979323846 * y);
  });
  GridFunction g = S.project([lo, span](double x) {
    double y = (x - lo) / span;
    return y * y - 0.5 * y;
  });
  double scale = std::max(1.0, S.sup_norm(f));

  {
    GridFunction u = S.evolve(f, 0.0);
    double d = 0.0;
    for (size_t i = 0; i < f.size(); ++i) d = std::max(d, std::abs(u[i] - f[i]));
    rep.add({"identity-at-zero", refs::semigroup_axioms, d, 0.0, 1e-14 * scale, false});
  }
  {
    double dt = S.params().dt;
    GridFunction two = S.evolve(S.evolve(f, 50 * dt), 50 * dt);
    GridFunction one = S.evolve(f, 100 * dt);
    double d = 0.0;
    for (size_t i = 0; i < f.size(); ++i) d = std::max(d, std::abs(two[i] - one[i]));
    rep.add({"composition", refs::semigroup_axioms, d, 0.0, 1e-10 * scale, false});
  }
  {
    GridFunction u = S.evolve(f, 100 * S.params().dt);
    double d = std::abs(S.integrate(u) - S.integrate(f));
    rep.add({"conservation", refs::semigroup_axioms, d, 0.0, 1e-12 * scale, false});
  }
  {
    GridFunction uf = S.evolve(f, S.params().dt);
    GridFunction ug = S.evolve(g, S.params().dt);
    double d = std::abs(S.inner(uf, g) - S.inner(f, ug));
    rep.add({"self-adjointness", refs::semigroup_axioms, d, 0.0, 1e-12 * scale, false});
  }
  {
    SemigroupSolver S1(S.measure(), {S.params().grid_n, S.params().dt, 1.0});
    double cut = S.measure().quantile(0.7);
    GridFunction ind(S1.grid().size());
    for (size_t i = 0; i < ind.size(); ++i) ind[i] = S1.grid()[i] >= cut ? 1.0 : 0.0;
    GridFunction u = S1.evolve(ind, 50 * S1.params().dt);
    double mn = kInf, mx = -kInf;
    for (double v : u) {
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    rep.add({"positivity", refs::semigroup_axioms, -mn, 0.0, 1e-12, false});
    rep.add({"sup-contractivity", refs::semigroup_axioms, mx, 1.0, 1e-12, false});
  }
  {
    GridFunction u = f;
    double mean = S.integrate(f);
    auto var = [&](const GridFunction& v) {
      double s = 0.0;
      for (size_t i = 0; i < v.size(); ++i)
        s += S.node_weights()[i] * (v[i] - mean) * (v[i] - mean);
      return s;
    };
    double prev = var(u), grow = 0.0;
    for (int k = 0; k < 10; ++k) {
      u = S.evolve(u, 20 * S.params().dt);
      double cur = var(u);
      grow = std::max(grow, cur - prev);
      prev = cur;
    }
    rep.add({"l2-monotone-decay", refs::semigroup_axioms, grow, 0.0, 1e-12 * scale, false});
  }
  return rep;
}

}  // namespace isocap
