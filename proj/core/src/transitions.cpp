#include "isocap/transitions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "isocap/errors.hpp"
#include "isocap/orlicz.hpp"
#include "isocap/probes.hpp"

namespace isocap {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(const char* pattern, double v) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

void require_young(const NFunction& N, const char* where) {
  if (!N.is_young()) throw hypothesis_error(std::string(where) + ": N is not a Young function");
}

void require_qmono(const NFunction& N, double q, const char* where) {
  if (!N.qmono(q)) throw hypothesis_error(std::string(where) + ": N(t)^{1/q}/t is not nondecreasing");
}

}  // namespace

double gamma_const(double q0, double q) {
  if (!(q0 >= 1.0)) throw std::invalid_argument("gamma_const: q0 must be at least 1");
  if (!(q > q0)) throw std::invalid_argument("gamma_const: need q > q0");
  if (q0 == 1.0) return 1.0;
  double p0 = q0 / (q0 - 1.0);
  double p = q / (q - 1.0);
  return std::pow(p0 / p - 1.0, 1.0 / p0) / std::pow(1.0 - p / p0, 1.0 / p);
}

LiftResult lift_capacity_detail(double q0, double q, const Fn1& cap_q0, double a, double b) {
  if (!(q0 >= 1.0 && q > q0)) throw std::invalid_argument("lift_capacity: need 1 <= q0 < q");
  if (!(a >= 0.0 && a < b && b < 1.0)) throw std::invalid_argument("lift_capacity: need 0 <= a < b < 1");
  double p = q / (q - 1.0);
  double gamma = gamma_const(q0, q);

  // A vanishing input capacity anywhere in (a, b) drives the integral to
  // infinity and the bound to zero; detect it on a scan so quadrature never
  // sees the singularity.
  for (double s : lin_spaced(a + 1e-9 * (b - a), b - 1e-9 * (b - a), 65)) {
    double c = cap_q0(s);
    if (!(c > 0.0) && !std::isnan(c)) return {0.0, true};
    if (std::isnan(c)) throw std::invalid_argument("lift_capacity: cap_q0 returned NaN");
  }

  auto weight = [&](double c) {
    // cap^{-p}, treating +inf capacity as a free (zero-cost) stretch.
    if (c == kInf) return 0.0;
    return std::pow(c, -p);
  };

  double J;
  if (q0 == 1.0) {
    // p0 = inf: the kernel (s-a)^{-p/p0} is identically one.
    J = integrate_adaptive([&](double s) { return weight(cap_q0(s)); }, a, b, 1e-11, 48);
  } else {
    double p0 = q0 / (q0 - 1.0);
    if (!(p < p0)) throw std::invalid_argument("lift_capacity: need q > q0");
    // s = a + u^m with m = p0/(p0-p) flattens the endpoint kernel exactly.
    double m = p0 / (p0 - p);
    double u_hi = std::pow(b - a, 1.0 / m);
    J = integrate_adaptive([&](double u) { return m * weight(cap_q0(a + std::pow(u, m))); }, 0.0,
                           u_hi, 1e-11, 48);
  }
  if (!std::isfinite(J)) return {0.0, true};
  if (J <= 0.0) return {kInf, false};
  return {std::pow(J, -1.0 / p) / gamma, false};
}

double lift_capacity(double q0, double q, const Fn1& cap_q0, double a, double b) {
  return lift_capacity_detail(q0, q, cap_q0, a, b).value;
}

InequalityConstant cap_to_orlicz_bracket(double q, const NFunction& N, double D2,
                                         bool weak_variant, bool q1_optimal) {
  if (!(q >= 1.0)) throw std::invalid_argument("cap_to_orlicz_bracket: q must be at least 1");
  if (!(D2 >= 0.0)) throw std::invalid_argument("cap_to_orlicz_bracket: negative capacity rate");
  require_young(N, "cap_to_orlicz_bracket");
  require_qmono(N, q, "cap_to_orlicz_bracket");
  InequalityConstant out;
  out.name = std::string(weak_variant ? "D_orlicz_weak(" : "D_orlicz(") + N.name() + "," +
             fmt("q=%.17g)", q);
  bool tight = (q == 1.0 && q1_optimal);
  out.lower = tight ? D2 : 0.25 * D2;
  out.upper = D2;
  out.provenance = tight ? "capacity rate, exact at q=1" : "capacity rate bracket [D2/4, D2]";
  return out;
}

double orlicz_to_cap(double q, const NFunction& N, double D, double t) {
  if (!(q >= 1.0)) throw std::invalid_argument("orlicz_to_cap: q must be at least 1");
  if (!(D >= 0.0)) throw std::invalid_argument("orlicz_to_cap: negative constant");
  if (!(t >= 0.0 && t <= 0.5)) throw std::invalid_argument("orlicz_to_cap: t outside [0, 1/2]");
  require_young(N, "orlicz_to_cap");
  if (t == 0.0) return 0.0;
  return D * N.adjoint(t);
}

double forward_constant_B(const NFunction& N, double q) {
  if (!(q > 1.0)) throw std::invalid_argument("forward_constant_B: q must exceed 1");
  require_young(N, "forward_constant_B");
  require_qmono(N, q, "forward_constant_B");
  double p = q / (q - 1.0);
  double y_hi = std::log(0.5);

  // F(t) = adjoint(t)^p * integral_t^{1/2} ds / (s adjoint(s)^p), written in
  // log coordinates as a ratio so the integrand stays within [0, 1] for
  // nondecreasing adjoints and never overflows.
  auto log_adj = [&](double y) { return std::log(N.adjoint(std::exp(y))); };
  auto F_log = [&](double lt) {
    double la = log_adj(lt);
    auto integrand = [&](double y) {
      double d = p * (la - log_adj(y));
      return d > 0.0 ? 1.0 : std::exp(d);
    };
    auto bd = graded_boundaries(lt, y_hi, true, false, 48);
    return integrate_panels(integrand, bd);
  };

  auto grid = log_spaced(1e-30, 0.4999, 240);
  double best = -kInf, best_lt = std::log(grid[0]);
  for (double t : grid) {
    double lt = std::log(t);
    double v = F_log(lt);
    if (v > best) {
      best = v;
      best_lt = lt;
    }
  }
  double step = (std::log(0.4999) - std::log(1e-30)) / (grid.size() - 1);
  double lo = best_lt - step, hi = std::min(best_lt + step, y_hi - 1e-12);
  double refined = golden_min([&](double lt) { return -F_log(lt); }, lo, hi, 80);
  best = std::max(best, F_log(refined));
  if (!(best > 0.0)) throw std::runtime_error("forward_constant_B: degenerate supremum");
  return 0.25 * std::pow(best, -1.0 / p);
}

double converse_constant_C(const NFunction& N, double q, double c2, int t_grid) {
  if (!(q > 1.0 && q <= 2.0)) throw std::invalid_argument("converse_constant_C: q outside (1, 2]");
  if (t_grid < 2) throw std::invalid_argument("converse_constant_C: t_grid too small");
  if (!(c2 > 0.0)) throw std::invalid_argument("converse_constant_C: c2 must be positive");
  require_young(N, "converse_constant_C");
  require_qmono(N, q, "converse_constant_C");
  double p = q / (q - 1.0);
  double adj_half = N.adjoint(0.5);

  // Beyond mass 1/2 the adjoint is extended homogeneously, which makes the
  // tail of the defining integral exact.
  double tail = std::pow(2.0, 1.0 - 2.0 / q) / (adj_half * adj_half);
  auto log_adj = [&](double y) { return std::log(N.adjoint(std::exp(y))); };
  auto N2_inv_sq = [&](double t) {
    double lt = std::log(t);
    double y_hi = std::log(0.5);
    if (lt >= y_hi) return tail;
    // integral_t^{1/2} s^{-2/p} adjoint(s)^{-2} ds in log coordinates.
    auto integrand = [&](double y) { return std::exp(y * (1.0 - 2.0 / p) - 2.0 * log_adj(y)); };
    auto bd = graded_boundaries(lt, y_hi, true, false, 48);
    return integrate_panels(integrand, bd) + tail;
  };
  auto expr_log = [&](double lt) {
    double t = std::exp(lt);
    double n2 = 1.0 / std::sqrt(N2_inv_sq(t));
    return std::log(std::pow(t, 1.0 / q - 0.5) * n2 / N.adjoint(t));
  };

  auto grid = log_spaced(1e-12, 0.4999, size_t(t_grid));
  double best = kInf, best_lt = std::log(grid[0]);
  for (double t : grid) {
    double lt = std::log(t);
    double v = expr_log(lt);
    if (v < best) {
      best = v;
      best_lt = lt;
    }
  }
  double step = (std::log(0.4999) - std::log(1e-12)) / (grid.size() - 1);
  double refined = golden_min(expr_log, best_lt - step, best_lt + step, 80);
  best = std::min(best, expr_log(refined));
  double n2_half = 1.0 / std::sqrt(tail);
  return std::min(c2, n2_half) * std::exp(best);
}

double converse_chain_case1(double q) {
  if (!(q > 1.0)) throw std::invalid_argument("converse_chain_case1: q must exceed 1");
  if (q >= 2.0) {
    double A = 1.0 + (q - 1.0) * std::pow(2.0, 0.5 * q);
    double eta = 1.0 - std::pow(A, -1.0 / (q - 1.0));
    return eta * std::pow(2.0, 2.0 / q - 3.0) * std::pow(0.5 * q, -1.0 / q);
  }
  double eta2 = 1.0 - std::pow(3.0, -0.5 * q * (q - 1.0));
  return eta2 * std::pow(2.0, 1.0 / q - 2.0) / (q * std::pow(2.0, 1.0 / (q - 1.0)));
}

double converse_chain_case2(double q) {
  if (!(q > 1.0)) throw std::invalid_argument("converse_chain_case2: q must exceed 1");
  if (q >= 2.0) {
    double g = (q - 1.0) * std::pow(2.0, 0.5 * q);
    double beta = (std::pow(1.0 + g, 1.0 / (q - 1.0)) - 1.0) / g;
    double c3 = beta * (q - 1.0) / (1.0 + beta * (q - 1.0) * std::pow(2.0, 0.5 * q));
    return c3 * std::pow(2.0, 3.5 - 2.0 * q - 1.0 / q) / q;
  }
  double eta2 = 1.0 - std::pow(3.0, -0.5 * q * (q - 1.0));
  return eta2 * std::pow(2.0, 1.0 / q - 1.5) / (q * std::pow(2.0, 2.0 / (q - 1.0)));
}

double converse_iso_bound(double q, const NFunction& N, double D, double kappa, double t,
                          const ConverseConstants& cc) {
  if (!(q > 1.0)) throw std::invalid_argument("converse_iso_bound: q must exceed 1");
  if (!(t > 0.0 && t <= 0.5)) throw std::invalid_argument("converse_iso_bound: t outside (0, 1/2]");
  if (!(D >= 0.0)) throw std::invalid_argument("converse_iso_bound: negative constant");
  if (!(kappa >= 0.0)) throw std::invalid_argument("converse_iso_bound: negative curvature defect");
  require_young(N, "converse_iso_bound");
  double D_eff = cc.em_factor * D;

  double mult;
  if (cc.use_capacity_route) {
    if (!(q <= 2.0))
      throw std::invalid_argument("converse_iso_bound: capacity route requires q <= 2");
    mult = converse_constant_C(N, q, cc.c2_capacity) * D_eff;
  } else {
    double term1 = converse_chain_case1(q) * D_eff;
    double r = std::max(q, 2.0);
    double term2;
    if (kappa == 0.0) {
      term2 = kInf;  // curvature branch unavailable; the linear branch stands alone
    } else if (!std::isfinite(kappa)) {
      term2 = 0.0;  // unbounded convexity defect: the chain degenerates
    } else {
      term2 = converse_chain_case2(q) * std::pow(N.adjoint(0.5), r - 1.0) * std::pow(D_eff, r) /
              std::pow(kappa, 0.5 * (r - 1.0));
    }
    mult = std::min(term1, term2);
  }
  return mult * std::pow(t, 1.0 - 1.0 / q) * N.adjoint(t);
}

namespace {

double measured_constant_impl(const ModelMeasure1D& mu, const NFunction& N, double q,
                              unsigned seed, bool weak) {
  if (!(q >= 1.0)) throw std::invalid_argument("measured constant: q must be at least 1");
  require_young(N, "measured constant");
  auto probes = make_probe_family(mu, q, seed);
  double best = kInf;
  for (const auto& pr : probes) {
    GridFunction f = mu.sample(pr.f);
    GridFunction df = mu.sample(pr.df);
    double num = mu.lq_norm(df, q);
    if (!std::isfinite(num)) continue;
    double med = mu.median_of(f);
    for (double& v : f) v -= med;
    double den = weak ? weak_orlicz_norm(mu, f, N) : orlicz_norm(mu, f, N);
    if (!(den > 1e-12 * std::max(1.0, num))) continue;
    best = std::min(best, num / den);
  }
  if (!std::isfinite(best)) throw std::runtime_error("measured constant: no usable probe");
  return best;
}

}  // namespace

double measured_orlicz_constant(const ModelMeasure1D& mu, const NFunction& N, double q,
                                unsigned seed) {
  return measured_constant_impl(mu, N, q, seed, false);
}

double measured_weak_orlicz_constant(const ModelMeasure1D& mu, const NFunction& N, double q,
                                     unsigned seed) {
  return measured_constant_impl(mu, N, q, seed, true);
}

double profile_orlicz_rate(const IsoProfiler& prof, const NFunction& N, double q,
                           const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw std::invalid_argument("profile_orlicz_rate: empty grid");
  require_young(N, "profile_orlicz_rate");
  double best = kInf;
  for (double t : t_grid) {
    if (!(t > 0.0 && t <= 0.5)) throw std::invalid_argument("profile_orlicz_rate: t outside (0, 1/2]");
    double tilde = std::min(prof.value(t), prof.value(1.0 - t));
    double den = std::pow(t, 1.0 - 1.0 / q) * N.adjoint(t);
    if (!(den > 0.0)) continue;
    best = std::min(best, tilde / den);
  }
  return best;
}

VerificationReport forward_theorem_check(const ModelMeasure1D& mu, const NFunction& N, double q,
                                         double D_iso, unsigned seed) {
  if (!(q > 1.0)) throw std::invalid_argument("forward_theorem_check: q must exceed 1");
  if (!(D_iso >= 0.0)) throw std::invalid_argument("forward_theorem_check: negative rate");
  VerificationReport rep;
  rep.title = "forward-orlicz-sobolev";
  rep.note_env("measure", mu.name());
  rep.note_env("N", N.name());
  rep.note_env("q", q);
  rep.note_env("D_iso", D_iso);
  rep.note_env("seed", double(seed));

  require_young(N, "forward_theorem_check");
  if (!N.qmono(q)) {
    rep.hypothesis_failures.push_back("N(t)^{1/q}/t is not nondecreasing");
    return rep;
  }

  // Recheck the profile hypothesis Itilde(t) >= D_iso t^{1-1/q} adjoint(t).
  IsoProfiler prof(mu);
  double worst_h = kInf, worst_h_lhs = 0.0, worst_h_rhs = 0.0, worst_h_t = 0.0;
  for (double t : log_spaced(1e-3, 0.5, 40)) {
    double tilde = std::min(prof.value(t), prof.value(1.0 - t));
    double need = D_iso * std::pow(t, 1.0 - 1.0 / q) * N.adjoint(t);
    double m = tilde - need;
    if (m < worst_h) {
      worst_h = m;
      worst_h_lhs = need;
      worst_h_rhs = tilde;
      worst_h_t = t;
    }
  }
  auto& hleg = rep.add({"profile-hypothesis-worst-t", refs::profile_rate, worst_h_lhs, worst_h_rhs,
                        1e-9 * std::max(1.0, std::abs(worst_h_rhs)), false});
  rep.note_env("hypothesis-worst-t", worst_h_t);
  if (!hleg.pass())
    rep.hypothesis_failures.push_back(fmt("profile rate hypothesis fails near t=%.6g", worst_h_t));

  double B = forward_constant_B(N, q);
  rep.note_env("B", B);
  auto probes = make_probe_family(mu, q, seed);
  double worst = kInf, worst_lhs = 0.0, worst_rhs = 0.0;
  std::string worst_name;
  for (const auto& pr : probes) {
    GridFunction f = mu.sample(pr.f);
    GridFunction df = mu.sample(pr.df);
    double rhs = mu.lq_norm(df, q);
    if (!std::isfinite(rhs)) continue;
    double med = mu.median_of(f);
    for (double& v : f) v -= med;
    double lhs = B * D_iso * orlicz_norm(mu, f, N);
    double m = (rhs - lhs) / std::max(1.0, rhs);
    if (m < worst) {
      worst = m;
      worst_lhs = lhs;
      worst_rhs = rhs;
      worst_name = pr.name;
    }
  }
  rep.add({"conclusion-worst-probe", refs::forward_orlicz_sobolev, worst_lhs, worst_rhs,
           1e-8 * std::max(1.0, worst_rhs), false});
  rep.note_env("worst-probe", worst_name);
  return rep;
}

VerificationReport equivalence_report(const ModelMeasure1D& mu, const NFunction& N, double q,
                                      unsigned seed, const ConverseConstants& cc) {
  if (!(q > 1.0)) throw std::invalid_argument("equivalence_report: q must exceed 1");
  require_young(N, "equivalence_report");
  VerificationReport rep;
  rep.title = "equivalence-cycle";
  rep.note_env("measure", mu.name());
  rep.note_env("N", N.name());
  rep.note_env("q", q);
  rep.note_env("seed", double(seed));
  rep.note_env("converse-constants", cc.name);
  rep.note_env("em-factor", cc.em_factor);

  if (!N.qmono(q)) {
    rep.hypothesis_failures.push_back("N(t)^{1/q}/t is not nondecreasing");
    return rep;
  }

  IsoProfiler prof(mu);
  // Ends at 1/2 inclusive: rate infima are often attained there, and a grid
  // stopping short would certify a slightly invalid rate.
  auto t_grid = log_spaced(0.005, 0.5, 30);
  auto tilde = [&](double t) { return std::min(prof.value(t), prof.value(1.0 - t)); };

  // Profile -> 1-capacity. For log-concave measures the suffix infimum of the
  // profile is the profile itself, so the 1-capacity keeps at least 90% of
  // the isoperimetric mass at every level.
  if (prof.halfline_only()) {
    double worst = kInf, wl = 0.0, wr = 0.0;
    for (double t : t_grid) {
      if (!(t < 0.5)) continue;
      double lhs = 0.9 * tilde(t);
      double rhs = cap1_profile(mu, t, 0.5);
      if (rhs - lhs < worst) {
        worst = rhs - lhs;
        wl = lhs;
        wr = rhs;
      }
    }
    rep.add({"profile-to-cap1", refs::iso_cap1_sandwich, wl, wr, 1e-9 * std::max(1.0, wr), false});
  } else {
    rep.note_env("profile-to-cap1", "skipped: profile may dip, suffix infimum differs");
  }

  // 1-capacity -> q-capacity through the lift; must stay below the exact
  // q-capacity profile.
  {
    Fn1 cap1 = [&](double s) { return cap1_profile(mu, s, 0.5); };
    double worst = kInf, wl = 0.0, wr = 0.0, wt = 0.0;
    bool any_degenerate = false;
    for (double t : {0.02, 0.1, 0.25, 0.4}) {
      auto lift = lift_capacity_detail(1.0, q, cap1, t, 0.5);
      any_degenerate = any_degenerate || lift.degenerate;
      double exact = capq_profile(mu, q, t);
      double m = exact - lift.value;
      if (m < worst) {
        worst = m;
        wl = lift.value;
        wr = exact;
        wt = t;
      }
    }
    double tol = (prof.halfline_only() ? 1e-6 : 1e-3) * std::max(1.0, wr);
    rep.add({"cap1-lift-below-capq", refs::capacity_order_lift, wl, wr, tol, false});
    rep.note_env("lift-worst-t", wt);
    if (any_degenerate) rep.note_env("lift-degenerate", "1-capacity vanished inside the window");
  }

  // q-capacity -> Orlicz constant bracket, checked against the probe-measured
  // constant from the gradient side.
  double D2 = kInf;
  for (double t : t_grid) {
    double den = N.adjoint(t);
    if (den > 0.0) D2 = std::min(D2, capq_profile(mu, q, t) / den);
  }
  rep.add({"capacity-rate-D2", refs::orlicz_to_capq, D2, D2, 0.0, true});
  auto bracket = cap_to_orlicz_bracket(q, N, D2);
  double measured = measured_orlicz_constant(mu, N, q, seed);
  rep.add({"bracket-lower-below-measured", refs::capq_orlicz_bracket, bracket.lower, measured,
           1e-9 * std::max(1.0, measured), false});
  // The probe family contains near-optimal candidates, so the measured value
  // cannot exceed the bracket top by more than the probe grid slack.
  rep.add({"measured-near-bracket-upper", refs::capq_orlicz_bracket, measured, 1.25 * bracket.upper,
           1e-9 * std::max(1.0, bracket.upper), false});
  rep.note_env("bracket-lower", bracket.lower);
  rep.note_env("bracket-upper", bracket.upper);
  rep.note_env("measured-D", measured);

  // Orlicz constant -> gradient inequality on the probe family with the
  // forward constant.
  double D_rate = profile_orlicz_rate(prof, N, q, t_grid);
  rep.add({"profile-orlicz-rate", refs::profile_rate, D_rate, D_rate, 0.0, true});
  {
    double B = forward_constant_B(N, q);
    rep.note_env("B", B);
    auto probes = make_probe_family(mu, q, seed);
    double worst = kInf, wl = 0.0, wr = 0.0;
    std::string worst_name;
    for (const auto& pr : probes) {
      GridFunction f = mu.sample(pr.f);
      GridFunction df = mu.sample(pr.df);
      double rhs = mu.lq_norm(df, q);
      if (!std::isfinite(rhs)) continue;
      double med = mu.median_of(f);
      for (double& v : f) v -= med;
      double lhs = B * D_rate * orlicz_norm(mu, f, N);
      double m = (rhs - lhs) / std::max(1.0, rhs);
      if (m < worst) {
        worst = m;
        wl = lhs;
        wr = rhs;
        worst_name = pr.name;
      }
    }
    rep.add({"forward-conclusion-worst-probe", refs::forward_orlicz_sobolev, wl, wr,
             1e-8 * std::max(1.0, wr), false});
    rep.note_env("forward-worst-probe", worst_name);
  }

  // Gradient inequality -> profile again: the converse bound from the
  // measured constant must sit below the actual profile.
  double kappa = mu.kappa();
  if (!std::isfinite(kappa) && !cc.use_capacity_route) {
    rep.note_env("converse", "curvature defect unbounded: bound degenerates to zero");
  }
  {
    double worst = kInf, wl = 0.0, wr = 0.0, wt = 0.0;
    for (double t : t_grid) {
      double bound = converse_iso_bound(q, N, measured, kappa, t, cc);
      double it = tilde(t);
      if (it - bound < worst) {
        worst = it - bound;
        wl = bound;
        wr = it;
        wt = t;
      }
    }
    rep.add({"converse-bound-below-profile", refs::converse_iso_bound, wl, wr,
             1e-6 * std::max(1.0, wr), false});
    rep.note_env("converse-worst-t", wt);
    // Retained fraction of the profile after the full cycle, at the worst t.
    if (wr > 0.0) rep.add({"cycle-retention", refs::equivalence_cycle, wl / wr, wl / wr, 0.0, true});
  }

  double d_lin = kInf;
  for (double t : t_grid) d_lin = std::min(d_lin, tilde(t) / t);
  rep.add({"linear-rate-D", refs::reverse_poincare, d_lin, d_lin, 0.0, true});
  return rep;
}

}  // namespace isocap
