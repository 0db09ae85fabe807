#pragma once

#include <string>
#include <vector>

#include "isocap/measure.hpp"
#include "isocap/nfunction.hpp"
#include "isocap/profiles.hpp"
#include "isocap/report.hpp"

namespace isocap {

// Named constant with a two-sided enclosure and a note on how it was
// obtained.
struct InequalityConstant {
  std::string name;
  double lower = 0.0;
  double upper = 0.0;
  std::string provenance;
};

// Unnamed universal constants appearing in the converse direction. The
// defaults replay the proof chain numerically instead of asserting any
// unquantified universal; reports record which set was used.
struct ConverseConstants {
  // Multiplier in the capacity-route constant (see converse_constant_C).
  double c2_capacity = 1.0;
  // Loss from re-centering at the mean instead of the median; the measured
  // input constant is multiplied by this before entering the chain.
  double em_factor = 0.5;
  // Use the capacity-route constant for q <= 2 instead of the replayed
  // chain. Off by default: the chain values are the ones derived end to end.
  bool use_capacity_route = false;
  std::string name = "replayed-chain";
};

// gamma(q0, q) = (p0/p - 1)^{1/p0} / (1 - p/p0)^{1/p} with p = q/(q-1),
// p0 = q0/(q0-1); equals 1 in the q0 = 1 limit.
double gamma_const(double q0, double q);

struct LiftResult {
  double value = 0.0;
  bool degenerate = false;  // cap_q0 vanished somewhere in (a, b)
};

// Lower bound for Cap_q(a,b) from a profile of Cap_{q0}(s,b):
// gamma^{-1} * (integral_a^b (s-a)^{-p/p0} cap_q0(s)^{-p} ds)^{-1/p}.
// The endpoint singularity is removed by the substitution
// s = a + u^{p0/(p0-p)}, after which the integrand is bounded.
LiftResult lift_capacity_detail(double q0, double q, const Fn1& cap_q0, double a, double b);
double lift_capacity(double q0, double q, const Fn1& cap_q0, double a, double b);

// Orlicz-Sobolev constant bracket [D2/4, D2] from the capacity constant D2
// (Cap_q(t,1/2) >= D2 * adjoint(t)). With q == 1 and q1_optimal the bracket
// tightens to [D2, D2]. Requires N in the q-monotone class.
InequalityConstant cap_to_orlicz_bracket(double q, const NFunction& N, double D2,
                                         bool weak_variant = false, bool q1_optimal = false);

// Capacity lower bound D * adjoint(t) recovered from an Orlicz-Sobolev
// constant D.
double orlicz_to_cap(double q, const NFunction& N, double D, double t);

// B = (1/4) * (sup_{0<t<1/2} adjoint(t)^p * integral_t^{1/2} ds/(s adjoint(s)^p))^{-1/p}.
// For N = t^q this equals (1/4)(p/q)^{1/p}.
double forward_constant_B(const NFunction& N, double q);

// C = min(c2, N2(1/2)) * inf_{0<t<1/2} t^{1/q-1/2} N2(t) / adjoint(t), where
// N2(t)^{-2} = integral_t^inf ds/(s^{2/p} N0(s)^2) and N0 extends adjoint(t)
// beyond 1/2 by adjoint(1/2) 2^{1/q} t^{1/q}. Only defined for q in (1, 2].
double converse_constant_C(const NFunction& N, double q, double c2 = 1.0, int t_grid = 300);

// Per-branch multipliers obtained by replaying the converse proof chain.
// case1 multiplies D; case2 multiplies adjoint(1/2)^{r-1} D^r / kappa^{(r-1)/2}
// with r = max(q, 2).
double converse_chain_case1(double q);
double converse_chain_case2(double q);

// Right-hand side of the converse conclusion:
// C * min(D_eff, case2-term) * t^{1-1/q} * adjoint(t), with D_eff the
// mean-recentred input constant. kappa = 0 selects the linear branch.
double converse_iso_bound(double q, const NFunction& N, double D, double kappa, double t,
                          const ConverseConstants& cc = {});

// Probe measurements of the Orlicz-Sobolev constant: min over the probe
// family of ||f'||_q / ||f - median||. Upper estimates of the true constant.
double measured_orlicz_constant(const ModelMeasure1D& mu, const NFunction& N, double q,
                                unsigned seed = 0);
double measured_weak_orlicz_constant(const ModelMeasure1D& mu, const NFunction& N, double q,
                                     unsigned seed = 0);

// inf over the grid of iso_tilde(t) / (t^{1-1/q} adjoint(t)): the best
// rate D with Itilde >= D t^{1-1/q} adjoint(t) on that grid.
double profile_orlicz_rate(const IsoProfiler& prof, const NFunction& N, double q,
                           const std::vector<double>& t_grid);

// Probe-family verification of the forward theorem conclusion
// B * D_iso * ||f - median||_N <= ||f'||_q. The hypothesis
// Itilde >= D_iso t^{1-1/q} adjoint(t) is rechecked on a grid first.
VerificationReport forward_theorem_check(const ModelMeasure1D& mu, const NFunction& N, double q,
                                         double D_iso, unsigned seed = 0);

// Full cycle: profile -> 1-capacity -> lifted q-capacity -> Orlicz bracket ->
// converse profile bound, with margins for every arrow.
VerificationReport equivalence_report(const ModelMeasure1D& mu, const NFunction& N, double q,
                                      unsigned seed = 0, const ConverseConstants& cc = {});

}  // namespace isocap
