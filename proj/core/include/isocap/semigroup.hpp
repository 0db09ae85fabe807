#pragma once

#include <string>
#include <vector>

#include "isocap/measure.hpp"
#include "isocap/nfunction.hpp"
#include "isocap/numerics.hpp"
#include "isocap/report.hpp"

namespace isocap {

struct SemigroupParams {
  int grid_n = 2001;
  double dt = 1e-3;
  // Time-stepping weight in [1/2, 1]: 1/2 is second order, 1 preserves
  // positivity unconditionally.
  double theta = 0.5;
};

// Finite-volume diffusion semigroup P_t = e^{tL} with Lf = f'' - psi' f' on
// the truncated support, Neumann boundaries. The discrete generator is built
// in flux form, so it is exactly self-adjoint and conservative for the
// discrete weights, and the theta-scheme is unconditionally L2-stable.
class SemigroupSolver {
 public:
  struct EvolveResult {
    GridFunction f;
    int steps = 0;
    double t_effective = 0.0;
    // Set when the requested theta violated the discrete maximum principle
    // on this input and the evolution was redone with theta = 1.
    bool positivity_fallback = false;
  };

  explicit SemigroupSolver(const ModelMeasure1D& mu, SemigroupParams params = {});

  const ModelMeasure1D& measure() const { return mu_; }
  const SemigroupParams& params() const { return params_; }
  const std::vector<double>& grid() const { return x_; }
  const std::vector<double>& node_weights() const { return w_; }
  double cell_width() const { return h_; }

  GridFunction project(const Fn1& f) const;

  // Rounds t to an integer number of dt steps (at least one for t > 0).
  EvolveResult evolve_detail(const GridFunction& f0, double t) const;
  GridFunction evolve(const GridFunction& f0, double t) const;

  // Discrete integrals against the (unit-mass) node weights.
  double integrate(const GridFunction& f) const;
  double inner(const GridFunction& f, const GridFunction& g) const;
  double lq_norm(const GridFunction& f, double q) const;
  double sup_norm(const GridFunction& f) const;

  // Dirichlet form sum c_{i+1/2} (f_{i+1}-f_i)(g_{i+1}-g_i) = (-Lf, g).
  double dirichlet(const GridFunction& f, const GridFunction& g) const;
  GridFunction gradient(const GridFunction& f) const;  // central differences
  GridFunction apply_generator(const GridFunction& f) const;

  // Smallest nonzero eigenvalue of -L, via the symmetrized tridiagonal
  // matrix. The zero eigenvalue is recomputed as a sanity check.
  double spectral_gap() const;

 private:
  GridFunction step_once(const GridFunction& f, double theta) const;

  ModelMeasure1D mu_;
  SemigroupParams params_;
  double h_ = 0.0;
  std::vector<double> x_, w_, cond_;  // cond_[i] couples nodes i and i+1
};

// (1 - e^{-2 kappa t}) / kappa, extended by continuity to 2t at kappa = 0.
double K_const(double kappa, double t);
// integral_0^t ds / sqrt(K(kappa, s)); equals sqrt(2t) when kappa = 0.
double inv_sqrt_K_integral(double kappa, double t);
// integral_0^t K(kappa, s)^expo ds for expo >= 0.
double K_power_integral(double kappa, double t, double expo);

// Constant together with the evidence that it was actually verified; decay
// verifications refuse unverified inputs.
struct VerifiedConstant {
  double value = 0.0;
  bool verified = false;
  std::string provenance;
};

// Lower edge of the capacity-derived Orlicz constant bracket, halved to
// account for re-centering at the mean instead of the median.
VerifiedConstant decay_constant_from_capacity(const ModelMeasure1D& mu, const NFunction& N,
                                              double q);

// Mollified right-tail indicator: rises from 0 to 1 over a window of the
// given width centered at the quantile of mass `mass`.
Fn1 mollified_tail_indicator(const ModelMeasure1D& mu, double mass, double width);

// f minus its discrete mean, so decay verifications see an exactly centered
// input.
Fn1 centered(const SemigroupSolver& S, const Fn1& f);

// Pointwise K(kappa,t) |grad P_t f|^2 <= P_t(f^2) - (P_t f)^2 on interior
// nodes, plus the rough form with K replaced by t when t <= 1/(2 kappa).
VerificationReport verify_gradient_estimate(const SemigroupSolver& S, const Fn1& f0, double t,
                                            double tol = 1e-3);

// L1 smoothing: (integral_0^t ds/sqrt(K)) * ||grad P_t f||_1 <= ||f||_1,
// plus the closed-form relaxation with sqrt(2t).
VerificationReport verify_dual_l1_commutation(const SemigroupSolver& S, const Fn1& f0, double t);

// L2 decay for q >= 2 from a verified Orlicz-Sobolev constant. At q = 2 the
// low-q formula is evaluated as well and both results must coincide.
VerificationReport verify_decay_high_q(const SemigroupSolver& S, const NFunction& N, double q,
                                       const VerifiedConstant& D, const Fn1& f0,
                                       const std::vector<double>& ts);

// Lq decay for q in (1, 2].
VerificationReport verify_decay_low_q(const SemigroupSolver& S, const NFunction& N, double q,
                                      const VerifiedConstant& D, const Fn1& f0,
                                      const std::vector<double>& ts);

struct HeatFlowIso {
  double lower_bound = 0.0;
  // |(f, P_t f) - ||P_{t/2} f||^2| for the sharp indicator; zero up to
  // roundoff because the discrete semigroup is exactly self-adjoint.
  double identity_gap = 0.0;
  double set_mass = 0.0;
  double t_effective = 0.0;
};

// Heat-flow lower bound for the boundary measure of the right tail of mass
// a_mass: 2 (mu(A) - ||P_{t/2} 1_A||^2) / integral_0^t ds/sqrt(K). Uses
// theta = 1 and an even number of steps so the half-time composition is
// exact. Requires t <= 1/(2 kappa).
HeatFlowIso isoperimetric_via_semigroup_detail(const SemigroupSolver& S, double a_mass, double t);
double isoperimetric_via_semigroup(const SemigroupSolver& S, double a_mass, double t);

// Identity at t=0, composition, conservation, self-adjointness, positivity
// and sup-contractivity (theta = 1), monotone L2 decay.
VerificationReport verify_semigroup_axioms(const SemigroupSolver& S, unsigned seed = 0);

}  // namespace isocap
