#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "isocap/config.hpp"
#include "isocap/errors.hpp"
#include "isocap/orlicz.hpp"
#include "isocap/probes.hpp"
#include "isocap/profiles.hpp"
#include "isocap/report.hpp"
#include "isocap/semigroup.hpp"
#include "isocap/transitions.hpp"

namespace {

using namespace isocap;

constexpr int kExitPass = 0;
constexpr int kExitNumericFail = 1;
constexpr int kExitHypothesisFail = 2;
constexpr int kExitUsage = 64;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << text;
  if (!out) throw std::invalid_argument("write failed: " + path);
}

struct Options {
  RunConfig cfg;
  std::string config_path;
  std::string tgrid_str;
  std::string which = "all";
  bool detail = false;
  std::string detail_kind = "capq";
  int oracle_grid = 4096;
};

void parse_tgrid(const std::string& s, TGridSpec& out) {
  double lo = 0.0, hi = 0.0;
  int n = 0;
  char extra = 0;
  if (std::sscanf(s.c_str(), "%lf:%lf:%d%c", &lo, &hi, &n, &extra) != 3)
    throw std::invalid_argument("--tgrid expects lo:hi:n");
  out = {lo, hi, n};
}

void add_common_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--measure", opt.cfg.measure.kind,
                  "measure kind: gaussian, p_exponential, uniform, power_alpha, double_well, table");
  cmd->add_option("--p", opt.cfg.measure.p, "p_exponential exponent");
  cmd->add_option("--a", opt.cfg.measure.a, "uniform interval left end");
  cmd->add_option("--b", opt.cfg.measure.b, "uniform interval right end");
  cmd->add_option("--alpha", opt.cfg.measure.alpha, "power_alpha exponent");
  cmd->add_option("--grid", opt.cfg.measure.grid_size, "measure quadrature grid size");
  cmd->add_option("--nfunc", opt.cfg.nfunc.kind, "N-function kind: power, phi_q");
  cmd->add_option_function<double>(
      "--q", [&opt](double q) { opt.cfg.q = q; opt.cfg.nfunc.q = q; }, "exponent q");
  cmd->add_option("--tgrid", opt.tgrid_str, "mass grid lo:hi:n inside (0, 1/2]");
  cmd->add_option("--grid-n", opt.cfg.solver.grid_n, "semigroup spatial grid size");
  cmd->add_option("--dt", opt.cfg.solver.dt, "semigroup time step");
  cmd->add_option("--theta", opt.cfg.solver.theta, "time-stepping weight in [1/2, 1]");
  cmd->add_option("--seed", opt.cfg.seed, "probe family seed");
  cmd->add_option("--out", opt.cfg.out, "output file (default: stdout)");
  cmd->add_option("--config", opt.config_path, "JSON config file; overrides flags");
}

void finalize_options(Options& opt) {
  if (!opt.tgrid_str.empty()) parse_tgrid(opt.tgrid_str, opt.cfg.tgrid);
  if (!opt.config_path.empty()) apply_json_config(opt.cfg, slurp(opt.config_path));
}

// Merge src into dst, prefixing leg names and environment keys.
void fold(VerificationReport& dst, const VerificationReport& src, const std::string& prefix) {
  for (auto leg : src.legs) {
    leg.name = prefix + ":" + leg.name;
    dst.add(leg);
  }
  for (const auto& kv : src.environment) dst.note_env(prefix + ":" + kv.first, kv.second);
  for (const auto& h : src.hypothesis_failures) dst.hypothesis_failures.push_back(prefix + ": " + h);
}

std::vector<double> rate_grid(const std::vector<double>& tgrid) {
  std::vector<double> g = tgrid;
  if (g.empty() || g.back() < 0.5) g.push_back(0.5);
  return g;
}

// --- verify parts -----------------------------------------------------

VerificationReport part_sandwich(const ModelMeasure1D& mu) {
  VerificationReport rep;
  rep.title = "cap1-sandwich";
  double worst = 0.0, wa = 0.0, wb = 0.0;
  for (double a : log_spaced(0.02, 0.4, 6)) {
    for (double b : {0.5, std::min(a + 0.2, 0.49)}) {
      if (b <= a) continue;
      double ref = cap1_profile(mu, a, b);
      double oracle = cap1_grid_oracle(mu, a, b, 2048);
      double gap = std::abs(oracle - ref) / std::max(ref, 1e-300);
      if (gap > worst) {
        worst = gap;
        wa = a;
        wb = b;
      }
    }
  }
  rep.add({"grid-variational-worst-gap", refs::iso_cap1_sandwich, worst, 0.05, 0.0, false});
  rep.note_env("worst-a", wa);
  rep.note_env("worst-b", wb);
  return rep;
}

VerificationReport part_lift(const ModelMeasure1D& mu, double q) {
  VerificationReport rep;
  rep.title = "capacity-lift";
  auto run = [&](double q0, const Fn1& cap, const std::string& name) {
    double worst = kInf, wl = 0.0, wr = 0.0, ratio = 0.0;
    for (double t : {0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.49}) {
      double lifted = lift_capacity(q0, q, cap, t, 0.5);
      double exact = capq_profile(mu, q, t);
      if (exact - lifted < worst) {
        worst = exact - lifted;
        wl = lifted;
        wr = exact;
      }
      if (exact > 0.0 && std::isfinite(exact)) ratio = std::max(ratio, lifted / exact);
    }
    rep.add({name + "-sound", refs::capacity_order_lift, wl, wr, 1e-6 * std::max(1.0, wr), false});
    rep.add({name + "-best-ratio", refs::gamma_lift_constant, ratio, ratio, 0.0, true});
  };
  Fn1 cap1 = [&](double s) { return cap1_profile(mu, s, 0.5); };
  if (q > 1.0) run(1.0, cap1, "from-q0=1");
  if (q > 1.5) {
    Fn1 cap15 = [&](double s) { return capq_profile(mu, 1.5, s); };
    run(1.5, cap15, "from-q0=1.5");
  }
  return rep;
}

VerificationReport part_bracket(const ModelMeasure1D& mu, const NFunction& N, double q,
                                const std::vector<double>& tgrid, unsigned seed) {
  VerificationReport rep;
  rep.title = "capacity-orlicz-bracket";
  double D2 = kInf;
  for (double t : rate_grid(tgrid)) {
    double den = N.adjoint(t);
    if (den > 0.0) D2 = std::min(D2, capq_profile(mu, q, t) / den);
  }
  auto bracket = cap_to_orlicz_bracket(q, N, D2);
  double measured = measured_orlicz_constant(mu, N, q, seed);
  rep.add({"capacity-rate-D2", refs::orlicz_to_capq, D2, D2, 0.0, true});
  rep.add({"lower-below-measured", refs::capq_orlicz_bracket, bracket.lower, measured,
           1e-9 * std::max(1.0, measured), false});
  rep.add({"measured-near-upper", refs::capq_orlicz_bracket, measured, 1.25 * bracket.upper,
           1e-9 * std::max(1.0, bracket.upper), false});
  rep.note_env("bracket-name", bracket.name);
  rep.note_env("bracket-provenance", bracket.provenance);
  return rep;
}

VerificationReport part_forward(const ModelMeasure1D& mu, const NFunction& N, double q,
                                const std::vector<double>& tgrid, unsigned seed) {
  IsoProfiler prof(mu);
  double D_iso = profile_orlicz_rate(prof, N, q, rate_grid(tgrid));
  return forward_theorem_check(mu, N, q, D_iso, seed);
}

VerificationReport part_converse(const ModelMeasure1D& mu, const NFunction& N, double q,
                                 const std::vector<double>& tgrid, unsigned seed,
                                 const ConverseConstants& cc) {
  VerificationReport rep;
  rep.title = "converse-soundness";
  rep.note_env("constants", cc.name);
  rep.note_env("em-factor", cc.em_factor);
  double Dm = measured_orlicz_constant(mu, N, q, seed);
  rep.note_env("measured-D", Dm);
  IsoProfiler prof(mu);
  double kappa = mu.kappa();
  rep.note_env("kappa", kappa);
  double worst = kInf, wl = 0.0, wr = 0.0, wt = 0.0;
  for (double t : rate_grid(tgrid)) {
    double bound = converse_iso_bound(q, N, Dm, kappa, t, cc);
    double it = std::min(prof.value(t), prof.value(1.0 - t));
    if (it - bound < worst) {
      worst = it - bound;
      wl = bound;
      wr = it;
      wt = t;
    }
  }
  rep.add({"bound-below-profile", refs::converse_iso_bound, wl, wr, 1e-6 * std::max(1.0, wr),
           false});
  rep.note_env("worst-t", wt);
  return rep;
}

VerificationReport part_gradient(const SemigroupSolver& S) {
  VerificationReport rep;
  rep.title = "gradient-estimates";
  for (double t : {0.1, 0.5, 1.0})
    fold(rep, verify_gradient_estimate(S, [](double x) { return x; }, t),
         "identity-t=" + format_full(t).substr(0, 3));
  Fn1 ind = mollified_tail_indicator(S.measure(), 0.3, 3.0 * S.cell_width());
  fold(rep, verify_gradient_estimate(S, ind, 0.5), "indicator");
  return rep;
}

VerificationReport part_dual_l1(const SemigroupSolver& S) {
  VerificationReport rep;
  rep.title = "l1-smoothing";
  Fn1 ind = mollified_tail_indicator(S.measure(), 0.3, 3.0 * S.cell_width());
  fold(rep, verify_dual_l1_commutation(S, ind, 0.1), "t=0.1");
  fold(rep, verify_dual_l1_commutation(S, ind, 0.5), "t=0.5");
  return rep;
}

VerificationReport part_decay(const SemigroupSolver& S, const NFunction& N, double q) {
  auto D = decay_constant_from_capacity(S.measure(), N, q);
  Fn1 f0 = centered(S, mollified_tail_indicator(S.measure(), 0.5, 3.0 * S.cell_width()));
  std::vector<double> ts{0.0, 0.1, 0.5, 1.0, 2.0};
  if (q >= 2.0) return verify_decay_high_q(S, N, q, D, f0, ts);
  return verify_decay_low_q(S, N, q, D, f0, ts);
}

int cmd_verify(const Options& opt) {
  ModelMeasure1D mu = opt.cfg.measure.make();
  NFunction N = opt.cfg.nfunc.make();
  double q = opt.cfg.q;
  auto tgrid = opt.cfg.tgrid.make();
  unsigned seed = opt.cfg.seed;

  VerificationReport rep;
  rep.title = "verify:" + opt.which;
  rep.note_env("measure", mu.name());
  rep.note_env("N", N.name());
  rep.note_env("q", q);
  rep.note_env("seed", double(seed));

  bool all = opt.which == "all";
  bool needs_solver = all || opt.which == "gradient" || opt.which == "dual_l1" ||
                      opt.which == "decay";
  std::unique_ptr<SemigroupSolver> S;
  if (needs_solver) S = std::make_unique<SemigroupSolver>(mu, opt.cfg.solver);

  bool known = false;
  auto want = [&](const char* name) {
    bool w = all || opt.which == name;
    known = known || opt.which == name;
    return w;
  };
  if (want("sandwich")) fold(rep, part_sandwich(mu), "sandwich");
  if (want("lift")) fold(rep, part_lift(mu, q), "lift");
  if (want("bracket")) fold(rep, part_bracket(mu, N, q, tgrid, seed), "bracket");
  if (want("forward")) fold(rep, part_forward(mu, N, q, tgrid, seed), "forward");
  if (want("converse")) fold(rep, part_converse(mu, N, q, tgrid, seed, opt.cfg.converse), "converse");
  if (want("gradient")) fold(rep, part_gradient(*S), "gradient");
  if (want("dual_l1")) fold(rep, part_dual_l1(*S), "dual_l1");
  if (want("decay")) fold(rep, part_decay(*S, N, q), "decay");
  if (!all && !known)
    throw std::invalid_argument("unknown --which value: " + opt.which);

  write_text(opt.cfg.out, rep.to_json());
  if (!rep.hypothesis_failures.empty()) return kExitHypothesisFail;
  return rep.numeric_pass() ? kExitPass : kExitNumericFail;
}

// --- profile ----------------------------------------------------------

int cmd_profile(const Options& opt) {
  ModelMeasure1D mu = opt.cfg.measure.make();
  double q = opt.cfg.q;
  auto tgrid = opt.cfg.tgrid.make();
  IsoProfiler prof(mu);
  std::ostringstream out;

  if (opt.detail) {
    out << "t,value,candidate_side,oracle_value,rel_gap\n";
    for (double t : tgrid) {
      double value, oracle;
      std::string side;
      if (opt.detail_kind == "capq") {
        value = capq_profile(mu, q, t);
        oracle = capq_grid_oracle(mu, q, t, opt.oracle_grid);
      } else if (opt.detail_kind == "iso") {
        auto cand = prof.at(t);
        value = cand.value;
        side = cand.side;
        // Half-line candidate; a positive relative gap flags levels where
        // two-interval competitors win.
        oracle = std::min(mu.density(mu.quantile(t)), mu.density(mu.quantile(1.0 - t)));
      } else {
        throw std::invalid_argument("--kind must be iso or capq");
      }
      double gap = std::abs(oracle - value) / std::max(std::abs(oracle), 1e-300);
      out << format_full(t) << ',' << format_full(value) << ',' << side << ','
          << format_full(oracle) << ',' << format_full(gap) << '\n';
    }
  } else {
    out << "t,iso,iso_tilde,cap1,capq\n";
    for (double t : tgrid) {
      double iso = prof.value(t);
      double tilde = std::min(iso, prof.value(1.0 - t));
      double cap1 = cap1_profile(mu, t, 0.5);
      double capq = q > 1.0 ? capq_profile(mu, q, t) : cap1;
      out << format_full(t) << ',' << format_full(iso) << ',' << format_full(tilde) << ','
          << format_full(cap1) << ',' << format_full(capq) << '\n';
    }
  }
  write_text(opt.cfg.out, out.str());
  return kExitPass;
}

// --- constants --------------------------------------------------------

int cmd_constants(const Options& opt) {
  ModelMeasure1D mu = opt.cfg.measure.make();
  NFunction N = opt.cfg.nfunc.make();
  double q = opt.cfg.q;
  auto tgrid = rate_grid(opt.cfg.tgrid.make());
  IsoProfiler prof(mu);
  auto tilde = [&](double t) { return std::min(prof.value(t), prof.value(1.0 - t)); };

  VerificationReport rep;
  rep.title = "constants";
  rep.note_env("measure", mu.name());
  rep.note_env("N", N.name());
  rep.note_env("q", q);

  double d_lin = kInf, d_exp = kInf;
  for (double t : tgrid) {
    d_lin = std::min(d_lin, tilde(t) / t);
    d_exp = std::min(d_exp, tilde(t) / (t * std::pow(std::log(1.0 / t), 1.0 / q)));
  }
  rep.add({"D_lin", refs::reverse_poincare, d_lin, d_lin, 0.0, true});
  rep.add({"D_exp_q", refs::profile_rate, d_exp, d_exp, 0.0, true});

  SemigroupSolver S(mu, opt.cfg.solver);
  double d_poin = std::sqrt(S.spectral_gap());
  rep.add({"D_poincare", refs::spectral_gap, d_poin, d_poin, 0.0, true});

  double D2 = kInf;
  if (q > 1.0) {
    for (double t : tgrid) {
      double den = N.adjoint(t);
      if (den > 0.0) D2 = std::min(D2, capq_profile(mu, q, t) / den);
    }
    auto bracket = cap_to_orlicz_bracket(q, N, D2);
    rep.add({"D_orlicz_lower", refs::capq_orlicz_bracket, bracket.lower, bracket.lower, 0.0, true});
    rep.add({"D_orlicz_upper", refs::capq_orlicz_bracket, bracket.upper, bracket.upper, 0.0, true});
  }
  double measured = measured_orlicz_constant(mu, N, q, opt.cfg.seed);
  rep.add({"D_measured", refs::capq_orlicz_bracket, measured, measured, 0.0, true});
  if (q > 1.0) {
    double B = forward_constant_B(N, q);
    rep.add({"B_forward", refs::forward_orlicz_sobolev, B, B, 0.0, true});
  }
  if (q > 1.0 && q <= 2.0) {
    double C = converse_constant_C(N, q);
    rep.add({"C_converse", refs::capacity_route_constant, C, C, 0.0, true});
  }

  std::ostringstream out;
  out << "# constants for " << mu.name() << ", N = " << N.name() << ", q = " << format_full(q)
      << "\n";
  for (const auto& leg : rep.legs) {
    const char* desc = "";
    if (leg.name == "D_lin") desc = "inf_t Itilde(t)/t over the mass grid";
    if (leg.name == "D_exp_q") desc = "inf_t Itilde(t)/(t log^{1/q}(1/t))";
    if (leg.name == "D_poincare") desc = "sqrt of the spectral gap";
    if (leg.name == "D_orlicz_lower") desc = "capacity bracket lower edge D2/4";
    if (leg.name == "D_orlicz_upper") desc = "capacity bracket upper edge D2";
    if (leg.name == "D_measured") desc = "min probe ratio ||f'||_q / ||f - med||_N";
    if (leg.name == "B_forward") desc = "forward inequality constant";
    if (leg.name == "C_converse") desc = "capacity-route converse constant";
    char line[160];
    std::snprintf(line, sizeof(line), "%-16s %-24s %s\n", leg.name.c_str(),
                  format_full(leg.lhs).c_str(), desc);
    out << line;
  }
  if (opt.cfg.measure.kind == "p_exponential" && opt.cfg.measure.p == 2.0) {
    // Same measure as the standard gaussian after x -> x sqrt(2); first-order
    // constants scale by sqrt(2).
    SemigroupSolver Sg(ModelMeasure1D::make_gaussian(opt.cfg.measure.grid_size), opt.cfg.solver);
    double ratio = d_poin / (std::sqrt(2.0) * std::sqrt(Sg.spectral_gap()));
    char line[160];
    std::snprintf(line, sizeof(line),
                  "# p_exponential(2) = gaussian rescaled by sqrt(2); D_poincare ratio to sqrt(2) x gaussian: %s\n",
                  format_full(ratio).c_str());
    out << line;
    rep.note_env("gaussian-scaling-ratio", ratio);
  }
  if (!opt.cfg.out.empty()) {
    write_text(opt.cfg.out, rep.to_json());
    std::cout << out.str();
  } else {
    std::cout << out.str();
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"isoperimetric, capacity, and Orlicz-Sobolev profile verification for 1-D model measures"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* profile = app.add_subcommand("profile", "write profile sweeps as CSV");
  add_common_flags(profile, opt);
  profile->add_flag("--detail", opt.detail, "per-level candidate and oracle columns");
  profile->add_option("--kind", opt.detail_kind, "detail profile kind: iso or capq");
  profile->add_option("--oracle-grid", opt.oracle_grid, "grid size for the discrete oracle");

  CLI::App* verify = app.add_subcommand("verify", "run verifications, write a JSON report");
  add_common_flags(verify, opt);
  verify->add_option("--which", opt.which,
                     "sandwich, lift, bracket, forward, converse, gradient, dual_l1, decay, all");

  CLI::App* constants = app.add_subcommand("constants", "print functional constants");
  add_common_flags(constants, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    finalize_options(opt);
    if (profile->parsed()) return cmd_profile(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (constants->parsed()) return cmd_constants(opt);
    return kExitUsage;
  } catch (const hypothesis_error& e) {
    std::cerr << "hypothesis failure: " << e.what() << "\n";
    return kExitHypothesisFail;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericFail;
  }
}
