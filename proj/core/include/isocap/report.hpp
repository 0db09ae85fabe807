#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace isocap {

// Registered provenance anchors for report legs. Every leg must cite one of
// these so downstream tooling can group results by the inequality verified.
namespace refs {
inline constexpr const char* iso_cap1_sandwich = "iso-cap1-sandwich";
inline constexpr const char* capacity_order_lift = "capacity-order-lift";
inline constexpr const char* gamma_lift_constant = "gamma-lift-constant";
inline constexpr const char* capq_orlicz_bracket = "capq-orlicz-bracket";
inline constexpr const char* orlicz_to_capq = "orlicz-to-capq";
inline constexpr const char* forward_orlicz_sobolev = "forward-orlicz-sobolev";
inline constexpr const char* converse_iso_bound = "converse-iso-bound";
inline constexpr const char* capacity_route_constant = "capacity-route-constant";
inline constexpr const char* reverse_poincare = "reverse-poincare";
inline constexpr const char* l1_gradient_commutation = "l1-gradient-commutation";
inline constexpr const char* decay_l2_high_q = "decay-l2-high-q";
inline constexpr const char* decay_lq_low_q = "decay-lq-low-q";
inline constexpr const char* indicator_dual_norm = "indicator-dual-norm";
inline constexpr const char* median_mean_recentering = "median-mean-recentering";
inline constexpr const char* rough_curvature_K = "rough-curvature-K";
inline constexpr const char* semigroup_axioms = "semigroup-axioms";
inline constexpr const char* spectral_gap = "spectral-gap";
inline constexpr const char* heat_flow_isoperimetry = "heat-flow-isoperimetry";
inline constexpr const char* profile_rate = "profile-rate";
inline constexpr const char* equivalence_cycle = "equivalence-cycle";

bool known(std::string_view ref);
std::vector<std::string> all();
}  // namespace refs

// One verified inequality lhs <= rhs. margin = rhs - lhs; the leg passes when
// the margin is no worse than -tolerance. Informational legs always pass and
// only record values.
struct ReportLeg {
  std::string name;
  std::string paper_ref;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool informational = false;

  double margin() const { return rhs - lhs; }
  bool pass() const;
};

struct VerificationReport {
  std::string title;
  std::vector<ReportLeg> legs;
  // Ordered key/value pairs describing inputs; kept as strings so the JSON
  // output is reproducible byte for byte.
  std::vector<std::pair<std::string, std::string>> environment;
  std::vector<std::string> hypothesis_failures;

  ReportLeg& add(ReportLeg leg);
  void note_env(const std::string& key, const std::string& value);
  void note_env(const std::string& key, double value);

  bool numeric_pass() const;
  // "pass", "numeric-fail", or "hypothesis-fail"; hypothesis failures win.
  std::string verdict() const;
  std::string to_json() const;  // schema "isocap-report/1"
};

// 17 significant digits, enough to round-trip any double.
std::string format_full(double v);

}  // namespace isocap
