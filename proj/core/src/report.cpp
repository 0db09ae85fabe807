#include "isocap/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace isocap {

namespace refs {

std::vector<std::string> all() {
  return {iso_cap1_sandwich,    capacity_order_lift, gamma_lift_constant,
          capq_orlicz_bracket,  orlicz_to_capq,      forward_orlicz_sobolev,
          converse_iso_bound,   capacity_route_constant, reverse_poincare,
          l1_gradient_commutation, decay_l2_high_q,  decay_lq_low_q,
          indicator_dual_norm,  median_mean_recentering, rough_curvature_K,
          semigroup_axioms,     spectral_gap,        heat_flow_isoperimetry,
          profile_rate,         equivalence_cycle};
}

bool known(std::string_view ref) {
  for (const auto& r : all())
    if (r == ref) return true;
  return false;
}

}  // namespace refs

bool ReportLeg::pass() const {
  if (informational) return true;
  return margin() >= -tolerance;
}

ReportLeg& VerificationReport::add(ReportLeg leg) {
  if (!refs::known(leg.paper_ref))
    throw std::logic_error("report: unregistered paper_ref '" + leg.paper_ref + "'");
  legs.push_back(std::move(leg));
  return legs.back();
}

void VerificationReport::note_env(const std::string& key, const std::string& value) {
  environment.emplace_back(key, value);
}

void VerificationReport::note_env(const std::string& key, double value) {
  environment.emplace_back(key, format_full(value));
}

bool VerificationReport::numeric_pass() const {
  for (const auto& l : legs)
    if (!l.pass()) return false;
  return true;
}

std::string VerificationReport::verdict() const {
  if (!hypothesis_failures.empty()) return "hypothesis-fail";
  return numeric_pass() ? "pass" : "numeric-fail";
}

std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "isocap-report/1";
  j["title"] = title;
  j["verdict"] = verdict();
  j["legs"] = nlohmann::ordered_json::array();
  for (const auto& l : legs) {
    nlohmann::ordered_json leg;
    leg["name"] = l.name;
    leg["paper_ref"] = l.paper_ref;
    leg["lhs"] = l.lhs;
    leg["rhs"] = l.rhs;
    leg["margin"] = l.margin();
    leg["tolerance"] = l.tolerance;
    leg["informational"] = l.informational;
    leg["pass"] = l.pass();
    j["legs"].push_back(std::move(leg));
  }
  nlohmann::ordered_json env = nlohmann::ordered_json::object();
  for (const auto& [k, v] : environment) env[k] = v;
  j["environment"] = std::move(env);
  j["hypothesis_failures"] = hypothesis_failures;
  return j.dump(2) + "\n";
}

}  // namespace isocap
