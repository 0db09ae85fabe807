#include "isocap/config.hpp"

#include <json.hpp>
#include <stdexcept>

namespace isocap {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("config: " + what); }

void check_keys(const json& j, const char* where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) bad(std::string(where) + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) bad(std::string("unknown key \"") + it.key() + "\" in " + where);
  }
}

double get_num(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) bad(std::string(key) + " must be a number");
  return j[key].get<double>();
}

int get_int(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) bad(std::string(key) + " must be an integer");
  return j[key].get<int>();
}

std::string get_str(const json& j, const char* key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_string()) bad(std::string(key) + " must be a string");
  return j[key].get<std::string>();
}

std::vector<std::pair<double, double>> get_table(const json& j, const char* key) {
  std::vector<std::pair<double, double>> out;
  if (!j.contains(key)) return out;
  if (!j[key].is_array()) bad(std::string(key) + " must be an array of [x, y] pairs");
  for (const auto& row : j[key]) {
    if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number())
      bad(std::string(key) + " rows must be [x, y] number pairs");
    out.emplace_back(row[0].get<double>(), row[1].get<double>());
  }
  return out;
}

}  // namespace

ModelMeasure1D MeasureSpec::make() const {
  if (kind == "gaussian") return ModelMeasure1D::make_gaussian(grid_size);
  if (kind == "p_exponential") return ModelMeasure1D::make_p_exponential(p, grid_size);
  if (kind == "uniform") return ModelMeasure1D::make_uniform(a, b, grid_size);
  if (kind == "power_alpha") return ModelMeasure1D::make_power_alpha(alpha, grid_size);
  if (kind == "double_well") return ModelMeasure1D::make_double_well(grid_size);
  if (kind == "table") return ModelMeasure1D::make_from_table(table, grid_size);
  throw std::invalid_argument("config: unknown measure kind \"" + kind + "\"");
}

NFunction NFuncSpec::make() const {
  if (kind == "power") return NFunction::power(q);
  if (kind == "phi_q") return NFunction::phi_q(q);
  if (kind == "table") return NFunction::from_table(table);
  throw std::invalid_argument("config: unknown N-function kind \"" + kind + "\"");
}

std::vector<double> TGridSpec::make() const {
  if (!(lo > 0.0 && lo < hi && hi <= 0.5)) bad("tgrid must satisfy 0 < lo < hi <= 1/2");
  if (n < 2) bad("tgrid needs at least two points");
  return log_spaced(lo, hi, n);
}

void apply_json_config(RunConfig& cfg, const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  check_keys(j, "config",
             {"measure", "nfunc", "solver", "tgrid", "q", "seed", "out", "converse"});

  if (j.contains("measure")) {
    const auto& m = j["measure"];
    check_keys(m, "measure", {"kind", "p", "a", "b", "alpha", "grid_size", "table"});
    cfg.measure.kind = get_str(m, "kind", cfg.measure.kind);
    cfg.measure.p = get_num(m, "p", cfg.measure.p);
    cfg.measure.a = get_num(m, "a", cfg.measure.a);
    cfg.measure.b = get_num(m, "b", cfg.measure.b);
    cfg.measure.alpha = get_num(m, "alpha", cfg.measure.alpha);
    cfg.measure.grid_size = get_int(m, "grid_size", cfg.measure.grid_size);
    if (m.contains("table")) cfg.measure.table = get_table(m, "table");
  }
  if (j.contains("nfunc")) {
    const auto& n = j["nfunc"];
    check_keys(n, "nfunc", {"kind", "q", "table"});
    cfg.nfunc.kind = get_str(n, "kind", cfg.nfunc.kind);
    cfg.nfunc.q = get_num(n, "q", cfg.nfunc.q);
    if (n.contains("table")) cfg.nfunc.table = get_table(n, "table");
  }
  if (j.contains("solver")) {
    const auto& s = j["solver"];
    check_keys(s, "solver", {"grid_n", "dt", "theta"});
    cfg.solver.grid_n = get_int(s, "grid_n", cfg.solver.grid_n);
    cfg.solver.dt = get_num(s, "dt", cfg.solver.dt);
    cfg.solver.theta = get_num(s, "theta", cfg.solver.theta);
  }
  if (j.contains("tgrid")) {
    const auto& t = j["tgrid"];
    check_keys(t, "tgrid", {"lo", "hi", "n"});
    cfg.tgrid.lo = get_num(t, "lo", cfg.tgrid.lo);
    cfg.tgrid.hi = get_num(t, "hi", cfg.tgrid.hi);
    cfg.tgrid.n = get_int(t, "n", cfg.tgrid.n);
    (void)cfg.tgrid.make();  // reject out-of-range grids at parse time
  }
  cfg.q = get_num(j, "q", cfg.q);
  if (j.contains("seed")) {
    int s = get_int(j, "seed", 0);
    if (s < 0) bad("seed must be nonnegative");
    cfg.seed = unsigned(s);
  }
  cfg.out = get_str(j, "out", cfg.out);
  if (j.contains("converse")) {
    const auto& c = j["converse"];
    check_keys(c, "converse", {"c2", "em_factor", "use_capacity_route"});
    cfg.converse.c2_capacity = get_num(c, "c2", cfg.converse.c2_capacity);
    cfg.converse.em_factor = get_num(c, "em_factor", cfg.converse.em_factor);
    if (c.contains("use_capacity_route")) {
      if (!c["use_capacity_route"].is_boolean()) bad("use_capacity_route must be a boolean");
      cfg.converse.use_capacity_route = c["use_capacity_route"].get<bool>();
    }
    cfg.converse.name = cfg.converse.use_capacity_route ? "capacity-route" : "replayed-chain";
  }
}

RunConfig run_config_from_json_text(const std::string& json_text) {
  RunConfig cfg;
  apply_json_config(cfg, json_text);
  return cfg;
}

}  // namespace isocap
