#include "hfscatter/cli/config.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

namespace hfscatter::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError("config error at " + path + ": " + message);
}

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) fail(path + "." + it.key(), "unknown key");
  }
}

const json* find(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double get_number(const json& obj, const std::string& path, const std::string& key) {
  const json* v = find(obj, key);
  if (!v) fail(path + "." + key, "missing required value");
  if (!v->is_number()) fail(path + "." + key, "expected a number");
  return v->get<double>();
}

double get_number_or(const json& obj, const std::string& path, const std::string& key,
                     double fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number()) fail(path + "." + key, "expected a number");
  return v->get<double>();
}

int get_int(const json& obj, const std::string& path, const std::string& key, int fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) fail(path + "." + key, "expected an integer");
  return v->get<int>();
}

bool get_bool(const json& obj, const std::string& path, const std::string& key, bool fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_boolean()) fail(path + "." + key, "expected a boolean");
  return v->get<bool>();
}

std::string get_string(const json& obj, const std::string& path, const std::string& key,
                       const std::string& fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_string()) fail(path + "." + key, "expected a string");
  return v->get<std::string>();
}

std::array<double, 3> get_point(const json& obj, const std::string& path, const std::string& key,
                                std::array<double, 3> fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_array() || v->size() > 3) fail(path + "." + key, "expected up to 3 numbers");
  std::array<double, 3> out{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < v->size(); ++i) {
    if (!(*v)[i].is_number()) fail(path + "." + key, "expected numbers");
    out[i] = (*v)[i].get<double>();
  }
  return out;
}

std::vector<double> get_vector(const json& obj, const std::string& path, const std::string& key) {
  const json* v = find(obj, key);
  if (!v) fail(path + "." + key, "missing required value");
  if (!v->is_array() || v->empty()) fail(path + "." + key, "expected a nonempty array");
  std::vector<double> out;
  for (const auto& e : *v) {
    if (!e.is_number()) fail(path + "." + key, "expected numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

potentials::PotentialModel parse_potential(const json& obj, const std::string& path,
                                           potentials::PotentialRole role) {
  check_keys(obj, path, {"kind", "amplitude", "width_or_power", "center", "epsilon"});
  potentials::PotentialModel m;
  m.role = role;
  const std::string kind = get_string(obj, path, "kind", "zero");
  try {
    m.kind = potentials::kind_from_string(kind);
  } catch (const std::exception& e) {
    fail(path + ".kind", e.what());
  }
  m.amplitude = get_number_or(obj, path, "amplitude", 0.0);
  m.width_or_power = get_number_or(obj, path, "width_or_power", 1.0);
  m.center = get_point(obj, path, "center", {0.0, 0.0, 0.0});
  m.epsilon = get_number_or(obj, path, "epsilon", 1.0);
  try {
    m.validate();
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
  return m;
}

}  // namespace

ScenarioConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config error: invalid JSON: ") + e.what());
  }
  check_keys(doc, "config",
             {"grid", "orbitals", "potentials", "scatter", "probe", "kernel", "inversion",
              "xray", "seed", "output_dir", "snapshot_stride"});

  ScenarioConfig cfg;

  const json* grid = find(doc, "grid");
  if (!grid) fail("config.grid", "missing required section");
  check_keys(*grid, "grid", {"dim", "points_per_axis", "half_width"});
  cfg.grid.dim = get_int(*grid, "grid", "dim", 0);
  cfg.grid.points_per_axis = get_int(*grid, "grid", "points_per_axis", 0);
  cfg.grid.half_width = get_number(*grid, "grid", "half_width");
  try {
    cfg.grid.validate();
  } catch (const std::exception& e) {
    fail("grid", e.what());
  }

  const json* orbitals = find(doc, "orbitals");
  if (!orbitals || !orbitals->is_array() || orbitals->empty())
    fail("config.orbitals", "expected a nonempty array");
  for (std::size_t i = 0; i < orbitals->size(); ++i) {
    const std::string path = "orbitals[" + std::to_string(i) + "]";
    const json& o = (*orbitals)[i];
    check_keys(o, path, {"amplitude", "center", "width", "momentum", "phase"});
    dynamics::GaussianState s;
    s.amplitude = get_number(o, path, "amplitude");
    s.center = get_point(o, path, "center", {0.0, 0.0, 0.0});
    s.width = get_number(o, path, "width");
    s.momentum = get_point(o, path, "momentum", {0.0, 0.0, 0.0});
    s.phase = get_number_or(o, path, "phase", 0.0);
    if (!(s.width > 0.0)) fail(path + ".width", "must be positive");
    cfg.orbitals.push_back(s);
  }

  const json* pots = find(doc, "potentials");
  if (!pots) fail("config.potentials", "missing required section");
  check_keys(*pots, "potentials", {"interaction", "external"});
  if (const json* vi = find(*pots, "interaction"))
    cfg.v_int = parse_potential(*vi, "potentials.interaction",
                                potentials::PotentialRole::interaction);
  else
    cfg.v_int.role = potentials::PotentialRole::interaction;
  if (const json* ve = find(*pots, "external"))
    cfg.v_ext = parse_potential(*ve, "potentials.external", potentials::PotentialRole::external);
  else
    cfg.v_ext.role = potentials::PotentialRole::external;

  const json* sc = find(doc, "scatter");
  if (!sc) fail("config.scatter", "missing required section");
  check_keys(*sc, "scatter", {"half_window", "dt", "tail_tol", "richardson", "norm_budget"});
  cfg.scatter.half_window = get_number(*sc, "scatter", "half_window");
  cfg.scatter.dt = get_number(*sc, "scatter", "dt");
  cfg.scatter.tail_tol = get_number_or(*sc, "scatter", "tail_tol", 1e-6);
  cfg.scatter.richardson = get_bool(*sc, "scatter", "richardson", false);
  cfg.scatter.norm_budget = get_number_or(*sc, "scatter", "norm_budget", 0.5);
  try {
    cfg.scatter.validate();
  } catch (const std::exception& e) {
    fail("scatter.dt", e.what());
  }

  cfg.probe.base_states = cfg.orbitals;
  if (const json* pr = find(doc, "probe")) {
    check_keys(*pr, "probe", {"direction", "speeds", "lambda"});
    cfg.probe.direction = get_point(*pr, "probe", "direction", {1.0, 0.0, 0.0});
    if (find(*pr, "speeds")) cfg.probe.speeds = get_vector(*pr, "probe", "speeds");
    cfg.probe.lambda = get_number_or(*pr, "probe", "lambda", 0.0);
    try {
      cfg.probe.validate(cfg.grid.dim);
    } catch (const std::exception& e) {
      fail("probe", e.what());
    }
  }

  cfg.kernel.half_window = cfg.scatter.half_window;
  cfg.kernel.dt = 0.02;
  cfg.kernel.tail_tol = 1e30;
  if (const json* kn = find(doc, "kernel")) {
    check_keys(*kn, "kernel", {"half_window", "dt", "tail_tol"});
    cfg.kernel.half_window = get_number_or(*kn, "kernel", "half_window",
                                           cfg.scatter.half_window);
    cfg.kernel.dt = get_number_or(*kn, "kernel", "dt", 0.02);
    cfg.kernel.tail_tol = get_number_or(*kn, "kernel", "tail_tol", 1e30);
  }

  if (const json* inv = find(doc, "inversion")) {
    check_keys(*inv, "inversion",
               {"lambda_grid", "rule", "delta", "fixed_rank", "ratio", "band_threshold", "mode",
                "noise_trials", "noise_level", "orbital"});
    if (const json* lg = find(*inv, "lambda_grid")) {
      if (lg->is_array()) {
        cfg.lambda_grid = get_vector(*inv, "inversion", "lambda_grid");
      } else if (lg->is_object()) {
        check_keys(*lg, "inversion.lambda_grid", {"start", "step", "count"});
        const double start = get_number(*lg, "inversion.lambda_grid", "start");
        const double step = get_number(*lg, "inversion.lambda_grid", "step");
        const int count = get_int(*lg, "inversion.lambda_grid", "count", 0);
        if (count < 1) fail("inversion.lambda_grid.count", "must be >= 1");
        for (int i = 0; i < count; ++i) cfg.lambda_grid.push_back(start + i * step);
      } else {
        fail("inversion.lambda_grid", "expected an array or {start, step, count}");
      }
    }
    const std::string rule = get_string(*inv, "inversion", "rule", "discrepancy");
    if (rule == "discrepancy")
      cfg.truncation.rule = inversion::TruncationRule::discrepancy;
    else if (rule == "fixed_rank")
      cfg.truncation.rule = inversion::TruncationRule::fixed_rank;
    else if (rule == "ratio_cutoff")
      cfg.truncation.rule = inversion::TruncationRule::ratio_cutoff;
    else
      fail("inversion.rule", "expected discrepancy | fixed_rank | ratio_cutoff");
    cfg.truncation.delta = get_number_or(*inv, "inversion", "delta", 0.0);
    cfg.truncation.fixed_rank = get_int(*inv, "inversion", "fixed_rank", 0);
    cfg.truncation.ratio = get_number_or(*inv, "inversion", "ratio", 1e-8);
    cfg.band_threshold = get_number_or(*inv, "inversion", "band_threshold", 1e-8);
    const std::string mode = get_string(*inv, "inversion", "mode", "synthetic");
    if (mode == "synthetic")
      cfg.vint_mode = VintMode::synthetic;
    else if (mode == "scattering")
      cfg.vint_mode = VintMode::scattering;
    else
      fail("inversion.mode", "expected synthetic | scattering");
    cfg.noise_trials = get_int(*inv, "inversion", "noise_trials", 0);
    cfg.noise_level = get_number_or(*inv, "inversion", "noise_level", 0.0);
    cfg.orbital_index = get_int(*inv, "inversion", "orbital", 0);
    if (cfg.orbital_index < 0 || cfg.orbital_index >= static_cast<int>(cfg.orbitals.size()))
      fail("inversion.orbital", "orbital index out of range");
  }

  if (const json* xr = find(doc, "xray")) {
    check_keys(*xr, "xray",
               {"directions", "riesz_a", "eps_div_rel", "offset_count", "offset_half_width",
                "slice_dt", "tail_tol"});
    cfg.xray.directions = get_int(*xr, "xray", "directions", 32);
    cfg.xray.riesz_a = get_number_or(*xr, "xray", "riesz_a", 0.0);
    cfg.xray.slice.eps_div_rel = get_number_or(*xr, "xray", "eps_div_rel", 1e-3);
    cfg.xray.slice.offset_count = get_int(*xr, "xray", "offset_count", 64);
    cfg.xray.slice.offset_half_width = get_number_or(*xr, "xray", "offset_half_width", 0.0);
    cfg.xray.slice.dt = get_number_or(*xr, "xray", "slice_dt", 1.0 / 128.0);
    cfg.xray.slice.tail_tol = get_number_or(*xr, "xray", "tail_tol", 1e-4);
  }

  if (const json* seed = find(doc, "seed")) {
    if (!seed->is_number_unsigned() && !seed->is_number_integer())
      fail("seed", "expected an integer");
    cfg.seed = seed->get<std::uint64_t>();
  }
  cfg.output_dir = get_string(doc, "config", "output_dir", "out");
  cfg.snapshot_stride = get_int(doc, "config", "snapshot_stride", 0);
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config error: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
  json doc;
  doc["grid"] = {{"dim", cfg.grid.dim},
                 {"points_per_axis", cfg.grid.points_per_axis},
                 {"half_width", cfg.grid.half_width}};
  doc["orbitals"] = json::array();
  for (const auto& s : cfg.orbitals) {
    doc["orbitals"].push_back({{"amplitude", s.amplitude},
                               {"center", {s.center[0], s.center[1], s.center[2]}},
                               {"width", s.width},
                               {"momentum", {s.momentum[0], s.momentum[1], s.momentum[2]}},
                               {"phase", s.phase}});
  }
  auto pot_json = [](const potentials::PotentialModel& m) {
    return json{{"kind", potentials::to_string(m.kind)},
                {"amplitude", m.amplitude},
                {"width_or_power", m.width_or_power},
                {"center", {m.center[0], m.center[1], m.center[2]}},
                {"epsilon", m.epsilon}};
  };
  doc["potentials"] = {{"interaction", pot_json(cfg.v_int)}, {"external", pot_json(cfg.v_ext)}};
  doc["scatter"] = {{"half_window", cfg.scatter.half_window},
                    {"dt", cfg.scatter.dt},
                    {"tail_tol", cfg.scatter.tail_tol},
                    {"richardson", cfg.scatter.richardson},
                    {"norm_budget", cfg.scatter.norm_budget}};
  doc["probe"] = {{"direction", {cfg.probe.direction[0], cfg.probe.direction[1],
                                 cfg.probe.direction[2]}},
                  {"speeds", cfg.probe.speeds},
                  {"lambda", cfg.probe.lambda}};
  doc["kernel"] = {{"half_window", cfg.kernel.half_window},
                   {"dt", cfg.kernel.dt},
                   {"tail_tol", cfg.kernel.tail_tol}};
  const char* rule = cfg.truncation.rule == inversion::TruncationRule::discrepancy
                         ? "discrepancy"
                         : cfg.truncation.rule == inversion::TruncationRule::fixed_rank
                               ? "fixed_rank"
                               : "ratio_cutoff";
  doc["inversion"] = {{"lambda_grid", cfg.lambda_grid},
                      {"rule", rule},
                      {"delta", cfg.truncation.delta},
                      {"fixed_rank", cfg.truncation.fixed_rank},
                      {"ratio", cfg.truncation.ratio},
                      {"band_threshold", cfg.band_threshold},
                      {"mode", cfg.vint_mode == VintMode::synthetic ? "synthetic" : "scattering"},
                      {"noise_trials", cfg.noise_trials},
                      {"noise_level", cfg.noise_level},
                      {"orbital", cfg.orbital_index}};
  doc["xray"] = {{"directions", cfg.xray.directions},
                 {"riesz_a", cfg.xray.riesz_a},
                 {"eps_div_rel", cfg.xray.slice.eps_div_rel},
                 {"offset_count", cfg.xray.slice.offset_count},
                 {"offset_half_width", cfg.xray.slice.offset_half_width},
                 {"slice_dt", cfg.xray.slice.dt},
                 {"tail_tol", cfg.xray.slice.tail_tol}};
  doc["seed"] = cfg.seed;
  doc["output_dir"] = cfg.output_dir;
  doc["snapshot_stride"] = cfg.snapshot_stride;
  return doc.dump(2) + "\n";
}

}  // namespace hfscatter::cli
