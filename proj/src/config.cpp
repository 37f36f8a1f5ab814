#include "subflow/config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace subflow {

TargetChart RunConfig::make_chart() const {
  if (target == "flat") return TargetChart::flat_torus(target_dim);
  if (target == "sphere") return TargetChart::sphere_stereographic(target_dim, guard_radius);
  if (target == "hyperbolic") return TargetChart::hyperbolic_ball(target_dim, guard_margin);
  throw std::invalid_argument("unknown target '" + target + "' (flat|sphere|hyperbolic)");
}

FlowParams RunConfig::make_flow_params() const {
  FlowParams fp;
  fp.p = p;
  fp.delta = delta;
  fp.dt0 = dt0;
  fp.t_max = t_max;
  fp.dt_min = dt_min;
  fp.stop_tol = stop_tol;
  fp.max_rejects = max_rejects;
  fp.epsilon = epsilon;
  fp.record_every = record_every;
  fp.validate();
  return fp;
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct KeyTable {
  std::map<std::string, std::function<void(RunConfig&, const std::string&)>> setters;
  std::vector<std::pair<std::string, std::function<std::string(const RunConfig&)>>> getters;

  void add_int(const std::string& key, int RunConfig::* f) {
    setters[key] = [f](RunConfig& c, const std::string& v) { c.*f = std::stoi(v); };
    getters.emplace_back(key, [f](const RunConfig& c) { return std::to_string(c.*f); });
  }
  void add_double(const std::string& key, double RunConfig::* f) {
    setters[key] = [f](RunConfig& c, const std::string& v) { c.*f = std::stod(v); };
    getters.emplace_back(key, [f](const RunConfig& c) { return fmt_double(c.*f); });
  }
  void add_string(const std::string& key, std::string RunConfig::* f) {
    setters[key] = [f](RunConfig& c, const std::string& v) { c.*f = v; };
    getters.emplace_back(key, [f](const RunConfig& c) { return c.*f; });
  }
  void add_u64(const std::string& key, std::uint64_t RunConfig::* f) {
    setters[key] = [f](RunConfig& c, const std::string& v) { c.*f = std::stoull(v); };
    getters.emplace_back(key, [f](const RunConfig& c) { return std::to_string(c.*f); });
  }
};

const KeyTable& key_table() {
  static const KeyTable table = [] {
    KeyTable t;
    t.add_int("grid_nx", &RunConfig::grid_nx);
    t.add_int("grid_ny", &RunConfig::grid_ny);
    t.add_int("grid_nt", &RunConfig::grid_nt);
    t.add_string("target", &RunConfig::target);
    t.add_int("target_dim", &RunConfig::target_dim);
    t.add_double("guard_radius", &RunConfig::guard_radius);
    t.add_double("guard_margin", &RunConfig::guard_margin);
    t.add_double("p", &RunConfig::p);
    t.add_double("delta", &RunConfig::delta);
    t.add_double("epsilon", &RunConfig::epsilon);
    t.add_double("dt0", &RunConfig::dt0);
    t.add_double("t_max", &RunConfig::t_max);
    t.add_double("dt_min", &RunConfig::dt_min);
    t.add_double("stop_tol", &RunConfig::stop_tol);
    t.add_int("max_rejects", &RunConfig::max_rejects);
    t.add_int("record_every", &RunConfig::record_every);
    t.add_int("snapshot_every", &RunConfig::snapshot_every);
    t.add_string("init_kind", &RunConfig::init_kind);
    t.add_double("init_amplitude", &RunConfig::init_amplitude);
    t.add_u64("seed", &RunConfig::seed);
    t.add_double("target_energy", &RunConfig::target_energy);
    t.add_int("mollify_steps", &RunConfig::mollify_steps);
    t.add_string("out_dir", &RunConfig::out_dir);
    return t;
  }();
  return table;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  const KeyTable& table = key_table();
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = table.setters.find(key);
    if (it == table.setters.end())
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    try {
      it->second(cfg, value);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": bad value for '" + key + "'");
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  for (const auto& [key, get] : key_table().getters) os << key << " = " << get(c) << "\n";
  return os.str();
}

}  // namespace subflow
