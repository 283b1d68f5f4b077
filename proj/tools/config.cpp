#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace landau::app {

namespace {

constexpr const char* kVerbNames[] = {"verify", "evolve", "lorentz", "resistivity", "fourier", "general"};
constexpr const char* kScenarioNames[] = {"verify-solutions", "evolve-oracle",    "lorentz-check",
                                          "resistivity-scan", "fourier-check",    "general-solution"};

Scheme scheme_from_string(const std::string& name, const std::string& path) {
  if (name == to_string(Scheme::SplitStep2)) return Scheme::SplitStep2;
  if (name == to_string(Scheme::CrankNicolson)) return Scheme::CrankNicolson;
  throw ConfigError(path + ": unknown scheme '" + name + "' (split-step2 | crank-nicolson)");
}

// A YAML mapping whose keys must all be consumed.
class Section {
 public:
  Section(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) throw ConfigError(where() + ": expected a mapping");
  }

  bool has(const std::string& key) const { return node_ && node_.IsMap() && node_[key]; }

  template <typename T>
  void read(const std::string& key, T& out) {
    if (!has(key)) return;
    seen_.insert(key);
    out = convert<T>(node_[key], join(key));
  }

  template <typename T>
  void read_list(const std::string& key, std::vector<T>& out) {
    if (!has(key)) return;
    seen_.insert(key);
    const YAML::Node n = node_[key];
    if (!n.IsSequence()) throw ConfigError(join(key) + ": expected a list");
    out.clear();
    for (std::size_t i = 0; i < n.size(); ++i) {
      out.push_back(convert<T>(n[i], join(key) + "[" + std::to_string(i) + "]"));
    }
  }

  Section child(const std::string& key) {
    if (has(key)) seen_.insert(key);
    return Section(has(key) ? node_[key] : YAML::Node(), join(key));
  }

  YAML::Node raw(const std::string& key) {
    seen_.insert(key);
    return node_[key];
  }

  std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void finish() const {
    if (!node_ || !node_.IsMap()) return;
    for (const auto& kv : node_) {
      const std::string key = kv.first.as<std::string>();
      if (!seen_.count(key)) throw ConfigError("unknown key '" + join(key) + "'");
    }
  }

 private:
  std::string where() const { return path_.empty() ? "<root>" : path_; }

  template <typename T>
  static T convert(const YAML::Node& n, const std::string& path) {
    try {
      if (!n.IsScalar()) throw ConfigError(path + ": expected a scalar");
      return n.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(path + ": cannot read value '" + n.Scalar() + "'");
    }
  }

  YAML::Node node_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_physics(Section s, PhysicalParams& p) {
  s.read("mass", p.mass);
  s.read("charge", p.charge);
  s.read("light_speed", p.light_speed);
  s.read("hbar", p.hbar);
  s.read("field_b", p.field_b);
  s.read("field_e", p.field_e);
  s.finish();
}

void read_grid(Section s, GridSpec& g) {
  s.read("x_min", g.x_min);
  s.read("x_max", g.x_max);
  s.read("y_min", g.y_min);
  s.read("y_max", g.y_max);
  s.read("n_x", g.n_x);
  s.read("n_y", g.n_y);
  s.read("periodic_x", g.periodic_x);
  s.read("periodic_y", g.periodic_y);
  std::string frame;
  s.read("frame", frame);
  if (frame == "landau") g.frame = GaugeFrame::Landau;
  else if (frame == "twisted") g.frame = GaugeFrame::Twisted;
  else if (!frame.empty()) throw ConfigError(s.join("frame") + ": expected landau or twisted");
  s.read("twist_origin_x", g.twist_origin_x);
  s.read("twist_origin_t", g.twist_origin_t);
  s.finish();
}

Family read_family(const std::string& name, const std::string& path) {
  try {
    return family_from_string(name.c_str());
  } catch (const std::invalid_argument&) {
    throw ConfigError(path + ": unknown family '" + name + "' (psi | psibar | zeta | zetabar | ground)");
  }
}

void read_verify(Section s, VerifyOptions& o) {
  std::vector<std::string> families;
  s.read_list("families", families);
  if (s.has("families")) {
    o.families.clear();
    for (const auto& f : families) o.families.push_back(read_family(f, s.join("families")));
  }
  s.read_list("levels", o.levels);
  s.read_list("period_fractions", o.period_fractions);
  s.read_list("field_e_values", o.field_e_values);
  s.read("offset_x", o.offset_x);
  s.read("offset_y", o.offset_y);
  s.read("residual_tolerance", o.residual_tolerance);
  s.read("energy_tolerance", o.energy_tolerance);
  s.read("negative_control", o.negative_control);
  s.read("control_threshold", o.control_threshold);
  s.finish();
}

void read_evolve(Section s, EvolveOptions& o) {
  Section st = s.child("state");
  std::string family = to_string(o.state.family);
  st.read("family", family);
  o.state.family = read_family(family, st.join("family"));
  st.read("level", o.state.level);
  st.read("offset_x", o.state.offset_x);
  st.read("offset_y", o.state.offset_y);
  st.read("offset_t", o.state.offset_t);
  st.finish();
  std::string scheme = to_string(o.scheme);
  s.read("scheme", scheme);
  o.scheme = scheme_from_string(scheme, s.join("scheme"));
  s.read("periods", o.periods);
  s.read("steps_per_period", o.steps_per_period);
  s.read("record_every", o.record_every);
  s.read("overlap_threshold", o.overlap_threshold);
  s.read("norm_tolerance", o.norm_tolerance);
  s.read("conservation_tolerance", o.conservation_tolerance);
  s.read("energy_tolerance", o.energy_tolerance);
  s.read("order_check", o.order_check);
  s.read("order_min", o.order_min);
  s.read("order_max", o.order_max);
  s.read("save_state", o.save_state);
  s.finish();
}

void read_lorentz(Section s, LorentzOptions& o) {
  Section p = s.child("packet");
  p.read("center_x", o.center_x);
  p.read("center_y", o.center_y);
  p.read("momentum_x", o.momentum_x);
  p.read("momentum_y", o.momentum_y);
  p.read("width", o.width);
  p.finish();
  std::string scheme = to_string(o.scheme);
  s.read("scheme", scheme);
  o.scheme = scheme_from_string(scheme, s.join("scheme"));
  s.read("periods", o.periods);
  s.read("steps_per_period", o.steps_per_period);
  s.read("defect_tolerance", o.defect_tolerance);
  s.read("conservation_tolerance", o.conservation_tolerance);
  s.read("drift_tolerance", o.drift_tolerance);
  s.finish();
}

void read_resistivity(Section s, ResistivityOptions& o) {
  s.read_list("l_values", o.l_values);
  s.read("k", o.k);
  s.read("integer_tolerance", o.integer_tolerance);
  s.read("phase_tolerance", o.phase_tolerance);
  s.read("perturbation", o.perturbation);
  s.read("rho_long_x", o.rho_long_x);
  s.read("rho_long_samples", o.rho_long_samples);
  s.read("quadrature_points", o.quadrature_points);
  s.finish();
}

void read_fourier(Section s, FourierOptions& o) {
  s.read_list("levels", o.levels);
  s.read_list("shifts", o.shifts);
  s.read("points", o.points);
  s.read("half_width", o.half_width);
  s.read("tolerance", o.tolerance);
  s.finish();
}

void read_general(Section s, GeneralOptions& o) {
  if (s.has("terms") || s.has("ground_series")) {
    o.terms.clear();
    o.ground_series.reset();
  }
  if (s.has("terms")) {
    const YAML::Node list = s.raw("terms");
    if (!list.IsSequence()) throw ConfigError(s.join("terms") + ": expected a list");
    o.terms.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      Section t(list[i], s.join("terms") + "[" + std::to_string(i) + "]");
      SolutionTerm term;
      t.read("bar", term.bar);
      t.read("level", term.level);
      t.read("j", term.j);
      t.read("j_prime", term.j_prime);
      if (t.has("coefficient")) {
        const YAML::Node c = t.raw("coefficient");
        const std::string path = t.join("coefficient");
        try {
          if (c.IsSequence() && c.size() == 2) {
            term.coefficient = cplx{c[0].as<double>(), c[1].as<double>()};
          } else if (c.IsScalar()) {
            term.coefficient = cplx{c.as<double>(), 0.0};
          } else {
            throw ConfigError(path + ": expected a number or [re, im]");
          }
        } catch (const YAML::Exception&) {
          throw ConfigError(path + ": expected a number or [re, im]");
        }
      }
      t.finish();
      o.terms.push_back(term);
    }
  }
  if (s.has("ground_series")) {
    Section g = s.child("ground_series");
    SeriesOptions series;
    g.read("delta_x", series.delta_x);
    g.read("delta_t", series.delta_t);
    g.read("max_order", series.max_order);
    g.finish();
    o.ground_series = series;
  }
  s.read_list("period_fractions", o.period_fractions);
  s.read("residual_tolerance", o.residual_tolerance);
  s.read("series_tolerance", o.series_tolerance);
  s.finish();
  if (o.terms.empty() && !o.ground_series) {
    throw ConfigError(s.join("terms") + ": give explicit terms or a ground_series block");
  }
}

nlohmann::json grid_json(const GridSpec& g) {
  return {{"x_min", g.x_min}, {"x_max", g.x_max}, {"y_min", g.y_min}, {"y_max", g.y_max},
          {"n_x", g.n_x}, {"n_y", g.n_y}, {"periodic_x", g.periodic_x}, {"periodic_y", g.periodic_y},
          {"frame", landau::to_string(g.frame)}, {"twist_origin_x", g.twist_origin_x},
          {"twist_origin_t", g.twist_origin_t}};
}

}  // namespace

const char* to_string(Verb verb) { return kVerbNames[static_cast<int>(verb)]; }
const char* scenario_name(Verb verb) { return kScenarioNames[static_cast<int>(verb)]; }

Verb verb_from_string(const std::string& name) {
  for (int i = 0; i < 6; ++i) {
    if (name == kVerbNames[i] || name == kScenarioNames[i]) return static_cast<Verb>(i);
  }
  throw ConfigError("unknown verb '" + name + "'");
}

double ScenarioConfig::primary_tolerance() const {
  switch (verb) {
    case Verb::Verify: return verify.residual_tolerance;
    case Verb::Evolve: return 1.0 - evolve.overlap_threshold;
    case Verb::Lorentz: return lorentz.defect_tolerance;
    case Verb::Resistivity: return resistivity.integer_tolerance;
    case Verb::Fourier: return fourier.tolerance;
    case Verb::General: return general.residual_tolerance;
  }
  return 0.0;
}

void ScenarioConfig::set_primary_tolerance(double value) {
  if (!(value > 0.0)) throw ConfigError("tolerance must be positive");
  switch (verb) {
    case Verb::Verify: verify.residual_tolerance = value; break;
    case Verb::Evolve: evolve.overlap_threshold = 1.0 - value; break;
    case Verb::Lorentz: lorentz.defect_tolerance = value; break;
    case Verb::Resistivity: resistivity.integer_tolerance = value; break;
    case Verb::Fourier: fourier.tolerance = value; break;
    case Verb::General: general.residual_tolerance = value; break;
  }
}

ScenarioConfig default_config(Verb verb) {
  ScenarioConfig c;
  c.verb = verb;
  switch (verb) {
    case Verb::Verify:
    case Verb::Resistivity:
    case Verb::Fourier:
      break;
    case Verb::Evolve:
      c.grid.y_min = -4.0;
      c.grid.y_max = 4.0;
      c.grid.n_y = 16;
      break;
    case Verb::Lorentz:
      c.grid.n_x = 256;
      c.grid.n_y = 256;
      break;
    case Verb::General:
      c.grid.frame = GaugeFrame::Twisted;
      c.grid.x_min = -10.0;
      c.grid.x_max = 10.0;
      c.grid.n_x = 256;
      c.grid.y_min = -2.0;
      c.grid.y_max = 2.0;
      c.grid.n_y = 64;
      c.grid.periodic_y = false;
      c.general.ground_series = SeriesOptions{};
      break;
  }
  return c;
}

ScenarioConfig parse_config(const std::string& text, Verb verb) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config is not valid YAML: ") + e.what());
  }
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  if (!root.IsMap()) throw ConfigError("config root must be a mapping");

  // A manifest carries the resolved config under "config".
  if (root["config"] && root["verb"]) {
    Section manifest(root, "");
    std::string recorded;
    manifest.read("verb", recorded);
    if (verb_from_string(recorded) != verb) {
      throw ConfigError("manifest was written by '" + recorded + "', not '" + to_string(verb) + "'");
    }
    root = root["config"];
    if (!root.IsMap()) throw ConfigError("config: expected a mapping");
  }

  ScenarioConfig c = default_config(verb);
  Section top(root, "");
  std::string scenario;
  top.read("scenario", scenario);
  if (!scenario.empty() && verb_from_string(scenario) != verb) {
    throw ConfigError("scenario '" + scenario + "' does not match verb '" + to_string(verb) + "'");
  }
  read_physics(top.child("physics"), c.physics);
  read_grid(top.child("grid"), c.grid);
  if (top.has("output")) {
    Section out = top.child("output");
    out.read("directory", c.output_directory);
    out.finish();
  }
  Section section = top.child(to_string(verb));
  switch (verb) {
    case Verb::Verify: read_verify(section, c.verify); break;
    case Verb::Evolve: read_evolve(section, c.evolve); break;
    case Verb::Lorentz: read_lorentz(section, c.lorentz); break;
    case Verb::Resistivity: read_resistivity(section, c.resistivity); break;
    case Verb::Fourier: read_fourier(section, c.fourier); break;
    case Verb::General: read_general(section, c.general); break;
  }
  double tolerance = 0.0;
  if (top.has("tolerance")) {
    top.read("tolerance", tolerance);
    c.set_primary_tolerance(tolerance);
  }
  top.finish();
  try {
    c.physics.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("physics: ") + e.what());
  }
  return c;
}

ScenarioConfig load_config(const std::string& path, Verb verb) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), verb);
}

nlohmann::json to_json(const ScenarioConfig& c) {
  nlohmann::json j;
  j["scenario"] = scenario_name(c.verb);
  const PhysicalParams& p = c.physics;
  j["physics"] = {{"mass", p.mass}, {"charge", p.charge}, {"light_speed", p.light_speed},
                  {"hbar", p.hbar}, {"field_b", p.field_b}, {"field_e", p.field_e}};
  j["grid"] = grid_json(c.grid);
  nlohmann::json s;
  switch (c.verb) {
    case Verb::Verify: {
      const VerifyOptions& o = c.verify;
      std::vector<std::string> families;
      for (Family f : o.families) families.emplace_back(landau::to_string(f));
      s = {{"families", families}, {"levels", o.levels}, {"period_fractions", o.period_fractions},
           {"field_e_values", o.field_e_values}, {"offset_x", o.offset_x}, {"offset_y", o.offset_y},
           {"residual_tolerance", o.residual_tolerance}, {"energy_tolerance", o.energy_tolerance},
           {"negative_control", o.negative_control}, {"control_threshold", o.control_threshold}};
      break;
    }
    case Verb::Evolve: {
      const EvolveOptions& o = c.evolve;
      s = {{"state", {{"family", landau::to_string(o.state.family)}, {"level", o.state.level},
                      {"offset_x", o.state.offset_x}, {"offset_y", o.state.offset_y},
                      {"offset_t", o.state.offset_t}}},
           {"scheme", to_string(o.scheme)}, {"periods", o.periods},
           {"steps_per_period", o.steps_per_period}, {"record_every", o.record_every},
           {"overlap_threshold", o.overlap_threshold}, {"norm_tolerance", o.norm_tolerance},
           {"conservation_tolerance", o.conservation_tolerance}, {"energy_tolerance", o.energy_tolerance},
           {"order_check", o.order_check}, {"order_min", o.order_min}, {"order_max", o.order_max},
           {"save_state", o.save_state}};
      break;
    }
    case Verb::Lorentz: {
      const LorentzOptions& o = c.lorentz;
      s = {{"packet", {{"center_x", o.center_x}, {"center_y", o.center_y}, {"momentum_x", o.momentum_x},
                       {"momentum_y", o.momentum_y}, {"width", o.width}}},
           {"scheme", to_string(o.scheme)}, {"periods", o.periods},
           {"steps_per_period", o.steps_per_period}, {"defect_tolerance", o.defect_tolerance},
           {"conservation_tolerance", o.conservation_tolerance}, {"drift_tolerance", o.drift_tolerance}};
      break;
    }
    case Verb::Resistivity: {
      const ResistivityOptions& o = c.resistivity;
      s = {{"l_values", o.l_values}, {"k", o.k}, {"integer_tolerance", o.integer_tolerance},
           {"phase_tolerance", o.phase_tolerance}, {"perturbation", o.perturbation},
           {"rho_long_x", o.rho_long_x}, {"rho_long_samples", o.rho_long_samples},
           {"quadrature_points", o.quadrature_points}};
      break;
    }
    case Verb::Fourier: {
      const FourierOptions& o = c.fourier;
      s = {{"levels", o.levels}, {"shifts", o.shifts}, {"points", o.points},
           {"half_width", o.half_width}, {"tolerance", o.tolerance}};
      break;
    }
    case Verb::General: {
      const GeneralOptions& o = c.general;
      if (!o.terms.empty()) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& t : o.terms) {
          terms.push_back({{"bar", t.bar}, {"level", t.level}, {"j", t.j}, {"j_prime", t.j_prime},
                           {"coefficient", {t.coefficient.real(), t.coefficient.imag()}}});
        }
        s["terms"] = terms;
      }
      if (o.ground_series) {
        s["ground_series"] = {{"delta_x", o.ground_series->delta_x},
                              {"delta_t", o.ground_series->delta_t},
                              {"max_order", o.ground_series->max_order}};
      }
      s["period_fractions"] = o.period_fractions;
      s["residual_tolerance"] = o.residual_tolerance;
      s["series_tolerance"] = o.series_tolerance;
      break;
    }
  }
  j[to_string(c.verb)] = s;
  return j;
}

}  // namespace landau::app
