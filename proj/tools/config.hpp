#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "landau/evolver.hpp"
#include "landau/solutions.hpp"

namespace landau::app {

// Configuration problems: exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Verb { Verify, Evolve, Lorentz, Resistivity, Fourier, General };

const char* to_string(Verb verb);
Verb verb_from_string(const std::string& name);
// Scenario names as they appear in config files ("verify-solutions", ...).
const char* scenario_name(Verb verb);

struct VerifyOptions {
  std::vector<Family> families{Family::PsiX, Family::PsiBarY, Family::ZetaX, Family::ZetaBarY};
  std::vector<int> levels{0, 1, 2};
  std::vector<double> period_fractions{0.0, 0.3, 0.7};
  std::vector<double> field_e_values{0.0, 1.0};
  double offset_x = 0.7;  // δx of ψ̄
  double offset_y = 0.5;  // δy of ψ
  double residual_tolerance = 1e-5;
  double energy_tolerance = 1e-6;
  bool negative_control = true;
  double control_threshold = 1e-2;
};

struct EvolveOptions {
  AnalyticState state{Family::Ground, 0, 0.0, 0.0, 0.0};
  Scheme scheme = Scheme::SplitStep2;
  double periods = 1.0;
  int steps_per_period = 2000;
  int record_every = 100;
  double overlap_threshold = 0.999;
  double norm_tolerance = 1e-10;
  double conservation_tolerance = 1e-6;
  double energy_tolerance = 1e-8;
  bool order_check = true;
  double order_min = 3.0;
  double order_max = 5.0;
  bool save_state = true;
};

struct LorentzOptions {
  double center_x = -3.0;
  double center_y = 1.0;
  double momentum_x = 0.8;
  double momentum_y = 0.0;
  double width = 1.0;  // in magnetic lengths
  Scheme scheme = Scheme::SplitStep2;
  double periods = 1.0;
  int steps_per_period = 2000;
  double defect_tolerance = 1e-3;
  double conservation_tolerance = 1e-6;
  double drift_tolerance = 1e-3;
};

struct ResistivityOptions {
  std::vector<double> l_values{1, 2, 3, 4, 5};
  long k = 1;
  double integer_tolerance = 1e-9;
  double phase_tolerance = 1e-8;
  double perturbation = 0.01;
  double rho_long_x = 1.0;
  int rho_long_samples = 16;
  int quadrature_points = 64;
};

struct FourierOptions {
  std::vector<int> levels{0, 1, 2, 3};
  std::vector<double> shifts{0.0, 0.25, 1.0};
  int points = 4096;
  double half_width = 14.0;
  double tolerance = 1e-6;
};

struct SeriesOptions {
  double delta_x = 0.1;
  double delta_t = 0.04;
  int max_order = 6;
};

struct GeneralOptions {
  std::vector<SolutionTerm> terms;           // explicit coefficients
  std::optional<SeriesOptions> ground_series;  // or the truncated Û_xÛ_t series of ζ̄₀
  std::vector<double> period_fractions{0.0, 0.3};
  double residual_tolerance = 1e-5;
  double series_tolerance = 1e-6;
};

struct ScenarioConfig {
  Verb verb = Verb::Verify;
  PhysicalParams physics = natural_units(1.0, 1.0);
  GridSpec grid;
  std::optional<double> tolerance;  // overrides the verb's primary tolerance
  std::string output_directory;     // empty: decided by the runner
  VerifyOptions verify;
  EvolveOptions evolve;
  LorentzOptions lorentz;
  ResistivityOptions resistivity;
  FourierOptions fourier;
  GeneralOptions general;

  // The primary tolerance in force (override or verb default).
  double primary_tolerance() const;
  void set_primary_tolerance(double value);
};

// Verb defaults, including the verb-specific default grid.
ScenarioConfig default_config(Verb verb);

// Parses YAML (or the JSON form written to a manifest) with strict unknown-key
// rejection. Errors name the offending key path.
ScenarioConfig parse_config(const std::string& text, Verb verb);
ScenarioConfig load_config(const std::string& path, Verb verb);

// Fully resolved configuration; parse_config(to_json(c).dump()) reproduces c.
nlohmann::json to_json(const ScenarioConfig& config);

}  // namespace landau::app
