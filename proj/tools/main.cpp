// landau: scenario runner for the crossed-field Landau-gauge library.
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <regex>

#include "CLI11.hpp"
#include "config.hpp"
#include "landau/errors.hpp"
#include "report.hpp"
#include "scenarios.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

constexpr const char* kOutRootEnv = "LANDAU_OUT_ROOT";

struct Options {
  std::string config;
  std::string out;
  double tolerance = 0.0;
  std::string grid;
  bool quiet = false;
};

std::string output_directory(const Options& opts, const landau::app::ScenarioConfig& cfg) {
  if (!opts.out.empty()) return opts.out;
  if (!cfg.output_directory.empty()) return cfg.output_directory;
  const char* root = std::getenv(kOutRootEnv);
  const std::string base = (root && *root) ? root : "landau-out";
  return (std::filesystem::path(base) / landau::app::to_string(cfg.verb)).string();
}

int run(landau::app::Verb verb, const Options& opts, const std::vector<std::string>& argv) {
  using namespace landau::app;
  ScenarioConfig cfg;
  try {
    cfg = opts.config.empty() ? default_config(verb) : load_config(opts.config, verb);
    if (!opts.grid.empty()) {
      static const std::regex pattern(R"((\d+)x(\d+))");
      std::smatch m;
      if (!std::regex_match(opts.grid, m, pattern)) throw ConfigError("--grid expects <nx>x<ny>, got '" + opts.grid + "'");
      cfg.grid.n_x = std::stoi(m[1]);
      cfg.grid.n_y = std::stoi(m[2]);
    }
    if (opts.tolerance != 0.0) cfg.set_primary_tolerance(opts.tolerance);
    cfg.grid.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  const std::string dir = output_directory(opts, cfg);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::cerr << "I/O error: cannot create output directory '" << dir << "': " << ec.message() << '\n';
    return kExitIo;
  }

  const Logger log = [&](const std::string& line) {
    if (!opts.quiet) std::cout << "  " << line << '\n';
  };
  if (!opts.quiet) std::cout << "landau " << to_string(verb) << " -> " << dir << '\n';

  Report report;
  try {
    report = run_scenario(cfg, log);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const landau::Error& e) {
    report.error = e.what();
    std::cerr << "run aborted: " << e.what() << '\n';
  }
  const int code = report.passed() ? kExitPass : kExitFail;

  try {
    const std::filesystem::path base(dir);
    for (const auto& a : report.artifacts) write_atomic((base / a.name).string(), a.content);
    nlohmann::json manifest;
    manifest["schema_version"] = kSchemaVersion;
    manifest["tool_version"] = kToolVersion;
    manifest["verb"] = to_string(verb);
    manifest["config"] = to_json(cfg);
    manifest["command"] = argv;
    nlohmann::json files = nlohmann::json::array({"summary.json", "plots.json"});
    for (const auto& a : report.artifacts) files.push_back(a.name);
    manifest["files"] = files;
    manifest["rerun"] = std::string("landau ") + to_string(verb) + " --config <this manifest> --out <dir>";
    write_atomic((base / "manifest.json").string(), manifest.dump(2) + "\n");
    write_atomic((base / "plots.json").string(), plots_json(report).dump(2) + "\n");
    write_atomic((base / "summary.json").string(), summary_json(to_string(verb), report, code).dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }

  if (!opts.quiet) {
    for (const auto& a : report.assertions()) {
      std::cout << (a.passed ? "PASS " : "FAIL ") << a.name << " (" << a.value << ")\n";
    }
    std::cout << (code == kExitPass ? "all assertions passed" : "some assertions failed") << '\n';
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification runner for a charged particle in crossed electric and magnetic fields"};
  app.require_subcommand(1);
  Options opts;
  std::vector<std::string> args(argv, argv + argc);
  const std::pair<landau::app::Verb, const char*> verbs[] = {
      {landau::app::Verb::Verify, "Residuals and eigenvalues of the analytic solution families"},
      {landau::app::Verb::Evolve, "Track an analytic state with the split-step oracle"},
      {landau::app::Verb::Lorentz, "Newton-Lorentz equations for an evolved coherent packet"},
      {landau::app::Verb::Resistivity, "Hall quantization scan and longitudinal resistivity"},
      {landau::app::Verb::Fourier, "Fourier pair of the shifted oscillator functions"},
      {landau::app::Verb::General, "Residual of a general solution built from generators"}};
  std::vector<std::pair<CLI::App*, landau::app::Verb>> subs;
  for (const auto& [verb, help] : verbs) {
    CLI::App* sub = app.add_subcommand(landau::app::to_string(verb), help);
    sub->add_option("--config", opts.config, "YAML config (or a manifest.json from an earlier run)");
    sub->add_option("--out", opts.out, std::string("Output directory (default $") + kOutRootEnv + "/<verb>)");
    sub->add_option("--tolerance", opts.tolerance, "Override the primary tolerance of the verb");
    sub->add_option("--grid", opts.grid, "Grid size <nx>x<ny>");
    sub->add_flag("--quiet", opts.quiet, "Only report errors");
    subs.emplace_back(sub, verb);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  for (const auto& [sub, verb] : subs) {
    if (sub->parsed()) return run(verb, opts, args);
  }
  return kExitConfig;
}
