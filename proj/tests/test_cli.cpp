#include <filesystem>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "doctest.h"
#include "json.hpp"
#include "report.hpp"

using namespace landau;
using namespace landau::app;

namespace {

std::string error_of(const std::string& text, Verb verb) {
  try {
    parse_config(text, verb);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("verb and scenario names round trip") {
  for (Verb v : {Verb::Verify, Verb::Evolve, Verb::Lorentz, Verb::Resistivity, Verb::Fourier, Verb::General}) {
    CHECK(verb_from_string(to_string(v)) == v);
    CHECK(verb_from_string(scenario_name(v)) == v);
  }
  CHECK(std::string(scenario_name(Verb::Resistivity)) == "resistivity-scan");
  CHECK_THROWS_AS(verb_from_string("plot"), ConfigError);
}

TEST_CASE("shipped configs parse to the built-in defaults") {
  for (Verb v : {Verb::Verify, Verb::Evolve, Verb::Lorentz, Verb::Resistivity, Verb::Fourier, Verb::General}) {
    CAPTURE(to_string(v));
    const auto path = std::filesystem::path(LANDAU_SOURCE_DIR) / "configs" / (std::string(to_string(v)) + ".yaml");
    const ScenarioConfig c = load_config(path.string(), v);
    CHECK(to_json(c) == to_json(default_config(v)));
  }
}

TEST_CASE("strict parsing names the offending key") {
  CHECK(error_of("physics: {chrage: 1.0}\n", Verb::Verify).find("unknown key 'physics.chrage'") != std::string::npos);
  CHECK(error_of("resistivity: {l_value: [1]}\n", Verb::Resistivity).find("resistivity.l_value") != std::string::npos);
  CHECK(error_of("colour: red\n", Verb::Verify).find("unknown key 'colour'") != std::string::npos);
  CHECK(error_of("grid: {n_x: many}\n", Verb::Verify).find("grid.n_x") != std::string::npos);
  CHECK(error_of("scenario: lorentz-check\n", Verb::Verify).find("does not match") != std::string::npos);
  CHECK(error_of("verify: {families: [psi, chi]}\n", Verb::Verify).find("chi") != std::string::npos);
  CHECK(error_of("[1, 2\n", Verb::Verify).find("YAML") != std::string::npos);
  CHECK(error_of("- 1\n", Verb::Verify).find("mapping") != std::string::npos);
  // Sections of other verbs are not accepted silently.
  CHECK_FALSE(error_of("lorentz: {periods: 2}\n", Verb::Verify).empty());
  CHECK_THROWS_AS(load_config("/nonexistent/config.yaml", Verb::Verify), ConfigError);
}

TEST_CASE("values override defaults and the tolerance maps to each verb") {
  const ScenarioConfig c = parse_config(
      "physics: {field_b: 2.0, field_e: 0.5}\ngrid: {n_x: 128, n_y: 64}\nresistivity: {l_values: [1, 3], k: 2}\n",
      Verb::Resistivity);
  CHECK(c.physics.field_b == 2.0);
  CHECK(c.physics.field_e == 0.5);
  CHECK(c.grid.n_x == 128);
  CHECK(c.resistivity.l_values == std::vector<double>{1, 3});
  CHECK(c.resistivity.k == 2);
  ScenarioConfig t = default_config(Verb::Evolve);
  t.set_primary_tolerance(1e-4);
  CHECK(t.evolve.overlap_threshold == doctest::Approx(1.0 - 1e-4));
  CHECK(t.primary_tolerance() == doctest::Approx(1e-4));
  CHECK_THROWS_AS(t.set_primary_tolerance(-1.0), ConfigError);
}

TEST_CASE("a manifest re-parses to the same resolved configuration") {
  ScenarioConfig c = parse_config("physics: {field_e: 0.25}\nfourier: {levels: [0, 2], shifts: [0.5]}\n", Verb::Fourier);
  nlohmann::json manifest = {{"schema_version", kSchemaVersion}, {"verb", "fourier"}, {"config", to_json(c)}};
  const ScenarioConfig back = parse_config(manifest.dump(2), Verb::Fourier);
  CHECK(to_json(back) == to_json(c));
  CHECK(back.physics.field_e == 0.25);
  CHECK_THROWS_AS(parse_config(manifest.dump(), Verb::Verify), ConfigError);
}

TEST_CASE("report assertions and summary layout") {
  Report r;
  r.less("small", 1e-7, 1e-6);
  r.greater("large", 2.0, 1.0);
  r.within("ratio", 4.0, 3.0, 5.0);
  r.flag("ok", true);
  CHECK(r.passed());
  r.less("too big", 1.0, 0.5);
  CHECK_FALSE(r.passed());
  r.results["answer"] = 42;
  const nlohmann::json s = summary_json("verify", r, 1);
  CHECK(s.at("schema_version") == kSchemaVersion);
  CHECK(s.at("verb") == "verify");
  CHECK(s.at("status") == "fail");
  CHECK(s.at("exit_code") == 1);
  CHECK(s.at("assertions").size() == 5);
  CHECK(s.at("counts").at("failed") == 1);
  CHECK(s.at("results").at("answer") == 42);
}

TEST_CASE("atomic writes replace files and report unwritable targets") {
  const auto dir = std::filesystem::temp_directory_path() / "landau_test_cli";
  std::filesystem::create_directories(dir);
  const auto file = dir / "out.txt";
  write_atomic(file.string(), "first");
  write_atomic(file.string(), "second");
  CHECK(slurp(file) == "second");
  for (const auto& entry : std::filesystem::directory_iterator(dir)) CHECK(entry.path() == file);
  CHECK_THROWS_AS(write_atomic((dir / "missing" / "x.txt").string(), "y"), OutputError);
  std::filesystem::remove_all(dir);
}
