#include "report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <unistd.h>

namespace landau::app {

namespace {

nlohmann::json number(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

void Report::less(const std::string& name, double value, double threshold) {
  assertions_.push_back({name, value, threshold, 0.0, "<", value < threshold});
}

void Report::greater(const std::string& name, double value, double threshold) {
  assertions_.push_back({name, value, threshold, 0.0, ">", value > threshold});
}

void Report::within(const std::string& name, double value, double lo, double hi) {
  assertions_.push_back({name, value, lo, hi, "in", value >= lo && value <= hi});
}

void Report::flag(const std::string& name, bool ok) {
  assertions_.push_back({name, ok ? 1.0 : 0.0, 1.0, 0.0, "true", ok});
}

bool Report::passed() const {
  if (!error.empty()) return false;
  for (const auto& a : assertions_) {
    if (!a.passed) return false;
  }
  return true;
}

nlohmann::json summary_json(const std::string& verb, const Report& report, int exit_code) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["verb"] = verb;
  j["status"] = !report.error.empty() ? "error" : (report.passed() ? "pass" : "fail");
  j["exit_code"] = exit_code;
  nlohmann::json list = nlohmann::json::array();
  std::size_t failed = 0;
  for (const auto& a : report.assertions()) {
    nlohmann::json item{{"name", a.name}, {"value", number(a.value)}, {"comparison", a.comparison},
                        {"threshold", number(a.threshold)}, {"passed", a.passed}};
    if (a.comparison == "in") item["upper"] = number(a.upper);
    list.push_back(item);
    if (!a.passed) ++failed;
  }
  j["assertions"] = list;
  j["counts"] = {{"total", report.assertions().size()}, {"failed", failed}};
  j["results"] = report.results;
  nlohmann::json files = nlohmann::json::array();
  for (const auto& a : report.artifacts) files.push_back({{"name", a.name}, {"description", a.description}});
  j["artifacts"] = files;
  j["warnings"] = report.warnings;
  j["units"] = "Gaussian-form units with m, q, c, hbar, B and E taken from the physics block; "
               "natural units set all of them to 1 (currents in q*omega_c*length per area)";
  if (!report.error.empty()) j["error"] = report.error;
  return j;
}

nlohmann::json plots_json(const Report& report) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& p : report.plots) {
    list.push_back({{"file", p.file}, {"x", p.x}, {"y", p.y}, {"title", p.title}});
  }
  return {{"schema_version", kSchemaVersion}, {"plots", list}};
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot write '" + tmp + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw OutputError("failed writing '" + tmp + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw OutputError("cannot move '" + tmp + "' into place: " + ec.message());
  }
}

}  // namespace landau::app
