#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace landau::app {

inline constexpr const char* kSchemaVersion = "1.0.0";
inline constexpr const char* kToolVersion = "1.0.0";

// File-system problems: exit status 3.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Assertion {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  double upper = 0.0;       // used by "in" comparisons
  std::string comparison;   // "<", ">", "in", "true"
  bool passed = false;
};

struct Artifact {
  std::string name;
  std::string description;
  std::string content;
};

struct PlotHint {
  std::string file;
  std::string x;
  std::string y;
  std::string title;
};

using Logger = std::function<void(const std::string&)>;

class Report {
 public:
  void less(const std::string& name, double value, double threshold);
  void greater(const std::string& name, double value, double threshold);
  void within(const std::string& name, double value, double lo, double hi);
  void flag(const std::string& name, bool ok);

  bool passed() const;
  const std::vector<Assertion>& assertions() const { return assertions_; }

  nlohmann::json results = nlohmann::json::object();
  std::vector<Artifact> artifacts;
  std::vector<PlotHint> plots;
  std::vector<std::string> warnings;
  std::string error;  // set when the run aborted

 private:
  std::vector<Assertion> assertions_;
};

nlohmann::json summary_json(const std::string& verb, const Report& report, int exit_code);
nlohmann::json plots_json(const Report& report);

// Writes content to path through a temporary file and a rename.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace landau::app
