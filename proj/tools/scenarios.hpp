#pragma once

#include "config.hpp"
#include "report.hpp"

namespace landau::app {

// Runs the configured scenario; artifacts stay in memory until written.
// Physics errors (boundary hits, ill-conditioning) propagate as landau::Error.
Report run_scenario(const ScenarioConfig& config, const Logger& log);

}  // namespace landau::app
