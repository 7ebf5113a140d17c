#pragma once

#include <ostream>
#include <string>

#include "config.hpp"
#include "output.hpp"

namespace phasekick::cli {

const std::string& experiment_description(const std::string& name);

// Runs the configured experiment and writes its table to `out`. Returns the
// process exit code (validate maps failed checks to 3).
int run_experiment(const Config& cfg, Format format, std::ostream& out);

}  // namespace phasekick::cli
