#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace phasekick::cli {

// Bad flags, unknown keys, malformed files, invalid grids. Mapped to exit 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat numeric parameter set for one experiment, assembled from built-in
// defaults, then an optional key = value file, then --set overrides.
struct Config {
    std::string experiment;
    std::map<std::string, double> values;

    double get(const std::string& key) const;
    int get_int(const std::string& key) const;
    std::uint64_t get_seed(const std::string& key) const;

    // FNV-1a over the experiment name and the sorted key=value listing.
    std::string hash() const;
};

const std::vector<std::string>& experiment_names();

Config build_config(const std::string& experiment,
                    const std::string& config_path,
                    const std::vector<std::string>& overrides);

// Inclusive grid [lo, hi] in steps of `step`, tolerant of rounding at the
// upper edge. Throws ConfigError when empty or inverted.
std::vector<double> grid(double lo, double hi, double step, const char* what);

std::string format_double(double x);

}  // namespace phasekick::cli
