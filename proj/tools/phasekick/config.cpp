#include "config.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace phasekick::cli {

namespace {

struct KeyDefault {
    const char* key;
    double value;
};

const std::map<std::string, std::vector<KeyDefault>>& experiment_defaults() {
    static const std::map<std::string, std::vector<KeyDefault>> table = {
        {"unitary-loop",
         {{"T_min", 0.25},
          {"T_max", 1.0},
          {"T_step", 0.25},
          {"eta", 1.0},
          {"alpha0_re", 0.0},
          {"alpha0_im", 0.0},
          {"dt", 1e-3},
          {"d_F", 40}}},
        {"dissipative-loop",
         {{"gamma_T1_min", 0.5},
          {"gamma_T1_max", 20.0},
          {"gamma_T1_step", 0.5},
          {"eta_over_gamma", 1.0},
          {"alpha0_re", 1.0},
          {"alpha0_im", 0.0},
          {"dt", 1e-4}}},
        {"thermal-sweep",
         {{"eta_over_gamma", 0.05},
          {"gamma_T1", 20.0},
          {"alpha0_min", 0.0},
          {"alpha0_max", 300.0},
          {"alpha0_step", 2.0},
          {"alpha0_im", 0.0},
          {"V_min", 1.0},
          {"V_max", 60.0},
          {"V_step", 1.0},
          {"dt", 1e-3},
          {"quad_n", 16},
          {"mc_samples", 0},
          {"seed", 12345}}},
        {"variance-sweep",
         {{"eta_over_gamma", 0.05},
          {"gamma_T1", 20.0},
          {"V_min", 1.0},
          {"V_max", 60.0},
          {"V_step", 1.0},
          {"dt", 1e-3},
          {"quad_n", 16},
          {"mc_samples", 0},
          {"seed", 12345}}},
        {"convergence",
         {{"eta_over_gamma", 1.0},
          {"gamma_T1", 1.0},
          {"alpha0_re", 1.0},
          {"dt_max", 1e-3},
          {"n_points", 4},
          {"d_F", 30}}},
        {"validate", {{"gamma", 1.0}}},
    };
    return table;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& text, const std::string& where) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE ||
        !std::isfinite(v)) {
        throw ConfigError("not a finite number in " + where + ": '" + text +
                          "'");
    }
    return v;
}

void apply(Config& cfg, const std::string& key, const std::string& text,
           const std::string& where) {
    if (cfg.values.find(key) == cfg.values.end()) {
        throw ConfigError("unknown key '" + key + "' for experiment '" +
                          cfg.experiment + "' in " + where);
    }
    cfg.values[key] = parse_number(text, where);
}

}  // namespace

double Config::get(const std::string& key) const {
    const auto it = values.find(key);
    if (it == values.end()) {
        throw ConfigError("missing key '" + key + "'");
    }
    return it->second;
}

int Config::get_int(const std::string& key) const {
    const double v = get(key);
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9 || std::abs(r) > 2e9) {
        throw ConfigError("key '" + key + "' must be an integer, got " +
                          format_double(v));
    }
    return static_cast<int>(r);
}

std::uint64_t Config::get_seed(const std::string& key) const {
    const double v = get(key);
    if (v < 0 || v != std::floor(v) || v > 9.007199254740992e15) {
        throw ConfigError("key '" + key +
                          "' must be a nonnegative integer below 2^53");
    }
    return static_cast<std::uint64_t>(v);
}

std::string Config::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const auto mix = [&h](const std::string& s) {
        for (const unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    };
    mix(experiment);
    mix("\n");
    for (const auto& [k, v] : values) {   // std::map iterates sorted
        mix(k);
        mix("=");
        mix(format_double(v));
        mix("\n");
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, keys] : experiment_defaults()) v.push_back(name);
        return v;
    }();
    return names;
}

Config build_config(const std::string& experiment,
                    const std::string& config_path,
                    const std::vector<std::string>& overrides) {
    const auto& table = experiment_defaults();
    const auto it = table.find(experiment);
    if (it == table.end()) {
        throw ConfigError("unknown experiment '" + experiment + "'");
    }
    Config cfg;
    cfg.experiment = experiment;
    for (const auto& kd : it->second) cfg.values[kd.key] = kd.value;

    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            throw ConfigError("cannot open config file '" + config_path + "'");
        }
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash_pos = line.find('#');
            if (hash_pos != std::string::npos) line.erase(hash_pos);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("expected key = value at " + config_path +
                                  ":" + std::to_string(lineno));
            }
            apply(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)),
                  config_path + ":" + std::to_string(lineno));
        }
    }

    for (const auto& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("--set expects key=value, got '" + ov + "'");
        }
        apply(cfg, trim(ov.substr(0, eq)), trim(ov.substr(eq + 1)), "--set");
    }
    return cfg;
}

std::vector<double> grid(double lo, double hi, double step, const char* what) {
    if (!(step > 0.0) || !(hi >= lo)) {
        throw ConfigError(std::string("invalid grid for ") + what + ": [" +
                          format_double(lo) + ", " + format_double(hi) +
                          "] step " + format_double(step));
    }
    std::vector<double> out;
    const auto n = static_cast<long long>(std::floor((hi - lo) / step + 1e-9));
    for (long long k = 0; k <= n; ++k) {
        out.push_back(lo + static_cast<double>(k) * step);
    }
    return out;
}

std::string format_double(double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace phasekick::cli
