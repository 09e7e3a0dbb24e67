#pragma once

#include <fstream>
#include <map>
#include <string>

#include "setvar/common.hpp"

namespace setvar {

// ---------------------------------------------------------------------------
// Experiment configuration: flat key=value files with CLI-flag override, one
// experiment per invocation, so fixtures diff cleanly.
// ---------------------------------------------------------------------------

struct ExperimentConfig {
    std::string suite;
    std::uint64_t seed = 42;
    std::size_t n = 1024;     // grid cells, power of two >= 8
    double T = 1.0;
    double H = 0.8;           // Hurst exponent of generated integrators
    double p = 2.0;
    double alpha = 0.7;
    double beta = 0.9;
    double rho = 0.5;
    double theta = 0.5;
    std::size_t n_selections = 16;
    std::string out;
    std::string format = "json";

    void validate() const {
        const auto fail = [](const std::string& field) {
            throw invalid_config("invalid config field: " + field);
        };
        if ((n & (n - 1)) != 0 || n < 8) fail("n");
        if (!(T > 0.0)) fail("T");
        if (!(H > 0.0 && H < 1.0)) fail("H");
        if (!(p >= 1.0)) fail("p");
        if (!(alpha > 0.0 && alpha <= 1.0)) fail("alpha");
        if (!(beta > 0.0 && beta <= 1.0)) fail("beta");
        if (!(rho > 0.0 && rho < 1.0)) fail("rho");
        if (!(theta > 0.0 && theta <= 1.0)) fail("theta");
        if (n_selections < 1) fail("n_selections");
        if (format != "json" && format != "csv") fail("format");
    }

    void set(const std::string& key, const std::string& value) {
        try {
            if (key == "suite") suite = value;
            else if (key == "seed") seed = std::stoull(value);
            else if (key == "n") n = std::stoull(value);
            else if (key == "T") T = std::stod(value);
            else if (key == "H") H = std::stod(value);
            else if (key == "p") p = std::stod(value);
            else if (key == "alpha") alpha = std::stod(value);
            else if (key == "beta") beta = std::stod(value);
            else if (key == "rho") rho = std::stod(value);
            else if (key == "theta") theta = std::stod(value);
            else if (key == "n_selections") n_selections = std::stoull(value);
            else if (key == "out") out = value;
            else if (key == "format") format = value;
            else throw invalid_config("unknown config key: " + key);
        } catch (const std::logic_error&) {
            throw invalid_config("invalid config field: " + key);
        }
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

}  // namespace detail

/// key=value lines, '#' comments.
inline void load_config_file(ExperimentConfig& cfg, const std::string& file) {
    std::ifstream is(file);
    if (!is) throw io_error("cannot open config: " + file);
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw invalid_config("config line without '=': " + line);
        cfg.set(detail::trim(line.substr(0, eq)),
                detail::trim(line.substr(eq + 1)));
    }
}

}  // namespace setvar
