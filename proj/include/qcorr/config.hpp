#pragma once

#include "qcorr/analysis.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcorr {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Scenario { Evolve, Sweep, Figure1, Figure2, Audit, CompareBackends };

std::string_view scenario_name(Scenario s);

struct GridSpec {
    int points = kClassifyGridPoints;
    double x_min = 0.0;
    double x_max = 1.0;
};

struct RunConfig {
    Scenario scenario = Scenario::Figure1;
    XState state0;
    std::string state_label;
    std::vector<double> m_values{0.0, 0.1, 0.5, 1.0};
    double gamma = 1.0;
    GridSpec grid;
    Backend backend = RepairedClosedForm{};
    std::vector<Measure> measures;
    std::string output; // base name of emitted files, without extension
    bool emit_svg = false;
};

/// Parse and validate a JSON run configuration. Errors name the offending key
/// or, for malformed JSON, the line and column.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

} // namespace qcorr
