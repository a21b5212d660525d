#pragma once

// Experiment configuration: strict JSON, unknown keys rejected, defaults for
// every field outside "spec".

#include "blowup/analyze.hpp"
#include "blowup/integrate.hpp"
#include "blowup/model.hpp"
#include "blowup/monitors.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace blowup::lab {

struct SpecConfig {
    int n = 1;
    double R = 1.0;
    double p = 1.0;
    double q = 1.0;
    double lambda = 1.0;
    InitialFamily family = InitialFamily::Quadratic;
    double a = -1.0;

    bool operator==(const SpecConfig&) const = default;
};

struct AnalysisConfig {
    std::optional<double> beta; // defaults to q
    FitWindowSpec fit_window{};
    double epsilon_fraction = 0.9;
    double interior_fraction = 0.9;
    double T_cmp = 1.0;
    double C_up = 10.0;
    double b_max = 10.0;
    bool theorem4 = true;

    bool operator==(const AnalysisConfig&) const = default;
};

struct ExperimentConfig {
    SpecConfig spec{};
    int N = 256;
    StepControl control{};
    AnalysisConfig analysis{};
    std::string output_dir = "out";

    bool operator==(const ExperimentConfig&) const = default;
};

/// Throws Error(ConfigError) on unknown keys, wrong types or invalid values.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::ordered_json config_to_json(const ExperimentConfig& config);

/// Everything a run needs, with the compatible initial data solved for.
struct Experiment {
    ExperimentConfig config;
    ProblemSpec spec;
    RadialGrid grid;
    MonitorParams monitors;
    double beta = 0.0;
};

/// Builds u0 and validates spec and control; failures become ConfigError.
Experiment prepare(const ExperimentConfig& config);

} // namespace blowup::lab
