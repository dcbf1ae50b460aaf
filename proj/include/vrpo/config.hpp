#pragma once

#include "vrpo/chart.hpp"
#include "vrpo/errors.hpp"
#include "vrpo/integrator.hpp"
#include "vrpo/portrait.hpp"
#include "vrpo/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace vrpo {

// Malformed or inconsistent configuration document.
class ConfigError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

struct GridSettings {
    int nu = kDefaultResolution;
    int nv = kDefaultResolution;
    std::optional<SampleRanges> ranges;
    std::vector<double> levels;
    int level_count = 24;
    bool trace = true;
};

// Either reduced coordinates lifted through the scenario chart, or an
// explicit system and configuration.
struct InitialPoint {
    std::optional<ReducedPoint> reduced;
    std::optional<VortexSystem> system;
    Configuration configuration;
};

struct IntegrateSettings {
    double t_end = 10.0;
    std::optional<InitialPoint> initial;
    // Also search for a relative period from the initial point.
    bool relative_period = false;
    double period_search = 50.0;
};

struct VerifySettings {
    std::string suite;
    // Replaces every per-check tolerance when set.
    std::optional<double> tolerance;
    std::optional<double> t_end;
};

struct ScanSettings {
    double mu_from = 0.0;
    double mu_to = 0.0;
    double mu_step = 0.0;
    int resolution = 200;
};

struct ScenarioConfig {
    std::optional<ScenarioId> scenario;
    GridSettings grid;
    IntegratorOptions integrator;
    IntegrateSettings integrate;
    std::optional<VerifySettings> verify;
    std::optional<ScanSettings> scan;
    std::filesystem::path out_dir = ".";
    // File name stem; defaults to the lower-case scenario tag.
    std::string stem;
    std::uint64_t seed = 1;
};

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::filesystem::path& path);

// Parameters of a scenario object ({"type": ..., ...}).
ScenarioId parse_scenario(const std::string& json_text);

// Copy of the scenario with its reduced momentum replaced. Throws ConfigError
// for scenarios without a momentum parameter.
ScenarioId with_mu(const ScenarioId& s, double mu);

// Momentum grid mu_from, mu_from + step, ... up to mu_to inclusive.
std::vector<double> scan_grid(const ScanSettings& s);

}  // namespace vrpo
