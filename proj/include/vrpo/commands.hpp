#pragma once

#include "vrpo/config.hpp"
#include "vrpo/document.hpp"
#include "vrpo/suites.hpp"
#include "vrpo/verifier.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace vrpo {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitInvalidConfig = 2, kExitNumericalAbort = 3 };

struct Overrides {
    std::optional<std::filesystem::path> out_dir;
    std::optional<std::uint64_t> seed;
};

ScenarioConfig apply_overrides(ScenarioConfig c, const Overrides& o);

// Output file stem: config stem, else the scenario type key.
std::string output_stem(const ScenarioConfig& c, const std::string& fallback);

struct PortraitOutput {
    PortraitDocument document;
    std::filesystem::path contours_csv;
    std::filesystem::path separatrices_csv;
    std::filesystem::path summary_json;
    std::filesystem::path svg;
};

// Samples, extracts and traces the portrait, writes the four files and prints
// a short report.
PortraitOutput cmd_portrait(const ScenarioConfig& c, std::ostream& out);

struct IntegrateOutput {
    Trajectory trajectory;
    Drift drift;
    std::optional<RelPeriodReport> period;
    std::filesystem::path trajectory_csv;
    std::filesystem::path summary_json;
};

// Trajectory CSV: t, theta_i/phi_i (sphere) or rho_i/phi_i (plane) per
// vortex, H, Jx, Jy, Jz.
IntegrateOutput cmd_integrate(const ScenarioConfig& c, std::ostream& out);
void write_trajectory_csv(std::ostream& out, const Trajectory& tr);

// Catalog text for "all" (every table for n = 2..6) or one group name, where
// a literal "n" index takes the value `n`.
std::string cmd_catalog(const std::string& name, int n = 3);

// Runs the configured suite and prints one line per check. Returns
// kExitOk iff every check passes.
int cmd_verify(const ScenarioConfig& c, std::ostream& out);
void print_checks(std::ostream& out, const std::vector<CheckResult>& checks);

// Critical-point counts over the configured momentum grid; writes a CSV
// (mu,centers,saddles,degenerate,error) and reports count changes.
std::vector<ScanRow> cmd_scan(const ScenarioConfig& c, std::ostream& out);

// Runs body and maps exceptions to exit codes with a message on err.
int run_guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace vrpo
