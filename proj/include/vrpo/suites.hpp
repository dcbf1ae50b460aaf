#pragma once

#include "vrpo/dynamics.hpp"
#include "vrpo/integrator.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vrpo {

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    // Lower-bound checks pass when residual > tolerance.
    bool lower_bound = false;
    bool pass = false;
};

struct SuiteOptions {
    // Replaces every per-check tolerance when set.
    std::optional<double> tolerance;
    std::optional<double> t_end;
    std::uint64_t seed = 1;
    IntegratorOptions integrator;
};

struct NamedState {
    std::string name;
    VortexSystem system;
    Configuration x;
};

// Antipodal +/- pair, D_3 equatorial ring with both poles, octahedron,
// icosahedron, and the cube split into two tetrahedra of opposite vorticity.
std::vector<NamedState> reference_equilibria();

// Collision-free random states with vorticities uniform in [0.5, 1.5] and
// pairwise distances above 0.2 (unit sphere, or the unit disk in the plane).
std::vector<NamedState> random_states(Surface surface, int count, int vortices, std::uint64_t seed);

// ||X_H|| < 1e-10 at every reference equilibrium.
std::vector<CheckResult> equilibrium_suite(const SuiteOptions& o);
// Five sphere states with six vortices and five plane states with five,
// integrated to t_end = 100: relative energy drift and momentum drift < 1e-8.
std::vector<CheckResult> conservation_suite(const SuiteOptions& o);
// Trajectories started in the fixed spaces of the tetrahedral 12-vortex chart,
// the staggered D_4d chart and the three-pair C_i chart stay fixed to 1e-8
// over t_end = 20.
std::vector<CheckResult> fixed_space_suite(const SuiteOptions& o);
// One closed orbit of the two-ring chart (n = 3, ratio 2, mu = 1) and one
// dancing-vortices orbit (n = 2): fit residual < 1e-6, nonzero drift angle for
// the former and zero for the latter.
std::vector<CheckResult> relative_period_suite(const SuiteOptions& o);

std::vector<std::string> suite_names();
// Throws InvalidInput for unknown names. "all" runs every suite.
std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& o);

}  // namespace vrpo
