#pragma once

#include "vrpo/chart.hpp"
#include "vrpo/integrator.hpp"
#include "vrpo/symmetry.hpp"

#include <limits>
#include <vector>

namespace vrpo {

struct Drift {
    double energy = 0.0;
    // energy / max(1, |H(0)|)
    double energy_relative = 0.0;
    double momentum = 0.0;
};

// Maximal deviation of H and J from their initial values.
Drift invariant_drift(const Trajectory& tr);

struct RotationFit {
    Mat3 rotation = Mat3::Identity();
    // Rotation angle (about z for z fits).
    double angle = 0.0;
    // sqrt(sum_i |R a_i - b_i|^2)
    double residual = 0.0;
};

// Least-squares rotation about z taking a onto b, vortex by vortex.
RotationFit fit_z_rotation(const Configuration& a, const Configuration& b);
// Least-squares rotation in SO(3) (Kabsch).
RotationFit fit_rotation(const Configuration& a, const Configuration& b);

struct RelPeriodReport {
    bool found = false;
    double period = std::numeric_limits<double>::quiet_NaN();
    double angle = std::numeric_limits<double>::quiet_NaN();
    Mat3 element = Mat3::Identity();
    // |x(T) - g x(0)|; +inf when no recurrence was found.
    double residual = std::numeric_limits<double>::infinity();
    // Chart distance between project(x(T)) and the start point.
    double reduced_return = std::numeric_limits<double>::infinity();
    // Full rotation fit (charts quotiented by SO(3)) or rotation about z.
    bool full_rotation = false;
};

// Integrates from lift(p0) until the projected curve first returns to the
// line through p0 along the reduced gradient, refines the return time on the
// dense output, re-integrates to that time and fits the rotation.
RelPeriodReport verify_relative_periodicity(const ReducedChart& chart, ReducedPoint p0, double t_max,
                                            const IntegratorOptions& options = {});

// max over accepted steps and k of |act(k, x(t)) - x(t)|. Throws NotInFixedSpace
// when x0 is not fixed by k to 1e-10.
double verify_fixed_space_invariance(const std::vector<GroupElement>& k, const VortexSystem& system,
                                     const Configuration& x0, double t_end, const IntegratorOptions& options = {});

// max_i |X_H(x)_i|.
double equilibrium_residual(const VortexSystem& system, const Configuration& x);

// max_i |x_i(T back to 0) - x_i(0)| after integrating to t_end and back.
double time_reversal_error(const VortexSystem& system, const Configuration& x0, double t_end,
                           const IntegratorOptions& options = {});

}  // namespace vrpo
