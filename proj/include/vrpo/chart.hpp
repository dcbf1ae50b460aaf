#pragma once

#include "vrpo/dynamics.hpp"
#include "vrpo/scenario.hpp"
#include "vrpo/symmetry.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace vrpo {

struct ReducedPoint {
    double u = 0.0;
    double v = 0.0;
};

struct Axis {
    std::string name;
    double lo = 0.0;
    double hi = 0.0;
    bool periodic = false;
    // False when `hi` is only a rendering bound of an unbounded domain.
    bool bounded = true;

    double span() const { return hi - lo; }
};

// How the residual continuous symmetry acts on lifted configurations.
enum class Gauge { none, z_rotation, full_rotation };

namespace detail {
class ChartModel;
}

class ReducedChart {
public:
    static ReducedChart build(const ScenarioId& scenario);

    const ScenarioId& scenario() const;
    const VortexSystem& system() const;
    const GroupDescriptor& symmetry() const;
    // Elements of K with permutations matching the lift's vortex order.
    const std::vector<GroupElement>& isotropy() const;
    const Axis& u_axis() const;
    const Axis& v_axis() const;
    Gauge gauge() const;
    bool quotiented() const { return gauge() != Gauge::none; }
    // Reduced momentum; zero for direct charts.
    double mu() const;
    // Diagnostics gathered while building the chart.
    const std::vector<std::string>& notes() const;

    ReducedPoint wrap(ReducedPoint p) const;
    // Difference b - a with periodic axes folded to the short way round.
    std::array<double, 2> difference(ReducedPoint a, ReducedPoint b) const;

    bool feasible(ReducedPoint p, double collision_threshold = kDefaultCollisionThreshold) const;
    // Lift without a collision check; nullopt outside the chart formulas' range.
    std::optional<Configuration> try_lift(ReducedPoint p) const;
    Configuration lift(ReducedPoint p) const;

    // Gauge-fixes the configuration and reads off reduced coordinates. Throws
    // NotInFixedSpace when the lift of the result misses the gauged input by
    // more than `tol`.
    ReducedPoint project(const Configuration& x, double tol = 1e-7) const;
    // Rotation taking x into the chart gauge (identity for direct charts).
    Mat3 gauge_rotation(const Configuration& x) const;

    double reduced_hamiltonian(ReducedPoint p) const;
    // Central differences with h = 1e-6 of each axis span.
    std::array<double, 2> reduced_gradient(ReducedPoint p) const;
    // Same with an explicit relative step.
    std::array<double, 2> reduced_gradient(ReducedPoint p, double relative_step) const;
    // Five-point stencil with h = 1e-5 of each span, fourth order.
    std::array<double, 2> reduced_gradient_fine(ReducedPoint p) const;
    // [[uu, uv], [uv, vv]] by central differences with h = 1e-4 of each span.
    std::array<double, 3> reduced_hessian(ReducedPoint p) const;

private:
    explicit ReducedChart(std::shared_ptr<const detail::ChartModel> m) : model_(std::move(m)) {}
    std::shared_ptr<const detail::ChartModel> model_;
};

}  // namespace vrpo
