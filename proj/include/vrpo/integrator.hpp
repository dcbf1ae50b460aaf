#pragma once

#include "vrpo/dynamics.hpp"

#include <Eigen/Dense>

#include <limits>
#include <vector>

namespace vrpo {

struct IntegratorOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double collision_threshold = 1e-7;
    double max_step = std::numeric_limits<double>::infinity();
    // Output spacing; 0 records every accepted step.
    double sample_interval = 0.0;
};

struct Trajectory {
    std::vector<double> t;
    std::vector<Configuration> x;
    std::vector<double> energy;
    std::vector<Vec3> momentum;
    // Rejected plus accepted steps.
    long attempts = 0;

    std::size_t size() const { return t.size(); }
};

// Dormand-Prince 5(4) stepper with the fourth-order continuous extension.
// Sphere states are renormalized after every accepted step. Step control uses
// the max norm of the scaled error estimate.
class Dopri5 {
public:
    Dopri5(const VortexSystem& system, const Configuration& x0, double direction,
           const IntegratorOptions& options = {});

    // Advances by one accepted step, never past `t_stop` in the direction of
    // integration. Throws CollisionError or NumericalError.
    void step(double t_stop = std::numeric_limits<double>::infinity());

    double t() const { return t_; }
    double t_previous() const { return t_prev_; }
    Configuration configuration() const;
    // Dense output inside the last step, projected back to the surface.
    Configuration configuration_at(double t) const;
    long attempts() const { return attempts_; }

private:
    Eigen::VectorXd rhs(const Eigen::VectorXd& y) const;
    Configuration to_configuration(const Eigen::VectorXd& y) const;
    double initial_step() const;

    VortexSystem system_;
    IntegratorOptions options_;
    double direction_;
    double t_ = 0.0;
    double t_prev_ = 0.0;
    double h_ = 0.0;
    long attempts_ = 0;
    Eigen::VectorXd y_, y_prev_, f_;
    Eigen::Matrix<double, Eigen::Dynamic, 7> k_;
};

// Integrates from t = 0 to t_end (negative for backward integration).
Trajectory integrate(const VortexSystem& system, const Configuration& x0, double t_end,
                     const IntegratorOptions& options = {});

}  // namespace vrpo
