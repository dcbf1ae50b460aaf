#include "vrpo/integrator.hpp"

#include "vrpo/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace vrpo {

namespace {

// Dormand-Prince tableau (autonomous, so the nodes c_i are not needed).
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

// Continuous extension: y(t_prev + x h) = y_prev + h K P [x, x^2, x^3, x^4].
const double kDense[7][4] = {
    {1.0, -8048581381.0 / 2820520608.0, 8663915743.0 / 2820520608.0, -12715105075.0 / 11282082432.0},
    {0.0, 0.0, 0.0, 0.0},
    {0.0, 131558114200.0 / 32700410799.0, -68118460800.0 / 10900136933.0, 87487479700.0 / 32700410799.0},
    {0.0, -1754552775.0 / 470086768.0, 14199869525.0 / 1410260304.0, -10690763975.0 / 1880347072.0},
    {0.0, 127303824393.0 / 49829197408.0, -318862633887.0 / 49829197408.0, 701980252875.0 / 199316789632.0},
    {0.0, -282668133.0 / 205662961.0, 2019193451.0 / 616988883.0, -1453857185.0 / 822651844.0},
    {0.0, 40617522.0 / 29380423.0, -110615467.0 / 29380423.0, 69997945.0 / 29380423.0},
};

Eigen::VectorXd flatten(const Configuration& x) {
    Eigen::VectorXd y(3 * static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) y.segment<3>(3 * static_cast<Eigen::Index>(i)) = x[i];
    return y;
}

}  // namespace

Dopri5::Dopri5(const VortexSystem& system, const Configuration& x0, double direction,
               const IntegratorOptions& options)
    : system_(system), options_(options), direction_(direction >= 0 ? 1.0 : -1.0) {
    check_compatible(system, x0);
    if (!(options.rtol > 0) || !(options.atol > 0))
        throw InvalidInput("integrator tolerances must be positive");
    const double gap = min_pair_distance(x0);
    if (gap < options.collision_threshold)
        throw CollisionError(fmt::format("initial configuration has a collision (distance {:.3g})", gap), gap, 0.0);
    y_ = flatten(x0);
    y_prev_ = y_;
    f_ = rhs(y_);
    k_.resize(y_.size(), 7);
    h_ = initial_step();
}

Eigen::VectorXd Dopri5::rhs(const Eigen::VectorXd& y) const {
    const auto n = static_cast<std::size_t>(y.size() / 3);
    std::vector<Vec3> points(n), out(n);
    for (std::size_t i = 0; i < n; ++i) points[i] = y.segment<3>(3 * static_cast<Eigen::Index>(i));
    vector_field_unchecked(system_, points, out);
    Eigen::VectorXd f(y.size());
    for (std::size_t i = 0; i < n; ++i) f.segment<3>(3 * static_cast<Eigen::Index>(i)) = out[i];
    return f;
}

Configuration Dopri5::to_configuration(const Eigen::VectorXd& y) const {
    std::vector<Vec3> p(static_cast<std::size_t>(y.size() / 3));
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = y.segment<3>(3 * static_cast<Eigen::Index>(i));
    if (system_.surface() == Surface::sphere) {
        for (auto& q : p) q.normalize();
        return Configuration::sphere(std::move(p));
    }
    for (auto& q : p) q.z() = 0.0;
    return Configuration::plane(std::move(p));
}

Configuration Dopri5::configuration() const { return to_configuration(y_); }

double Dopri5::initial_step() const {
    const Eigen::ArrayXd scale = options_.atol + options_.rtol * y_.array().abs();
    const double d0 = std::sqrt((y_.array() / scale).square().mean());
    const double d1 = std::sqrt((f_.array() / scale).square().mean());
    double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    if (d1 == 0.0) h = 1.0;
    return std::min(h, options_.max_step);
}

void Dopri5::step(double t_stop) {
    const double remaining = std::isfinite(t_stop) ? std::abs(t_stop - t_) : std::numeric_limits<double>::infinity();
    if (remaining == 0.0) return;
    double h = std::min({h_, remaining, options_.max_step});
    const Eigen::VectorXd& y = y_;
    for (;;) {
        ++attempts_;
        if (h < 1e-14 * std::max(1.0, std::abs(t_)))
            throw NumericalError(fmt::format("step size underflow at t = {:.17g}", t_));
        const double hs = direction_ * h;
        k_.col(0) = f_;
        k_.col(1) = rhs(y + hs * a21 * k_.col(0));
        k_.col(2) = rhs(y + hs * (a31 * k_.col(0) + a32 * k_.col(1)));
        k_.col(3) = rhs(y + hs * (a41 * k_.col(0) + a42 * k_.col(1) + a43 * k_.col(2)));
        k_.col(4) = rhs(y + hs * (a51 * k_.col(0) + a52 * k_.col(1) + a53 * k_.col(2) + a54 * k_.col(3)));
        k_.col(5) = rhs(y + hs * (a61 * k_.col(0) + a62 * k_.col(1) + a63 * k_.col(2) + a64 * k_.col(3) +
                                  a65 * k_.col(4)));
        const Eigen::VectorXd y_new =
            y + hs * (b1 * k_.col(0) + b3 * k_.col(2) + b4 * k_.col(3) + b5 * k_.col(4) + b6 * k_.col(5));
        k_.col(6) = rhs(y_new);
        const Eigen::VectorXd err = hs * (e1 * k_.col(0) + e3 * k_.col(2) + e4 * k_.col(3) + e5 * k_.col(4) +
                                          e6 * k_.col(5) + e7 * k_.col(6));
        const Eigen::ArrayXd scale = options_.atol + options_.rtol * y.array().abs().max(y_new.array().abs());
        // Every component must meet atol + rtol |y|.
        double e = (err.array() / scale).abs().maxCoeff();
        if (!std::isfinite(e)) e = 1e10;
        if (e <= 1.0) {
            const double factor = e == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0);
            y_prev_ = y_;
            t_prev_ = t_;
            t_ = h == remaining ? t_stop : t_ + hs;
            y_ = y_new;
            const Configuration x = to_configuration(y_);
            y_ = flatten(x);
            f_ = rhs(y_);
            h_ = std::min(h * factor, options_.max_step);
            const double gap = min_pair_distance(x);
            if (gap < options_.collision_threshold)
                throw CollisionError(fmt::format("collision at t = {:.17g} (distance {:.3g})", t_, gap), gap, t_);
            return;
        }
        h *= std::clamp(0.9 * std::pow(e, -0.2), 0.2, 1.0);
    }
}

Configuration Dopri5::configuration_at(double t) const {
    const double h = t_ - t_prev_;
    if (h == 0.0) return configuration();
    const double x = (t - t_prev_) / h;
    const double powers[4] = {x, x * x, x * x * x, x * x * x * x};
    Eigen::VectorXd y = y_prev_;
    for (int s = 0; s < 7; ++s) {
        double w = 0.0;
        for (int p = 0; p < 4; ++p) w += kDense[s][p] * powers[p];
        if (w != 0.0) y += h * w * k_.col(s);
    }
    return to_configuration(y);
}

Trajectory integrate(const VortexSystem& system, const Configuration& x0, double t_end,
                     const IntegratorOptions& options) {
    if (!std::isfinite(t_end)) throw InvalidInput("t_end must be finite");
    Dopri5 stepper(system, x0, t_end >= 0 ? 1.0 : -1.0, options);
    Trajectory tr;
    auto record = [&](double t, const Configuration& x) {
        tr.t.push_back(t);
        tr.x.push_back(x);
        tr.energy.push_back(hamiltonian_unchecked(system, x.points()));
        tr.momentum.push_back(momentum(system, x));
    };
    record(0.0, x0);
    const double dt = options.sample_interval;
    long next = 1;
    while (stepper.t() != t_end) {
        stepper.step(t_end);
        if (dt > 0) {
            for (;;) {
                const double ts = (t_end >= 0 ? 1.0 : -1.0) * dt * static_cast<double>(next);
                if (std::abs(ts) > std::abs(stepper.t()) || std::abs(ts) > std::abs(t_end)) break;
                record(ts, stepper.configuration_at(ts));
                ++next;
            }
            if (stepper.t() == t_end && tr.t.back() != t_end) record(t_end, stepper.configuration());
        } else {
            record(stepper.t(), stepper.configuration());
        }
    }
    tr.attempts = stepper.attempts();
    return tr;
}

}  // namespace vrpo
