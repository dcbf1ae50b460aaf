#include "vrpo/verifier.hpp"

#include "vrpo/errors.hpp"

#include <Eigen/SVD>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace vrpo {

Drift invariant_drift(const Trajectory& tr) {
    if (tr.size() == 0) throw InvalidInput("empty trajectory");
    Drift d;
    for (std::size_t k = 0; k < tr.size(); ++k) {
        d.energy = std::max(d.energy, std::abs(tr.energy[k] - tr.energy[0]));
        d.momentum = std::max(d.momentum, (tr.momentum[k] - tr.momentum[0]).norm());
    }
    d.energy_relative = d.energy / std::max(1.0, std::abs(tr.energy[0]));
    return d;
}

namespace {

double fit_residual(const Mat3& r, const Configuration& a, const Configuration& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (r * a[i] - b[i]).squaredNorm();
    return std::sqrt(s);
}

}  // namespace

RotationFit fit_z_rotation(const Configuration& a, const Configuration& b) {
    if (a.size() != b.size()) throw InvalidInput("configurations differ in size");
    double cross = 0.0, dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cross += a[i].x() * b[i].y() - a[i].y() * b[i].x();
        dot += a[i].x() * b[i].x() + a[i].y() * b[i].y();
    }
    RotationFit f;
    f.angle = std::atan2(cross, dot);
    f.rotation = rotation_z(f.angle);
    f.residual = fit_residual(f.rotation, a, b);
    return f;
}

RotationFit fit_rotation(const Configuration& a, const Configuration& b) {
    if (a.size() != b.size()) throw InvalidInput("configurations differ in size");
    Mat3 h = Mat3::Zero();
    for (std::size_t i = 0; i < a.size(); ++i) h += a[i] * b[i].transpose();
    Eigen::JacobiSVD<Mat3> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 d = Mat3::Identity();
    d(2, 2) = (svd.matrixV() * svd.matrixU().transpose()).determinant() < 0 ? -1.0 : 1.0;
    RotationFit f;
    f.rotation = svd.matrixV() * d * svd.matrixU().transpose();
    f.angle = std::acos(std::clamp((f.rotation.trace() - 1.0) / 2.0, -1.0, 1.0));
    f.residual = fit_residual(f.rotation, a, b);
    return f;
}

RelPeriodReport verify_relative_periodicity(const ReducedChart& chart, ReducedPoint p0, double t_max,
                                            const IntegratorOptions& options) {
    if (!(t_max > 0)) throw InvalidInput("t_max must be positive");
    const Configuration x0 = chart.lift(p0);
    const auto g = chart.reduced_gradient(p0);
    const double gn = std::hypot(g[0], g[1]);
    if (!(gn > 1e-8))
        throw InvalidInput("start point is a critical point of the reduced energy; its orbit is a relative "
                           "equilibrium");
    // The section is the line through p0 along the gradient; its normal is
    // the level-curve tangent.
    const double nu = -g[1] / gn;
    const double nv = g[0] / gn;
    auto section = [&](const Configuration& x, ReducedPoint* at = nullptr) {
        const ReducedPoint p = chart.project(x, 1e-6);
        if (at) *at = p;
        const auto d = chart.difference(p0, p);
        return d[0] * nu + d[1] * nv;
    };
    auto distance = [&](ReducedPoint p) {
        const auto d = chart.difference(p0, p);
        return std::hypot(d[0], d[1]);
    };

    RelPeriodReport report;
    report.full_rotation = chart.gauge() == Gauge::full_rotation;
    Dopri5 stepper(chart.system(), x0, 1.0, options);
    double sigma = 0.0;
    double prev = 0.0;
    double excursion = 0.0;
    std::optional<double> period;
    while (stepper.t() < t_max && !period) {
        stepper.step(t_max);
        ReducedPoint p;
        double s = section(stepper.configuration(), &p);
        if (sigma == 0.0) {
            sigma = s >= 0 ? 1.0 : -1.0;
            prev = sigma * s;
            excursion = distance(p);
            continue;
        }
        s *= sigma;
        excursion = std::max(excursion, distance(p));
        if (prev < 0 && s >= 0 && distance(p) < 0.5 * excursion) {
            // Illinois iteration on the dense output of this step.
            double a = stepper.t_previous(), b = stepper.t();
            double fa = prev, fb = s;
            int side = 0;
            double t = b;
            for (int it = 0; it < 200; ++it) {
                t = (a * fb - b * fa) / (fb - fa);
                const double ft = sigma * section(stepper.configuration_at(t));
                if (std::abs(ft) < 1e-15 || b - a < 1e-14 * std::max(1.0, t)) break;
                if ((ft >= 0) == (fb >= 0)) {
                    b = t;
                    fb = ft;
                    if (side == -1) fa /= 2;
                    side = -1;
                } else {
                    a = t;
                    fa = ft;
                    if (side == 1) fb /= 2;
                    side = 1;
                }
            }
            period = t;
        }
        prev = s;
    }
    if (!period) return report;

    const Trajectory tr = integrate(chart.system(), x0, *period, options);
    const Configuration& xt = tr.x.back();
    const RotationFit fit = report.full_rotation ? fit_rotation(x0, xt) : fit_z_rotation(x0, xt);
    report.found = true;
    report.period = *period;
    report.angle = fit.angle;
    report.element = fit.rotation;
    report.residual = fit.residual;
    report.reduced_return = distance(chart.project(xt, 1e-6));
    return report;
}

double verify_fixed_space_invariance(const std::vector<GroupElement>& k, const VortexSystem& system,
                                     const Configuration& x0, double t_end, const IntegratorOptions& options) {
    for (const auto& g : k) validate_element(g, system);
    const double d0 = fixed_deviation(k, x0);
    if (d0 > 1e-10)
        throw NotInFixedSpace(fmt::format("initial configuration is not fixed by the group (deviation {:.3g})", d0),
                              d0);
    Dopri5 stepper(system, x0, t_end >= 0 ? 1.0 : -1.0, options);
    double worst = d0;
    while (stepper.t() != t_end) {
        stepper.step(t_end);
        worst = std::max(worst, fixed_deviation(k, stepper.configuration()));
    }
    return worst;
}

double equilibrium_residual(const VortexSystem& system, const Configuration& x) {
    const auto f = vector_field(system, x);
    double worst = 0.0;
    for (const auto& v : f) worst = std::max(worst, v.norm());
    return worst;
}

double time_reversal_error(const VortexSystem& system, const Configuration& x0, double t_end,
                           const IntegratorOptions& options) {
    const Trajectory forward = integrate(system, x0, t_end, options);
    const Trajectory back = integrate(system, forward.x.back(), -t_end, options);
    double worst = 0.0;
    for (std::size_t i = 0; i < x0.size(); ++i) worst = std::max(worst, (back.x.back()[i] - x0[i]).norm());
    return worst;
}

}  // namespace vrpo
