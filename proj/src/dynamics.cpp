#include "vrpo/dynamics.hpp"

#include "vrpo/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <numbers>

namespace vrpo {

namespace {

constexpr double kUnitTolerance = 1e-9;

void check_distances(const Configuration& config, double threshold) {
    if (config.size() < 2) return;
    const double d = min_pair_distance(config);
    if (d < threshold) {
        throw CollisionError(fmt::format("collision: minimum pair distance {:.3e} below threshold {:.3e}", d,
                                         threshold),
                             d);
    }
}

}  // namespace

VortexSystem::VortexSystem(Surface surface, std::vector<double> vorticities)
    : surface_(surface), vorticities_(std::move(vorticities)) {
    if (vorticities_.empty()) throw InvalidInput("vortex system needs at least one vortex");
    for (std::size_t i = 0; i < vorticities_.size(); ++i) {
        if (vorticities_[i] == 0.0 || !std::isfinite(vorticities_[i]))
            throw InvalidInput(fmt::format("vorticity {} must be finite and nonzero", i));
    }
}

Configuration Configuration::sphere(std::vector<Vec3> points) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double n = points[i].norm();
        if (!std::isfinite(n) || std::abs(n - 1.0) > kUnitTolerance)
            throw InvalidInput(fmt::format("sphere point {} has norm {:.17g}", i, n));
        points[i] /= n;
    }
    return Configuration(Surface::sphere, std::move(points));
}

Configuration Configuration::from_spherical(std::span<const Spherical> coords) {
    std::vector<Vec3> pts;
    pts.reserve(coords.size());
    for (const auto& c : coords) pts.push_back(unit_from_spherical(c.theta, c.phi));
    return Configuration(Surface::sphere, std::move(pts));
}

Configuration Configuration::plane(std::vector<Vec3> points) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!points[i].allFinite() || points[i].z() != 0.0)
            throw InvalidInput(fmt::format("plane point {} must be finite with z = 0", i));
    }
    return Configuration(Surface::plane, std::move(points));
}

Configuration Configuration::from_polar(std::span<const Polar> coords) {
    std::vector<Vec3> pts;
    pts.reserve(coords.size());
    for (const auto& c : coords) {
        if (c.rho < 0.0) throw InvalidInput("polar radius must be non-negative");
        pts.emplace_back(c.rho * std::cos(c.phi), c.rho * std::sin(c.phi), 0.0);
    }
    return Configuration(Surface::plane, std::move(pts));
}

Spherical Configuration::spherical(std::size_t i) const { return spherical_from_unit(points_[i]); }

Polar Configuration::polar(std::size_t i) const {
    const Vec3& p = points_[i];
    return {std::hypot(p.x(), p.y()), wrap_angle(std::atan2(p.y(), p.x()))};
}

Vec3 unit_from_spherical(double theta, double phi) {
    const double s = std::sin(theta);
    return {s * std::cos(phi), s * std::sin(phi), std::cos(theta)};
}

Spherical spherical_from_unit(const Vec3& x) {
    const double rho = std::hypot(x.x(), x.y());
    return {std::atan2(rho, x.z()), wrap_angle(std::atan2(x.y(), x.x()))};
}

double wrap_angle(double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(phi, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r -= two_pi;
    return r;
}

double wrap_signed(double phi) {
    double r = wrap_angle(phi);
    if (r > std::numbers::pi) r -= 2.0 * std::numbers::pi;
    return r;
}

double min_pair_distance(const Configuration& config) {
    const auto& p = config.points();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j) best = std::min(best, (p[i] - p[j]).norm());
    return best;
}

void check_compatible(const VortexSystem& system, const Configuration& config) {
    if (system.count() != config.size())
        throw InvalidInput(fmt::format("configuration has {} points, system has {} vortices", config.size(),
                                       system.count()));
    if (system.surface() != config.surface()) throw InvalidInput("configuration surface differs from system surface");
}

double hamiltonian_unchecked(const VortexSystem& system, std::span<const Vec3> x) {
    const auto& l = system.vorticities();
    double h = 0.0;
    if (system.surface() == Surface::sphere) {
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = i + 1; j < x.size(); ++j)
                h += l[i] * l[j] * std::log((x[i] - x[j]).squaredNorm() / 2.0);
        return h;
    }
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) h += l[i] * l[j] * std::log((x[i] - x[j]).squaredNorm());
    return -h / (4.0 * std::numbers::pi);
}

double hamiltonian(const VortexSystem& system, const Configuration& config, double collision_threshold) {
    check_compatible(system, config);
    check_distances(config, collision_threshold);
    return hamiltonian_unchecked(system, config.points());
}

void vector_field_unchecked(const VortexSystem& system, std::span<const Vec3> x, std::span<Vec3> out) {
    const auto& l = system.vorticities();
    const std::size_t n = x.size();
    for (auto& v : out) v.setZero();
    if (system.surface() == Surface::sphere) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const Vec3 c = x[j].cross(x[i]);
                const double w = 1.0 - x[i].dot(x[j]);
                out[i] += (l[j] / w) * c;
                out[j] -= (l[i] / w) * c;
            }
        }
        return;
    }
    // dz_j/dt = i/(2 pi) sum_k l_k (z_j - z_k) / |z_j - z_k|^2
    const double k = 1.0 / (2.0 * std::numbers::pi);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double a = x[i].x() - x[j].x();
            const double b = x[i].y() - x[j].y();
            const double r2 = a * a + b * b;
            const Vec3 rot(-b / r2, a / r2, 0.0);
            out[i] += (k * l[j]) * rot;
            out[j] -= (k * l[i]) * rot;
        }
    }
}

std::vector<Vec3> vector_field(const VortexSystem& system, const Configuration& config,
                               double collision_threshold) {
    check_compatible(system, config);
    check_distances(config, collision_threshold);
    std::vector<Vec3> out(config.size());
    vector_field_unchecked(system, config.points(), out);
    return out;
}

Vec3 momentum(const VortexSystem& system, const Configuration& config) {
    check_compatible(system, config);
    const auto& l = system.vorticities();
    Vec3 j = Vec3::Zero();
    if (system.surface() == Surface::sphere) {
        for (std::size_t i = 0; i < config.size(); ++i) j += l[i] * config[i];
        return j;
    }
    for (std::size_t i = 0; i < config.size(); ++i) j.z() += 0.5 * l[i] * config[i].head<2>().squaredNorm();
    return j;
}

}  // namespace vrpo
