#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace vrpo {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

enum class Surface { sphere, plane };

inline constexpr double kDefaultCollisionThreshold = 1e-9;

struct Spherical {
    double theta;
    double phi;
};

struct Polar {
    double rho;
    double phi;
};

class VortexSystem {
public:
    VortexSystem(Surface surface, std::vector<double> vorticities);

    Surface surface() const { return surface_; }
    std::size_t count() const { return vorticities_.size(); }
    const std::vector<double>& vorticities() const { return vorticities_; }
    double vorticity(std::size_t i) const { return vorticities_[i]; }

private:
    Surface surface_;
    std::vector<double> vorticities_;
};

// Vortex positions as 3-vectors: unit vectors on the sphere, (x, y, 0) in the plane.
class Configuration {
public:
    Configuration() = default;

    // Points must be unit within 1e-9; they are renormalized exactly.
    static Configuration sphere(std::vector<Vec3> points);
    static Configuration from_spherical(std::span<const Spherical> coords);
    // z components must vanish.
    static Configuration plane(std::vector<Vec3> points);
    static Configuration from_polar(std::span<const Polar> coords);

    Surface surface() const { return surface_; }
    std::size_t size() const { return points_.size(); }
    const std::vector<Vec3>& points() const { return points_; }
    const Vec3& operator[](std::size_t i) const { return points_[i]; }

    Spherical spherical(std::size_t i) const;
    Polar polar(std::size_t i) const;

private:
    Configuration(Surface s, std::vector<Vec3> p) : surface_(s), points_(std::move(p)) {}

    Surface surface_ = Surface::sphere;
    std::vector<Vec3> points_;
};

Vec3 unit_from_spherical(double theta, double phi);
Spherical spherical_from_unit(const Vec3& x);

// Longitude folded into [0, 2pi).
double wrap_angle(double phi);
// Angle folded into (-pi, pi].
double wrap_signed(double phi);

double min_pair_distance(const Configuration& config);

// Sphere: sum_{i<j} l_i l_j ln(|x_i - x_j|^2 / 2).
// Plane: -1/(4 pi) sum_{i<j} l_i l_j ln |z_i - z_j|^2.
double hamiltonian(const VortexSystem& system, const Configuration& config,
                   double collision_threshold = kDefaultCollisionThreshold);

// Same sums without validation; the caller guarantees a collision-free state.
double hamiltonian_unchecked(const VortexSystem& system, std::span<const Vec3> points);

std::vector<Vec3> vector_field(const VortexSystem& system, const Configuration& config,
                               double collision_threshold = kDefaultCollisionThreshold);

void vector_field_unchecked(const VortexSystem& system, std::span<const Vec3> points,
                            std::span<Vec3> out);

// Sphere: sum l_j x_j. Plane: (0, 0, 1/2 sum l_j rho_j^2), the rotational
// momentum carried in the z slot so both surfaces share one return type.
Vec3 momentum(const VortexSystem& system, const Configuration& config);

// Throws InvalidInput when the configuration does not match the system.
void check_compatible(const VortexSystem& system, const Configuration& config);

}  // namespace vrpo
