#include "vrpo/dynamics.hpp"
#include "vrpo/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace vrpo;

namespace {

constexpr double kPi = std::numbers::pi;

Configuration random_sphere(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<Vec3> p;
    while (static_cast<int>(p.size()) < n) {
        Vec3 q(g(rng), g(rng), g(rng));
        q.normalize();
        bool ok = true;
        for (const auto& r : p) ok = ok && (q - r).norm() > 0.3;
        if (ok) p.push_back(q);
    }
    return Configuration::sphere(p);
}

// Central-difference gradient of H with respect to the Cartesian position of vortex i.
Vec3 gradient_fd(const VortexSystem& s, const Configuration& x, std::size_t i) {
    Vec3 g;
    const double h = 1e-6;
    for (int a = 0; a < 3; ++a) {
        auto plus = x.points(), minus = x.points();
        plus[i][a] += h;
        minus[i][a] -= h;
        g[a] = (hamiltonian_unchecked(s, plus) - hamiltonian_unchecked(s, minus)) / (2 * h);
    }
    return g;
}

}  // namespace

TEST_CASE("equatorial square of unit vortices has energy 2 ln 2") {
    std::vector<Spherical> c;
    for (int k = 0; k < 4; ++k) c.push_back({kPi / 2, k * kPi / 2});
    const VortexSystem s(Surface::sphere, {1, 1, 1, 1});
    CHECK(hamiltonian(s, Configuration::from_spherical(c)) == doctest::Approx(2 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("pole pair has energy ln 2") {
    const VortexSystem s(Surface::sphere, {1, 1});
    const auto x = Configuration::sphere({Vec3::UnitZ(), -Vec3::UnitZ()});
    CHECK(hamiltonian(s, x) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("planar pair at unit distance has zero energy") {
    const VortexSystem s(Surface::plane, {1.3, -0.4});
    const auto x = Configuration::plane({Vec3(0.2, 0.1, 0), Vec3(0.2, 1.1, 0)});
    CHECK(std::abs(hamiltonian(s, x)) < 1e-15);
}

TEST_CASE("octahedron of identical vortices is an equilibrium") {
    std::vector<Vec3> p;
    for (int a = 0; a < 3; ++a)
        for (int sgn : {1, -1}) p.push_back(sgn * Vec3::Unit(a));
    const VortexSystem s(Surface::sphere, std::vector<double>(6, 1.0));
    for (const auto& v : vector_field(s, Configuration::sphere(p))) CHECK(v.norm() < 1e-15);
}

TEST_CASE("sphere field is the Hamiltonian vector field: l_i dx_i/dt = x_i x grad_i H") {
    const auto x = random_sphere(5, 11);
    const VortexSystem s(Surface::sphere, {1.0, -0.7, 2.0, 0.4, -1.3});
    const auto f = vector_field(s, x);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Vec3 expected = x[i].cross(gradient_fd(s, x, i)) / s.vorticity(i);
        CHECK((f[i] - expected).norm() < 1e-7 * (1 + expected.norm()));
        CHECK(std::abs(f[i].dot(x[i])) < 1e-14);
    }
}

TEST_CASE("plane field satisfies l dx/dt = dH/dy, l dy/dt = -dH/dx") {
    const VortexSystem s(Surface::plane, {1.0, 2.5, -0.8, 0.6});
    const auto x = Configuration::plane(
        {Vec3(0.1, 0.2, 0), Vec3(-0.7, 0.4, 0), Vec3(0.5, -0.9, 0), Vec3(1.2, 0.8, 0)});
    const auto f = vector_field(s, x);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Vec3 g = gradient_fd(s, x, i);
        CHECK(f[i].x() == doctest::Approx(g.y() / s.vorticity(i)).epsilon(1e-7));
        CHECK(f[i].y() == doctest::Approx(-g.x() / s.vorticity(i)).epsilon(1e-7));
        CHECK(f[i].z() == 0.0);
    }
}

TEST_CASE("momentum is stationary under the field") {
    const auto x = random_sphere(6, 5);
    const VortexSystem s(Surface::sphere, {1, 2, -1, 0.5, 3, -2});
    const auto f = vector_field(s, x);
    Vec3 dj = Vec3::Zero();
    for (std::size_t i = 0; i < x.size(); ++i) dj += s.vorticity(i) * f[i];
    CHECK(dj.norm() < 1e-13);

    const VortexSystem p(Surface::plane, {1, 2, -1});
    const auto y = Configuration::plane({Vec3(0.3, 0, 0), Vec3(-0.2, 0.5, 0), Vec3(0.1, -0.6, 0)});
    const auto g = vector_field(p, y);
    double drho = 0;
    for (std::size_t i = 0; i < y.size(); ++i) drho += p.vorticity(i) * y[i].dot(g[i]);
    CHECK(std::abs(drho) < 1e-14);
    CHECK(momentum(p, y).z() == doctest::Approx(0.5 * (0.09 + 2 * 0.29 - 0.37)));
}

TEST_CASE("collisions and malformed inputs are rejected") {
    const VortexSystem s(Surface::sphere, {1, 1});
    const auto x = Configuration::sphere({Vec3::UnitZ(), Vec3::UnitZ()});
    CHECK_THROWS_AS(hamiltonian(s, x), CollisionError);
    CHECK_THROWS_AS(vector_field(s, x), CollisionError);
    CHECK_THROWS_AS(Configuration::sphere({Vec3(1, 1, 0)}), InvalidInput);
    CHECK_THROWS_AS(Configuration::plane({Vec3(1, 1, 0.5)}), InvalidInput);
    CHECK_THROWS_AS(VortexSystem(Surface::sphere, {1.0, 0.0}), InvalidInput);
    const VortexSystem three(Surface::sphere, {1, 1, 1});
    CHECK_THROWS_AS(hamiltonian(three, Configuration::sphere({Vec3::UnitX(), Vec3::UnitY()})), InvalidInput);
}

TEST_CASE("spherical and polar coordinates round trip") {
    const Vec3 p = unit_from_spherical(1.1, 4.0);
    const auto s = spherical_from_unit(p);
    CHECK(s.theta == doctest::Approx(1.1).epsilon(1e-15));
    CHECK(s.phi == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(wrap_angle(-0.5) == doctest::Approx(2 * kPi - 0.5));
    CHECK(wrap_signed(3 * kPi / 2) == doctest::Approx(-kPi / 2));
    const Polar q[] = {{0.7, 2.0}};
    const auto c = Configuration::from_polar(q);
    CHECK(c.polar(0).rho == doctest::Approx(0.7));
    CHECK(c.polar(0).phi == doctest::Approx(2.0));
}
