#include "vrpo/chart.hpp"
#include "vrpo/errors.hpp"
#include "vrpo/suites.hpp"
#include "vrpo/verifier.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace vrpo;

namespace {

constexpr double kPi = std::numbers::pi;

Mat3 rot_z(double a) { return Eigen::AngleAxisd(a, Vec3::UnitZ()).toRotationMatrix(); }

Configuration rotated(const Mat3& r, const Configuration& x) {
    std::vector<Vec3> p;
    for (const auto& q : x.points()) p.push_back(r * q);
    return Configuration::sphere(p);
}

}  // namespace

TEST_CASE("rotation fits recover known rotations") {
    const auto x = random_states(Surface::sphere, 1, 5, 2).front().x;
    const auto z = fit_z_rotation(x, rotated(rot_z(0.7), x));
    CHECK(z.angle == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(z.residual < 1e-12);
    const Mat3 r = Eigen::AngleAxisd(1.1, Vec3(1, 2, 3).normalized()).toRotationMatrix();
    const auto f = fit_rotation(x, rotated(r, x));
    CHECK((f.rotation - r).norm() < 1e-12);
    CHECK(f.residual < 1e-12);
}

TEST_CASE("two-ring center orbit is a relative periodic orbit with nonzero drift") {
    const auto chart = ReducedChart::build(SphereTwoRings{3, 2.0, {}, 1.0});
    const auto r = verify_relative_periodicity(chart, {0.75, kPi}, 50.0);
    REQUIRE(r.found);
    CHECK(r.residual < 1e-6);
    CHECK(r.reduced_return < 1e-6);
    CHECK(std::abs(r.angle) > 1e-3);
    CHECK(r.period > 0.0);
}

TEST_CASE("dancing vortices return without drift") {
    for (int n : {2, 4}) {
        const auto chart = ReducedChart::build(DancingVortices{n});
        const auto r = verify_relative_periodicity(chart, {1.3, 0.1}, 50.0);
        REQUIRE(r.found);
        CHECK(r.residual < 1e-6);
        CHECK(std::abs(r.angle) < 1e-6);
    }
}

TEST_CASE("fixed spaces are invariant over t = 20") {
    for (const ScenarioId& id : std::vector<ScenarioId>{PolyhedralSplit{Family::T}, CiThreePairs{1.5}}) {
        const auto chart = ReducedChart::build(id);
        const ReducedPoint p{chart.u_axis().lo + 0.37 * chart.u_axis().span(),
                             chart.v_axis().lo + 0.41 * chart.v_axis().span()};
        const auto x0 = chart.lift(p);
        CHECK(verify_fixed_space_invariance(chart.isotropy(), chart.system(), x0, 20.0) < 1e-8);
    }
}

TEST_CASE("staggered rings stay in their fixed space over one orbit around the collision point") {
    const auto chart = ReducedChart::build(DndStaggered{4});
    const ReducedPoint start{1.45, kPi / 8};
    const auto r = verify_relative_periodicity(chart, start, 20.0);
    REQUIRE(r.found);
    CHECK(r.residual < 1e-6);
    const auto x0 = chart.lift(start);
    CHECK(verify_fixed_space_invariance(chart.isotropy(), chart.system(), x0, r.period) < 1e-8);

    // The reduced orbit winds once around the masked collision point.
    IntegratorOptions o;
    o.sample_interval = r.period / 400;
    const auto tr = integrate(chart.system(), x0, r.period, o);
    const ReducedPoint c{kPi / 2, kPi / 8};
    double turn = 0.0, prev = 0.0;
    for (std::size_t k = 0; k < tr.size(); ++k) {
        const auto p = chart.project(tr.x[k]);
        const double a = std::atan2(p.v - c.v, p.u - c.u);
        if (k > 0) turn += wrap_signed(a - prev);
        prev = a;
    }
    CHECK(std::abs(std::abs(turn) - 2 * kPi) < 1e-3);
}

TEST_CASE("fixed-space check rejects a start outside the fixed space") {
    const auto chart = ReducedChart::build(PolyhedralSplit{Family::T});
    auto pts = chart.lift({chart.u_axis().lo + 0.37 * chart.u_axis().span(),
                           chart.v_axis().lo + 0.41 * chart.v_axis().span()})
                   .points();
    pts[0] = (pts[0] + Vec3(1e-3, 0, 0)).normalized();
    CHECK_THROWS_AS(verify_fixed_space_invariance(chart.isotropy(), chart.system(), Configuration::sphere(pts), 1.0),
                    NotInFixedSpace);
}

TEST_CASE("reduced flow agrees with the projected full flow") {
    const auto chart = ReducedChart::build(SphereTwoRings{3, 2.0, {}, 1.0});
    const ReducedPoint p{0.75, kPi};
    const auto x0 = chart.lift(p);
    IntegratorOptions o;
    o.sample_interval = 0.05;
    const auto tr = integrate(chart.system(), x0, 1.0, o);
    for (const auto& x : tr.x) {
        const auto q = chart.project(x);
        CHECK(std::abs(chart.reduced_hamiltonian(q) - chart.reduced_hamiltonian(p)) < 1e-8);
    }
}

TEST_CASE("fit residual shrinks with integrator tolerance") {
    const auto chart = ReducedChart::build(SphereTwoRings{3, 2.0, {}, 1.0});
    IntegratorOptions loose;
    loose.rtol = 1e-6;
    loose.atol = 1e-8;
    const auto a = verify_relative_periodicity(chart, {0.75, kPi}, 50.0, loose);
    const auto b = verify_relative_periodicity(chart, {0.75, kPi}, 50.0);
    REQUIRE(a.found);
    REQUIRE(b.found);
    CHECK(b.residual < a.residual);
    CHECK(a.period == doctest::Approx(b.period).epsilon(1e-4));
}

TEST_CASE("equilibrium residual is large away from equilibria") {
    for (const auto& s : reference_equilibria()) CHECK(equilibrium_residual(s.system, s.x) < 1e-10);
    const auto s = random_states(Surface::sphere, 1, 5, 4).front();
    CHECK(equilibrium_residual(s.system, s.x) > 1e-3);
}
