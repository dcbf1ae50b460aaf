#include "vrpo/chart.hpp"
#include "vrpo/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace vrpo;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<ScenarioId> all_scenarios() {
    return {SphereTwoRings{3, 2.0, {}, 1.0},
            SphereTwoRings{3, 2.0, {0.5}, 1.0},
            ChPairs{0.8},
            CnTwoRingsPoles{3, 1.0, 4.0},
            CnhFourRingsPoles{3, 1.0, 6.0},
            CiThreePairs{1.5},
            CiFourPairsZero{},
            PlaneTwoRingsCenter{3, 1.0, 0.0, 1.0},
            PlaneTwoRingsCenter{3, -5.0, 0.0, 1.0},
            DancingVortices{2},
            DancingVortices{4},
            DndStaggered{4},
            DnhAligned{5},
            DnRings{3, 0, 1.0},
            DnRings{3, 2, 1.0},
            PolyhedralSplit{Family::T},
            PolyhedralSplit{Family::O}};
}

// Feasible points of a 7 x 7 interior grid.
std::vector<ReducedPoint> interior_points(const ReducedChart& c) {
    std::vector<ReducedPoint> out;
    for (int i = 1; i <= 7; ++i)
        for (int j = 1; j <= 7; ++j) {
            const ReducedPoint p{c.u_axis().lo + c.u_axis().span() * i / 8.0,
                                 c.v_axis().lo + c.v_axis().span() * j / 8.0};
            if (c.feasible(p, 1e-3)) out.push_back(p);
        }
    return out;
}

}  // namespace

TEST_CASE("lift then project returns the reduced point") {
    for (const auto& id : all_scenarios()) {
        const auto chart = ReducedChart::build(id);
        CAPTURE(scenario_label(id));
        const auto pts = interior_points(chart);
        CHECK(pts.size() >= 10);
        for (const auto& p : pts) {
            const auto q = chart.project(chart.lift(p));
            const auto d = chart.difference(p, q);
            CHECK(std::hypot(d[0], d[1]) < 1e-9);
        }
    }
}

TEST_CASE("lifted configurations are fixed by the isotropy and carry the chart momentum") {
    for (const auto& id : all_scenarios()) {
        const auto chart = ReducedChart::build(id);
        CAPTURE(scenario_label(id));
        CHECK(!chart.isotropy().empty());
        for (const auto& p : interior_points(chart)) {
            const auto x = chart.lift(p);
            CHECK(fixed_deviation(chart.isotropy(), x) < 1e-12);
            for (const auto& g : chart.isotropy()) CHECK(chi(g) == 1);
            const Vec3 j = momentum(chart.system(), x);
            if (chart.gauge() == Gauge::z_rotation) {
                CHECK(std::abs(j.z() - chart.mu()) < 1e-10);
                CHECK(j.head<2>().norm() < 1e-10);
            } else if (chart.gauge() == Gauge::full_rotation) {
                CHECK(std::abs(j.norm() - chart.mu()) < 1e-10);
            }
        }
    }
}

TEST_CASE("projection is invariant under the residual rotation") {
    for (const auto& id : all_scenarios()) {
        const auto chart = ReducedChart::build(id);
        if (!chart.quotiented()) continue;
        CAPTURE(scenario_label(id));
        const Mat3 r = chart.gauge() == Gauge::z_rotation ? rotation_z(0.83)
                                                          : rotation_axis(Vec3(0.3, -0.5, 0.8), 1.9);
        for (const auto& p : interior_points(chart)) {
            const auto x = chart.lift(p);
            std::vector<Vec3> pts;
            for (const auto& v : x.points()) pts.push_back(r * v);
            const auto rotated =
                x.surface() == Surface::sphere ? Configuration::sphere(pts) : Configuration::plane(pts);
            const auto d = chart.difference(p, chart.project(rotated));
            CHECK(std::hypot(d[0], d[1]) < 1e-9);
        }
    }
}

TEST_CASE("reduced energy is the full energy of the lift and its gradients agree") {
    const auto chart = ReducedChart::build(SphereTwoRings{3, 2.0, {}, 1.0});
    for (const auto& p : interior_points(chart)) {
        CHECK(chart.reduced_hamiltonian(p) == doctest::Approx(hamiltonian(chart.system(), chart.lift(p))));
        const auto a = chart.reduced_gradient(p);
        const auto b = chart.reduced_gradient_fine(p);
        CHECK(std::abs(a[0] - b[0]) < 1e-5 * (1 + std::abs(b[0])));
        CHECK(std::abs(a[1] - b[1]) < 1e-5 * (1 + std::abs(b[1])));
    }
}

TEST_CASE("infeasible points, empty domains and foreign configurations are rejected") {
    const auto chart = ReducedChart::build(SphereTwoRings{3, 2.0, {}, 1.0});
    CHECK_THROWS_AS(chart.lift({-0.5, 1.0}), InfeasibleError);
    CHECK_FALSE(chart.feasible({-0.5, 1.0}));
    CHECK_THROWS_AS(ReducedChart::build(CnTwoRingsPoles{3, 1.0, 100.0}), InfeasibleError);
    CHECK_THROWS_AS(ReducedChart::build(CiThreePairs{7.0}), InfeasibleError);
    CHECK_THROWS_AS(ReducedChart::build(SphereTwoRings{1, 2.0, {}, 1.0}), InvalidInput);

    const auto other = ReducedChart::build(ChPairs{0.8});
    auto pts = other.lift({1.0, 2.0}).points();
    pts[0] = unit_from_spherical(0.3, 0.1);
    CHECK_THROWS_AS(other.project(Configuration::sphere(pts)), NotInFixedSpace);
}

TEST_CASE("staggered lift follows the index-wise lists") {
    const int n = 4;
    const double t0 = 1.1, p0 = 0.2;
    const auto x = ReducedChart::build(DndStaggered{n}).lift({t0, p0});
    REQUIRE(x.size() == 4 * n);
    for (int j = 1; j <= n; ++j) {
        const double base = 2 * kPi * j / n;
        const auto at = [&](int block) { return x.spherical(static_cast<std::size_t>(block * n + j - 1)); };
        CHECK(at(0).theta == doctest::Approx(t0));
        CHECK(at(1).theta == doctest::Approx(kPi - t0));
        CHECK(at(2).theta == doctest::Approx(t0));
        CHECK(at(3).theta == doctest::Approx(kPi - t0));
        CHECK(wrap_angle(at(0).phi - (base - p0)) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(wrap_signed(at(2).phi - (base + p0)) == doctest::Approx(0.0).epsilon(1e-12));
    }
}
