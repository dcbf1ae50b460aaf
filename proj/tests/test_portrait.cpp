#include "vrpo/chart.hpp"
#include "vrpo/portrait.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace vrpo;

namespace {

constexpr double kPi = std::numbers::pi;

PortraitOptions at_resolution(int n) {
    PortraitOptions o;
    o.nu = n;
    o.nv = n;
    return o;
}

GridAxis axis(double lo, double hi, int n, bool periodic = false) { return {lo, hi, n, periodic}; }

}  // namespace

TEST_CASE("circle level set of a paraboloid") {
    const auto f = sample_function([](ReducedPoint p) { return p.u * p.u + p.v * p.v; }, axis(-1, 1, 64),
                                   axis(-1, 1, 64));
    const auto cs = extract_contours(f, 0.25);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].closed);
    CHECK(cs[0].points.size() > 50);
    for (const auto& p : cs[0].points) CHECK(std::abs(std::hypot(p.u, p.v) - 0.5) < 1e-10);
    CHECK(std::abs(winding_number(f, cs[0], {0.0, 0.0})) == 1);
    CHECK(winding_number(f, cs[0], {0.9, 0.9}) == 0);
}

TEST_CASE("level below the minimum gives no contours") {
    const auto f = sample_function([](ReducedPoint p) { return p.u * p.u + p.v * p.v; }, axis(-1, 1, 32),
                                   axis(-1, 1, 32));
    CHECK(extract_contours(f, -0.1).empty());
    CHECK(extract_contours(f, 5.0).empty());
}

TEST_CASE("contours wrap across a periodic axis") {
    const auto f = sample_function([](ReducedPoint p) { return p.u * p.u + 0.1 * std::cos(p.v); },
                                   axis(-1, 1, 48), axis(0, 2 * kPi, 48, true));
    const auto cs = extract_contours(f, 0.25);
    REQUIRE(cs.size() == 2);
    for (const auto& c : cs) {
        CHECK(c.closed);
        CHECK(classify_contour(f, c, {}, {}) == FamilyKind::wrapping);
        for (const auto& p : c.points) CHECK(std::abs(p.u * p.u + 0.1 * std::cos(p.v) - 0.25) < 1e-10);
    }
}

TEST_CASE("masked regions are skipped and counted as components") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const auto f = sample_function(
        [&](ReducedPoint p) {
            if (std::hypot(p.u - 0.5, p.v) < 0.15 || std::hypot(p.u + 0.5, p.v) < 0.15) return nan;
            return p.u * p.u + p.v * p.v;
        },
        axis(-1, 1, 80), axis(-1, 1, 80));
    CHECK(f.masked_count() > 0);
    CHECK(mask_components(f).size() == 2);
    for (const auto& c : extract_contours(f, 0.25))
        for (const auto& p : c.points) {
            CHECK(std::hypot(p.u - 0.5, p.v) > 0.1);
            CHECK(std::hypot(p.u + 0.5, p.v) > 0.1);
        }
}

TEST_CASE("contour vertices lie on their level through lift and the full energy") {
    const auto chart = ReducedChart::build(SphereTwoRings{3, 2.0, {}, 1.0});
    const auto field = sample_field(chart, 120, 120);
    const auto levels = default_levels(field, 8);
    REQUIRE(levels.size() == 8);
    for (std::size_t k = 1; k < levels.size(); ++k) CHECK(levels[k] > levels[k - 1]);
    for (double level : levels)
        for (const auto& c : extract_contours(field, level))
            for (const auto& p : c.points)
                CHECK(std::abs(hamiltonian(chart.system(), chart.lift(p)) - level) < 1e-6);
}

TEST_CASE("three centers and three saddles on one cycle for the polar two-ring chart at mu = 4") {
    const auto p = compute_portrait(ReducedChart::build(CnTwoRingsPoles{3, 1.0, 4.0}), at_resolution(200));
    CHECK(p.summary.centers == 3);
    CHECK(p.summary.saddles == 3);
    CHECK(p.summary.degenerate == 0);
    CHECK(p.summary.saddle_cycle);
    for (const auto& c : p.critical.points) {
        CHECK(c.gradient_norm < 1e-8);
        CHECK((c.kind == CriticalKind::center) == (c.hessian_det > 0));
    }
}

TEST_CASE("planar rings with opposite vorticity have no interior critical points") {
    const auto chart = ReducedChart::build(PlaneTwoRingsCenter{3, -5.0, 0.0, 1.0});
    const auto p = compute_portrait(chart, at_resolution(200));
    CHECK(p.critical.points.empty());
    for (const auto& f : p.summary.families)
        CHECK((f.kind == FamilyKind::wrapping || f.kind == FamilyKind::boundary));
}

TEST_CASE("dancing vortices: center at the equatorial alternating ring") {
    const auto chart = ReducedChart::build(DancingVortices{2});
    const auto field = sample_field(chart, 200, 200);
    const auto found = find_critical_points(chart, field);
    REQUIRE(found.points.size() == 1);
    CHECK(found.points[0].kind == CriticalKind::center);
    CHECK(found.points[0].location.u == doctest::Approx(kPi / 2).epsilon(1e-8));
    CHECK(std::abs(found.points[0].location.v) < 1e-8);
}

TEST_CASE("count changes are reported between consecutive rows") {
    const std::vector<ScanRow> rows = {{2.5, 6, 6, 0, ""}, {2.6, 6, 6, 0, ""}, {2.7, 3, 3, 0, ""}};
    const auto ch = count_changes(rows);
    REQUIRE(ch.size() == 1);
    CHECK(ch[0].mu_from == 2.6);
    CHECK(ch[0].mu_to == 2.7);
    CHECK(ch[0].total_from == 12);
    CHECK(ch[0].total_to == 6);
}
