#include "vrpo/suites.hpp"

#include "vrpo/chart.hpp"
#include "vrpo/errors.hpp"
#include "vrpo/verifier.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>
#include <random>

namespace vrpo {

namespace {

constexpr double kPi = std::numbers::pi;

CheckResult upper(std::string name, double residual, double tolerance, const SuiteOptions& o) {
    const double tol = o.tolerance.value_or(tolerance);
    return {std::move(name), residual, tol, false, residual < tol};
}

CheckResult lower(std::string name, double residual, double tolerance, const SuiteOptions& o) {
    const double tol = o.tolerance.value_or(tolerance);
    return {std::move(name), residual, tol, true, residual > tol};
}

NamedState uniform_state(std::string name, Surface s, std::vector<Vec3> points, std::vector<double> lambda) {
    VortexSystem system(s, std::move(lambda));
    for (auto& p : points)
        if (s == Surface::sphere) p.normalize();
    Configuration x = s == Surface::sphere ? Configuration::sphere(std::move(points))
                                           : Configuration::plane(std::move(points));
    return {std::move(name), std::move(system), std::move(x)};
}

// Point well inside the chart domain away from critical points.
ReducedPoint interior_point(const ReducedChart& chart) {
    const double fractions[][2] = {{0.37, 0.41}, {0.31, 0.62}, {0.63, 0.29}, {0.45, 0.57}, {0.22, 0.35}};
    for (const auto& f : fractions) {
        const ReducedPoint p{chart.u_axis().lo + f[0] * chart.u_axis().span(),
                             chart.v_axis().lo + f[1] * chart.v_axis().span()};
        const auto x = chart.try_lift(p);
        if (!x || min_pair_distance(*x) < 0.1) continue;
        const auto g = chart.reduced_gradient(p);
        if (std::hypot(g[0], g[1]) > 1e-6) return p;
    }
    throw InfeasibleError("no interior start point found in the chart domain");
}

}  // namespace

std::vector<NamedState> reference_equilibria() {
    std::vector<NamedState> out;
    out.push_back(uniform_state("antipodal pair", Surface::sphere, {Vec3::UnitZ(), -Vec3::UnitZ()}, {1.0, -1.0}));

    std::vector<Vec3> ring;
    for (int k = 0; k < 3; ++k) ring.push_back(unit_from_spherical(kPi / 2, 2 * kPi * k / 3));
    ring.push_back(Vec3::UnitZ());
    ring.push_back(-Vec3::UnitZ());
    out.push_back(uniform_state("D_3 ring with poles", Surface::sphere, ring, std::vector<double>(5, 1.0)));

    std::vector<Vec3> octa;
    for (int a = 0; a < 3; ++a)
        for (int s : {1, -1}) octa.push_back(s * Vec3::Unit(a));
    out.push_back(uniform_state("octahedron", Surface::sphere, octa, std::vector<double>(6, 1.0)));

    const double golden = (1 + std::sqrt(5.0)) / 2;
    std::vector<Vec3> ico;
    for (int a = 0; a < 3; ++a)
        for (int s1 : {1, -1})
            for (int s2 : {1, -1}) {
                Vec3 p = Vec3::Zero();
                p[(a + 1) % 3] = s1;
                p[(a + 2) % 3] = s2 * golden;
                ico.push_back(p);
            }
    out.push_back(uniform_state("icosahedron", Surface::sphere, ico, std::vector<double>(12, 1.0)));

    std::vector<Vec3> cube;
    std::vector<double> signs;
    for (int sx : {1, -1})
        for (int sy : {1, -1})
            for (int sz : {1, -1}) {
                cube.emplace_back(sx, sy, sz);
                signs.push_back(sx * sy * sz);
            }
    out.push_back(uniform_state("cube as two opposite tetrahedra", Surface::sphere, cube, signs));
    return out;
}

std::vector<NamedState> random_states(Surface surface, int count, int vortices, std::uint64_t seed) {
    if (count < 0 || vortices < 2) throw InvalidInput("random states need at least two vortices");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<NamedState> out;
    for (int c = 0; c < count; ++c) {
        std::vector<double> lambda;
        for (int i = 0; i < vortices; ++i) lambda.push_back(0.5 + unit(rng));
        std::vector<Vec3> pts;
        while (static_cast<int>(pts.size()) < vortices) {
            Vec3 p;
            if (surface == Surface::sphere) {
                const double z = 2 * unit(rng) - 1, phi = 2 * kPi * unit(rng);
                const double r = std::sqrt(std::max(0.0, 1 - z * z));
                p = {r * std::cos(phi), r * std::sin(phi), z};
            } else {
                const double rho = std::sqrt(unit(rng)), phi = 2 * kPi * unit(rng);
                p = {rho * std::cos(phi), rho * std::sin(phi), 0.0};
            }
            bool ok = true;
            for (const auto& q : pts) ok = ok && (p - q).norm() > 0.2;
            if (ok) pts.push_back(p);
        }
        const char* label = surface == Surface::sphere ? "sphere" : "plane";
        out.push_back(uniform_state(fmt::format("{} #{}", label, c + 1), surface, pts, lambda));
    }
    return out;
}

std::vector<CheckResult> equilibrium_suite(const SuiteOptions& o) {
    std::vector<CheckResult> out;
    for (const auto& s : reference_equilibria())
        out.push_back(upper(s.name + " |X_H|", equilibrium_residual(s.system, s.x), 1e-10, o));
    return out;
}

std::vector<CheckResult> conservation_suite(const SuiteOptions& o) {
    const double t_end = o.t_end.value_or(100.0);
    auto states = random_states(Surface::sphere, 5, 6, o.seed);
    for (auto& s : random_states(Surface::plane, 5, 5, o.seed + 1)) states.push_back(std::move(s));
    std::vector<CheckResult> out;
    for (const auto& s : states) {
        const Drift d = invariant_drift(integrate(s.system, s.x, t_end, o.integrator));
        out.push_back(upper(s.name + " relative energy drift", d.energy_relative, 1e-8, o));
        out.push_back(upper(s.name + " momentum drift", d.momentum, 1e-8, o));
    }
    return out;
}

std::vector<CheckResult> fixed_space_suite(const SuiteOptions& o) {
    const double t_end = o.t_end.value_or(20.0);
    const std::vector<std::pair<std::string, ScenarioId>> cases = {
        {"tetrahedral orbit of 12", PolyhedralSplit{Family::T}},
        {"staggered D_4d rings", DndStaggered{4}},
        {"three antipodal pairs", CiThreePairs{1.5}},
    };
    std::vector<CheckResult> out;
    for (const auto& [name, id] : cases) {
        const auto chart = ReducedChart::build(id);
        const auto x0 = chart.lift(interior_point(chart));
        const double dev = verify_fixed_space_invariance(chart.isotropy(), chart.system(), x0, t_end, o.integrator);
        out.push_back(upper(name + " fixed-space deviation", dev, 1e-8, o));
    }
    return out;
}

std::vector<CheckResult> relative_period_suite(const SuiteOptions& o) {
    const double t_max = o.t_end.value_or(50.0);
    std::vector<CheckResult> out;

    const auto rings = ReducedChart::build(SphereTwoRings{3, 2.0, {}, 1.0});
    const auto a = verify_relative_periodicity(rings, {0.75, kPi}, t_max, o.integrator);
    out.push_back(upper("two-ring orbit fit residual", a.residual, 1e-6, o));
    out.push_back(lower("two-ring orbit |drift angle|", a.found ? std::abs(a.angle) : 0.0, 1e-3, o));

    const auto dancing = ReducedChart::build(DancingVortices{2});
    const auto b = verify_relative_periodicity(dancing, {1.3, 0.1}, t_max, o.integrator);
    out.push_back(upper("dancing orbit fit residual", b.residual, 1e-6, o));
    out.push_back(upper("dancing orbit |drift angle|", b.found ? std::abs(b.angle) : INFINITY, 1e-6, o));
    return out;
}

std::vector<std::string> suite_names() { return {"equilibrium", "conservation", "fixed_space", "relative_period"}; }

std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& o) {
    if (name == "equilibrium") return equilibrium_suite(o);
    if (name == "conservation") return conservation_suite(o);
    if (name == "fixed_space") return fixed_space_suite(o);
    if (name == "relative_period") return relative_period_suite(o);
    if (name == "all") {
        std::vector<CheckResult> out;
        for (const auto& n : suite_names()) {
            auto r = run_suite(n, o);
            out.insert(out.end(), r.begin(), r.end());
        }
        return out;
    }
    throw InvalidInput(fmt::format("unknown check suite '{}'", name));
}

}  // namespace vrpo
