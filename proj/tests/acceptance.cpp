// Acceptance run: one PASS/FAIL line per criterion, exit 1 when any fails.

#include "vrpo/chart.hpp"
#include "vrpo/commands.hpp"
#include "vrpo/catalog.hpp"
#include "vrpo/portrait.hpp"
#include "vrpo/suites.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace vrpo;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kResolution = 400;
constexpr int kFineResolution = 800;
constexpr int kScanResolution = 200;
constexpr double kPortraitSeconds = 60.0;
constexpr double kScanSeconds = 300.0;
constexpr double kLocusTol = 1e-4;
constexpr double kLocationTol = 1e-8;
constexpr double kEnergyShiftTol = 1e-10;
constexpr double kLevelTol = 1e-6;
constexpr std::uint64_t kSeed = 20240101;

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, std::string note) {
        pass = pass && ok;
        notes.push_back(fmt::format("{}{}", ok ? "" : "[x] ", note));
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Timed {
    Portrait portrait;
    double seconds = 0.0;
};

Timed portrait_of(const ScenarioId& id, int resolution = kResolution, bool trace = true) {
    const auto t0 = std::chrono::steady_clock::now();
    PortraitOptions o;
    o.nu = resolution;
    o.nv = resolution;
    o.trace = trace;
    Timed t{compute_portrait(ReducedChart::build(id), o), 0.0};
    t.seconds = seconds_since(t0);
    return t;
}

std::string counts(const Portrait& p) {
    return fmt::format("{} centers, {} saddles, {} degenerate", p.summary.centers, p.summary.saddles,
                       p.summary.degenerate);
}

bool has_family(const Portrait& p, FamilyKind k) {
    return std::any_of(p.summary.families.begin(), p.summary.families.end(),
                       [k](const ContourFamily& f) { return f.kind == k && f.contours > 0; });
}

// Every separatrix edge joins two saddles and the saddle graph is one cycle
// through all of them.
bool cycle_through_all(const Portrait& p, int saddles) {
    return p.graph.single_cycle() && static_cast<int>(p.graph.saddles.size()) == saddles;
}

// Portraits of the structural criteria, kept for the level oracle.
std::vector<std::pair<std::string, std::pair<ReducedChart, Portrait>>> g_portraits;

void keep(const std::string& name, const ScenarioId& id, const Portrait& p) {
    g_portraits.push_back({name, {ReducedChart::build(id), p}});
}

Outcome criterion_1() {
    Outcome o;
    const ScenarioId id = SphereTwoRings{3, 2.0, {}, 1.0};
    const auto t = portrait_of(id);
    keep("two rings", id, t.portrait);
    const auto& p = t.portrait;
    o.require(p.summary.centers == 3 && p.summary.saddles == 6 && p.summary.degenerate == 0,
              fmt::format("expected 3 centers, 6 saddles; found {}", counts(p)));
    o.require(cycle_through_all(p, 6), fmt::format("separatrix graph one cycle through 6 saddles: {}",
                                                   p.graph.single_cycle() ? "cycle" : "no cycle"));
    o.require(t.seconds < kPortraitSeconds, fmt::format("runtime {:.2f} s < {} s", t.seconds, kPortraitSeconds));
    return o;
}

Outcome criterion_2() {
    Outcome o;
    const ScenarioId id = ChPairs{0.8};
    const auto t = portrait_of(id);
    keep("antipodal pairs", id, t.portrait);
    const auto& p = t.portrait;
    const auto chart = ReducedChart::build(id);
    bool found = false;
    double best = INFINITY;
    for (const auto& c : p.critical.points) {
        const auto x = chart.lift(c.location);
        const double off = std::max(std::abs(c.location.u - x.spherical(1).theta),
                                    std::abs(wrap_signed(c.location.v - kPi)));
        if (c.kind == CriticalKind::center) {
            best = std::min(best, off);
            found = found || off < kLocusTol;
        }
    }
    std::string located;
    for (const auto& c : p.critical.points)
        located += fmt::format(" {}({:.4f}, {:.4f})", kind_name(c.kind), c.location.u, c.location.v);
    o.require(found, fmt::format("center on theta_1 = theta_2, phi_1 = pi within {:.0e}: nearest center off by "
                                 "{:.3g}; critical points:{}",
                                 kLocusTol, best, located));
    o.require(has_family(p, FamilyKind::center) && has_family(p, FamilyKind::collision),
              fmt::format("center and collision families: {}, {}", has_family(p, FamilyKind::center),
                          has_family(p, FamilyKind::collision)));
    return o;
}

Outcome criterion_3() {
    Outcome o;
    const ScenarioId high = CnTwoRingsPoles{3, 1.0, 4.0};
    const ScenarioId low = CnTwoRingsPoles{3, 1.0, 2.5};
    const auto a = portrait_of(high);
    const auto b = portrait_of(low);
    keep("two rings with poles mu=4", high, a.portrait);
    keep("two rings with poles mu=2.5", low, b.portrait);
    o.require(a.portrait.summary.centers == 3 && a.portrait.summary.saddles == 3 &&
                  a.portrait.summary.degenerate == 0,
              fmt::format("mu = 4: {}", counts(a.portrait)));
    o.require(b.portrait.summary.centers == 6 && b.portrait.summary.saddles == 6 &&
                  b.portrait.summary.degenerate == 0,
              fmt::format("mu = 2.5: {}", counts(b.portrait)));

    const auto t0 = std::chrono::steady_clock::now();
    const auto mus = scan_grid({2.5, 3.1, 0.05, kScanResolution});
    const auto rows = scan_bifurcation(
        [](double mu) { return ReducedChart::build(CnTwoRingsPoles{3, 1.0, mu}); }, mus, kScanResolution);
    const double secs = seconds_since(t0);
    const auto changes = count_changes(rows);
    std::string where;
    for (const auto& c : changes)
        where += fmt::format(" ({:.2f}: {} -> {:.2f}: {})", c.mu_from, c.total_from, c.mu_to, c.total_to);
    o.require(!changes.empty() && mus.size() >= 13, fmt::format("count change localized:{}", where));
    o.require(secs < kScanSeconds, fmt::format("scan runtime {:.2f} s < {} s", secs, kScanSeconds));
    return o;
}

Outcome criterion_4() {
    Outcome o;
    const ScenarioId high = CnhFourRingsPoles{3, 1.0, 6.0};
    const ScenarioId low = CnhFourRingsPoles{3, 1.0, 2.5};
    const auto a = portrait_of(high);
    const auto b = portrait_of(low);
    keep("four rings mu=6", high, a.portrait);
    keep("four rings mu=2.5", low, b.portrait);
    o.require(a.portrait.summary.centers == 0 && a.portrait.summary.saddles == 3 &&
                  a.portrait.summary.degenerate == 0,
              fmt::format("mu = 6: expected 0 centers, 3 saddles; found {}", counts(a.portrait)));
    o.require(b.portrait.summary.centers == 6 && b.portrait.summary.saddles == 6 &&
                  b.portrait.summary.degenerate == 0,
              fmt::format("mu = 2.5: expected 6 centers, 6 saddles; found {}", counts(b.portrait)));
    return o;
}

// Contour ends on the sampled box edge or next to a masked node.
bool boundary_terminated(const EnergyField& f, ReducedPoint p) {
    const double tol = 1e-9;
    if (!f.u.periodic && (std::abs(p.u - f.u.lo) < tol || std::abs(p.u - f.u.hi) < tol)) return true;
    if (!f.v.periodic && (std::abs(p.v - f.v.lo) < tol || std::abs(p.v - f.v.hi) < tol)) return true;
    const int i = std::clamp(static_cast<int>(std::floor((p.u - f.u.lo) / f.u.step())), 0, f.u.cells() - 1);
    const int j = std::clamp(static_cast<int>(std::floor((p.v - f.v.lo) / f.v.step())), 0, f.v.cells() - 1);
    for (int di = 0; di <= 1; ++di)
        for (int dj = 0; dj <= 1; ++dj)
            if (f.masked(f.u.fold(i + di), f.v.fold(j + dj))) return true;
    return false;
}

Outcome criterion_5() {
    Outcome o;
    const ScenarioId pos = PlaneTwoRingsCenter{3, 1.0, 0.0, 1.0};
    const ScenarioId neg = PlaneTwoRingsCenter{3, -5.0, 0.0, 1.0};
    const auto a = portrait_of(pos);
    const auto b = portrait_of(neg);
    keep("planar rings ratio 1", pos, a.portrait);
    keep("planar rings ratio -5", neg, b.portrait);
    o.require(a.portrait.summary.centers == 3 && a.portrait.summary.saddles == 6 &&
                  a.portrait.summary.degenerate == 0,
              fmt::format("ratio +1: {}", counts(a.portrait)));
    o.require(cycle_through_all(a.portrait, 6), "ratio +1: separatrix cycle through 6 saddles");
    o.require(b.portrait.critical.points.empty(),
              fmt::format("ratio -5: {} interior critical points", b.portrait.critical.points.size()));
    int bad = 0;
    for (const auto& c : b.portrait.contours)
        if (!c.closed && !(boundary_terminated(b.portrait.field, c.points.front()) &&
                           boundary_terminated(b.portrait.field, c.points.back())))
            ++bad;
    o.require(bad == 0, fmt::format("ratio -5: {} contours, {} neither closed nor boundary-terminated",
                                    b.portrait.contours.size(), bad));
    return o;
}

// Matches critical points of two portraits and returns the largest location
// gap and the spread of the energy differences about `shift`.
void compare_pair(Outcome& o, const std::string& label, const Portrait& a, const Portrait& b, double shift) {
    if (a.critical.points.size() != b.critical.points.size() || a.critical.points.empty()) {
        o.require(false, fmt::format("{}: {} vs {} critical points", label, a.critical.points.size(),
                                     b.critical.points.size()));
        return;
    }
    double gap = 0.0, energy = 0.0;
    for (const auto& p : a.critical.points) {
        double best = INFINITY;
        const CriticalPoint* match = nullptr;
        for (const auto& q : b.critical.points) {
            const double d = std::max(std::abs(p.location.u - q.location.u),
                                      std::abs(wrap_signed(p.location.v - q.location.v)));
            if (d < best) {
                best = d;
                match = &q;
            }
        }
        gap = std::max(gap, best);
        energy = std::max(energy, std::abs((match->energy - p.energy) - shift));
    }
    o.require(gap < kLocationTol, fmt::format("{}: location gap {:.3g} < {:.0e}", label, gap, kLocationTol));
    o.require(energy < kEnergyShiftTol,
              fmt::format("{}: energy shift off -lambda^2 ln 2 by {:.3g} < {:.0e}", label, energy, kEnergyShiftTol));
}

Outcome criterion_6() {
    Outcome o;
    // Polar vortices of vorticity l add 2 l to the momentum; the identity holds
    // on the semi-regular locus mu = 2 l.
    const double l = 1.0;
    const auto a = portrait_of(CnTwoRingsPoles{3, 0.0, 0.0}, kResolution, false);
    const auto b = portrait_of(CnTwoRingsPoles{3, l, 2 * l}, kResolution, false);
    compare_pair(o, "poles 0 vs 1", a.portrait, b.portrait, -l * l * std::log(2.0));
    const auto c = portrait_of(PlaneTwoRingsCenter{3, 1.0, 0.0, 1.0}, kResolution, false);
    const auto d = portrait_of(PlaneTwoRingsCenter{3, 1.0, l, 1.0}, kResolution, false);
    compare_pair(o, "central vortex 0 vs 1", c.portrait, d.portrait, -l * l * std::log(2.0));
    return o;
}

Outcome from_suite(const std::string& suite) {
    Outcome o;
    SuiteOptions s;
    s.seed = kSeed;
    for (const auto& c : run_suite(suite, s))
        o.require(c.pass, fmt::format("{}: {:.3e} {} {:.0e}", c.name, c.residual, c.lower_bound ? ">" : "<",
                                      c.tolerance));
    return o;
}

Outcome criterion_11() {
    Outcome o;
    double worst = 0.0;
    long vertices = 0;
    for (const auto& [name, cp] : g_portraits) {
        const auto& [chart, p] = cp;
        for (const auto& c : p.contours)
            for (const auto& q : c.points) {
                worst = std::max(worst, std::abs(hamiltonian(chart.system(), chart.lift(q)) - c.level));
                ++vertices;
            }
    }
    o.require(worst < kLevelTol, fmt::format("{} vertices over {} portraits re-evaluated: max level error {:.3g} "
                                             "< {:.0e}",
                                             vertices, g_portraits.size(), worst, kLevelTol));
    const ScenarioId id = CnTwoRingsPoles{3, 1.0, 4.0};
    const auto coarse = portrait_of(id, kResolution, false);
    const auto fine = portrait_of(id, kFineResolution, false);
    o.require(coarse.portrait.summary.centers == fine.portrait.summary.centers &&
                  coarse.portrait.summary.saddles == fine.portrait.summary.saddles &&
                  coarse.portrait.summary.degenerate == fine.portrait.summary.degenerate,
              fmt::format("two rings with poles mu=4 at {0}x{0}: {1}; at {2}x{2}: {3}", kResolution,
                          counts(coarse.portrait), kFineResolution, counts(fine.portrait)));
    return o;
}

Outcome criterion_12() {
    Outcome o;
    int mismatches = 0;
    for (int n = 2; n <= 6; ++n) {
        const auto m = catalog_mismatches(n);
        mismatches += static_cast<int>(m.size());
        for (const auto& s : m) o.notes.push_back("[x] " + s);
    }
    o.require(mismatches == 0, fmt::format("computed rows against stored tables, n = 2..6: {} mismatches",
                                           mismatches));
    std::ifstream f(std::filesystem::path(VRPO_FIXTURE_DIR) / "catalog_all.txt", std::ios::binary);
    std::ostringstream fixture;
    fixture << f.rdbuf();
    o.require(f.good() || f.eof(), "fixture readable");
    o.require(cmd_catalog("all") == fixture.str(), "catalog text equals fixture byte for byte");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"two-ring portrait counts and saddle cycle", criterion_1},
        {"antipodal-pair center locus and families", criterion_2},
        {"polar two-ring counts and momentum scan", criterion_3},
        {"four-ring counts", criterion_4},
        {"planar ring counts and unbounded family", criterion_5},
        {"polar and central vorticity invariance", criterion_6},
        {"conservation suite", [] { return from_suite("conservation"); }},
        {"equilibrium suite", [] { return from_suite("equilibrium"); }},
        {"relative periodic orbits", [] { return from_suite("relative_period"); }},
        {"fixed-space invariance", [] { return from_suite("fixed_space"); }},
        {"level oracle and grid doubling", criterion_11},
        {"symmetry tables", criterion_12},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o.require(false, fmt::format("exception: {}", e.what()));
        }
        failed += o.pass ? 0 : 1;
        fmt::print("{} {:>2} {} ({:.1f} s)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, seconds_since(t0));
        for (const auto& n : o.notes) fmt::print("        {}\n", n);
        std::fflush(stdout);
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
