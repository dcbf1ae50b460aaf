#include "vrpo/commands.hpp"

#include "vrpo/catalog.hpp"
#include "vrpo/errors.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace vrpo {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidInput(fmt::format("cannot write '{}'", path.string()));
    f << content;
    if (!f) throw InvalidInput(fmt::format("failed writing '{}'", path.string()));
}

const ScenarioId& require_scenario(const ScenarioConfig& c) {
    if (!c.scenario) throw ConfigError("configuration has no 'scenario'");
    return *c.scenario;
}

}  // namespace

ScenarioConfig apply_overrides(ScenarioConfig c, const Overrides& o) {
    if (o.out_dir) c.out_dir = *o.out_dir;
    if (o.seed) c.seed = *o.seed;
    return c;
}

std::string output_stem(const ScenarioConfig& c, const std::string& fallback) {
    if (!c.stem.empty()) return c.stem;
    return c.scenario ? scenario_type(*c.scenario) : fallback;
}

PortraitOutput cmd_portrait(const ScenarioConfig& c, std::ostream& out) {
    const auto chart = ReducedChart::build(require_scenario(c));
    PortraitOptions o;
    o.nu = c.grid.nu;
    o.nv = c.grid.nv;
    o.ranges = c.grid.ranges;
    o.level_count = c.grid.level_count;
    o.trace = c.grid.trace;
    // Levels are fixed up front so the document records them.
    const EnergyField probe = sample_field(chart, o.nu, o.nv, o.ranges);
    o.levels = c.grid.levels.empty() ? default_levels(probe, o.level_count) : c.grid.levels;
    const Portrait p = compute_portrait(chart, o);

    PortraitOutput r;
    r.document = make_document(chart, p, o.levels);
    const std::string stem = output_stem(c, "portrait");
    r.contours_csv = c.out_dir / (stem + "_contours.csv");
    r.separatrices_csv = c.out_dir / (stem + "_separatrices.csv");
    r.summary_json = c.out_dir / (stem + "_summary.json");
    r.svg = c.out_dir / (stem + ".svg");
    std::ostringstream contours, branches;
    write_contours_csv(contours, r.document);
    write_separatrices_csv(branches, r.document);
    write_file(r.contours_csv, contours.str());
    write_file(r.separatrices_csv, branches.str());
    write_file(r.summary_json, summary_json(r.document));
    write_file(r.svg, render_svg(r.document, p.field));

    out << fmt::format("{}\n", r.document.meta.scenario);
    for (const auto& note : chart.notes()) out << fmt::format("  note: {}\n", note);
    out << fmt::format("centers {}  saddles {}  degenerate {}  saddle cycle {}\n", p.summary.centers,
                       p.summary.saddles, p.summary.degenerate, p.summary.saddle_cycle ? "yes" : "no");
    for (const auto& cp : p.critical.points)
        out << fmt::format("  {:<10} {}={:.10f} {}={:.10f} energy={:.12g}\n", kind_name(cp.kind),
                           chart.u_axis().name, cp.location.u, chart.v_axis().name, cp.location.v, cp.energy);
    for (const auto& f : p.summary.families)
        out << fmt::format("  family {:<9} contours={} centers={} masks={}\n", family_name(f.kind), f.contours,
                           f.centers.size(), f.masks.size());
    out << fmt::format("wrote {}, {}, {}, {}\n", r.contours_csv.string(), r.separatrices_csv.string(),
                       r.summary_json.string(), r.svg.string());
    return r;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& tr) {
    if (tr.size() == 0) return;
    const bool sphere = tr.x.front().surface() == Surface::sphere;
    const std::size_t n = tr.x.front().size();
    out << "t";
    for (std::size_t i = 1; i <= n; ++i) out << (sphere ? fmt::format(",theta_{0},phi_{0}", i) : fmt::format(",rho_{0},phi_{0}", i));
    out << ",H,Jx,Jy,Jz\n";
    for (std::size_t k = 0; k < tr.size(); ++k) {
        out << fmt::format("{:.17g}", tr.t[k]);
        for (std::size_t i = 0; i < n; ++i) {
            if (sphere) {
                const auto s = tr.x[k].spherical(i);
                out << fmt::format(",{:.17g},{:.17g}", s.theta, s.phi);
            } else {
                const auto p = tr.x[k].polar(i);
                out << fmt::format(",{:.17g},{:.17g}", p.rho, p.phi);
            }
        }
        const Vec3& j = tr.momentum[k];
        out << fmt::format(",{:.17g},{:.17g},{:.17g},{:.17g}\n", tr.energy[k], j.x(), j.y(), j.z());
    }
}

IntegrateOutput cmd_integrate(const ScenarioConfig& c, std::ostream& out) {
    if (!c.integrate.initial) throw ConfigError("integrate needs 'integrate.initial'");
    const InitialPoint& init = *c.integrate.initial;
    std::optional<ReducedChart> chart;
    std::optional<VortexSystem> system;
    Configuration x0;
    if (init.reduced) {
        chart = ReducedChart::build(require_scenario(c));
        system = chart->system();
        x0 = chart->lift(*init.reduced);
    } else {
        system = *init.system;
        x0 = init.configuration;
    }

    IntegrateOutput r;
    r.trajectory = integrate(*system, x0, c.integrate.t_end, c.integrator);
    r.drift = invariant_drift(r.trajectory);
    if (c.integrate.relative_period) {
        if (!chart) throw ConfigError("'relative_period' needs a reduced initial point");
        r.period = verify_relative_periodicity(*chart, *init.reduced, c.integrate.period_search, c.integrator);
    }

    const std::string stem = output_stem(c, "trajectory");
    r.trajectory_csv = c.out_dir / (stem + "_trajectory.csv");
    r.summary_json = c.out_dir / (stem + "_integrate.json");
    std::ostringstream csv;
    write_trajectory_csv(csv, r.trajectory);
    write_file(r.trajectory_csv, csv.str());

    json j;
    if (c.scenario && init.reduced) j["scenario"] = scenario_label(*c.scenario);
    j["t_end"] = c.integrate.t_end;
    j["samples"] = r.trajectory.size();
    j["step_attempts"] = r.trajectory.attempts;
    j["drift"] = {{"energy", r.drift.energy},
                  {"energy_relative", r.drift.energy_relative},
                  {"momentum", r.drift.momentum}};
    if (r.period) {
        const auto& p = *r.period;
        j["relative_period"] = {{"found", p.found}};
        if (p.found)
            j["relative_period"].update({{"period", p.period},
                                         {"angle", p.angle},
                                         {"residual", p.residual},
                                         {"reduced_return", p.reduced_return},
                                         {"full_rotation", p.full_rotation}});
    }
    write_file(r.summary_json, j.dump(1) + "\n");

    out << fmt::format("integrated to t = {:.17g} ({} samples, {} step attempts)\n", c.integrate.t_end,
                       r.trajectory.size(), r.trajectory.attempts);
    out << fmt::format("drift: energy {:.3e} (relative {:.3e}), momentum {:.3e}\n", r.drift.energy,
                       r.drift.energy_relative, r.drift.momentum);
    if (r.period) {
        if (r.period->found)
            out << fmt::format("relative period T = {:.17g}, angle {:.17g}, residual {:.3e}\n", r.period->period,
                               r.period->angle, r.period->residual);
        else
            out << "no return to the section within the search horizon\n";
    }
    out << fmt::format("wrote {}, {}\n", r.trajectory_csv.string(), r.summary_json.string());
    return r;
}

std::string cmd_catalog(const std::string& name, int n) {
    if (name == "all") {
        std::string s;
        for (int k = 2; k <= 6; ++k) s += (k > 2 ? "\n" : "") + catalog_text(k);
        return s;
    }
    const PointGroup g = parse_group(name, n);
    // Polyhedral and low groups appear in every table; others fix the index.
    const int order = g.n >= 2 ? g.n : std::max(n, 2);
    return catalog_text(order, group_name(g));
}

void print_checks(std::ostream& out, const std::vector<CheckResult>& checks) {
    for (const auto& c : checks)
        out << fmt::format("{} {:<48} residual {:.3e} {} {:.1e}\n", c.pass ? "PASS" : "FAIL", c.name, c.residual,
                           c.lower_bound ? ">" : "<", c.tolerance);
}

int cmd_verify(const ScenarioConfig& c, std::ostream& out) {
    if (!c.verify) throw ConfigError("configuration has no 'verify' section");
    SuiteOptions o;
    o.tolerance = c.verify->tolerance;
    o.t_end = c.verify->t_end;
    o.seed = c.seed;
    o.integrator = c.integrator;
    const auto checks = run_suite(c.verify->suite, o);
    print_checks(out, checks);
    const auto failed = std::count_if(checks.begin(), checks.end(), [](const CheckResult& r) { return !r.pass; });
    out << fmt::format("{} of {} checks passed\n", checks.size() - static_cast<std::size_t>(failed), checks.size());
    return failed == 0 ? kExitOk : kExitCheckFailed;
}

std::vector<ScanRow> cmd_scan(const ScenarioConfig& c, std::ostream& out) {
    const ScenarioId base = require_scenario(c);
    if (!c.scan) throw ConfigError("configuration has no 'scan' section");
    with_mu(base, 0.0);
    const auto mus = scan_grid(*c.scan);
    const auto rows =
        scan_bifurcation([&](double mu) { return ReducedChart::build(with_mu(base, mu)); }, mus, c.scan->resolution);

    std::ostringstream csv;
    csv << "mu,centers,saddles,degenerate,error\n";
    for (const auto& r : rows) {
        std::string err = r.error;
        std::replace(err.begin(), err.end(), ',', ';');
        csv << fmt::format("{:.17g},{},{},{},{}\n", r.mu, r.centers, r.saddles, r.degenerate, err);
    }
    const auto path = c.out_dir / (output_stem(c, "scan") + "_scan.csv");
    write_file(path, csv.str());

    for (const auto& r : rows)
        out << fmt::format("mu {:<10.6g} centers {:>3} saddles {:>3} degenerate {:>3}{}\n", r.mu, r.centers,
                           r.saddles, r.degenerate, r.error.empty() ? "" : "  (" + r.error + ")");
    for (const auto& ch : count_changes(rows))
        out << fmt::format("count change between mu = {:.6g} ({} points) and mu = {:.6g} ({} points)\n", ch.mu_from,
                           ch.total_from, ch.mu_to, ch.total_to);
    out << fmt::format("wrote {}\n", path.string());
    return rows;
}

int run_guarded(const std::function<int()>& body, std::ostream& err) {
    try {
        return body();
    } catch (const CollisionError& e) {
        err << fmt::format("error: collision abort at t = {:.17g}: {}\n", e.time(), e.what());
        return kExitNumericalAbort;
    } catch (const NumericalError& e) {
        err << "error: numerical abort: " << e.what() << "\n";
        return kExitNumericalAbort;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidConfig;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidConfig;
    }
}

}  // namespace vrpo
