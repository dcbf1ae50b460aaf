#include "vrpo/config.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace vrpo {

namespace {

using nlohmann::json;

void allow_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
    if (!j.is_object()) throw ConfigError(fmt::format("'{}' must be an object", where));
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, _] : j.items())
        if (!allowed.count(k)) throw ConfigError(fmt::format("unknown key '{}' in '{}'", k, where));
}

double number(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number()) throw ConfigError(fmt::format("'{}' must be a number", key));
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(fmt::format("'{}' must be finite", key));
    return x;
}

int integer(const json& j, const std::string& key, int fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError(fmt::format("'{}' must be an integer", key));
    return v.get<int>();
}

bool boolean(const json& j, const std::string& key, bool fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_boolean()) throw ConfigError(fmt::format("'{}' must be true or false", key));
    return v.get<bool>();
}

std::string text(const json& j, const std::string& key) {
    if (!j.contains(key) || !j.at(key).is_string()) throw ConfigError(fmt::format("'{}' must be a string", key));
    return j.at(key).get<std::string>();
}

std::vector<double> numbers(const json& j, const std::string& key) {
    if (!j.contains(key)) return {};
    const auto& v = j.at(key);
    if (!v.is_array()) throw ConfigError(fmt::format("'{}' must be an array of numbers", key));
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw ConfigError(fmt::format("'{}' must be an array of numbers", key));
        out.push_back(x.get<double>());
        if (!std::isfinite(out.back())) throw ConfigError(fmt::format("'{}' must hold finite numbers", key));
    }
    return out;
}

std::pair<double, double> pair(const json& j, const std::string& key) {
    const auto v = numbers(j, key);
    if (v.size() != 2) throw ConfigError(fmt::format("'{}' must hold two numbers", key));
    return {v[0], v[1]};
}

double positive(const json& j, const std::string& key, double fallback) {
    const double x = number(j, key, fallback);
    if (!(x > 0)) throw ConfigError(fmt::format("'{}' must be positive", key));
    return x;
}

int ring_size(const json& j, int fallback) {
    const int n = integer(j, "n", fallback);
    if (n < 2) throw ConfigError(fmt::format("'n' must be at least 2, got {}", n));
    return n;
}

ScenarioId scenario_from(const json& j) {
    const std::string type = text(j, "type");
    if (type == "sphere_two_rings") {
        allow_keys(j, "scenario", {"type", "n", "ring_ratio", "polar_vorticities", "mu"});
        SphereTwoRings s;
        s.n = ring_size(j, s.n);
        s.ring_ratio = number(j, "ring_ratio", s.ring_ratio);
        s.polar_vorticities = numbers(j, "polar_vorticities");
        s.mu = number(j, "mu", s.mu);
        return s;
    }
    if (type == "ch_pairs") {
        allow_keys(j, "scenario", {"type", "mu"});
        ChPairs s;
        s.mu = number(j, "mu", s.mu);
        return s;
    }
    if (type == "cn_two_rings_poles") {
        allow_keys(j, "scenario", {"type", "n", "pole_vorticity", "mu"});
        CnTwoRingsPoles s;
        s.n = ring_size(j, s.n);
        s.pole_vorticity = number(j, "pole_vorticity", s.pole_vorticity);
        s.mu = number(j, "mu", s.mu);
        return s;
    }
    if (type == "cnh_four_rings_poles") {
        allow_keys(j, "scenario", {"type", "n", "pole_vorticity", "mu"});
        CnhFourRingsPoles s;
        s.n = ring_size(j, s.n);
        s.pole_vorticity = number(j, "pole_vorticity", s.pole_vorticity);
        s.mu = number(j, "mu", s.mu);
        return s;
    }
    if (type == "ci_three_pairs") {
        allow_keys(j, "scenario", {"type", "mu"});
        CiThreePairs s;
        s.mu = number(j, "mu", s.mu);
        return s;
    }
    if (type == "ci_four_pairs_zero") {
        allow_keys(j, "scenario", {"type"});
        return CiFourPairsZero{};
    }
    if (type == "plane_two_rings_center") {
        allow_keys(j, "scenario", {"type", "n", "ring_ratio", "center_vorticity", "mu"});
        PlaneTwoRingsCenter s;
        s.n = ring_size(j, s.n);
        s.ring_ratio = number(j, "ring_ratio", s.ring_ratio);
        s.center_vorticity = number(j, "center_vorticity", s.center_vorticity);
        s.mu = number(j, "mu", s.mu);
        return s;
    }
    if (type == "dancing_vortices") {
        allow_keys(j, "scenario", {"type", "n"});
        DancingVortices s;
        s.n = ring_size(j, s.n);
        return s;
    }
    if (type == "dnd_staggered") {
        allow_keys(j, "scenario", {"type", "n"});
        DndStaggered s;
        s.n = ring_size(j, s.n);
        return s;
    }
    if (type == "dnh_aligned") {
        allow_keys(j, "scenario", {"type", "n"});
        DnhAligned s;
        s.n = ring_size(j, s.n);
        return s;
    }
    if (type == "dn_rings") {
        allow_keys(j, "scenario", {"type", "n", "polar_count", "polar_vorticity"});
        DnRings s;
        s.n = ring_size(j, s.n);
        s.polar_count = integer(j, "polar_count", s.polar_count);
        if (s.polar_count != 0 && s.polar_count != 2) throw ConfigError("'polar_count' must be 0 or 2");
        s.polar_vorticity = number(j, "polar_vorticity", s.polar_vorticity);
        return s;
    }
    if (type == "polyhedral_split") {
        allow_keys(j, "scenario", {"type", "group"});
        PolyhedralSplit s;
        const std::string g = j.contains("group") ? text(j, "group") : "T";
        if (g == "T")
            s.group = Family::T;
        else if (g == "O")
            s.group = Family::O;
        else if (g == "I")
            s.group = Family::I;
        else
            throw ConfigError("polyhedral_split group must be T, O or I");
        return s;
    }
    throw ConfigError(fmt::format("unknown scenario type '{}'", type));
}

InitialPoint initial_from(const json& j) {
    allow_keys(j, "integrate.initial", {"reduced", "surface", "vorticities", "points"});
    InitialPoint p;
    if (j.contains("reduced")) {
        if (j.contains("points") || j.contains("vorticities") || j.contains("surface"))
            throw ConfigError("initial point is either 'reduced' or an explicit configuration, not both");
        const auto [u, v] = pair(j, "reduced");
        p.reduced = ReducedPoint{u, v};
        return p;
    }
    const std::string surface = text(j, "surface");
    if (surface != "sphere" && surface != "plane") throw ConfigError("surface must be 'sphere' or 'plane'");
    const auto lambda = numbers(j, "vorticities");
    if (!j.contains("points") || !j.at("points").is_array())
        throw ConfigError("explicit initial configuration needs 'points'");
    // Pairs are [theta, phi] on the sphere or [rho, phi] in the plane;
    // triples are Cartesian.
    std::vector<std::vector<double>> coords;
    for (const auto& q : j.at("points")) {
        if (!q.is_array() || (q.size() != 2 && q.size() != 3))
            throw ConfigError("each point is [theta, phi], [rho, phi] or [x, y, z]");
        std::vector<double> c;
        for (const auto& a : q) {
            if (!a.is_number()) throw ConfigError("point coordinates must be numbers");
            c.push_back(a.get<double>());
        }
        if (!coords.empty() && c.size() != coords.front().size())
            throw ConfigError("points mix angular and Cartesian forms");
        coords.push_back(std::move(c));
    }
    if (coords.size() != lambda.size()) throw ConfigError("'points' and 'vorticities' differ in length");
    const Surface s = surface == "sphere" ? Surface::sphere : Surface::plane;
    p.system = VortexSystem(s, lambda);
    if (!coords.empty() && coords.front().size() == 3) {
        std::vector<Vec3> pts;
        for (const auto& c : coords) pts.emplace_back(c[0], c[1], c[2]);
        p.configuration = s == Surface::sphere ? Configuration::sphere(std::move(pts))
                                               : Configuration::plane(std::move(pts));
    } else if (s == Surface::sphere) {
        std::vector<Spherical> c;
        for (const auto& a : coords) c.push_back({a[0], a[1]});
        p.configuration = Configuration::from_spherical(c);
    } else {
        std::vector<Polar> c;
        for (const auto& a : coords) c.push_back({a[0], a[1]});
        p.configuration = Configuration::from_polar(c);
    }
    return p;
}

}  // namespace

ScenarioId parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(fmt::format("malformed scenario: {}", e.what()));
    }
    return scenario_from(j);
}

ScenarioConfig parse_config(const std::string& content) {
    json j;
    try {
        j = json::parse(content);
    } catch (const json::exception& e) {
        throw ConfigError(fmt::format("malformed configuration: {}", e.what()));
    }
    allow_keys(j, "configuration", {"scenario", "grid", "integrator", "integrate", "verify", "scan", "output", "seed"});
    ScenarioConfig c;
    try {
        if (j.contains("scenario")) c.scenario = scenario_from(j.at("scenario"));

        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            allow_keys(g, "grid", {"resolution", "nu", "nv", "ranges", "levels", "level_count", "trace"});
            const int r = integer(g, "resolution", kDefaultResolution);
            c.grid.nu = integer(g, "nu", r);
            c.grid.nv = integer(g, "nv", r);
            if (c.grid.nu < 16 || c.grid.nv < 16) throw ConfigError("grid resolution must be at least 16");
            if (g.contains("ranges")) {
                const auto& rg = g.at("ranges");
                allow_keys(rg, "grid.ranges", {"u", "v"});
                const auto [ulo, uhi] = pair(rg, "u");
                const auto [vlo, vhi] = pair(rg, "v");
                if (!(ulo < uhi) || !(vlo < vhi)) throw ConfigError("grid ranges must be increasing");
                c.grid.ranges = SampleRanges{ulo, uhi, vlo, vhi};
            }
            c.grid.levels = numbers(g, "levels");
            c.grid.level_count = integer(g, "level_count", c.grid.level_count);
            if (c.grid.level_count < 1) throw ConfigError("'level_count' must be positive");
            c.grid.trace = boolean(g, "trace", c.grid.trace);
        }

        if (j.contains("integrator")) {
            const auto& g = j.at("integrator");
            allow_keys(g, "integrator", {"rtol", "atol", "collision_threshold", "max_step", "sample_interval"});
            c.integrator.rtol = positive(g, "rtol", c.integrator.rtol);
            c.integrator.atol = positive(g, "atol", c.integrator.atol);
            c.integrator.collision_threshold = positive(g, "collision_threshold", c.integrator.collision_threshold);
            if (g.contains("max_step")) c.integrator.max_step = positive(g, "max_step", 1.0);
            c.integrator.sample_interval = number(g, "sample_interval", 0.0);
            if (c.integrator.sample_interval < 0) throw ConfigError("'sample_interval' must not be negative");
        }

        if (j.contains("integrate")) {
            const auto& g = j.at("integrate");
            allow_keys(g, "integrate", {"t_end", "initial", "relative_period", "period_search"});
            c.integrate.t_end = number(g, "t_end", c.integrate.t_end);
            if (g.contains("initial")) c.integrate.initial = initial_from(g.at("initial"));
            c.integrate.relative_period = boolean(g, "relative_period", false);
            c.integrate.period_search = positive(g, "period_search", c.integrate.period_search);
        }

        if (j.contains("verify")) {
            const auto& g = j.at("verify");
            allow_keys(g, "verify", {"suite", "tolerance", "t_end"});
            VerifySettings v;
            v.suite = text(g, "suite");
            if (g.contains("tolerance")) v.tolerance = positive(g, "tolerance", 1.0);
            if (g.contains("t_end")) v.t_end = positive(g, "t_end", 1.0);
            c.verify = v;
        }

        if (j.contains("scan")) {
            const auto& g = j.at("scan");
            allow_keys(g, "scan", {"mu_from", "mu_to", "mu_step", "resolution"});
            ScanSettings s;
            s.mu_from = number(g, "mu_from", NAN);
            s.mu_to = number(g, "mu_to", NAN);
            if (!g.contains("mu_from") || !g.contains("mu_to")) throw ConfigError("scan needs 'mu_from' and 'mu_to'");
            s.mu_step = positive(g, "mu_step", 0.05);
            s.resolution = integer(g, "resolution", s.resolution);
            if (s.resolution < 16) throw ConfigError("scan resolution must be at least 16");
            c.scan = s;
        }

        if (j.contains("output")) {
            const auto& g = j.at("output");
            allow_keys(g, "output", {"dir", "stem"});
            if (g.contains("dir")) c.out_dir = text(g, "dir");
            if (g.contains("stem")) c.stem = text(g, "stem");
        }

        if (j.contains("seed")) {
            if (!j.at("seed").is_number_unsigned()) throw ConfigError("'seed' must be a non-negative integer");
            c.seed = j.at("seed").get<std::uint64_t>();
        }
    } catch (const json::exception& e) {
        throw ConfigError(fmt::format("bad configuration value: {}", e.what()));
    } catch (const ConfigError&) {
        throw;
    } catch (const InvalidInput& e) {
        throw ConfigError(e.what());
    }
    return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot read configuration '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

ScenarioId with_mu(const ScenarioId& s, double mu) {
    return std::visit(
        [&](auto v) -> ScenarioId {
            if constexpr (requires { v.mu; }) {
                v.mu = mu;
                return v;
            } else {
                throw ConfigError(fmt::format("scenario '{}' has no momentum parameter", scenario_type(s)));
            }
        },
        s);
}

std::vector<double> scan_grid(const ScanSettings& s) {
    if (!(s.mu_step > 0)) throw ConfigError("scan step must be positive");
    if (!(s.mu_to > s.mu_from)) throw ConfigError("scan needs mu_to > mu_from");
    const auto n = static_cast<long>(std::floor((s.mu_to - s.mu_from) / s.mu_step + 1e-9));
    std::vector<double> mus;
    for (long k = 0; k <= n; ++k) mus.push_back(s.mu_from + static_cast<double>(k) * s.mu_step);
    if (s.mu_to - mus.back() > 1e-9 * s.mu_step) mus.push_back(s.mu_to);
    return mus;
}

}  // namespace vrpo
