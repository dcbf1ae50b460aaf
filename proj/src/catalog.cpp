#include "vrpo/catalog.hpp"

#include "vrpo/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace vrpo {

namespace {

constexpr double pi = std::numbers::pi;

Vec3 generic_a() { return unit_from_spherical(0.9, 0.31); }
Vec3 generic_b() { return unit_from_spherical(2.1, 1.27); }
Vec3 generic_c() { return unit_from_spherical(1.3, 2.53); }
Vec3 north() { return Vec3::UnitZ(); }
Vec3 south() { return -Vec3::UnitZ(); }
Vec3 cube_vertex() { return Vec3(1, 1, 1).normalized(); }
Vec3 equator(double phi) { return unit_from_spherical(pi / 2, phi); }
double golden() { return (1.0 + std::sqrt(5.0)) / 2.0; }

PointGroup G(Family f, int n = 1) { return {f, n, 0.0}; }

std::string strip_primes(std::string s) {
    s.erase(std::remove(s.begin(), s.end(), '\''), s.end());
    return s;
}

bool same_set(const std::vector<Mat3>& a, const std::vector<Mat3>& b) {
    if (a.size() != b.size()) return false;
    for (const auto& m : a)
        if (find_matrix(b, m) < 0) return false;
    return true;
}

std::vector<Mat3> conjugate(const Mat3& h, const std::vector<Mat3>& s) {
    std::vector<Mat3> out;
    out.reserve(s.size());
    for (const auto& m : s) out.push_back(h * m * h.transpose());
    return out;
}

bool has_rotation(const std::vector<Mat3>& s) {
    for (const auto& m : s)
        if (m.determinant() > 0 && !matrices_equal(m, Mat3::Identity())) return true;
    return false;
}

// Same component of the orbit-type stratum as `seed`, for the cases where two
// rows share a stabilizer class: isolated fixed points must coincide, mirror
// points must lie on the same vertical half-plane.
bool same_stratum(const Vec3& y, const Vec3& seed, const std::vector<Mat3>& seed_stab) {
    if (has_rotation(seed_stab)) return (y - seed).norm() < 1e-7;
    const Eigen::Vector2d a = y.head<2>(), b = seed.head<2>();
    if (a.norm() < 1e-9 || b.norm() < 1e-9) return (y - seed).norm() < 1e-7;
    return std::abs(a.x() * b.y() - a.y() * b.x()) < 1e-7 * a.norm() * b.norm() && a.dot(b) > 0;
}

}  // namespace

std::vector<NormalizerRow> normalizer_rows(int n) {
    std::vector<NormalizerRow> rows{{G(Family::C, n), "D_inf", "SO(2)"}, {G(Family::D, 2), "O", "1"}};
    if (n > 2) rows.push_back({G(Family::D, n), fmt::format("D_{}", 2 * n), "1"});
    const std::vector<NormalizerRow> rest{
        {G(Family::T), "O", "1"},
        {G(Family::O), "O", "1"},
        {G(Family::I), "I", "1"},
        {G(Family::Ci), "SO(3) x C_i", "SO(3)"},
        {G(Family::Cs), "D_inf_h", "SO(2)"},
        {G(Family::Ch, n), "D_inf_h", "SO(2)"},
        {G(Family::Cv, n), fmt::format("D_{}h", 2 * n), "1"},
        {G(Family::Dh, n), fmt::format("D_{}h", 2 * n), "1"},
        {G(Family::Dd, n), fmt::format("D_{}h", 2 * n), "1"},
        {G(Family::Th), "O_h", "1"},
        {G(Family::Td), "O_h", "1"},
        {G(Family::Oh), "O_h", "1"},
        {G(Family::Ih), "I_h", "1"},
    };
    rows.insert(rows.end(), rest.begin(), rest.end());
    return rows;
}

std::vector<OrbitRow> rotation_orbit_rows(int n) {
    const Vec3 ico_vertex = Vec3(0, 1, golden()).normalized();
    return {
        {G(Family::C, n), "R", "1", n, fmt::format("{}-ring", n), {generic_a()}},
        {G(Family::C, n), "p", fmt::format("C_{}", n), 1, "pole", {north(), south()}},
        {G(Family::D, n), "R", "1", 2 * n, fmt::format("pair of {}-rings on opposite latitudes", n), {generic_a()}},
        {G(Family::D, n), "r", "C_2", n, fmt::format("equatorial {}-ring or dual", n), {equator(0), equator(pi / n)}},
        {G(Family::D, n), "p", fmt::format("C_{}", n), 2, "pair of poles", {north()}},
        {G(Family::T), "R", "1", 12, "regular T orbit", {generic_a()}},
        {G(Family::T), "e", "C_2", 6, "mid-points of edges of tetrahedron", {Vec3::UnitX()}},
        {G(Family::T), "v", "C_3", 4, "vertices of tetrahedron or dual", {cube_vertex(), -cube_vertex()}},
        {G(Family::O), "R", "1", 24, "regular O orbit", {generic_a()}},
        {G(Family::O), "e", "C_2", 12, "mid-points of edges of octahedron", {Vec3(1, 1, 0).normalized()}},
        {G(Family::O), "f", "C_3", 8, "mid-points of faces of octahedron", {cube_vertex()}},
        {G(Family::O), "v", "C_4", 6, "vertices of octahedron", {Vec3::UnitX()}},
        {G(Family::I), "R", "1", 60, "regular I orbit", {generic_a()}},
        {G(Family::I), "e", "C_2", 30, "mid-points of edges of icosahedron", {Vec3::UnitZ()}},
        {G(Family::I), "f", "C_3", 20, "mid-points of faces of icosahedron", {cube_vertex()}},
        {G(Family::I), "v", "C_5", 12, "vertices of icosahedron", {ico_vertex}},
    };
}

std::vector<OrbitRow> orthogonal_orbit_rows(int n) {
    const Vec3 ico_vertex = Vec3(0, 1, golden()).normalized();
    const double theta = 0.9;
    const std::string nv = fmt::format("C_{}v", n);
    return {
        {G(Family::Cv, n), "R_s", "1", 2 * n, fmt::format("semi-regular {}-gon", 2 * n), {generic_a()}},
        {G(Family::Cv, n), "R", "C_h", n, fmt::format("regular {}-ring", n), {unit_from_spherical(theta, 0)}},
        {G(Family::Cv, n), "R'", "C_h", n, fmt::format("dual regular {}-ring", n),
         {unit_from_spherical(theta, pi / n)}},
        {G(Family::Cv, n), "p", nv, 1, "pole", {north(), south()}},
        {G(Family::Ch, n), "R", "1", 2 * n, fmt::format("pair of {}-rings on opposite latitudes", n), {generic_a()}},
        {G(Family::Ch, n), "R^e", "C_h", n, fmt::format("equatorial {}-ring", n), {equator(0.31)}},
        {G(Family::Ch, n), "p", fmt::format("C_{}", n), 2, "pair of poles", {north()}},
        {G(Family::Dh, n), "R_s", "1", 4 * n,
         fmt::format("vertically aligned pair of semi-regular {}-gons", 2 * n), {generic_a()}},
        {G(Family::Dh, n), "R_s^e", "C_h", 2 * n, fmt::format("equatorial semi-regular {}-gon", 2 * n),
         {equator(0.31)}},
        {G(Family::Dh, n), "R", "C'_h", 2 * n, fmt::format("vertically aligned pair of {}-rings", n),
         {unit_from_spherical(theta, 0)}},
        {G(Family::Dh, n), "R'", "C'_h", 2 * n, fmt::format("vertically aligned pair of dual {}-rings", n),
         {unit_from_spherical(theta, pi / n)}},
        {G(Family::Dh, n), "r", "C_2v", n, fmt::format("equatorial {}-ring", n), {equator(0)}},
        {G(Family::Dh, n), "r'", "C_2v", n, fmt::format("dual equatorial {}-ring", n), {equator(pi / n)}},
        {G(Family::Dh, n), "p", nv, 2, "pair of poles", {north()}},
        {G(Family::Dd, n), "R_s", "1", 4 * n,
         fmt::format("vertically staggered pair of semi-regular {}-gons", 2 * n), {generic_a()}},
        {G(Family::Dd, n), "R", "C_h", 2 * n, fmt::format("vertically staggered pair of {}-rings", n),
         {unit_from_spherical(theta, pi / (2 * n))}},
        {G(Family::Dd, n), "r", "C_2", 2 * n, fmt::format("equatorial {}-ring", 2 * n), {equator(0)}},
        {G(Family::Dd, n), "p", nv, 2, "pair of poles", {north()}},
        {G(Family::S, n), "R", "1", 2 * n, fmt::format("vertically staggered pair of {}-rings", n), {generic_a()}},
        {G(Family::S, n), "p", fmt::format("C_{}", n), 2, "pair of poles", {north()}},
        {G(Family::Cs), "R", "1", 2, "vertically aligned pair of points", {generic_a()}},
        {G(Family::Cs), "E", "C_h", 1, "equatorial point", {equator(0.31)}},
        {G(Family::Ci), "R", "1", 2, "pair of antipodal points", {generic_a()}},
        {G(Family::Td), "R", "1", 24, "regular T_d orbit", {generic_a()}},
        {G(Family::Td), "E", "C_h", 12, "generic orbit on edges of tetrahedron", {Vec3(0.3, 0.3, 1).normalized()}},
        {G(Family::Td), "e", "C_2v", 6, "mid-points of edges of tetrahedron", {Vec3::UnitX()}},
        {G(Family::Td), "v", "C_3v", 4, "vertices of tetrahedron", {cube_vertex()}},
        {G(Family::Td), "v'", "C_3v", 4, "vertices of dual tetrahedron", {-cube_vertex()}},
        {G(Family::Th), "R", "1", 24, "regular T_h orbit", {generic_a()}},
        {G(Family::Th), "E", "C_h", 12, "generic orbit on 'equator'", {equator(0.31)}},
        {G(Family::Th), "e", "C_2v", 6, "mid-points of edges of tetrahedron", {Vec3::UnitX()}},
        {G(Family::Th), "v", "C_3", 8, "vertices of cube", {cube_vertex()}},
        {G(Family::Oh), "R", "1", 48, "regular O_h orbit", {generic_a()}},
        {G(Family::Oh), "E", "C_h", 24, "generic orbit on edges of octahedron", {equator(0.31)}},
        {G(Family::Oh), "E'", "C'_h", 24, "generic orbit on face bisectors of octahedron",
         {Vec3(0.2, 0.2, 1).normalized()}},
        {G(Family::Oh), "e", "C_2v", 12, "mid-points of edges of octahedron", {Vec3(1, 1, 0).normalized()}},
        {G(Family::Oh), "f", "C_3v", 8, "mid-points of faces of octahedron", {cube_vertex()}},
        {G(Family::Oh), "v", "C_4v", 6, "vertices of octahedron", {Vec3::UnitX()}},
        {G(Family::Ih), "R", "1", 120, "regular I_h orbit", {generic_a()}},
        {G(Family::Ih), "E", "C_h", 60, "generic orbit on edges of icosahedron", {equator(75.0 * pi / 180.0)}},
        {G(Family::Ih), "e", "C_2v", 30, "mid-points of edges of icosahedron", {Vec3::UnitZ()}},
        {G(Family::Ih), "f", "C_3v", 20, "mid-points of faces of icosahedron", {cube_vertex()}},
        {G(Family::Ih), "v", "C_5v", 12, "vertices of icosahedron", {ico_vertex}},
    };
}

std::vector<FixedSpaceRow> identical_fixed_space_rows(int n) {
    const Vec3 ico_vertex = Vec3(0, 1, golden()).normalized();
    auto one = [](const Vec3& p) { return std::vector<SeedVortex>{{p, 1.0}}; };
    auto d = [](PointGroup g) { return GroupDescriptor{g, std::nullopt}; };
    const std::string cn = fmt::format("C_{}", n);
    return {
        {d(G(Family::C, n)), "R", "1", n, 2, 1, 1, one(generic_a())},
        {d(G(Family::C, n)), "p", cn, 1, 0, 2, 1, one(north())},
        {d(G(Family::D, n)), "R", "1", 2 * n, 2, 1, 0, one(generic_a())},
        {d(G(Family::D, n)), "r", "C_2", n, 0, 2, 0, one(equator(0))},
        {d(G(Family::D, n)), "p", cn, 2, 0, 1, 0, one(north())},
        {d(G(Family::T)), "R", "1", 12, 2, 1, 0, one(generic_a())},
        {d(G(Family::T)), "e", "C_2", 6, 0, 1, 0, one(Vec3::UnitX())},
        {d(G(Family::T)), "v", "C_3", 4, 0, 2, 0, one(cube_vertex())},
        {d(G(Family::O)), "R", "1", 24, 2, 1, 0, one(generic_a())},
        {d(G(Family::O)), "e", "C_2", 12, 0, 1, 0, one(Vec3(1, 1, 0).normalized())},
        {d(G(Family::O)), "f", "C_3", 8, 0, 1, 0, one(cube_vertex())},
        {d(G(Family::O)), "v", "C_4", 6, 0, 1, 0, one(Vec3::UnitX())},
        {d(G(Family::I)), "R", "1", 60, 2, 1, 0, one(generic_a())},
        {d(G(Family::I)), "e", "C_2", 30, 0, 1, 0, one(Vec3::UnitZ())},
        {d(G(Family::I)), "f", "C_3", 20, 0, 1, 0, one(cube_vertex())},
        {d(G(Family::I)), "v", "C_5", 12, 0, 1, 0, one(ico_vertex)},
    };
}

std::vector<FixedSpaceRow> signed_fixed_space_rows(int n) {
    auto pair = [](PointGroup a, PointGroup b) { return GroupDescriptor{a, b}; };
    const std::string cn = fmt::format("C_{}", n);
    const std::vector<Vec3> generic{generic_a(), generic_b(), generic_c(), unit_from_spherical(0.4, 4.1),
                                    unit_from_spherical(2.6, 5.3)};
    std::vector<SeedVortex> n_pairs;
    for (int k = 0; k < n; ++k) n_pairs.push_back({unit_from_spherical(0.5 + 0.37 * k, 0.2 + 1.9 * k), 1.0});
    const PointGroup C = G(Family::C, n), one = G(Family::C, 1);
    const PointGroup D = G(Family::D, n), T = G(Family::T), O = G(Family::O), I = G(Family::I);
    return {
        {pair(C, C), "2R", "1", 2 * n, 4, 1, 1, {{generic_a(), 1.0}, {generic_b(), -1.0}}},
        {pair(C, C), "2p", cn, 2, 0, 2, 1, {{north(), 1.0}, {south(), -1.0}}},
        {pair(G(Family::Cs), one), fmt::format("{}R", n), "1", 2 * n, 2 * n, 1, 1, n_pairs},
        {pair(G(Family::Ch, n), C), "2R", "1", 2 * n, 2, 1, 1, {{generic_a(), 1.0}}},
        {pair(G(Family::Ch, n), C), "2p", cn, 2, 0, 2, 1, {{north(), 1.0}}},
        {pair(G(Family::Ci), one), fmt::format("{}R", n), "1", 2 * n, 2 * n, 1, 3, n_pairs},
        {pair(G(Family::Cv, n), C), "R^_s", "1", 2 * n, 2, 1, 0, {{generic_a(), 1.0}}},
        {pair(G(Family::Dd, n), D), "2R^_s", "1", 4 * n, 2, 1, 0, {{generic_a(), 1.0}}},
        {pair(G(Family::Dh, n), D), "2R_s", "1", 4 * n, 2, 1, 0, {{generic_a(), 1.0}}},
        {pair(T, T), "v+v'", "C_3", 8, 0, 2, 0, {{cube_vertex(), 1.0}, {-cube_vertex(), -1.0}}},
        {pair(G(Family::Th), T), "v^", "C_3", 8, 0, 2, 0, {{cube_vertex(), 1.0}}},
        {pair(G(Family::Th), T), "R^", "1", 24, 2, 1, 0, {{generic_a(), 1.0}}},
        {pair(G(Family::Td), T), "R^", "1", 24, 2, 1, 0, {{generic_a(), 1.0}}},
        {pair(G(Family::Oh), O), "R^", "1", 48, 2, 1, 0, {{generic_a(), 1.0}}},
        {pair(G(Family::Ih), I), "R^", "1", 120, 2, 1, 0, {{generic_a(), 1.0}}},
        {pair(T, T), "2R", "1", 24, 4, 1, 0, {{generic_a(), 1.0}, {generic_b(), -1.0}}},
        {pair(O, O), "2R", "1", 48, 4, 1, 0, {{generic_a(), 1.0}, {generic_b(), -1.0}}},
        {pair(I, I), "2R", "1", 120, 4, 1, 0, {{generic_a(), 1.0}, {generic_b(), -1.0}}},
    };
}

std::vector<OrbitRow> orbit_rows_for(const PointGroup& g) {
    std::vector<OrbitRow> out;
    const Mat3 turn = rotation_z(g.azimuth);
    for (auto rows : {rotation_orbit_rows(g.n), orthogonal_orbit_rows(g.n)}) {
        for (auto& r : rows) {
            if (r.group.family != g.family) continue;
            r.group = g;
            for (auto& s : r.seeds) s = turn * s;
            out.push_back(std::move(r));
        }
    }
    return out;
}

std::vector<Mat3> stabilizer(const std::vector<Mat3>& group, const Vec3& p, double tol) {
    std::vector<Mat3> s;
    for (const auto& m : group)
        if ((m * p - p).norm() < tol) s.push_back(m);
    return s;
}

std::vector<Vec3> point_orbit(const std::vector<Mat3>& group, const Vec3& p, double tol) {
    std::vector<Vec3> orbit;
    for (const auto& m : group) {
        const Vec3 q = m * p;
        if (std::none_of(orbit.begin(), orbit.end(), [&](const Vec3& o) { return (o - q).norm() < tol; }))
            orbit.push_back(q);
    }
    return orbit;
}

std::string isotropy_name(const std::vector<Mat3>& s) {
    const int order = static_cast<int>(s.size());
    if (order == 1) return "1";
    int proper = 0, mirrors = 0;
    for (const auto& m : s) {
        if (m.determinant() > 0) {
            ++proper;
        } else if (std::abs(m.trace() - 1.0) < 1e-9) {
            ++mirrors;
        }
    }
    if (proper == order) return fmt::format("C_{}", order);
    if (order == 2 && mirrors == 1) return "C_h";
    if (mirrors == proper) return fmt::format("C_{}v", proper);
    return fmt::format("order-{}", order);
}

OrbitLabel classify_point_orbit(const PointGroup& g, const std::vector<Vec3>& points) {
    if (points.empty()) throw InvalidInput("empty point orbit");
    const auto elems = spatial_elements(g);
    const auto orbit = point_orbit(elems, points.front());
    const auto contains = [](const std::vector<Vec3>& set, const Vec3& p) {
        return std::any_of(set.begin(), set.end(), [&](const Vec3& q) { return (q - p).norm() < 1e-7; });
    };
    bool same = orbit.size() == points.size();
    for (const auto& p : points) same = same && contains(orbit, p);
    if (!same) throw InvalidInput(fmt::format("points do not form a single {} orbit", group_name(g)));

    const auto stab = stabilizer(elems, points.front());
    std::vector<const OrbitRow*> matches;
    const auto rows = orbit_rows_for(g);
    for (const auto& row : rows) {
        bool hit = false;
        for (const auto& seed : row.seeds) {
            const auto seed_stab = stabilizer(elems, seed);
            if (seed_stab.size() != stab.size()) continue;
            for (const auto& h : elems) {
                if (same_set(conjugate(h, stab), seed_stab)) {
                    hit = true;
                    break;
                }
            }
            if (hit) break;
        }
        if (hit) matches.push_back(&row);
    }
    if (matches.size() > 1) {
        std::vector<const OrbitRow*> narrowed;
        for (const auto* row : matches) {
            bool hit = false;
            for (const auto& seed : row->seeds) {
                const auto seed_stab = stabilizer(elems, seed);
                for (const auto& y : orbit) hit = hit || same_stratum(y, seed, seed_stab);
            }
            if (hit) narrowed.push_back(row);
        }
        matches = narrowed;
    }
    if (matches.size() != 1)
        throw InvalidInput(fmt::format("orbit of {} points matches {} rows of {}", orbit.size(), matches.size(),
                                       group_name(g)));
    const auto* row = matches.front();
    if (static_cast<int>(orbit.size() * stab.size()) != standard_order(g))
        throw Error("orbit-stabilizer count mismatch");
    return {row->label, row->isotropy, static_cast<int>(orbit.size())};
}

OrbitLabel classify_point_orbit(const GroupDescriptor& d, const std::vector<Vec3>& points) {
    return classify_point_orbit(d.group, points);
}

RowRealization realize(const FixedSpaceRow& row) {
    std::vector<double> vort;
    Wiring wiring;
    for (const auto& s : row.seeds) {
        const auto orbit = signed_orbit(row.descriptor, s.position, s.vorticity);
        OrbitSlot slot{s.position, {}};
        for (const auto& [p, l] : orbit) {
            slot.indices.push_back(static_cast<int>(vort.size()));
            vort.push_back(l);
        }
        wiring.push_back(std::move(slot));
    }
    return {VortexSystem(Surface::sphere, std::move(vort)), std::move(wiring)};
}

FixedSpaceCheck compute_fixed_space_row(const FixedSpaceRow& row) {
    auto r = realize(row);
    const auto fs = fixed_space(row.descriptor, r.system, r.wiring);
    const auto elems = spatial_elements(row.descriptor.group);
    return {static_cast<int>(r.system.count()), fs.dimension, normalizer_dimension(row.descriptor.group),
            isotropy_name(stabilizer(elems, row.seeds.front().position))};
}

OrbitCheck compute_orbit_row(const OrbitRow& row) {
    const auto elems = spatial_elements(row.group);
    const Vec3& seed = row.seeds.front();
    const auto orbit = point_orbit(elems, seed);
    return {static_cast<int>(orbit.size()), isotropy_name(stabilizer(elems, seed)),
            classify_point_orbit(row.group, orbit).label};
}

std::vector<std::string> catalog_mismatches(int n) {
    std::vector<std::string> out;
    for (const auto& row : normalizer_rows(n)) {
        const auto c = component_name(normalizer_identity_component(row.group));
        if (c != row.identity_component)
            out.push_back(fmt::format("normalizer {}: computed {} expected {}", group_name(row.group), c,
                                      row.identity_component));
    }
    for (auto rows : {rotation_orbit_rows(n), orthogonal_orbit_rows(n)}) {
        for (const auto& row : rows) {
            const auto c = compute_orbit_row(row);
            if (c.size != row.size || c.isotropy != strip_primes(row.isotropy) || c.classified != row.label)
                out.push_back(fmt::format("orbit {} {}: computed size {} isotropy {} label {}",
                                          group_name(row.group), row.label, c.size, c.isotropy, c.classified));
        }
    }
    for (auto rows : {identical_fixed_space_rows(n), signed_fixed_space_rows(n)}) {
        for (const auto& row : rows) {
            const auto c = compute_fixed_space_row(row);
            if (c.size != row.size || c.dimension != row.dimension ||
                c.normalizer_dimension != row.normalizer_dimension || c.isotropy != row.isotropy)
                out.push_back(fmt::format("fixed space {} {}: computed size {} dim {} normalizer {} isotropy {}",
                                          descriptor_name(row.descriptor), row.label, c.size, c.dimension,
                                          c.normalizer_dimension, c.isotropy));
        }
    }
    return out;
}

std::string catalog_text(int n, const std::string& filter) {
    if (n < 2) throw InvalidInput("catalog order parameter must be at least 2");
    const auto keep = [&](const PointGroup& g) { return filter.empty() || group_name(g) == filter; };
    std::ostringstream os;
    bool any = false;

    os << fmt::format("[normalizers n={}]\n", n);
    os << fmt::format("{:<8}{:<14}{}\n", "K", "N(K)", "N(K)^o");
    for (const auto& row : normalizer_rows(n)) {
        if (!keep(row.group)) continue;
        any = true;
        os << fmt::format("{:<8}{:<14}{}\n", group_name(row.group), row.normalizer,
                          component_name(normalizer_identity_component(row.group)));
    }

    const auto orbit_block = [&](const char* title, const std::vector<OrbitRow>& rows) {
        os << fmt::format("\n[{} n={}]\n", title, n);
        os << fmt::format("{:<7}{:<7}{:<7}{:<6}{}\n", "group", "orbit", "I", "|O|", "description");
        for (const auto& row : rows) {
            if (!keep(row.group)) continue;
            any = true;
            const auto c = compute_orbit_row(row);
            const std::string iso = c.isotropy == strip_primes(row.isotropy) ? row.isotropy : c.isotropy + "!";
            const std::string label = c.classified == row.label ? row.label : c.classified + "!";
            os << fmt::format("{:<7}{:<7}{:<7}{:<6}{}\n", group_name(row.group), label, iso, c.size,
                              row.description);
        }
    };
    orbit_block("point orbits SO(3)", rotation_orbit_rows(n));
    orbit_block("point orbits O(3)", orthogonal_orbit_rows(n));

    const auto fixed_block = [&](const char* title, const std::vector<FixedSpaceRow>& rows, bool signed_rows) {
        os << fmt::format("\n[{} n={}]\n", title, n);
        if (signed_rows)
            os << fmt::format("{:<16}{:<7}{:<8}{:<7}{:<6}{:<8}{}\n", "K", "K_w", "orbit", "I", "|O|", "dimFix",
                              "dimN");
        else
            os << fmt::format("{:<16}{:<8}{:<7}{:<6}{:<8}{}\n", "K", "orbit", "I", "|O|", "dimFix", "dimN");
        for (const auto& row : rows) {
            if (!keep(row.descriptor.group)) continue;
            any = true;
            const auto c = compute_fixed_space_row(row);
            std::string dim = std::to_string(c.dimension);
            if (row.components != 1) dim += fmt::format("({})", row.components);
            const std::string iso = c.isotropy == row.isotropy ? row.isotropy : c.isotropy + "!";
            if (signed_rows)
                os << fmt::format("{:<16}{:<7}{:<8}{:<7}{:<6}{:<8}{}\n", descriptor_name(row.descriptor),
                                  group_name(row.descriptor.group), row.label, iso, c.size, dim,
                                  c.normalizer_dimension);
            else
                os << fmt::format("{:<16}{:<8}{:<7}{:<6}{:<8}{}\n", descriptor_name(row.descriptor), row.label,
                                  iso, c.size, dim, c.normalizer_dimension);
        }
    };
    fixed_block("fixed spaces identical", identical_fixed_space_rows(n), false);
    fixed_block("fixed spaces signed", signed_fixed_space_rows(n), true);

    if (!any) throw InvalidInput("no catalog entry for '" + filter + "'");
    return os.str();
}

}  // namespace vrpo
