#include "vrpo/point_group.hpp"

#include "vrpo/errors.hpp"

#include <Eigen/Geometry>
#include <fmt/format.h>

#include <cmath>
#include <numbers>
#include <regex>

namespace vrpo {

namespace {

constexpr double pi = std::numbers::pi;

Mat3 cyclic_permutation() {
    Mat3 m;
    m << 0, 1, 0, 0, 0, 1, 1, 0, 0;
    return m;
}

Mat3 sigma_h() { return Eigen::Vector3d(1, 1, -1).asDiagonal(); }

std::vector<Mat3> generators(const PointGroup& g) {
    const int n = g.n;
    const Vec3 secondary(std::cos(g.azimuth), std::sin(g.azimuth), 0.0);
    const Vec3 mirror_normal(-std::sin(g.azimuth), std::cos(g.azimuth), 0.0);
    const Mat3 c2 = rotation_axis(secondary, pi);
    const Mat3 cn = rotation_z(2.0 * pi / n);
    const Mat3 s2n = rotation_z(pi / n) * sigma_h();
    const Mat3 c2z = Eigen::Vector3d(-1, -1, 1).asDiagonal();
    const Mat3 inv = -Mat3::Identity();
    const double gold = (1.0 + std::sqrt(5.0)) / 2.0;

    switch (g.family) {
        case Family::C: return {cn};
        case Family::Cv: return {cn, reflection(mirror_normal)};
        case Family::Ch: return {cn, sigma_h()};
        case Family::Cs: return {sigma_h()};
        case Family::Ci: return {inv};
        case Family::S: return {s2n};
        case Family::D: return {cn, c2};
        case Family::Dh: return {cn, c2, sigma_h()};
        case Family::Dd: return {cn, c2, s2n};
        case Family::T: return {c2z, cyclic_permutation()};
        case Family::Th: return {c2z, cyclic_permutation(), inv};
        case Family::Td: {
            Mat3 swap_xy;
            swap_xy << 0, 1, 0, 1, 0, 0, 0, 0, 1;
            return {c2z, cyclic_permutation(), swap_xy};
        }
        case Family::O: return {c2z, cyclic_permutation(), rotation_z(pi / 2)};
        case Family::Oh: return {c2z, cyclic_permutation(), rotation_z(pi / 2), inv};
        case Family::I: return {c2z, cyclic_permutation(), rotation_axis(Vec3(0, 1, gold), 2 * pi / 5)};
        case Family::Ih: return {c2z, cyclic_permutation(), rotation_axis(Vec3(0, 1, gold), 2 * pi / 5), inv};
    }
    return {};
}

bool indexed(Family f) {
    switch (f) {
        case Family::C:
        case Family::Cv:
        case Family::Ch:
        case Family::S:
        case Family::D:
        case Family::Dh:
        case Family::Dd: return true;
        default: return false;
    }
}

}  // namespace

Mat3 rotation_z(double angle) {
    Mat3 m;
    const double c = std::cos(angle), s = std::sin(angle);
    m << c, -s, 0, s, c, 0, 0, 0, 1;
    return m;
}

Mat3 rotation_axis(const Vec3& axis, double angle) {
    return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

Mat3 reflection(const Vec3& normal) {
    const Vec3 u = normal.normalized();
    return Mat3::Identity() - 2.0 * u * u.transpose();
}

bool matrices_equal(const Mat3& a, const Mat3& b, double tol) { return (a - b).cwiseAbs().maxCoeff() < tol; }

int find_matrix(const std::vector<Mat3>& list, const Mat3& m, double tol) {
    for (std::size_t i = 0; i < list.size(); ++i)
        if (matrices_equal(list[i], m, tol)) return static_cast<int>(i);
    return -1;
}

bool same_group(const PointGroup& a, const PointGroup& b) {
    if (a.family != b.family) return false;
    if (indexed(a.family) && a.n != b.n) return false;
    return std::abs(a.azimuth - b.azimuth) < 1e-12;
}

std::string group_name(const PointGroup& g) {
    const int n = g.n;
    switch (g.family) {
        case Family::C: return fmt::format("C_{}", n);
        case Family::Cv: return fmt::format("C_{}v", n);
        case Family::Ch: return fmt::format("C_{}h", n);
        case Family::Cs: return "C_h";
        case Family::Ci: return "C_i";
        case Family::S: return fmt::format("S_{}", 2 * n);
        case Family::D: return fmt::format("D_{}", n);
        case Family::Dh: return fmt::format("D_{}h", n);
        case Family::Dd: return fmt::format("D_{}d", n);
        case Family::T: return "T";
        case Family::Th: return "T_h";
        case Family::Td: return "T_d";
        case Family::O: return "O";
        case Family::Oh: return "O_h";
        case Family::I: return "I";
        case Family::Ih: return "I_h";
    }
    return "?";
}

PointGroup parse_group(const std::string& name, int n) {
    static const std::regex re(R"(^([CSD])_(\d+|n|2n)([vhd]?)$)");
    if (name == "C_h" || name == "C_s") return {Family::Cs, 1, 0.0};
    if (name == "C_i") return {Family::Ci, 1, 0.0};
    if (name == "T") return {Family::T, 1, 0.0};
    if (name == "T_h") return {Family::Th, 1, 0.0};
    if (name == "T_d") return {Family::Td, 1, 0.0};
    if (name == "O") return {Family::O, 1, 0.0};
    if (name == "O_h") return {Family::Oh, 1, 0.0};
    if (name == "I") return {Family::I, 1, 0.0};
    if (name == "I_h") return {Family::Ih, 1, 0.0};
    std::smatch m;
    if (!std::regex_match(name, m, re)) throw InvalidInput("unknown group name '" + name + "'");
    const std::string letter = m[1], index = m[2], suffix = m[3];
    int k = 0;
    if (index == "n" || index == "2n") {
        if (n < 1) throw InvalidInput("group '" + name + "' needs an order parameter n");
        k = index == "n" ? n : 2 * n;
    } else {
        k = std::stoi(index);
    }
    if (k < 1) throw InvalidInput("group order must be positive in '" + name + "'");
    if (letter == "S") {
        if (!suffix.empty() || k % 2 != 0) throw InvalidInput("S groups take an even index: '" + name + "'");
        return {Family::S, k / 2, 0.0};
    }
    if (letter == "C") {
        if (suffix.empty()) return {Family::C, k, 0.0};
        if (suffix == "v") return {Family::Cv, k, 0.0};
        if (suffix == "h") return {Family::Ch, k, 0.0};
    }
    if (letter == "D") {
        if (suffix.empty()) return {Family::D, k, 0.0};
        if (suffix == "h") return {Family::Dh, k, 0.0};
        if (suffix == "d") return {Family::Dd, k, 0.0};
    }
    throw InvalidInput("unknown group name '" + name + "'");
}

int standard_order(const PointGroup& g) {
    switch (g.family) {
        case Family::C: return g.n;
        case Family::Cv:
        case Family::Ch:
        case Family::S:
        case Family::D: return 2 * g.n;
        case Family::Cs:
        case Family::Ci: return 2;
        case Family::Dh:
        case Family::Dd: return 4 * g.n;
        case Family::T: return 12;
        case Family::Th:
        case Family::Td:
        case Family::O: return 24;
        case Family::Oh: return 48;
        case Family::I: return 60;
        case Family::Ih: return 120;
    }
    return 0;
}

std::vector<Mat3> spatial_elements(const PointGroup& g) {
    if (g.n < 1) throw InvalidInput("group order parameter must be positive");
    const auto gens = generators(g);
    std::vector<Mat3> elems{Mat3::Identity()};
    // Breadth-first closure: right-multiply every known element by each generator.
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const auto& s : gens) {
            const Mat3 m = elems[i] * s;
            if (find_matrix(elems, m) < 0) elems.push_back(m);
        }
        if (elems.size() > 240) throw Error("group closure did not terminate for " + group_name(g));
    }
    if (static_cast<int>(elems.size()) != standard_order(g))
        throw Error(fmt::format("{} closed to {} elements, expected {}", group_name(g), elems.size(),
                                standard_order(g)));
    return elems;
}

PointGroup rotation_subgroup(const PointGroup& g) {
    switch (g.family) {
        case Family::C:
        case Family::Cv:
        case Family::Ch: return {Family::C, g.n, 0.0};
        case Family::S: return {Family::C, g.n, 0.0};
        case Family::Cs:
        case Family::Ci: return {Family::C, 1, 0.0};
        case Family::D:
        case Family::Dh:
        case Family::Dd: return {Family::D, g.n, g.azimuth};
        case Family::T:
        case Family::Th:
        case Family::Td: return {Family::T, 1, 0.0};
        case Family::O:
        case Family::Oh: return {Family::O, 1, 0.0};
        case Family::I:
        case Family::Ih: return {Family::I, 1, 0.0};
    }
    return g;
}

}  // namespace vrpo
