#pragma once

#include "vrpo/dynamics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vrpo {

enum class Family { C, Cv, Ch, Cs, Ci, S, D, Dh, Dd, T, Th, Td, O, Oh, I, Ih };

// A finite subgroup of O(3) in Schoenflies notation. The principal axis is z.
// `azimuth` rotates the vertical mirrors (Cv) or the secondary C2 axes (D family)
// away from the xz-plane / x-axis.
struct PointGroup {
    Family family = Family::C;
    int n = 1;
    double azimuth = 0.0;

    static PointGroup cyclic(int n) { return {Family::C, n, 0.0}; }
    static PointGroup dihedral(int n, double azimuth = 0.0) { return {Family::D, n, azimuth}; }
    static PointGroup polyhedral(Family f) { return {f, 1, 0.0}; }
};

bool same_group(const PointGroup& a, const PointGroup& b);

// "C_3", "C_3v", "C_h", "C_i", "S_6", "D_3d", "T_h", ...
std::string group_name(const PointGroup& g);
// Inverse of group_name; `n` substitutes a literal "n" index ("D_n" with n = 3).
PointGroup parse_group(const std::string& name, int n = 0);

int standard_order(const PointGroup& g);

// Deterministic list of matrices; identity first.
std::vector<Mat3> spatial_elements(const PointGroup& g);

// The group of proper rotations contained in g.
PointGroup rotation_subgroup(const PointGroup& g);

Mat3 rotation_z(double angle);
Mat3 rotation_axis(const Vec3& axis, double angle);
Mat3 reflection(const Vec3& normal);

bool matrices_equal(const Mat3& a, const Mat3& b, double tol = 1e-9);
// Index of m in the list, or -1.
int find_matrix(const std::vector<Mat3>& list, const Mat3& m, double tol = 1e-9);

}  // namespace vrpo
