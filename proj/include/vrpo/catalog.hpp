#pragma once

#include "vrpo/point_group.hpp"
#include "vrpo/symmetry.hpp"

#include <string>
#include <vector>

namespace vrpo {

struct NormalizerRow {
    PointGroup group;
    std::string normalizer;
    std::string identity_component;
};

struct OrbitRow {
    PointGroup group;
    std::string label;
    std::string isotropy;  // primes mark a second conjugacy class of the same type
    int size;
    std::string description;
    // Representatives; "or dual" rows carry both.
    std::vector<Vec3> seeds;
};

struct SeedVortex {
    Vec3 position;
    double vorticity;
};

struct FixedSpaceRow {
    GroupDescriptor descriptor;
    std::string label;
    std::string isotropy;
    int size;
    int dimension;
    int components;  // connected components of the fixed space
    int normalizer_dimension;
    std::vector<SeedVortex> seeds;
};

std::vector<NormalizerRow> normalizer_rows(int n);
std::vector<OrbitRow> rotation_orbit_rows(int n);
std::vector<OrbitRow> orthogonal_orbit_rows(int n);
std::vector<FixedSpaceRow> identical_fixed_space_rows(int n);
std::vector<FixedSpaceRow> signed_fixed_space_rows(int n);

// Rows of either orbit table for a group (order parameter and azimuth taken
// from the group).
std::vector<OrbitRow> orbit_rows_for(const PointGroup& g);

struct OrbitLabel {
    std::string label;
    std::string isotropy;
    int size;
};

// Canonical name of a stabilizer: "1", "C_k", "C_h", "C_kv".
std::string isotropy_name(const std::vector<Mat3>& stabilizer);
std::vector<Mat3> stabilizer(const std::vector<Mat3>& group, const Vec3& p, double tol = 1e-9);
std::vector<Vec3> point_orbit(const std::vector<Mat3>& group, const Vec3& p, double tol = 1e-9);

OrbitLabel classify_point_orbit(const PointGroup& g, const std::vector<Vec3>& points);
OrbitLabel classify_point_orbit(const GroupDescriptor& d, const std::vector<Vec3>& points);

// System, wiring and descriptor realizing a fixed-space row.
struct RowRealization {
    VortexSystem system;
    Wiring wiring;
};
RowRealization realize(const FixedSpaceRow& row);

// Computed counterparts of the hard-coded columns.
struct FixedSpaceCheck {
    int size;
    int dimension;
    int normalizer_dimension;
    std::string isotropy;
};
FixedSpaceCheck compute_fixed_space_row(const FixedSpaceRow& row);

struct OrbitCheck {
    int size;
    std::string isotropy;
    std::string classified;
};
OrbitCheck compute_orbit_row(const OrbitRow& row);

// Rows whose computed values disagree with the hard-coded ones, one line each.
std::vector<std::string> catalog_mismatches(int n);

// Text dump with computed values. `filter` is empty or a group name
// (descriptor pairs match on their first group).
std::string catalog_text(int n, const std::string& filter = "");

}  // namespace vrpo
