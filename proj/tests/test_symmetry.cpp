#include "vrpo/catalog.hpp"
#include "vrpo/errors.hpp"
#include "vrpo/point_group.hpp"
#include "vrpo/symmetry.hpp"

#include <doctest.h>

#include <numbers>

using namespace vrpo;

namespace {

constexpr double kPi = std::numbers::pi;

bool closed_under_products(const std::vector<Mat3>& g) {
    for (const auto& a : g)
        for (const auto& b : g)
            if (find_matrix(g, a * b) < 0) return false;
    return true;
}

}  // namespace

TEST_CASE("point groups have their textbook orders and are closed") {
    const std::pair<const char*, int> cases[] = {
        {"C_4", 4},   {"C_3v", 6},  {"C_3h", 6}, {"S_6", 6},   {"D_3", 6},   {"D_4h", 16}, {"D_3d", 12},
        {"C_i", 2},   {"C_h", 2},   {"T", 12},   {"T_h", 24},  {"T_d", 24},  {"O", 24},    {"O_h", 48},
        {"I", 60},    {"I_h", 120},
    };
    for (const auto& [name, order] : cases) {
        CAPTURE(name);
        const auto g = parse_group(name);
        const auto m = spatial_elements(g);
        CHECK(static_cast<int>(m.size()) == order);
        CHECK(standard_order(g) == order);
        CHECK(group_name(g) == name);
        CHECK(matrices_equal(m.front(), Mat3::Identity()));
        for (const auto& a : m) CHECK((a * a.transpose() - Mat3::Identity()).norm() < 1e-12);
        CHECK(closed_under_products(m));
    }
    CHECK(group_name(parse_group("D_n", 5)) == "D_5");
    CHECK(group_name(parse_group("S_2n", 3)) == "S_6");
    CHECK_THROWS_AS(parse_group("Q_3"), InvalidInput);
    CHECK_THROWS_AS(parse_group("D_n"), InvalidInput);
}

TEST_CASE("composition, inverse and chi of signed elements") {
    const VortexSystem s(Surface::sphere, {1, -1});
    GroupElement flip;
    flip.spatial = reflection(Vec3::UnitZ());
    flip.permutation = {1, 0};
    flip.sign = -1;
    validate_element(flip, s);
    CHECK(chi(flip) == 1);
    const auto x = Configuration::sphere({unit_from_spherical(0.4, 1.0), unit_from_spherical(kPi - 0.4, 1.0)});
    CHECK(fixed_deviation({flip}, x) < 1e-15);
    const auto id = compose(flip, flip);
    CHECK(elements_equal(id, GroupElement::identity(2)));
    CHECK(elements_equal(inverse(flip), flip));

    GroupElement bad = flip;
    bad.sign = 1;
    CHECK_THROWS_AS(validate_element(bad, s), InvalidInput);

    GroupElement rot;
    rot.spatial = rotation_z(0.3);
    rot.permutation = {0, 1};
    const auto y = act(compose(rot, flip), x);
    const auto z = act(rot, act(flip, x));
    for (std::size_t i = 0; i < 2; ++i) CHECK((y[i] - z[i]).norm() < 1e-15);
}

TEST_CASE("normalizer identity components") {
    CHECK(normalizer_identity_component(parse_group("C_i")) == IdentityComponent::so3);
    CHECK(normalizer_identity_component(parse_group("C_3")) == IdentityComponent::so2);
    CHECK(normalizer_identity_component(parse_group("C_3h")) == IdentityComponent::so2);
    CHECK(normalizer_identity_component(parse_group("C_3v")) == IdentityComponent::trivial);
    CHECK(normalizer_identity_component(parse_group("D_3")) == IdentityComponent::trivial);
    CHECK(normalizer_identity_component(parse_group("T")) == IdentityComponent::trivial);
}

TEST_CASE("D_3 point orbits R(6), r(3), p(2)") {
    std::vector<std::pair<std::string, int>> seen;
    for (const auto& row : rotation_orbit_rows(3))
        if (same_group(row.group, parse_group("D_3"))) seen.emplace_back(row.label, compute_orbit_row(row).size);
    REQUIRE(seen.size() == 3);
    CHECK(seen[0] == std::pair<std::string, int>{"R", 6});
    CHECK(seen[1] == std::pair<std::string, int>{"r", 3});
    CHECK(seen[2] == std::pair<std::string, int>{"p", 2});

    const auto d3 = spatial_elements(parse_group("D_3"));
    CHECK(point_orbit(d3, unit_from_spherical(0.7, 0.2)).size() == 6);
    CHECK(point_orbit(d3, Vec3::UnitX()).size() == 3);
    CHECK(point_orbit(d3, Vec3::UnitZ()).size() == 2);
    CHECK(isotropy_name(stabilizer(d3, Vec3::UnitZ())) == "C_3");
}

TEST_CASE("catalog rows agree with their computed values") {
    for (int n : {2, 3, 4}) {
        CAPTURE(n);
        const auto bad = catalog_mismatches(n);
        for (const auto& line : bad) MESSAGE(line);
        CHECK(bad.empty());
    }
}

TEST_CASE("fixed-space dimension of a regular T orbit") {
    int found = 0;
    for (const auto& row : identical_fixed_space_rows(3)) {
        if (descriptor_name(row.descriptor) != "T" || row.label != "R") continue;
        const auto c = compute_fixed_space_row(row);
        CHECK(c.size == 12);
        CHECK(c.dimension == row.dimension);
        ++found;
    }
    CHECK(found == 1);
}
