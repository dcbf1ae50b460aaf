#pragma once

#include "vrpo/dynamics.hpp"
#include "vrpo/point_group.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace vrpo {

// (A, sigma) acting by (g.x)_i = A x_{sigma(i)}. `sign` is +1 when sigma
// preserves vorticities and -1 when it maps every vortex onto one of opposite
// vorticity.
struct GroupElement {
    Mat3 spatial = Mat3::Identity();
    std::vector<int> permutation;
    int sign = 1;

    static GroupElement identity(std::size_t n);
};

// g*h acts as g after h: act(compose(g, h), x) == act(g, act(h, x)).
GroupElement compose(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);
bool elements_equal(const GroupElement& a, const GroupElement& b, double tol = 1e-9);

Configuration act(const GroupElement& g, const Configuration& x);
// Same rule applied to tangent vectors attached to the vortices.
std::vector<Vec3> act_vectors(const GroupElement& g, const std::vector<Vec3>& v);

// eps * det A.
int chi(const GroupElement& g);

// Throws InvalidInput if the element is not orthogonal, the permutation is not
// a bijection, or it breaks l_{sigma(i)} = eps l_i.
void validate_element(const GroupElement& g, const VortexSystem& system);

// A subgroup K given by its spatial projection and, for signed systems, the
// subgroup of sign-preserving elements. Without `sign_preserving` every
// element keeps vorticities.
struct GroupDescriptor {
    PointGroup group;
    std::optional<PointGroup> sign_preserving;
};

std::string descriptor_name(const GroupDescriptor& d);

struct SignedMatrix {
    Mat3 matrix;
    int sign;
};

// Spatial elements paired with the sign they carry; the sign-preserving part
// must have index 1 or 2.
std::vector<SignedMatrix> signed_elements(const GroupDescriptor& d);

// One orbit slot: the seed vortex position and the indices receiving its orbit
// in enumeration order. The seed vorticity is that of indices.front().
struct OrbitSlot {
    Vec3 seed;
    std::vector<int> indices;
};
using Wiring = std::vector<OrbitSlot>;

// Orbit of `seed` with vorticity `vorticity`: images deduplicated in the order of
// signed_elements. Throws if an image coincides with one of opposite vorticity.
std::vector<std::pair<Vec3, double>> signed_orbit(const GroupDescriptor& d, const Vec3& seed, double vorticity);

// Configuration produced by placing every slot's orbit on its indices.
Configuration wired_configuration(const GroupDescriptor& d, const VortexSystem& system, const Wiring& wiring);

// Every element of K acting on the system, permutations read off the wiring.
std::vector<GroupElement> enumerate_elements(const GroupDescriptor& d, const VortexSystem& system,
                                             const Wiring& wiring);

// Elements of K with permutations read off a configuration already fixed by K.
std::vector<GroupElement> elements_fixing(const GroupDescriptor& d, const VortexSystem& system,
                                          const Configuration& x, double tol = 1e-7);

// max over k and i of |(k.x)_i - x_i|.
double fixed_deviation(const std::vector<GroupElement>& k, const Configuration& x);

struct FixedSpace {
    int dimension = 0;
    Configuration representative;
    // 2N x dimension; columns span T(Fix K) in per-vortex tangent frames.
    Eigen::MatrixXd tangent_basis;
};

// Tangent frame (e1, e2) at each vortex: horizontal east/north-ish on the
// sphere away from the poles, (x, y) in the plane.
std::pair<Vec3, Vec3> tangent_frame(Surface s, const Vec3& x);

// Dimension of the common fixed subspace of the linearized actions at the
// wired configuration. Throws if some element has chi = -1.
FixedSpace fixed_space(const GroupDescriptor& d, const VortexSystem& system, const Wiring& wiring);

// Dimension of the identity component of the normalizer of K in O(3): the
// dimension of {w : det(A) A w = w for all A in the spatial group}.
int normalizer_dimension(const PointGroup& g);

enum class IdentityComponent { trivial, so2, so3 };
IdentityComponent normalizer_identity_component(const PointGroup& g);
std::string component_name(IdentityComponent c);

}  // namespace vrpo
