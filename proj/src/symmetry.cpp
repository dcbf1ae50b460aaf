#include "vrpo/symmetry.hpp"

#include "vrpo/errors.hpp"

#include <Eigen/SVD>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace vrpo {

namespace {

constexpr double kPointTol = 1e-9;

int find_point(const std::vector<std::pair<Vec3, double>>& pts, const Vec3& p) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        if ((pts[i].first - p).norm() < kPointTol) return static_cast<int>(i);
    return -1;
}

}  // namespace

GroupElement GroupElement::identity(std::size_t n) {
    GroupElement g;
    g.permutation.resize(n);
    for (std::size_t i = 0; i < n; ++i) g.permutation[i] = static_cast<int>(i);
    return g;
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
    if (g.permutation.size() != h.permutation.size()) throw InvalidInput("composing elements of different size");
    GroupElement r;
    r.spatial = g.spatial * h.spatial;
    r.sign = g.sign * h.sign;
    r.permutation.resize(g.permutation.size());
    for (std::size_t i = 0; i < g.permutation.size(); ++i) r.permutation[i] = h.permutation[g.permutation[i]];
    return r;
}

GroupElement inverse(const GroupElement& g) {
    GroupElement r;
    r.spatial = g.spatial.transpose();
    r.sign = g.sign;
    r.permutation.resize(g.permutation.size());
    for (std::size_t i = 0; i < g.permutation.size(); ++i) r.permutation[g.permutation[i]] = static_cast<int>(i);
    return r;
}

bool elements_equal(const GroupElement& a, const GroupElement& b, double tol) {
    return a.sign == b.sign && a.permutation == b.permutation && matrices_equal(a.spatial, b.spatial, tol);
}

Configuration act(const GroupElement& g, const Configuration& x) {
    if (g.permutation.size() != x.size()) throw InvalidInput("element and configuration sizes differ");
    std::vector<Vec3> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = g.spatial * x[g.permutation[i]];
    if (x.surface() == Surface::sphere) return Configuration::sphere(std::move(out));
    for (auto& p : out) p.z() = 0.0;
    return Configuration::plane(std::move(out));
}

std::vector<Vec3> act_vectors(const GroupElement& g, const std::vector<Vec3>& v) {
    std::vector<Vec3> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = g.spatial * v[g.permutation[i]];
    return out;
}

int chi(const GroupElement& g) { return g.spatial.determinant() > 0.0 ? g.sign : -g.sign; }

void validate_element(const GroupElement& g, const VortexSystem& system) {
    if ((g.spatial.transpose() * g.spatial - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-12)
        throw InvalidInput("spatial part is not orthogonal");
    if (g.sign != 1 && g.sign != -1) throw InvalidInput("sign must be +1 or -1");
    const std::size_t n = system.count();
    if (g.permutation.size() != n) throw InvalidInput("permutation size differs from vortex count");
    std::vector<char> seen(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const int s = g.permutation[i];
        if (s < 0 || static_cast<std::size_t>(s) >= n || seen[s]) throw InvalidInput("permutation is not a bijection");
        seen[s] = 1;
        if (system.vorticity(s) != g.sign * system.vorticity(i))
            throw InvalidInput(fmt::format("permutation maps vortex {} onto incompatible vorticity", i));
    }
}

std::string descriptor_name(const GroupDescriptor& d) {
    if (!d.sign_preserving) return group_name(d.group);
    const auto& k = *d.sign_preserving;
    const std::string inner = k.family == Family::C && k.n == 1 ? "1" : group_name(k);
    return fmt::format("({}, {})", group_name(d.group), inner);
}

std::vector<SignedMatrix> signed_elements(const GroupDescriptor& d) {
    const auto all = spatial_elements(d.group);
    std::vector<SignedMatrix> out;
    out.reserve(all.size());
    if (!d.sign_preserving) {
        for (const auto& m : all) out.push_back({m, 1});
        return out;
    }
    const auto keep = spatial_elements(*d.sign_preserving);
    std::size_t kept = 0;
    for (const auto& m : keep)
        if (find_matrix(all, m) < 0)
            throw InvalidInput(fmt::format("{} is not a subgroup of {}", group_name(*d.sign_preserving),
                                           group_name(d.group)));
    for (const auto& m : all) {
        const bool same = find_matrix(keep, m) >= 0;
        kept += same;
        out.push_back({m, same ? 1 : -1});
    }
    if (kept != all.size() && 2 * kept != all.size())
        throw InvalidInput("sign-preserving part must have index 1 or 2 in " + descriptor_name(d));
    return out;
}

std::vector<std::pair<Vec3, double>> signed_orbit(const GroupDescriptor& d, const Vec3& seed, double vorticity) {
    std::vector<std::pair<Vec3, double>> orbit;
    for (const auto& e : signed_elements(d)) {
        const Vec3 p = e.matrix * seed;
        const double l = e.sign * vorticity;
        const int k = find_point(orbit, p);
        if (k < 0) {
            orbit.emplace_back(p, l);
        } else if (orbit[k].second != l) {
            throw InvalidInput("seed lies where the group forces opposite vorticities to coincide");
        }
    }
    return orbit;
}

Configuration wired_configuration(const GroupDescriptor& d, const VortexSystem& system, const Wiring& wiring) {
    const std::size_t n = system.count();
    std::vector<Vec3> pts(n, Vec3::Zero());
    std::vector<char> used(n, 0);
    std::size_t total = 0;
    for (const auto& slot : wiring) {
        if (slot.indices.empty()) throw InvalidInput("orbit slot without indices");
        for (int idx : slot.indices)
            if (idx < 0 || static_cast<std::size_t>(idx) >= n)
                throw InvalidInput(fmt::format("wiring index {} out of range", idx));
        const auto orbit = signed_orbit(d, slot.seed, system.vorticity(slot.indices.front()));
        if (orbit.size() != slot.indices.size())
            throw InvalidInput(fmt::format("orbit has {} points but slot lists {} indices", orbit.size(),
                                           slot.indices.size()));
        for (std::size_t k = 0; k < orbit.size(); ++k) {
            const int idx = slot.indices[k];
            if (used[idx]) throw InvalidInput(fmt::format("vortex {} wired twice", idx));
            if (system.vorticity(idx) != orbit[k].second)
                throw InvalidInput(fmt::format("vortex {} has vorticity {} but its orbit slot needs {}", idx,
                                               system.vorticity(idx), orbit[k].second));
            used[idx] = 1;
            pts[idx] = orbit[k].first;
        }
        total += slot.indices.size();
    }
    if (total != n) throw InvalidInput(fmt::format("orbit sizes sum to {}, system has {} vortices", total, n));
    if (system.surface() == Surface::sphere) return Configuration::sphere(std::move(pts));
    return Configuration::plane(std::move(pts));
}

std::vector<GroupElement> elements_fixing(const GroupDescriptor& d, const VortexSystem& system,
                                          const Configuration& x, double tol) {
    check_compatible(system, x);
    const std::size_t n = x.size();
    std::vector<GroupElement> out;
    for (const auto& e : signed_elements(d)) {
        GroupElement g;
        g.spatial = e.matrix;
        g.sign = e.sign;
        g.permutation.assign(n, -1);
        std::vector<char> taken(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            int match = -1;
            double best = tol;
            for (std::size_t j = 0; j < n; ++j) {
                if (taken[j] || system.vorticity(j) != e.sign * system.vorticity(i)) continue;
                const double r = (e.matrix * x[j] - x[i]).norm();
                if (r < best) {
                    best = r;
                    match = static_cast<int>(j);
                }
            }
            if (match < 0)
                throw NotInFixedSpace(fmt::format("configuration is not fixed by {} (vortex {} unmatched)",
                                                  descriptor_name(d), i),
                                      tol);
            taken[match] = 1;
            g.permutation[i] = match;
        }
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<GroupElement> enumerate_elements(const GroupDescriptor& d, const VortexSystem& system,
                                             const Wiring& wiring) {
    return elements_fixing(d, system, wired_configuration(d, system, wiring));
}

double fixed_deviation(const std::vector<GroupElement>& k, const Configuration& x) {
    double worst = 0.0;
    for (const auto& g : k)
        for (std::size_t i = 0; i < x.size(); ++i)
            worst = std::max(worst, (g.spatial * x[g.permutation[i]] - x[i]).norm());
    return worst;
}

std::pair<Vec3, Vec3> tangent_frame(Surface s, const Vec3& x) {
    if (s == Surface::plane) return {Vec3::UnitX(), Vec3::UnitY()};
    Vec3 ref = std::abs(x.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX();
    Vec3 e1 = ref.cross(x).normalized();
    Vec3 e2 = x.cross(e1);
    return {e1, e2};
}

FixedSpace fixed_space(const GroupDescriptor& d, const VortexSystem& system, const Wiring& wiring) {
    FixedSpace fs;
    fs.representative = wired_configuration(d, system, wiring);
    const auto elems = elements_fixing(d, system, fs.representative);
    for (const auto& g : elems)
        if (chi(g) != 1)
            throw InvalidInput(descriptor_name(d) + " contains elements outside the kernel of chi");

    const std::size_t n = system.count();
    std::vector<std::pair<Vec3, Vec3>> frames(n);
    for (std::size_t i = 0; i < n; ++i) frames[i] = tangent_frame(system.surface(), fs.representative[i]);

    // Linearized action: (M v)_i = A v_{sigma(i)} expressed in the frames.
    Eigen::MatrixXd stacked(2 * n * elems.size(), 2 * n);
    stacked.setZero();
    for (std::size_t k = 0; k < elems.size(); ++k) {
        const auto& g = elems[k];
        const std::size_t r0 = 2 * n * k;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = g.permutation[i];
            const auto& [a1, a2] = frames[j];
            const auto& [b1, b2] = frames[i];
            const Vec3 ia1 = g.spatial * a1, ia2 = g.spatial * a2;
            stacked(r0 + 2 * i, 2 * j) += b1.dot(ia1);
            stacked(r0 + 2 * i, 2 * j + 1) += b1.dot(ia2);
            stacked(r0 + 2 * i + 1, 2 * j) += b2.dot(ia1);
            stacked(r0 + 2 * i + 1, 2 * j + 1) += b2.dot(ia2);
            stacked(r0 + 2 * i, 2 * i) -= 1.0;
            stacked(r0 + 2 * i + 1, 2 * i + 1) -= 1.0;
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-8) ++rank;
    fs.dimension = static_cast<int>(2 * n) - rank;
    fs.tangent_basis = svd.matrixV().rightCols(fs.dimension);
    return fs;
}

int normalizer_dimension(const PointGroup& g) {
    const auto elems = spatial_elements(g);
    Eigen::MatrixXd stacked(3 * elems.size(), 3);
    for (std::size_t k = 0; k < elems.size(); ++k)
        stacked.block<3, 3>(3 * k, 0) = elems[k].determinant() * elems[k] - Mat3::Identity();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > 1e-9) ++rank;
    return 3 - rank;
}

IdentityComponent normalizer_identity_component(const PointGroup& g) {
    switch (normalizer_dimension(g)) {
        case 0: return IdentityComponent::trivial;
        case 1: return IdentityComponent::so2;
        case 3: return IdentityComponent::so3;
        default: throw Error("unexpected normalizer dimension for " + group_name(g));
    }
}

std::string component_name(IdentityComponent c) {
    switch (c) {
        case IdentityComponent::trivial: return "1";
        case IdentityComponent::so2: return "SO(2)";
        case IdentityComponent::so3: return "SO(3)";
    }
    return "?";
}

}  // namespace vrpo
