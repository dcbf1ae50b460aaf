#include "vrpo/chart.hpp"

#include "vrpo/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace vrpo {

namespace detail {

class ChartModel {
public:
    using LiftFn = std::function<std::optional<std::vector<Vec3>>(double, double)>;
    using GaugeFn = std::function<std::optional<Mat3>(const std::vector<Vec3>&)>;
    using ReadFn = std::function<ReducedPoint(const std::vector<Vec3>&)>;

    ChartModel(ScenarioId s, VortexSystem sys) : scenario(std::move(s)), system(std::move(sys)) {}

    ScenarioId scenario;
    VortexSystem system;
    GroupDescriptor symmetry;
    std::vector<GroupElement> isotropy;
    Axis u;
    Axis v;
    Gauge gauge = Gauge::none;
    double mu = 0.0;
    std::vector<std::string> notes;

    LiftFn lift;
    // Rotation into the chart gauge; nullopt when the gauge is undefined.
    GaugeFn gauge_of;
    // Reduced coordinates of a gauged configuration.
    ReadFn read;
};

}  // namespace detail

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAcosDust = 1e-12;

using Points = std::vector<Vec3>;
using Lifted = std::optional<Points>;

// arccos that tolerates rounding just past +-1 and rejects anything further.
std::optional<double> safe_acos(double c) {
    if (!std::isfinite(c)) return std::nullopt;
    if (std::abs(c) <= 1.0) return std::acos(c);
    if (std::abs(c) <= 1.0 + kAcosDust) return c > 0 ? 0.0 : kPi;
    return std::nullopt;
}

std::optional<double> safe_sqrt(double s) {
    if (!std::isfinite(s)) return std::nullopt;
    if (s >= 0.0) return std::sqrt(s);
    if (s >= -kAcosDust) return 0.0;
    return std::nullopt;
}

void add_ring(Points& out, int n, double theta, double phase) {
    for (int j = 0; j < n; ++j) out.push_back(unit_from_spherical(theta, phase + kTwoPi * j / n));
}

void add_planar_ring(Points& out, int n, double rho, double phase) {
    for (int j = 0; j < n; ++j) {
        const double a = phase + kTwoPi * j / n;
        out.emplace_back(rho * std::cos(a), rho * std::sin(a), 0.0);
    }
}

std::vector<double> repeated(std::vector<double> v, double value, int count) {
    v.insert(v.end(), static_cast<std::size_t>(count), value);
    return v;
}

double longitude(const Vec3& x) { return std::atan2(x.y(), x.x()); }

// Rotation about z bringing vortex `index` to longitude 0.
detail::ChartModel::GaugeFn z_gauge(std::size_t index) {
    return [index](const Points& x) -> std::optional<Mat3> {
        const Vec3& p = x[index];
        if (std::hypot(p.x(), p.y()) < 1e-12) return std::nullopt;
        return rotation_z(-longitude(p));
    };
}

Axis colatitude_axis(std::string name, double cos_lo, double cos_hi) {
    // cos theta in [cos_lo, cos_hi] intersected with [-1, 1].
    cos_lo = std::max(cos_lo, -1.0);
    cos_hi = std::min(cos_hi, 1.0);
    return {std::move(name), std::acos(cos_hi), std::acos(cos_lo), false, true};
}

Axis periodic_axis(std::string name) { return {std::move(name), 0.0, kTwoPi, true, true}; }

void require_n(int n) {
    if (n < 2) throw InvalidInput(fmt::format("ring size must be at least 2, got {}", n));
}

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw InvalidInput(fmt::format("{} must be finite", what));
}

// Momentum of cos-theta band constraints: throws when [lo, hi] misses [-1, 1].
void require_band(double lo, double hi, const std::string& what) {
    if (lo >= 1.0 || hi <= -1.0 || lo >= hi)
        throw InfeasibleError(fmt::format("empty feasible domain: {} needs cos theta in [{:.6g}, {:.6g}], "
                                          "which misses (-1, 1)",
                                          what, lo, hi));
}

std::shared_ptr<detail::ChartModel> sphere_two_rings(const SphereTwoRings& s) {
    require_n(s.n);
    require_finite(s.mu, "mu");
    if (s.polar_vorticities.size() > 2) throw InvalidInput("at most two polar vortices");
    const int n = s.n;
    auto sys = repeated(repeated({}, 1.0, n), s.ring_ratio, n);
    double pole_momentum = 0.0;
    for (std::size_t k = 0; k < s.polar_vorticities.size(); ++k) {
        sys.push_back(s.polar_vorticities[k]);
        pole_momentum += k == 0 ? s.polar_vorticities[k] : -s.polar_vorticities[k];
    }
    auto m = std::make_shared<detail::ChartModel>(s, VortexSystem(Surface::sphere, sys));
    const double lambda = s.ring_ratio;
    const double per_ring = (s.mu - pole_momentum) / n;
    // cos theta_{N+1} = (per_ring - cos theta_1) / lambda must lie in [-1, 1].
    const double lo = per_ring - std::abs(lambda);
    const double hi = per_ring + std::abs(lambda);
    require_band(lo, hi, "ring 1 colatitude");
    m->u = colatitude_axis("theta_1", lo, hi);
    m->v = periodic_axis("phi_ring2");
    m->symmetry = {PointGroup::cyclic(n), std::nullopt};
    m->gauge = Gauge::z_rotation;
    m->mu = s.mu;
    const auto poles = s.polar_vorticities.size();
    m->lift = [=](double u, double v) -> Lifted {
        const auto t2 = safe_acos((per_ring - std::cos(u)) / lambda);
        if (!t2) return std::nullopt;
        Points x;
        add_ring(x, n, u, 0.0);
        add_ring(x, n, *t2, v);
        if (poles >= 1) x.emplace_back(0.0, 0.0, 1.0);
        if (poles >= 2) x.emplace_back(0.0, 0.0, -1.0);
        return x;
    };
    m->gauge_of = z_gauge(0);
    m->read = [n](const Points& x) {
        return ReducedPoint{spherical_from_unit(x[0]).theta, wrap_angle(longitude(x[n]))};
    };
    return m;
}

std::shared_ptr<detail::ChartModel> ch_pairs(const ChPairs& s) {
    require_finite(s.mu, "mu");
    auto m = std::make_shared<detail::ChartModel>(s, VortexSystem(Surface::sphere, {1.0, 1.0, -1.0, -1.0}));
    const double half = s.mu / 2.0;
    require_band(half - 1.0, half + 1.0, "theta_1");
    m->u = colatitude_axis("theta_1", half - 1.0, half + 1.0);
    m->v = periodic_axis("phi_1");
    m->symmetry = {{Family::Ch, 1, 0.0}, PointGroup::cyclic(1)};
    m->gauge = Gauge::z_rotation;
    m->mu = s.mu;
    m->lift = [half](double u, double v) -> Lifted {
        const auto t2 = safe_acos(half - std::cos(u));
        if (!t2) return std::nullopt;
        return Points{unit_from_spherical(u, v), unit_from_spherical(*t2, 0.0), unit_from_spherical(kPi - u, v),
                      unit_from_spherical(kPi - *t2, 0.0)};
    };
    m->gauge_of = z_gauge(1);
    m->read = [](const Points& x) {
        return ReducedPoint{spherical_from_unit(x[0]).theta, wrap_angle(longitude(x[0]))};
    };
    return m;
}

std::shared_ptr<detail::ChartModel> cn_two_rings_poles(const CnTwoRingsPoles& s) {
    require_n(s.n);
    require_finite(s.mu, "mu");
    require_finite(s.pole_vorticity, "pole vorticity");
    const int n = s.n;
    const double lambda = s.pole_vorticity;
    auto sys = repeated(repeated({}, 1.0, n), -1.0, n);
    if (lambda != 0.0) {
        sys.push_back(lambda);
        sys.push_back(-lambda);
    }
    auto m = std::make_shared<detail::ChartModel>(s, VortexSystem(Surface::sphere, sys));
    // cos theta' = shift + cos theta_1.
    const double shift = (2.0 * lambda - s.mu) / n;
    require_band(-1.0 - shift, 1.0 - shift, "+ ring colatitude");
    m->u = colatitude_axis("theta_1", -1.0 - shift, 1.0 - shift);
    m->v = periodic_axis("phi_minus");
    m->symmetry = {PointGroup::cyclic(n), PointGroup::cyclic(n)};
    m->gauge = Gauge::z_rotation;
    m->mu = s.mu;
    const bool poles = lambda != 0.0;
    m->lift = [=](double u, double v) -> Lifted {
        const auto t2 = safe_acos(shift + std::cos(u));
        if (!t2) return std::nullopt;
        Points x;
        add_ring(x, n, u, 0.0);
        add_ring(x, n, *t2, v);
        if (poles) {
            x.emplace_back(0.0, 0.0, 1.0);
            x.emplace_back(0.0, 0.0, -1.0);
        }
        return x;
    };
    m->gauge_of = z_gauge(0);
    m->read = [n](const Points& x) {
        return ReducedPoint{spherical_from_unit(x[0]).theta, wrap_angle(longitude(x[n]))};
    };
    return m;
}

std::shared_ptr<detail::ChartModel> cnh_four_rings_poles(const CnhFourRingsPoles& s) {
    require_n(s.n);
    require_finite(s.mu, "mu");
    require_finite(s.pole_vorticity, "pole vorticity");
    const int n = s.n;
    const double lambda = s.pole_vorticity;
    auto sys = repeated(repeated(repeated(repeated({}, 1.0, n), -1.0, n), -1.0, n), 1.0, n);
    if (lambda != 0.0) {
        sys.push_back(lambda);
        sys.push_back(-lambda);
    }
    auto m = std::make_shared<detail::ChartModel>(s, VortexSystem(Surface::sphere, sys));
    const double shift = (2.0 * lambda - s.mu) / (2.0 * n);
    require_band(-1.0 - shift, 1.0 - shift, "ring A colatitude");
    m->u = colatitude_axis("theta_0", -1.0 - shift, 1.0 - shift);
    m->v = periodic_axis("phi_B");
    m->symmetry = {{Family::Ch, n, 0.0}, PointGroup::cyclic(n)};
    m->gauge = Gauge::z_rotation;
    m->mu = s.mu;
    const bool poles = lambda != 0.0;
    m->lift = [=](double u, double v) -> Lifted {
        const auto tb = safe_acos(shift + std::cos(u));
        if (!tb) return std::nullopt;
        Points x;
        add_ring(x, n, u, 0.0);
        add_ring(x, n, kPi - u, 0.0);
        add_ring(x, n, *tb, v);
        add_ring(x, n, kPi - *tb, v);
        if (poles) {
            x.emplace_back(0.0, 0.0, 1.0);
            x.emplace_back(0.0, 0.0, -1.0);
        }
        return x;
    };
    m->gauge_of = z_gauge(0);
    m->read = [n](const Points& x) {
        return ReducedPoint{spherical_from_unit(x[0]).theta, wrap_angle(longitude(x[2 * n]))};
    };
    return m;
}

std::shared_ptr<detail::ChartModel> ci_three_pairs(const CiThreePairs& s) {
    require_finite(s.mu, "mu");
    if (std::abs(s.mu) >= 6.0)
        throw InfeasibleError(fmt::format("empty feasible domain: |mu| = {} must be below 6", std::abs(s.mu)));
    auto m = std::make_shared<detail::ChartModel>(
        s, VortexSystem(Surface::sphere, {1.0, 1.0, 1.0, -1.0, -1.0, -1.0}));
    m->u = {"theta_1", 0.0, kPi, false, true};
    m->v = {"theta_2", 0.0, kPi, false, true};
    m->symmetry = {{Family::Ci, 1, 0.0}, PointGroup::cyclic(1)};
    m->gauge = Gauge::z_rotation;
    m->mu = s.mu;
    const double half = s.mu / 2.0;
    m->lift = [half](double u, double v) -> Lifted {
        const double c3 = half - std::cos(u) - std::cos(v);
        const auto t3 = safe_acos(c3);
        const auto s3 = safe_sqrt(1.0 - c3 * c3);
        if (!t3 || !s3) return std::nullopt;
        const double s1 = std::sin(u);
        const double s2 = std::sin(v);
        const auto p2 = safe_acos(-(s1 * s1 + s2 * s2 - *s3 * *s3) / (2.0 * s1 * s2));
        const auto p3 = safe_acos(-(s1 * s1 - s2 * s2 + *s3 * *s3) / (2.0 * *s3 * s1));
        if (!p2 || !p3) return std::nullopt;
        Points x{unit_from_spherical(u, 0.0), unit_from_spherical(v, *p2), unit_from_spherical(*t3, -*p3)};
        for (int i = 0; i < 3; ++i) x.push_back(unit_from_spherical(kPi - spherical_from_unit(x[i]).theta,
                                                                   kPi + spherical_from_unit(x[i]).phi));
        return x;
    };
    m->gauge_of = z_gauge(0);
    m->read = [](const Points& x) {
        return ReducedPoint{spherical_from_unit(x[0]).theta, spherical_from_unit(x[1]).theta};
    };
    return m;
}

std::shared_ptr<detail::ChartModel> ci_four_pairs_zero(const CiFourPairsZero& s) {
    auto m = std::make_shared<detail::ChartModel>(
        s, VortexSystem(Surface::sphere, {1.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -1.0}));
    m->u = {"theta_3", 0.0, kPi, false, true};
    m->v = {"phi_3", kPi / 2.0, 3.0 * kPi / 2.0, false, true};
    m->symmetry = {{Family::Ci, 1, 0.0}, PointGroup::cyclic(1)};
    m->gauge = Gauge::full_rotation;
    m->mu = 0.0;
    m->lift = [](double u, double v) -> Lifted {
        const double a = (1.0 - std::cos(u) * std::cos(u)) * std::cos(v) * std::cos(v);
        const double b = (1.0 + std::cos(u)) * (1.0 + std::cos(u));
        if (a + b <= 0.0) return std::nullopt;
        const auto t2 = safe_acos((a - b) / (a + b));
        if (!t2) return std::nullopt;
        Points x{Vec3(0.0, 0.0, 1.0), unit_from_spherical(*t2, 0.0), unit_from_spherical(u, v)};
        const Vec3 x4 = -(x[0] + x[1] + x[2]);
        // The printed colatitude only closes the quadrilateral when |x4| = 1.
        if (std::abs(x4.norm() - 1.0) > 1e-9) return std::nullopt;
        x.push_back(x4.normalized());
        for (int i = 0; i < 4; ++i) x.push_back(-x[i]);
        return x;
    };
    m->gauge_of = [](const Points& x) -> std::optional<Mat3> {
        const Vec3 z = x[0];
        const Vec3 h = x[1] - x[1].dot(z) * z;
        if (h.norm() < 1e-12) return std::nullopt;
        const Vec3 ex = h.normalized();
        Mat3 r;
        r.row(0) = ex;
        r.row(1) = z.cross(ex);
        r.row(2) = z;
        return r;
    };
    m->read = [](const Points& x) {
        const auto p = spherical_from_unit(x[2]);
        return ReducedPoint{p.theta, wrap_angle(p.phi)};
    };
    return m;
}

std::shared_ptr<detail::ChartModel> plane_two_rings_center(const PlaneTwoRingsCenter& s) {
    require_n(s.n);
    require_finite(s.mu, "mu");
    require_finite(s.center_vorticity, "center vorticity");
    const int n = s.n;
    const double lambda = s.ring_ratio;
    auto sys = repeated(repeated({}, 1.0, n), lambda, n);
    const bool center = s.center_vorticity != 0.0;
    if (center) sys.push_back(s.center_vorticity);
    auto m = std::make_shared<detail::ChartModel>(s, VortexSystem(Surface::plane, sys));
    const double level = 2.0 * s.mu / n;  // rho_1^2 + lambda rho_2^2
    if (lambda > 0.0) {
        if (level <= 0.0)
            throw InfeasibleError(fmt::format("empty feasible domain: mu = {} must be positive when the ring "
                                              "ratio is positive",
                                              s.mu));
        m->u = {"rho_1", 0.0, std::sqrt(level), false, true};
    } else {
        const double lo = std::sqrt(std::max(0.0, level));
        const double scale = s.mu != 0.0 ? std::sqrt(std::abs(level)) : 1.0;
        m->u = {"rho_1", lo, lo + 2.0 * scale, false, false};
        m->notes.push_back(fmt::format("rho_1 is unbounded above; {:.6g} is a rendering bound", m->u.hi));
    }
    m->v = periodic_axis("phi_1");
    m->symmetry = {PointGroup::cyclic(n), std::nullopt};
    m->gauge = Gauge::z_rotation;
    m->mu = s.mu;
    m->lift = [=](double u, double v) -> Lifted {
        if (u <= 0.0) return std::nullopt;
        const auto r2 = safe_sqrt((level - u * u) / lambda);
        if (!r2) return std::nullopt;
        Points x;
        add_planar_ring(x, n, u, v);
        add_planar_ring(x, n, *r2, 0.0);
        if (center) x.emplace_back(0.0, 0.0, 0.0);
        return x;
    };
    m->gauge_of = z_gauge(static_cast<std::size_t>(n));
    m->read = [](const Points& x) {
        return ReducedPoint{std::hypot(x[0].x(), x[0].y()), wrap_angle(longitude(x[0]))};
    };
    return m;
}

std::shared_ptr<detail::ChartModel> dancing_vortices(const DancingVortices& s) {
    require_n(s.n);
    const int n = s.n;
    auto m = std::make_shared<detail::ChartModel>(
        s, VortexSystem(Surface::sphere, repeated(repeated({}, 1.0, n), -1.0, n)));
    const double half = kPi / (2.0 * n);
    m->u = {"theta_1", 0.0, kPi, false, true};
    m->v = {"phi_1", -half, half, false, true};
    m->symmetry = {{Family::Cv, n, half}, PointGroup::cyclic(n)};
    m->lift = [n](double u, double v) -> Lifted {
        Points x;
        add_ring(x, n, u, v);
        add_ring(x, n, u, kPi / n - v);
        return x;
    };
    m->read = [](const Points& x) {
        return ReducedPoint{spherical_from_unit(x[0]).theta, wrap_signed(longitude(x[0]))};
    };
    return m;
}

// Index-wise lists with j = 1..N stored at j - 1 of each block.
Points staggered_lift(int n, double t0, double p0, bool aligned) {
    Points x(static_cast<std::size_t>(4 * n));
    for (int j = 1; j <= n; ++j) {
        const double base = kTwoPi * j / n;
        const double step = kPi / n;
        double f[4];
        if (aligned) {
            f[0] = base + p0;
            f[1] = base + step - p0;
            f[2] = base + step - p0;
            f[3] = base + p0;
        } else {
            f[0] = base - p0;
            f[1] = base + step + p0;
            f[2] = base + p0;
            f[3] = base + step - p0;
        }
        const double t[4] = {t0, kPi - t0, t0, kPi - t0};
        for (int b = 0; b < 4; ++b) x[static_cast<std::size_t>(b * n + j - 1)] = unit_from_spherical(t[b], f[b]);
    }
    return x;
}

std::shared_ptr<detail::ChartModel> dnd_staggered(const DndStaggered& s) {
    require_n(s.n);
    const int n = s.n;
    auto m = std::make_shared<detail::ChartModel>(
        s, VortexSystem(Surface::sphere, repeated(repeated({}, 1.0, 2 * n), -1.0, 2 * n)));
    m->u = {"theta_0", 0.0, kPi, false, true};
    m->v = {"phi_0", 0.0, kPi / n, false, true};
    m->symmetry = {{Family::Dd, n, kPi / (2.0 * n)}, PointGroup::dihedral(n, kPi / (2.0 * n))};
    m->lift = [n](double u, double v) -> Lifted { return staggered_lift(n, u, v, false); };
    m->read = [n](const Points& x) {
        return ReducedPoint{spherical_from_unit(x[0]).theta, wrap_signed(kTwoPi / n - longitude(x[0]))};
    };
    return m;
}

std::shared_ptr<detail::ChartModel> dnh_aligned(const DnhAligned& s) {
    require_n(s.n);
    const int n = s.n;
    auto m = std::make_shared<detail::ChartModel>(
        s, VortexSystem(Surface::sphere, repeated(repeated({}, 1.0, 2 * n), -1.0, 2 * n)));
    const double half = kPi / (2.0 * n);
    m->u = {"theta_0", 0.0, kPi / 2.0, false, true};
    m->v = {"phi_0", -half, half, false, true};
    m->symmetry = {{Family::Dh, n, half}, PointGroup::dihedral(n, half)};
    m->lift = [n](double u, double v) -> Lifted { return staggered_lift(n, u, v, true); };
    m->read = [n](const Points& x) {
        return ReducedPoint{spherical_from_unit(x[0]).theta, wrap_signed(longitude(x[0]) - kTwoPi / n)};
    };
    return m;
}

std::shared_ptr<detail::ChartModel> dn_rings(const DnRings& s) {
    require_n(s.n);
    if (s.polar_count != 0 && s.polar_count != 2)
        throw InvalidInput(fmt::format("polar_count must be 0 or 2, got {}", s.polar_count));
    const int n = s.n;
    auto sys = repeated({}, 1.0, 2 * n);
    if (s.polar_count == 2) sys = repeated(sys, s.polar_vorticity, 2);
    auto m = std::make_shared<detail::ChartModel>(s, VortexSystem(Surface::sphere, sys));
    m->u = {"theta_0", 0.0, kPi, false, true};
    m->v = periodic_axis("phi_0");
    m->symmetry = {PointGroup::dihedral(n), std::nullopt};
    const bool poles = s.polar_count == 2;
    m->lift = [n, poles](double u, double v) -> Lifted {
        Points x;
        add_ring(x, n, u, v);
        add_ring(x, n, kPi - u, -v);
        if (poles) {
            x.emplace_back(0.0, 0.0, 1.0);
            x.emplace_back(0.0, 0.0, -1.0);
        }
        return x;
    };
    m->read = [](const Points& x) {
        return ReducedPoint{spherical_from_unit(x[0]).theta, wrap_angle(longitude(x[0]))};
    };
    return m;
}

std::shared_ptr<detail::ChartModel> polyhedral_split(const PolyhedralSplit& s) {
    using F = Family;
    const F f = s.group;
    if (f != F::T && f != F::O && f != F::I && f != F::Th && f != F::Td && f != F::Oh && f != F::Ih)
        throw InvalidInput("polyhedral split needs one of T, O, I, T_h, T_d, O_h, I_h");
    const PointGroup g = PointGroup::polyhedral(f);
    const bool hatted = f != F::T && f != F::O && f != F::I;
    GroupDescriptor d{g, hatted ? std::optional<PointGroup>(rotation_subgroup(g)) : std::nullopt};
    const auto elems = signed_elements(d);
    std::vector<double> sys;
    std::vector<Mat3> mats;
    for (const auto& e : elems) {
        sys.push_back(e.sign);
        mats.push_back(e.matrix);
    }
    auto m = std::make_shared<detail::ChartModel>(s, VortexSystem(Surface::sphere, sys));
    m->u = {"theta_seed", 0.0, kPi, false, true};
    m->v = periodic_axis("phi_seed");
    m->symmetry = d;
    m->lift = [mats](double u, double v) -> Lifted {
        const Vec3 seed = unit_from_spherical(u, v);
        Points x;
        x.reserve(mats.size());
        for (const auto& a : mats) x.push_back(a * seed);
        return x;
    };
    m->read = [](const Points& x) {
        const auto p = spherical_from_unit(x[0]);
        return ReducedPoint{p.theta, wrap_angle(p.phi)};
    };
    return m;
}

std::shared_ptr<detail::ChartModel> make_model(const ScenarioId& id) {
    return std::visit(
        [](const auto& s) -> std::shared_ptr<detail::ChartModel> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SphereTwoRings>) return sphere_two_rings(s);
            else if constexpr (std::is_same_v<T, ChPairs>) return ch_pairs(s);
            else if constexpr (std::is_same_v<T, CnTwoRingsPoles>) return cn_two_rings_poles(s);
            else if constexpr (std::is_same_v<T, CnhFourRingsPoles>) return cnh_four_rings_poles(s);
            else if constexpr (std::is_same_v<T, CiThreePairs>) return ci_three_pairs(s);
            else if constexpr (std::is_same_v<T, CiFourPairsZero>) return ci_four_pairs_zero(s);
            else if constexpr (std::is_same_v<T, PlaneTwoRingsCenter>) return plane_two_rings_center(s);
            else if constexpr (std::is_same_v<T, DancingVortices>) return dancing_vortices(s);
            else if constexpr (std::is_same_v<T, DndStaggered>) return dnd_staggered(s);
            else if constexpr (std::is_same_v<T, DnhAligned>) return dnh_aligned(s);
            else if constexpr (std::is_same_v<T, DnRings>) return dn_rings(s);
            else return polyhedral_split(s);
        },
        id);
}

std::optional<Configuration> to_configuration(Surface surface, Points x) {
    if (surface == Surface::sphere) return Configuration::sphere(std::move(x));
    return Configuration::plane(std::move(x));
}

bool inside(const Axis& a, double x) {
    if (a.periodic) return std::isfinite(x);
    if (!(x > a.lo)) return false;
    return !a.bounded || x < a.hi;
}

}  // namespace

ReducedChart ReducedChart::build(const ScenarioId& scenario) {
    auto m = make_model(scenario);
    ReducedChart chart(m);

    // Sample the domain: locate a reference point and check the momentum level.
    constexpr int kGrid = 41;
    const Vec3 target(0.0, 0.0, m->mu);
    double best_gap = 0.0;
    std::optional<ReducedPoint> reference;
    double worst_momentum = 0.0;
    ReducedPoint worst_point;
    int samples = 0;
    int s6_low = 0;
    for (int i = 1; i < kGrid; ++i) {
        for (int j = 0; j < kGrid; ++j) {
            const ReducedPoint p{m->u.lo + m->u.span() * i / kGrid,
                                 m->v.lo + m->v.span() * (j + (m->v.periodic ? 0.0 : 1.0)) / kGrid};
            if (!m->v.periodic && j == kGrid - 1) continue;
            const auto x = chart.try_lift(p);
            if (!x) continue;
            const double gap = min_pair_distance(*x);
            if (gap <= kDefaultCollisionThreshold) continue;
            ++samples;
            const double err = (momentum(m->system, *x) - target).norm();
            if (err > worst_momentum) {
                worst_momentum = err;
                worst_point = p;
            }
            if (gap > best_gap) {
                best_gap = gap;
                reference = p;
            }
            if (std::holds_alternative<CiFourPairsZero>(scenario) && (*x)[1].z() > 0.0) ++s6_low;
        }
    }
    if (!reference)
        throw InfeasibleError(fmt::format("empty feasible domain: no collision-free point in {} x {}", m->u.name,
                                          m->v.name));
    if (worst_momentum > 1e-10)
        throw NumericalError(fmt::format("lift misses the momentum level by {:.3g} at ({:.6g}, {:.6g})",
                                         worst_momentum, worst_point.u, worst_point.v));
    m->notes.push_back(fmt::format("momentum self-check: {} samples, max deviation {:.3g}", samples,
                                   worst_momentum));
    if (std::holds_alternative<CiFourPairsZero>(scenario) && s6_low > 0)
        m->notes.push_back(fmt::format("theta_2 below pi/2 at {} of {} samples (where cos^2 phi_3 sin^2 theta_3 > "
                                       "(1 + cos theta_3)^2)",
                                       s6_low, samples));

    const Configuration ref = chart.lift(*reference);
    m->isotropy = elements_fixing(m->symmetry, m->system, ref);
    return chart;
}

const ScenarioId& ReducedChart::scenario() const { return model_->scenario; }
const VortexSystem& ReducedChart::system() const { return model_->system; }
const GroupDescriptor& ReducedChart::symmetry() const { return model_->symmetry; }
const std::vector<GroupElement>& ReducedChart::isotropy() const { return model_->isotropy; }
const Axis& ReducedChart::u_axis() const { return model_->u; }
const Axis& ReducedChart::v_axis() const { return model_->v; }
Gauge ReducedChart::gauge() const { return model_->gauge; }
double ReducedChart::mu() const { return model_->mu; }
const std::vector<std::string>& ReducedChart::notes() const { return model_->notes; }

ReducedPoint ReducedChart::wrap(ReducedPoint p) const {
    auto fold = [](const Axis& a, double x) {
        if (!a.periodic) return x;
        double r = std::fmod(x - a.lo, a.span());
        if (r < 0) r += a.span();
        return a.lo + r;
    };
    return {fold(model_->u, p.u), fold(model_->v, p.v)};
}

std::array<double, 2> ReducedChart::difference(ReducedPoint a, ReducedPoint b) const {
    auto diff = [](const Axis& ax, double x, double y) {
        double d = y - x;
        if (ax.periodic) d = std::remainder(d, ax.span());
        return d;
    };
    return {diff(model_->u, a.u, b.u), diff(model_->v, a.v, b.v)};
}

std::optional<Configuration> ReducedChart::try_lift(ReducedPoint p) const {
    if (!inside(model_->u, p.u) || !inside(model_->v, p.v)) return std::nullopt;
    auto x = model_->lift(p.u, p.v);
    if (!x) return std::nullopt;
    for (const auto& q : *x)
        if (!q.allFinite()) return std::nullopt;
    return to_configuration(model_->system.surface(), std::move(*x));
}

bool ReducedChart::feasible(ReducedPoint p, double collision_threshold) const {
    const auto x = try_lift(p);
    return x && min_pair_distance(*x) > collision_threshold;
}

Configuration ReducedChart::lift(ReducedPoint p) const {
    auto x = try_lift(p);
    if (!x)
        throw InfeasibleError(fmt::format("({}, {}) = ({:.17g}, {:.17g}) is outside the chart", model_->u.name,
                                          model_->v.name, p.u, p.v));
    const double gap = min_pair_distance(*x);
    if (gap <= kDefaultCollisionThreshold)
        throw InfeasibleError(fmt::format("({:.17g}, {:.17g}) lifts to a collision (distance {:.3g})", p.u, p.v,
                                          gap));
    return std::move(*x);
}

Mat3 ReducedChart::gauge_rotation(const Configuration& x) const {
    check_compatible(model_->system, x);
    if (!model_->gauge_of) return Mat3::Identity();
    const auto r = model_->gauge_of(x.points());
    if (!r)
        throw NotInFixedSpace("gauge vortex sits on the symmetry axis",
                              std::numeric_limits<double>::infinity());
    return *r;
}

ReducedPoint ReducedChart::project(const Configuration& x, double tol) const {
    const Mat3 g = gauge_rotation(x);
    Points gauged;
    gauged.reserve(x.size());
    for (const auto& q : x.points()) gauged.push_back(g * q);
    const ReducedPoint p = model_->read(gauged);
    const auto back = try_lift(p);
    if (!back)
        throw NotInFixedSpace(fmt::format("coordinates ({:.6g}, {:.6g}) fall outside the chart", p.u, p.v),
                              std::numeric_limits<double>::infinity());
    double residual = 0.0;
    for (std::size_t i = 0; i < gauged.size(); ++i) residual = std::max(residual, ((*back)[i] - gauged[i]).norm());
    if (!(residual <= tol))
        throw NotInFixedSpace(fmt::format("configuration is off the chart by {:.3g}", residual), residual);
    return p;
}

double ReducedChart::reduced_hamiltonian(ReducedPoint p) const {
    return hamiltonian(model_->system, lift(p));
}

namespace {

double evaluate_or_throw(const ReducedChart& c, ReducedPoint p) {
    const auto x = c.try_lift(c.wrap(p));
    if (!x || min_pair_distance(*x) <= kDefaultCollisionThreshold)
        throw InfeasibleError(fmt::format("finite-difference stencil at ({:.6g}, {:.6g}) leaves the domain", p.u,
                                          p.v));
    return hamiltonian_unchecked(c.system(), x->points());
}

}  // namespace

std::array<double, 2> ReducedChart::reduced_gradient(ReducedPoint p, double relative_step) const {
    const double hu = relative_step * model_->u.span();
    const double hv = relative_step * model_->v.span();
    const double du = (evaluate_or_throw(*this, {p.u + hu, p.v}) - evaluate_or_throw(*this, {p.u - hu, p.v})) /
                      (2.0 * hu);
    const double dv = (evaluate_or_throw(*this, {p.u, p.v + hv}) - evaluate_or_throw(*this, {p.u, p.v - hv})) /
                      (2.0 * hv);
    return {du, dv};
}

std::array<double, 2> ReducedChart::reduced_gradient(ReducedPoint p) const { return reduced_gradient(p, 1e-6); }

std::array<double, 2> ReducedChart::reduced_gradient_fine(ReducedPoint p) const {
    const double hu = 1e-5 * model_->u.span();
    const double hv = 1e-5 * model_->v.span();
    auto stencil = [&](auto at, double h) {
        return (-at(2.0 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2.0 * h)) / (12.0 * h);
    };
    const double du = stencil([&](double d) { return evaluate_or_throw(*this, {p.u + d, p.v}); }, hu);
    const double dv = stencil([&](double d) { return evaluate_or_throw(*this, {p.u, p.v + d}); }, hv);
    return {du, dv};
}

std::array<double, 3> ReducedChart::reduced_hessian(ReducedPoint p) const {
    const double hu = 1e-4 * model_->u.span();
    const double hv = 1e-4 * model_->v.span();
    auto f = [&](double du, double dv) { return evaluate_or_throw(*this, {p.u + du, p.v + dv}); };
    const double f0 = f(0, 0);
    const double uu = (f(hu, 0) - 2.0 * f0 + f(-hu, 0)) / (hu * hu);
    const double vv = (f(0, hv) - 2.0 * f0 + f(0, -hv)) / (hv * hv);
    const double uv = (f(hu, hv) - f(hu, -hv) - f(-hu, hv) + f(-hu, -hv)) / (4.0 * hu * hv);
    return {uu, uv, vv};
}

}  // namespace vrpo
