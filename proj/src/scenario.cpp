#include "vrpo/scenario.hpp"

#include <fmt/format.h>

namespace vrpo {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string scenario_type(const ScenarioId& s) {
    return std::visit(overloaded{
                          [](const SphereTwoRings&) { return "sphere_two_rings"; },
                          [](const ChPairs&) { return "ch_pairs"; },
                          [](const CnTwoRingsPoles&) { return "cn_two_rings_poles"; },
                          [](const CnhFourRingsPoles&) { return "cnh_four_rings_poles"; },
                          [](const CiThreePairs&) { return "ci_three_pairs"; },
                          [](const CiFourPairsZero&) { return "ci_four_pairs_zero"; },
                          [](const PlaneTwoRingsCenter&) { return "plane_two_rings_center"; },
                          [](const DancingVortices&) { return "dancing_vortices"; },
                          [](const DndStaggered&) { return "dnd_staggered"; },
                          [](const DnhAligned&) { return "dnh_aligned"; },
                          [](const DnRings&) { return "dn_rings"; },
                          [](const PolyhedralSplit&) { return "polyhedral_split"; },
                      },
                      s);
}

std::string scenario_label(const ScenarioId& s) {
    const std::string params = std::visit(
        overloaded{
            [](const SphereTwoRings& x) {
                return fmt::format("n={} ring_ratio={} poles={} mu={}", x.n, x.ring_ratio,
                                   x.polar_vorticities.size(), x.mu);
            },
            [](const ChPairs& x) { return fmt::format("mu={}", x.mu); },
            [](const CnTwoRingsPoles& x) {
                return fmt::format("n={} pole_vorticity={} mu={}", x.n, x.pole_vorticity, x.mu);
            },
            [](const CnhFourRingsPoles& x) {
                return fmt::format("n={} pole_vorticity={} mu={}", x.n, x.pole_vorticity, x.mu);
            },
            [](const CiThreePairs& x) { return fmt::format("mu={}", x.mu); },
            [](const CiFourPairsZero&) { return std::string("mu=0"); },
            [](const PlaneTwoRingsCenter& x) {
                return fmt::format("n={} ring_ratio={} center_vorticity={} mu={}", x.n, x.ring_ratio,
                                   x.center_vorticity, x.mu);
            },
            [](const DancingVortices& x) { return fmt::format("n={}", x.n); },
            [](const DndStaggered& x) { return fmt::format("n={}", x.n); },
            [](const DnhAligned& x) { return fmt::format("n={}", x.n); },
            [](const DnRings& x) {
                return fmt::format("n={} polar_count={} polar_vorticity={}", x.n, x.polar_count, x.polar_vorticity);
            },
            [](const PolyhedralSplit& x) { return "group=" + group_name({x.group, 1, 0.0}); },
        },
        s);
    return scenario_type(s) + " " + params;
}

}  // namespace vrpo
