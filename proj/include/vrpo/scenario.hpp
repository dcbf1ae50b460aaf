#pragma once

#include "vrpo/point_group.hpp"

#include <string>
#include <variant>
#include <vector>

namespace vrpo {

// Two N-rings (vorticities 1 and ring_ratio) plus up to two polar vortices,
// north first. Reduced coordinates (theta of ring 1, longitude of ring 2).
struct SphereTwoRings {
    int n = 3;
    double ring_ratio = 2.0;
    std::vector<double> polar_vorticities;
    double mu = 1.0;
};

// Two +1 and two -1 vortices mirrored in the equator. Coordinates (theta_1, phi_1).
struct ChPairs {
    double mu = 0.8;
};

// +1 ring, -1 ring, poles of vorticity +l (north) and -l (south).
// Coordinates (theta of the + ring, longitude of the - ring).
struct CnTwoRingsPoles {
    int n = 3;
    double pole_vorticity = 1.0;
    double mu = 4.0;
};

// Four rings mirrored in the equator with signs exchanged, plus poles.
struct CnhFourRingsPoles {
    int n = 3;
    double pole_vorticity = 1.0;
    double mu = 6.0;
};

// Three antipodal +/- pairs. Coordinates (theta_1, theta_2).
struct CiThreePairs {
    double mu = 1.5;
};

// Four antipodal +/- pairs at zero momentum. Coordinates (theta_3, phi_3).
struct CiFourPairsZero {};

// Planar rings of vorticity 1 and ring_ratio plus an optional central vortex.
// Coordinates (rho of ring 1, offset of ring 1 against ring 2).
struct PlaneTwoRingsCenter {
    int n = 3;
    double ring_ratio = 1.0;
    double center_vorticity = 0.0;
    double mu = 1.0;
};

// Alternating semi-regular 2N-gon at one latitude. Coordinates (theta_1, phi_1).
struct DancingVortices {
    int n = 2;
};

// Vertically staggered pair of alternating 2N-gons.
struct DndStaggered {
    int n = 4;
};

// Vertically aligned pair of semi-regular 2N-gons.
struct DnhAligned {
    int n = 5;
};

// Two rings exchanged by the C2 axes, plus 0 or 2 polar vortices.
struct DnRings {
    int n = 3;
    int polar_count = 0;
    double polar_vorticity = 1.0;
};

// Regular orbit of a polyhedral group; improper elements carry -1 vortices.
struct PolyhedralSplit {
    Family group = Family::T;
};

using ScenarioId = std::variant<SphereTwoRings, ChPairs, CnTwoRingsPoles, CnhFourRingsPoles, CiThreePairs,
                                CiFourPairsZero, PlaneTwoRingsCenter, DancingVortices, DndStaggered, DnhAligned,
                                DnRings, PolyhedralSplit>;

// Config-file type key, e.g. "sphere_two_rings".
std::string scenario_type(const ScenarioId& s);
// Type key and parameters on one line.
std::string scenario_label(const ScenarioId& s);

}  // namespace vrpo
