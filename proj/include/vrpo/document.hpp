#pragma once

#include "vrpo/chart.hpp"
#include "vrpo/portrait.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace vrpo {

struct DocumentAxis {
    std::string name;
    double lo = 0.0;
    double hi = 0.0;
    bool periodic = false;
    int nodes = 0;
};

struct DocumentMeta {
    std::string scenario;  // one-line label
    std::string type;
    double mu = 0.0;
    DocumentAxis u;
    DocumentAxis v;
    std::vector<double> levels;
    int masked_nodes = 0;
};

struct DocumentCritical {
    std::string kind;
    ReducedPoint location;
    double energy = 0.0;
    double hessian_det = 0.0;
};

struct DocumentContour {
    int id = 0;
    double level = 0.0;
    bool closed = false;
    bool separatrix_candidate = false;
    int family = -1;
    std::vector<ReducedPoint> points;
};

struct DocumentBranch {
    int id = 0;
    int saddle = 0;
    std::string end;
    int target = -1;
    std::vector<ReducedPoint> points;
};

struct DocumentFamily {
    std::string kind;
    std::vector<int> centers;
    std::vector<int> masks;
    int contours = 0;
};

struct PortraitDocument {
    DocumentMeta meta;
    std::vector<DocumentCritical> critical;
    std::vector<DocumentContour> contours;
    std::vector<DocumentBranch> branches;
    std::vector<std::pair<int, int>> edges;
    bool saddle_cycle = false;
    std::vector<DocumentFamily> families;
    // One node per connected masked component, and the outline polylines of
    // the masked region.
    std::vector<ReducedPoint> mask_components;
    std::vector<std::vector<ReducedPoint>> mask_outline;

    int count(const std::string& kind) const;
};

PortraitDocument make_document(const ReducedChart& chart, const Portrait& portrait, std::vector<double> levels);

// contour_id,level,u,v
void write_contours_csv(std::ostream& out, const PortraitDocument& doc);
// branch_id,saddle,end,target,u,v
void write_separatrices_csv(std::ostream& out, const PortraitDocument& doc);
// Everything except the polylines of contours and branches.
std::string summary_json(const PortraitDocument& doc);
// Centers, saddles, separatrices and masked cells drawn distinctly. The field
// supplies the masked nodes.
std::string render_svg(const PortraitDocument& doc, const EnergyField& field);

PortraitDocument read_document(const std::string& summary, const std::string& contours_csv,
                               const std::string& separatrices_csv);

// Marching-squares outline of the masked nodes.
std::vector<std::vector<ReducedPoint>> mask_outline(const EnergyField& field);

}  // namespace vrpo
