#pragma once

#include "vrpo/chart.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vrpo {

// Sample positions along one chart axis. Periodic axes hold n nodes over one
// period (the last cell wraps to node 0); other axes hold n nodes from lo to hi.
struct GridAxis {
    double lo = 0.0;
    double hi = 1.0;
    int n = 2;
    bool periodic = false;

    double step() const { return periodic ? (hi - lo) / n : (hi - lo) / (n - 1); }
    double node(int k) const { return lo + step() * k; }
    double span() const { return hi - lo; }
    int cells() const { return periodic ? n : n - 1; }
    // Node index k folded into [0, n) for periodic axes.
    int fold(int k) const;
};

// Returns NaN where the point is infeasible.
using Evaluator = std::function<double(ReducedPoint)>;

struct EnergyField {
    GridAxis u;
    GridAxis v;
    // Row-major: values[i * v.n + j] at (u.node(i), v.node(j)); NaN where masked.
    std::vector<double> values;
    Evaluator evaluate;

    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * v.n + j]; }
    bool masked(int i, int j) const;
    ReducedPoint node(int i, int j) const { return {u.node(i), v.node(j)}; }
    // b - a with periodic components folded the short way.
    std::array<double, 2> difference(ReducedPoint a, ReducedPoint b) const;
    ReducedPoint wrap(ReducedPoint p) const;
    // Same difference measured in grid cells.
    double cell_distance(ReducedPoint a, ReducedPoint b) const;
    int masked_count() const;
};

struct SampleRanges {
    double u_lo;
    double u_hi;
    double v_lo;
    double v_hi;
};

inline constexpr int kDefaultResolution = 400;
inline constexpr double kDefaultMargin = 1e-4;

// Chart bounding box shrunk by kDefaultMargin on non-periodic sides.
SampleRanges default_ranges(const ReducedChart& chart);

// Nodes whose lift is infeasible or has two vortices closer than
// max(collision threshold, cell diagonal) are masked.
EnergyField sample_field(const ReducedChart& chart, int nu = kDefaultResolution, int nv = kDefaultResolution,
                         std::optional<SampleRanges> ranges = std::nullopt);

// Field of an arbitrary function on the given axes (used for synthetic checks).
EnergyField sample_function(const Evaluator& f, GridAxis u, GridAxis v);

struct Contour {
    std::vector<ReducedPoint> points;
    double level = 0.0;
    // First point repeated at the end.
    bool closed = false;
    // Level within 1e-9 (relative) of a critical energy.
    bool separatrix_candidate = false;
};

// Marching squares with cell-centre disambiguation; crossings refined on the
// true function when the field carries an evaluator. Masked cells are skipped.
std::vector<Contour> extract_contours(const EnergyField& field, double level);

enum class CriticalKind { center, saddle, degenerate };
std::string kind_name(CriticalKind k);

struct CriticalPoint {
    ReducedPoint location;
    CriticalKind kind = CriticalKind::degenerate;
    double energy = 0.0;
    double hessian_det = 0.0;
    std::array<double, 3> hessian{};
    double gradient_norm = 0.0;
};

struct CriticalSearch {
    std::vector<CriticalPoint> points;
    int seeds = 0;
    // Seeds whose Newton iteration diverged, left the domain or stalled.
    int discarded = 0;

    int count(CriticalKind k) const;
};

CriticalSearch find_critical_points(const ReducedChart& chart, const EnergyField& field);

// Flags levels within 1e-9 (relative) of one of the energies.
void flag_separatrix_candidates(std::vector<Contour>& contours, const std::vector<CriticalPoint>& points);

enum class BranchEnd { saddle, boundary, unterminated };

struct SeparatrixBranch {
    int saddle = 0;  // index into the critical-point list
    BranchEnd end = BranchEnd::unterminated;
    int target = -1;  // critical-point index reached when end == saddle
    Contour path;
};

struct SaddleGraph {
    std::vector<int> saddles;
    std::vector<SeparatrixBranch> branches;
    // Distinct saddle pairs joined by at least one branch; (i, i) for homoclinic loops.
    std::vector<std::pair<int, int>> edges;

    // True when some cycle of the graph visits every saddle exactly once.
    bool single_cycle() const;
    bool connected() const;
    int boundary_branches() const;
};

SaddleGraph trace_separatrices(const ReducedChart& chart, const EnergyField& field,
                               const std::vector<CriticalPoint>& points);

enum class FamilyKind { center, collision, mixed, wrapping, boundary, empty };
std::string family_name(FamilyKind k);

struct ContourFamily {
    FamilyKind kind = FamilyKind::empty;
    // Indices of enclosed centers (critical-point list) and masked components.
    std::vector<int> centers;
    std::vector<int> masks;
    int contours = 0;
};

// Connected components of masked nodes, each given by one representative node.
std::vector<ReducedPoint> mask_components(const EnergyField& field);

FamilyKind classify_contour(const EnergyField& field, const Contour& c, const std::vector<CriticalPoint>& points,
                            const std::vector<ReducedPoint>& masks, std::vector<int>* centers = nullptr,
                            std::vector<int>* enclosed_masks = nullptr);

// Winding number of a closed contour about q, periodic axes folded.
int winding_number(const EnergyField& field, const Contour& c, ReducedPoint q);

struct PortraitOptions {
    int nu = kDefaultResolution;
    int nv = kDefaultResolution;
    std::optional<SampleRanges> ranges;
    // Explicit levels; when empty, `level_count` quantile levels are used.
    std::vector<double> levels;
    int level_count = 24;
    bool trace = true;
};

struct PortraitSummary {
    int centers = 0;
    int saddles = 0;
    int degenerate = 0;
    std::vector<ContourFamily> families;
    bool saddle_cycle = false;
};

struct Portrait {
    EnergyField field;
    CriticalSearch critical;
    std::vector<Contour> contours;
    SaddleGraph graph;
    std::vector<ReducedPoint> masks;
    PortraitSummary summary;
    // Index into summary.families for every contour.
    std::vector<int> contour_family;
};

// Quantile levels of the finite field values, excluding the extreme 2% tails.
std::vector<double> default_levels(const EnergyField& field, int count);

Portrait compute_portrait(const ReducedChart& chart, const PortraitOptions& options = {});

struct ScanRow {
    double mu = 0.0;
    int centers = 0;
    int saddles = 0;
    int degenerate = 0;
    std::string error;
};

struct CountChange {
    double mu_from = 0.0;
    double mu_to = 0.0;
    int total_from = 0;
    int total_to = 0;
};

// Critical-point counts of chart_at(mu) for every mu in order.
std::vector<ScanRow> scan_bifurcation(const std::function<ReducedChart(double)>& chart_at,
                                      const std::vector<double>& mus, int resolution = kDefaultResolution);
// Consecutive rows whose total count differs.
std::vector<CountChange> count_changes(const std::vector<ScanRow>& rows);

}  // namespace vrpo
