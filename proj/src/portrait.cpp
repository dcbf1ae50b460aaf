#include "vrpo/portrait.hpp"

#include "vrpo/errors.hpp"

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <queue>
#include <unordered_map>

namespace vrpo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double fold_difference(const GridAxis& a, double d) { return a.periodic ? std::remainder(d, a.span()) : d; }

double fold_coordinate(const GridAxis& a, double x) {
    if (!a.periodic) return x;
    double r = std::fmod(x - a.lo, a.span());
    if (r < 0) r += a.span();
    return a.lo + r;
}

}  // namespace

int GridAxis::fold(int k) const {
    if (!periodic) return k;
    k %= n;
    return k < 0 ? k + n : k;
}

bool EnergyField::masked(int i, int j) const { return !std::isfinite(at(i, j)); }

std::array<double, 2> EnergyField::difference(ReducedPoint a, ReducedPoint b) const {
    return {fold_difference(u, b.u - a.u), fold_difference(v, b.v - a.v)};
}

ReducedPoint EnergyField::wrap(ReducedPoint p) const { return {fold_coordinate(u, p.u), fold_coordinate(v, p.v)}; }

double EnergyField::cell_distance(ReducedPoint a, ReducedPoint b) const {
    const auto d = difference(a, b);
    return std::hypot(d[0] / u.step(), d[1] / v.step());
}

int EnergyField::masked_count() const {
    return static_cast<int>(std::count_if(values.begin(), values.end(), [](double x) { return !std::isfinite(x); }));
}

SampleRanges default_ranges(const ReducedChart& chart) {
    const Axis& u = chart.u_axis();
    const Axis& v = chart.v_axis();
    auto lo = [](const Axis& a) { return a.periodic ? a.lo : a.lo + kDefaultMargin; };
    auto hi = [](const Axis& a) { return a.periodic || !a.bounded ? a.hi : a.hi - kDefaultMargin; };
    return {lo(u), hi(u), lo(v), hi(v)};
}

namespace {

GridAxis make_axis(const Axis& a, double lo, double hi, int n) {
    if (!(hi > lo)) throw InvalidInput(fmt::format("empty sampling range for {}", a.name));
    const bool periodic = a.periodic && std::abs((hi - lo) - a.span()) < 1e-12;
    return {lo, hi, n, periodic};
}

Evaluator chart_evaluator(const ReducedChart& chart) {
    return [chart](ReducedPoint p) {
        const auto x = chart.try_lift(chart.wrap(p));
        if (!x || min_pair_distance(*x) <= kDefaultCollisionThreshold) return kNaN;
        return hamiltonian_unchecked(chart.system(), x->points());
    };
}

}  // namespace

EnergyField sample_field(const ReducedChart& chart, int nu, int nv, std::optional<SampleRanges> ranges) {
    if (nu < 16 || nv < 16) throw InvalidInput(fmt::format("resolution {}x{} is below 16 per axis", nu, nv));
    const SampleRanges r = ranges.value_or(default_ranges(chart));
    EnergyField f;
    f.u = make_axis(chart.u_axis(), r.u_lo, r.u_hi, nu);
    f.v = make_axis(chart.v_axis(), r.v_lo, r.v_hi, nv);
    f.values.assign(static_cast<std::size_t>(nu) * nv, kNaN);
    const double mask = std::max(kDefaultCollisionThreshold, std::hypot(f.u.step(), f.v.step()));
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            const auto x = chart.try_lift(f.node(i, j));
            if (!x || min_pair_distance(*x) <= mask) continue;
            f.values[static_cast<std::size_t>(i) * nv + j] = hamiltonian_unchecked(chart.system(), x->points());
        }
    }
    if (f.masked_count() == nu * nv) throw InfeasibleError("every sample of the field is infeasible");
    f.evaluate = chart_evaluator(chart);
    return f;
}

EnergyField sample_function(const Evaluator& fn, GridAxis u, GridAxis v) {
    if (u.n < 2 || v.n < 2) throw InvalidInput("a field needs at least 2 nodes per axis");
    EnergyField f;
    f.u = u;
    f.v = v;
    f.values.resize(static_cast<std::size_t>(u.n) * v.n);
    for (int i = 0; i < u.n; ++i)
        for (int j = 0; j < v.n; ++j) {
            const double x = fn(f.node(i, j));
            f.values[static_cast<std::size_t>(i) * v.n + j] = std::isfinite(x) ? x : kNaN;
        }
    f.evaluate = fn;
    return f;
}

// ---------------------------------------------------------------- contours

namespace {

struct EdgeSolver {
    const EnergyField& field;
    double level;
    std::unordered_map<long long, ReducedPoint> cache;

    long long key(int dir, int i, int j) const {
        return (static_cast<long long>(dir) * field.u.n + i) * field.v.n + j;
    }

    // Crossing on the edge from node (i, j) one step along `dir` (0: u, 1: v).
    ReducedPoint point(int dir, int i, int j) {
        const long long k = key(dir, i, j);
        if (auto it = cache.find(k); it != cache.end()) return it->second;
        const int i1 = dir == 0 ? field.u.fold(i + 1) : i;
        const int j1 = dir == 1 ? field.v.fold(j + 1) : j;
        const double fa = field.at(i, j) - level;
        const double fb = field.at(i1, j1) - level;
        const ReducedPoint a = field.node(i, j);
        const ReducedPoint b{dir == 0 ? a.u + field.u.step() : a.u, dir == 1 ? a.v + field.v.step() : a.v};
        const double t = refine(a, b, fa, fb);
        const ReducedPoint p = field.wrap({a.u + t * (b.u - a.u), a.v + t * (b.v - a.v)});
        cache.emplace(k, p);
        return p;
    }

    // Illinois regula falsi along the edge; the linear estimate when the
    // field carries no evaluator or the evaluator fails inside the edge.
    double refine(ReducedPoint a, ReducedPoint b, double fa, double fb) const {
        const double linear = fa == fb ? 0.5 : fa / (fa - fb);
        if (!field.evaluate || fa == 0.0) return fa == 0.0 ? 0.0 : linear;
        if (fb == 0.0) return 1.0;
        auto g = [&](double t) { return field.evaluate({a.u + t * (b.u - a.u), a.v + t * (b.v - a.v)}) - level; };
        const double tol = 1e-13 * std::max(1.0, std::abs(level));
        double lo = 0.0, hi = 1.0, glo = fa, ghi = fb;
        double t = linear;
        int side = 0;
        for (int it = 0; it < 100; ++it) {
            t = (lo * ghi - hi * glo) / (ghi - glo);
            const double gt = g(t);
            if (!std::isfinite(gt)) return linear;
            if (std::abs(gt) <= tol || hi - lo < 1e-15) break;
            if ((gt > 0) == (ghi > 0)) {
                hi = t;
                ghi = gt;
                if (side == -1) glo /= 2;
                side = -1;
            } else {
                lo = t;
                glo = gt;
                if (side == 1) ghi /= 2;
                side = 1;
            }
        }
        return t;
    }
};

}  // namespace

std::vector<Contour> extract_contours(const EnergyField& field, double level) {
    if (!std::isfinite(level)) throw InvalidInput("contour level must be finite");
    EdgeSolver solver{field, level, {}};
    struct Segment {
        long long a, b;
    };
    std::vector<Segment> segments;
    std::unordered_map<long long, std::vector<int>> at_edge;
    std::unordered_map<long long, ReducedPoint> points;

    auto add = [&](std::array<int, 3> ea, std::array<int, 3> eb) {
        const long long ka = solver.key(ea[0], ea[1], ea[2]);
        const long long kb = solver.key(eb[0], eb[1], eb[2]);
        points.emplace(ka, solver.point(ea[0], ea[1], ea[2]));
        points.emplace(kb, solver.point(eb[0], eb[1], eb[2]));
        const int s = static_cast<int>(segments.size());
        segments.push_back({ka, kb});
        at_edge[ka].push_back(s);
        at_edge[kb].push_back(s);
    };

    for (int i = 0; i < field.u.cells(); ++i) {
        const int i1 = field.u.fold(i + 1);
        for (int j = 0; j < field.v.cells(); ++j) {
            const int j1 = field.v.fold(j + 1);
            const double f[4] = {field.at(i, j), field.at(i1, j), field.at(i1, j1), field.at(i, j1)};
            if (!std::isfinite(f[0]) || !std::isfinite(f[1]) || !std::isfinite(f[2]) || !std::isfinite(f[3]))
                continue;
            const bool up[4] = {f[0] >= level, f[1] >= level, f[2] >= level, f[3] >= level};
            // Edges: e0 = a-b, e1 = b-c, e2 = d-c, e3 = a-d.
            const std::array<int, 3> e[4] = {{0, i, j}, {1, i1, j}, {0, i, j1}, {1, i, j}};
            const bool cross[4] = {up[0] != up[1], up[1] != up[2], up[3] != up[2], up[0] != up[3]};
            const int n = cross[0] + cross[1] + cross[2] + cross[3];
            if (n == 0) continue;
            if (n == 2) {
                int first = -1, second = -1;
                for (int k = 0; k < 4; ++k)
                    if (cross[k]) (first < 0 ? first : second) = k;
                add(e[first], e[second]);
                continue;
            }
            // Saddle cell: the centre sample decides whether a and c connect.
            double centre = kNaN;
            if (field.evaluate)
                centre = field.evaluate(field.wrap({field.u.node(i) + 0.5 * field.u.step(),
                                                    field.v.node(j) + 0.5 * field.v.step()}));
            if (!std::isfinite(centre)) centre = 0.25 * (f[0] + f[1] + f[2] + f[3]);
            if ((centre >= level) == up[0]) {
                add(e[0], e[1]);
                add(e[2], e[3]);
            } else {
                add(e[3], e[0]);
                add(e[1], e[2]);
            }
        }
    }

    std::vector<char> used(segments.size(), 0);
    std::vector<Contour> out;
    auto walk = [&](long long start, int seg) {
        Contour c;
        c.level = level;
        c.points.push_back(points.at(start));
        long long cur = start;
        while (seg >= 0) {
            used[static_cast<std::size_t>(seg)] = 1;
            cur = segments[static_cast<std::size_t>(seg)].a == cur ? segments[static_cast<std::size_t>(seg)].b
                                                                   : segments[static_cast<std::size_t>(seg)].a;
            c.points.push_back(points.at(cur));
            if (cur == start) {
                c.closed = true;
                break;
            }
            seg = -1;
            for (int s : at_edge.at(cur))
                if (!used[static_cast<std::size_t>(s)]) seg = s;
        }
        out.push_back(std::move(c));
    };
    // Open chains start at edges touched by a single segment; iterate in key
    // order for deterministic output.
    std::map<long long, std::vector<int>> ordered(at_edge.begin(), at_edge.end());
    for (const auto& [k, segs] : ordered)
        if (segs.size() == 1 && !used[static_cast<std::size_t>(segs[0])]) walk(k, segs[0]);
    for (std::size_t s = 0; s < segments.size(); ++s)
        if (!used[s]) walk(segments[s].a, static_cast<int>(s));
    return out;
}

// ---------------------------------------------------------- critical points

std::string kind_name(CriticalKind k) {
    switch (k) {
        case CriticalKind::center: return "center";
        case CriticalKind::saddle: return "saddle";
        case CriticalKind::degenerate: return "degenerate";
    }
    return "?";
}

int CriticalSearch::count(CriticalKind k) const {
    return static_cast<int>(std::count_if(points.begin(), points.end(), [k](const auto& p) { return p.kind == k; }));
}

namespace {

bool in_ranges(const EnergyField& f, ReducedPoint p) {
    const bool u_ok = f.u.periodic || (p.u >= f.u.lo && p.u <= f.u.hi);
    const bool v_ok = f.v.periodic || (p.v >= f.v.lo && p.v <= f.v.hi);
    return u_ok && v_ok;
}

CriticalKind classify(const std::array<double, 3>& h, double* det_out) {
    const double det = h[0] * h[2] - h[1] * h[1];
    const double scale2 = h[0] * h[0] + 2.0 * h[1] * h[1] + h[2] * h[2];
    *det_out = det;
    if (std::abs(det) < 1e-10 * scale2 || scale2 == 0.0) return CriticalKind::degenerate;
    return det > 0 ? CriticalKind::center : CriticalKind::saddle;
}

std::optional<ReducedPoint> newton(const ReducedChart& chart, const EnergyField& field, ReducedPoint p) {
    const double du = field.u.step();
    const double dv = field.v.step();
    try {
        for (int it = 0; it < 60; ++it) {
            const auto g = chart.reduced_gradient_fine(p);
            const auto h = chart.reduced_hessian(p);
            const double det = h[0] * h[2] - h[1] * h[1];
            if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
            double su = -(h[2] * g[0] - h[1] * g[1]) / det;
            double sv = -(-h[1] * g[0] + h[0] * g[1]) / det;
            const double cells = std::hypot(su / du, sv / dv);
            if (!std::isfinite(cells)) return std::nullopt;
            if (cells > 2.0) {
                su *= 2.0 / cells;
                sv *= 2.0 / cells;
            }
            p = chart.wrap({p.u + su, p.v + sv});
            if (!in_ranges(field, p) || !chart.feasible(p)) return std::nullopt;
            if (cells < 1e-9) return p;
        }
    } catch (const Error&) {
        return std::nullopt;
    }
    return p;
}

}  // namespace

CriticalSearch find_critical_points(const ReducedChart& chart, const EnergyField& field) {
    const int nu = field.u.n;
    const int nv = field.v.n;
    std::vector<double> gu(static_cast<std::size_t>(nu) * nv, kNaN), gv(gu.size(), kNaN);
    auto idx = [nv](int i, int j) { return static_cast<std::size_t>(i) * nv + j; };
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            const bool u_edge = !field.u.periodic && (i == 0 || i == nu - 1);
            const bool v_edge = !field.v.periodic && (j == 0 || j == nv - 1);
            if (!u_edge)
                gu[idx(i, j)] = (field.at(field.u.fold(i + 1), j) - field.at(field.u.fold(i - 1), j)) /
                                (2.0 * field.u.step());
            if (!v_edge)
                gv[idx(i, j)] = (field.at(i, field.v.fold(j + 1)) - field.at(i, field.v.fold(j - 1))) /
                                (2.0 * field.v.step());
        }
    }

    CriticalSearch out;
    for (int i = 0; i < field.u.cells(); ++i) {
        const int i1 = field.u.fold(i + 1);
        for (int j = 0; j < field.v.cells(); ++j) {
            const int j1 = field.v.fold(j + 1);
            const std::size_t corners[4] = {idx(i, j), idx(i1, j), idx(i1, j1), idx(i, j1)};
            double umin = INFINITY, umax = -INFINITY, vmin = INFINITY, vmax = -INFINITY;
            bool ok = true;
            for (auto c : corners) {
                if (!std::isfinite(gu[c]) || !std::isfinite(gv[c])) ok = false;
                umin = std::min(umin, gu[c]);
                umax = std::max(umax, gu[c]);
                vmin = std::min(vmin, gv[c]);
                vmax = std::max(vmax, gv[c]);
            }
            if (!ok || !(umin <= 0 && umax >= 0 && vmin <= 0 && vmax >= 0)) continue;
            ++out.seeds;
            const ReducedPoint seed =
                field.wrap({field.u.node(i) + 0.5 * field.u.step(), field.v.node(j) + 0.5 * field.v.step()});
            const auto p = newton(chart, field, seed);
            if (!p) {
                ++out.discarded;
                continue;
            }
            double gnorm = INFINITY;
            try {
                const auto g = chart.reduced_gradient_fine(*p);
                gnorm = std::hypot(g[0], g[1]);
            } catch (const Error&) {
            }
            if (!(gnorm < 1e-8)) {
                ++out.discarded;
                continue;
            }
            const bool duplicate = std::any_of(out.points.begin(), out.points.end(), [&](const CriticalPoint& q) {
                const auto d = chart.difference(q.location, *p);
                return std::abs(d[0]) < 1e-6 && std::abs(d[1]) < 1e-6;
            });
            if (duplicate) continue;
            CriticalPoint cp;
            cp.location = *p;
            cp.energy = chart.reduced_hamiltonian(*p);
            cp.hessian = chart.reduced_hessian(*p);
            cp.kind = classify(cp.hessian, &cp.hessian_det);
            cp.gradient_norm = gnorm;
            out.points.push_back(cp);
        }
    }
    std::sort(out.points.begin(), out.points.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
        return a.location.u != b.location.u ? a.location.u < b.location.u : a.location.v < b.location.v;
    });
    return out;
}

void flag_separatrix_candidates(std::vector<Contour>& contours, const std::vector<CriticalPoint>& points) {
    for (auto& c : contours)
        for (const auto& p : points)
            if (std::abs(c.level - p.energy) <= 1e-9 * std::max(1.0, std::abs(p.energy))) c.separatrix_candidate = true;
}

// ------------------------------------------------------------- separatrices

bool SaddleGraph::connected() const {
    if (saddles.empty()) return true;
    std::map<int, std::vector<int>> adj;
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> seen{saddles.front()};
    std::queue<int> q;
    q.push(saddles.front());
    while (!q.empty()) {
        const int a = q.front();
        q.pop();
        for (int b : adj[a])
            if (std::find(seen.begin(), seen.end(), b) == seen.end()) {
                seen.push_back(b);
                q.push(b);
            }
    }
    return std::all_of(saddles.begin(), saddles.end(),
                       [&](int s) { return std::find(seen.begin(), seen.end(), s) != seen.end(); });
}

int SaddleGraph::boundary_branches() const {
    return static_cast<int>(
        std::count_if(branches.begin(), branches.end(), [](const auto& b) { return b.end == BranchEnd::boundary; }));
}

bool SaddleGraph::single_cycle() const {
    const std::size_t n = saddles.size();
    if (n == 0) return false;
    auto joined = [&](int a, int b) {
        return std::any_of(edges.begin(), edges.end(), [&](const auto& e) {
            return (e.first == a && e.second == b) || (e.first == b && e.second == a);
        });
    };
    if (n == 1) return joined(saddles[0], saddles[0]);
    if (n == 2) {
        const int links = static_cast<int>(std::count_if(branches.begin(), branches.end(), [&](const auto& br) {
            return br.end == BranchEnd::saddle && br.saddle != br.target &&
                   (br.saddle == saddles[0] || br.saddle == saddles[1]);
        }));
        // Each connecting orbit is traced from both of its ends.
        return links >= 4;
    }
    // Hamiltonian cycle by backtracking; saddle counts are small.
    std::vector<int> path{saddles[0]};
    std::vector<char> on(n, 0);
    on[0] = 1;
    std::function<bool()> extend = [&]() -> bool {
        if (path.size() == n) return joined(path.back(), path.front());
        for (std::size_t k = 1; k < n; ++k) {
            if (on[k] || !joined(path.back(), saddles[k])) continue;
            on[k] = 1;
            path.push_back(saddles[k]);
            if (extend()) return true;
            path.pop_back();
            on[k] = 0;
        }
        return false;
    };
    return extend();
}

namespace {

struct Marcher {
    const ReducedChart& chart;
    const EnergyField& field;
    const std::vector<CriticalPoint>& points;
    double du, dv;

    std::optional<std::array<double, 2>> gradient(ReducedPoint p) const {
        try {
            return chart.reduced_gradient(p);
        } catch (const Error&) {
            return std::nullopt;
        }
    }

    // Newton along the gradient back onto the level; nullopt on failure.
    std::optional<ReducedPoint> correct(ReducedPoint p, double level) const {
        const double tol = 1e-10 * std::max(1.0, std::abs(level));
        for (int it = 0; it < 12; ++it) {
            const double e = field.evaluate(p);
            if (!std::isfinite(e)) return std::nullopt;
            const double r = e - level;
            if (std::abs(r) <= tol) return p;
            const auto g = gradient(p);
            if (!g) return std::nullopt;
            const double g2 = (*g)[0] * (*g)[0] + (*g)[1] * (*g)[1];
            if (!(g2 > 0)) return std::nullopt;
            double su = -r * (*g)[0] / g2, sv = -r * (*g)[1] / g2;
            const double cells = std::hypot(su / du, sv / dv);
            if (cells > 0.5) {
                su *= 0.5 / cells;
                sv *= 0.5 / cells;
            }
            p = chart.wrap({p.u + su, p.v + sv});
        }
        return std::nullopt;
    }

    SeparatrixBranch march(int saddle, std::array<double, 2> dir) const {
        constexpr double kStart = 1.5;
        constexpr double kStep = 0.5;
        constexpr double kArrive = 2.0;
        const CriticalPoint& s = points[static_cast<std::size_t>(saddle)];
        const double level = s.energy;
        SeparatrixBranch b;
        b.saddle = saddle;
        b.path.level = level;
        b.path.separatrix_candidate = true;
        b.path.points.push_back(s.location);
        const int max_steps = 8 * (field.u.n + field.v.n);
        auto p = correct(chart.wrap({s.location.u + kStart * dir[0] * du, s.location.v + kStart * dir[1] * dv}),
                         level);
        if (!p || !in_ranges(field, *p)) {
            b.end = BranchEnd::boundary;
            return b;
        }
        b.path.points.push_back(*p);
        double travelled = kStart;
        std::array<double, 2> prev = dir;
        for (int step = 0; step < max_steps; ++step) {
            const auto g = gradient(*p);
            if (!g) {
                b.end = BranchEnd::boundary;
                return b;
            }
            // Tangent in cell units.
            double tu = -(*g)[1] * dv, tv = (*g)[0] * du;
            const double norm = std::hypot(tu, tv);
            if (!(norm > 0)) {
                b.end = BranchEnd::boundary;
                return b;
            }
            tu /= norm;
            tv /= norm;
            if (tu * prev[0] + tv * prev[1] < 0) {
                tu = -tu;
                tv = -tv;
            }
            const auto q = correct(chart.wrap({p->u + kStep * tu * du, p->v + kStep * tv * dv}), level);
            if (!q || !in_ranges(field, *q)) {
                b.end = BranchEnd::boundary;
                return b;
            }
            const auto d = field.difference(*p, *q);
            const double moved = std::hypot(d[0] / du, d[1] / dv);
            if (moved > 0) prev = {d[0] / du / moved, d[1] / dv / moved};
            travelled += moved;
            b.path.points.push_back(*q);
            p = q;
            for (std::size_t k = 0; k < points.size(); ++k) {
                const auto& t = points[k];
                if (t.kind != CriticalKind::saddle && t.kind != CriticalKind::degenerate) continue;
                if (std::abs(t.energy - level) > 1e-6 * std::max(1.0, std::abs(level))) continue;
                if (static_cast<int>(k) == saddle && travelled < 4.0 * kStart) continue;
                if (field.cell_distance(*p, t.location) < kArrive) {
                    b.end = BranchEnd::saddle;
                    b.target = static_cast<int>(k);
                    b.path.points.push_back(t.location);
                    return b;
                }
            }
        }
        b.end = BranchEnd::unterminated;
        return b;
    }
};

}  // namespace

SaddleGraph trace_separatrices(const ReducedChart& chart, const EnergyField& field,
                               const std::vector<CriticalPoint>& points) {
    SaddleGraph g;
    const Marcher m{chart, field, points, field.u.step(), field.v.step()};
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (points[k].kind != CriticalKind::saddle) continue;
        g.saddles.push_back(static_cast<int>(k));
        const auto& h = points[k].hessian;
        // Hessian in cell units; its null cone gives the separatrix directions.
        Eigen::Matrix2d hn;
        hn << h[0] * m.du * m.du, h[1] * m.du * m.dv, h[1] * m.du * m.dv, h[2] * m.dv * m.dv;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(hn);
        const double lneg = es.eigenvalues()(0);
        const double lpos = es.eigenvalues()(1);
        const Eigen::Vector2d eneg = es.eigenvectors().col(0);
        const Eigen::Vector2d epos = es.eigenvectors().col(1);
        for (int sign : {1, -1}) {
            Eigen::Vector2d d = std::sqrt(lpos) * eneg + sign * std::sqrt(-lneg) * epos;
            d.normalize();
            for (double orient : {1.0, -1.0}) {
                g.branches.push_back(m.march(static_cast<int>(k), {orient * d(0), orient * d(1)}));
            }
        }
    }
    for (const auto& b : g.branches) {
        if (b.end != BranchEnd::saddle) continue;
        std::pair<int, int> e{std::min(b.saddle, b.target), std::max(b.saddle, b.target)};
        if (std::find(g.edges.begin(), g.edges.end(), e) == g.edges.end()) g.edges.push_back(e);
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

// ----------------------------------------------------------------- families

std::string family_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::center: return "center";
        case FamilyKind::collision: return "collision";
        case FamilyKind::mixed: return "mixed";
        case FamilyKind::wrapping: return "wrapping";
        case FamilyKind::boundary: return "boundary";
        case FamilyKind::empty: return "empty";
    }
    return "?";
}

std::vector<ReducedPoint> mask_components(const EnergyField& field) {
    const int nu = field.u.n;
    const int nv = field.v.n;
    std::vector<char> seen(static_cast<std::size_t>(nu) * nv, 0);
    std::vector<ReducedPoint> out;
    for (int i0 = 0; i0 < nu; ++i0) {
        for (int j0 = 0; j0 < nv; ++j0) {
            if (!field.masked(i0, j0) || seen[static_cast<std::size_t>(i0) * nv + j0]) continue;
            out.push_back(field.node(i0, j0));
            std::queue<std::pair<int, int>> q;
            q.emplace(i0, j0);
            seen[static_cast<std::size_t>(i0) * nv + j0] = 1;
            while (!q.empty()) {
                const auto [i, j] = q.front();
                q.pop();
                const std::pair<int, int> nb[4] = {{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}};
                for (auto [a, b] : nb) {
                    a = field.u.fold(a);
                    b = field.v.fold(b);
                    if (a < 0 || a >= nu || b < 0 || b >= nv) continue;
                    const std::size_t k = static_cast<std::size_t>(a) * nv + b;
                    if (seen[k] || !field.masked(a, b)) continue;
                    seen[k] = 1;
                    q.emplace(a, b);
                }
            }
        }
    }
    return out;
}

int winding_number(const EnergyField& field, const Contour& c, ReducedPoint q) {
    if (!c.closed || c.points.size() < 3) return 0;
    double total = 0.0;
    auto rel = [&](ReducedPoint p) {
        const auto d = field.difference(q, p);
        return std::array<double, 2>{d[0] / field.u.step(), d[1] / field.v.step()};
    };
    auto a = rel(c.points.front());
    for (std::size_t k = 1; k < c.points.size(); ++k) {
        const auto b = rel(c.points[k]);
        total += std::atan2(a[0] * b[1] - a[1] * b[0], a[0] * b[0] + a[1] * b[1]);
        a = b;
    }
    return static_cast<int>(std::lround(total / kTwoPi));
}

FamilyKind classify_contour(const EnergyField& field, const Contour& c, const std::vector<CriticalPoint>& points,
                            const std::vector<ReducedPoint>& masks, std::vector<int>* centers,
                            std::vector<int>* enclosed_masks) {
    if (!c.closed) return FamilyKind::boundary;
    double su = 0.0, sv = 0.0;
    for (std::size_t k = 1; k < c.points.size(); ++k) {
        const auto d = field.difference(c.points[k - 1], c.points[k]);
        su += d[0];
        sv += d[1];
    }
    if (std::abs(su) > 0.5 * field.u.span() || std::abs(sv) > 0.5 * field.v.span()) return FamilyKind::wrapping;
    std::vector<int> cs, ms;
    for (std::size_t k = 0; k < points.size(); ++k)
        if (points[k].kind == CriticalKind::center && winding_number(field, c, points[k].location) != 0)
            cs.push_back(static_cast<int>(k));
    for (std::size_t k = 0; k < masks.size(); ++k)
        if (winding_number(field, c, masks[k]) != 0) ms.push_back(static_cast<int>(k));
    if (centers) *centers = cs;
    if (enclosed_masks) *enclosed_masks = ms;
    if (!cs.empty() && !ms.empty()) return FamilyKind::mixed;
    if (!cs.empty()) return FamilyKind::center;
    if (!ms.empty()) return FamilyKind::collision;
    return FamilyKind::empty;
}

// ----------------------------------------------------------------- portrait

std::vector<double> default_levels(const EnergyField& field, int count) {
    std::vector<double> finite;
    for (double x : field.values)
        if (std::isfinite(x)) finite.push_back(x);
    std::sort(finite.begin(), finite.end());
    std::vector<double> out;
    if (finite.empty() || count <= 0) return out;
    for (int k = 0; k < count; ++k) {
        const double q = 0.02 + 0.96 * (k + 0.5) / count;
        const auto idx = static_cast<std::size_t>(q * static_cast<double>(finite.size() - 1));
        const double level = finite[idx];
        if (out.empty() || level > out.back()) out.push_back(level);
    }
    return out;
}

Portrait compute_portrait(const ReducedChart& chart, const PortraitOptions& options) {
    Portrait p;
    p.field = sample_field(chart, options.nu, options.nv, options.ranges);
    p.critical = find_critical_points(chart, p.field);
    const auto levels = options.levels.empty() ? default_levels(p.field, options.level_count) : options.levels;
    for (double level : levels) {
        auto cs = extract_contours(p.field, level);
        p.contours.insert(p.contours.end(), std::make_move_iterator(cs.begin()), std::make_move_iterator(cs.end()));
    }
    flag_separatrix_candidates(p.contours, p.critical.points);
    if (options.trace) p.graph = trace_separatrices(chart, p.field, p.critical.points);
    p.masks = mask_components(p.field);

    auto& s = p.summary;
    s.centers = p.critical.count(CriticalKind::center);
    s.saddles = p.critical.count(CriticalKind::saddle);
    s.degenerate = p.critical.count(CriticalKind::degenerate);
    s.saddle_cycle = options.trace && p.graph.single_cycle();
    for (const auto& c : p.contours) {
        ContourFamily f;
        f.kind = classify_contour(p.field, c, p.critical.points, p.masks, &f.centers, &f.masks);
        auto it = std::find_if(s.families.begin(), s.families.end(), [&](const ContourFamily& g) {
            return g.kind == f.kind && g.centers == f.centers && g.masks == f.masks;
        });
        if (it == s.families.end()) {
            f.contours = 1;
            p.contour_family.push_back(static_cast<int>(s.families.size()));
            s.families.push_back(std::move(f));
        } else {
            ++it->contours;
            p.contour_family.push_back(static_cast<int>(it - s.families.begin()));
        }
    }
    return p;
}

// --------------------------------------------------------------------- scan

std::vector<ScanRow> scan_bifurcation(const std::function<ReducedChart(double)>& chart_at,
                                      const std::vector<double>& mus, int resolution) {
    for (std::size_t k = 1; k < mus.size(); ++k)
        if ((mus[k] - mus[k - 1]) * (mus.back() - mus.front()) <= 0)
            throw InvalidInput("momentum grid must be strictly monotone");
    std::vector<ScanRow> rows;
    for (double mu : mus) {
        ScanRow r;
        r.mu = mu;
        try {
            const auto chart = chart_at(mu);
            const auto field = sample_field(chart, resolution, resolution);
            const auto found = find_critical_points(chart, field);
            r.centers = found.count(CriticalKind::center);
            r.saddles = found.count(CriticalKind::saddle);
            r.degenerate = found.count(CriticalKind::degenerate);
        } catch (const Error& e) {
            r.error = e.what();
        }
        rows.push_back(r);
    }
    return rows;
}

std::vector<CountChange> count_changes(const std::vector<ScanRow>& rows) {
    std::vector<CountChange> out;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const auto& a = rows[k - 1];
        const auto& b = rows[k];
        if (!a.error.empty() || !b.error.empty()) continue;
        const int ta = a.centers + a.saddles + a.degenerate;
        const int tb = b.centers + b.saddles + b.degenerate;
        if (ta != tb) out.push_back({a.mu, b.mu, ta, tb});
    }
    return out;
}

}  // namespace vrpo
