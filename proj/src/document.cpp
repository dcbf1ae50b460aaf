#include "vrpo/document.hpp"

#include "vrpo/config.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <ostream>
#include <sstream>

namespace vrpo {

namespace {

using nlohmann::json;

std::string end_name(BranchEnd e) {
    switch (e) {
        case BranchEnd::saddle: return "saddle";
        case BranchEnd::boundary: return "boundary";
        case BranchEnd::unterminated: return "unterminated";
    }
    return "unterminated";
}

DocumentAxis axis_of(const Axis& a, const GridAxis& g) { return {a.name, g.lo, g.hi, g.periodic, g.n}; }

json point_json(ReducedPoint p) { return json::array({p.u, p.v}); }

ReducedPoint point_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ConfigError("point must be [u, v]");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw ConfigError(fmt::format("bad number '{}' in CSV", s));
    return x;
}

int parse_int(const std::string& s) {
    char* end = nullptr;
    const long x = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0') throw ConfigError(fmt::format("bad integer '{}' in CSV", s));
    return static_cast<int>(x);
}

// Rows of a CSV whose header must equal `header`.
std::vector<std::vector<std::string>> csv_rows(const std::string& content, const std::string& header,
                                               std::size_t width) {
    std::istringstream in(content);
    std::string line;
    if (!std::getline(in, line) || line != header)
        throw ConfigError(fmt::format("CSV header must be '{}'", header));
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split(line);
        if (cells.size() != width) throw ConfigError(fmt::format("CSV row '{}' has {} cells", line, cells.size()));
        rows.push_back(std::move(cells));
    }
    return rows;
}

}  // namespace

int PortraitDocument::count(const std::string& kind) const {
    return static_cast<int>(
        std::count_if(critical.begin(), critical.end(), [&](const DocumentCritical& c) { return c.kind == kind; }));
}

std::vector<std::vector<ReducedPoint>> mask_outline(const EnergyField& field) {
    EnergyField indicator;
    indicator.u = field.u;
    indicator.v = field.v;
    indicator.values.resize(field.values.size());
    for (std::size_t k = 0; k < field.values.size(); ++k)
        indicator.values[k] = std::isfinite(field.values[k]) ? 0.0 : 1.0;
    std::vector<std::vector<ReducedPoint>> out;
    for (auto& c : extract_contours(indicator, 0.5)) out.push_back(std::move(c.points));
    return out;
}

PortraitDocument make_document(const ReducedChart& chart, const Portrait& portrait, std::vector<double> levels) {
    PortraitDocument d;
    d.meta.scenario = scenario_label(chart.scenario());
    d.meta.type = scenario_type(chart.scenario());
    d.meta.mu = chart.mu();
    d.meta.u = axis_of(chart.u_axis(), portrait.field.u);
    d.meta.v = axis_of(chart.v_axis(), portrait.field.v);
    d.meta.levels = std::move(levels);
    d.meta.masked_nodes = portrait.field.masked_count();

    for (const auto& p : portrait.critical.points)
        d.critical.push_back({kind_name(p.kind), p.location, p.energy, p.hessian_det});
    for (std::size_t k = 0; k < portrait.contours.size(); ++k) {
        const auto& c = portrait.contours[k];
        const int family = k < portrait.contour_family.size() ? portrait.contour_family[k] : -1;
        d.contours.push_back({static_cast<int>(k), c.level, c.closed, c.separatrix_candidate, family, c.points});
    }
    for (std::size_t k = 0; k < portrait.graph.branches.size(); ++k) {
        const auto& b = portrait.graph.branches[k];
        d.branches.push_back({static_cast<int>(k), b.saddle, end_name(b.end), b.target, b.path.points});
    }
    d.edges = portrait.graph.edges;
    d.saddle_cycle = portrait.summary.saddle_cycle;
    for (const auto& f : portrait.summary.families)
        d.families.push_back({family_name(f.kind), f.centers, f.masks, f.contours});
    d.mask_components = portrait.masks;
    d.mask_outline = mask_outline(portrait.field);
    return d;
}

void write_contours_csv(std::ostream& out, const PortraitDocument& doc) {
    out << "contour_id,level,u,v\n";
    for (const auto& c : doc.contours)
        for (const auto& p : c.points) out << fmt::format("{},{:.17g},{:.17g},{:.17g}\n", c.id, c.level, p.u, p.v);
}

void write_separatrices_csv(std::ostream& out, const PortraitDocument& doc) {
    out << "branch_id,saddle,end,target,u,v\n";
    for (const auto& b : doc.branches)
        for (const auto& p : b.points)
            out << fmt::format("{},{},{},{},{:.17g},{:.17g}\n", b.id, b.saddle, b.end, b.target, p.u, p.v);
}

std::string summary_json(const PortraitDocument& doc) {
    json j;
    const auto axis = [](const DocumentAxis& a) {
        return json{{"name", a.name}, {"lo", a.lo}, {"hi", a.hi}, {"periodic", a.periodic}, {"nodes", a.nodes}};
    };
    j["scenario"] = {{"label", doc.meta.scenario}, {"type", doc.meta.type}, {"mu", doc.meta.mu}};
    j["axes"] = {{"u", axis(doc.meta.u)}, {"v", axis(doc.meta.v)}};
    j["levels"] = doc.meta.levels;
    j["counts"] = {{"centers", doc.count("center")},
                   {"saddles", doc.count("saddle")},
                   {"degenerate", doc.count("degenerate")},
                   {"contours", doc.contours.size()},
                   {"branches", doc.branches.size()},
                   {"masked_nodes", doc.meta.masked_nodes}};
    json crit = json::array();
    for (std::size_t k = 0; k < doc.critical.size(); ++k) {
        const auto& c = doc.critical[k];
        crit.push_back({{"index", k},
                        {"kind", c.kind},
                        {"u", c.location.u},
                        {"v", c.location.v},
                        {"energy", c.energy},
                        {"hessian_det", c.hessian_det}});
    }
    j["critical_points"] = crit;
    json branches = json::array();
    for (const auto& b : doc.branches)
        branches.push_back({{"id", b.id},
                            {"saddle", b.saddle},
                            {"end", b.end},
                            {"target", b.target},
                            {"points", b.points.size()}});
    json edges = json::array();
    for (auto [a, b] : doc.edges) edges.push_back({a, b});
    j["separatrix_graph"] = {{"edges", edges}, {"single_cycle", doc.saddle_cycle}, {"branches", branches}};
    json contours = json::array();
    for (const auto& c : doc.contours)
        contours.push_back({{"id", c.id},
                            {"level", c.level},
                            {"closed", c.closed},
                            {"separatrix_candidate", c.separatrix_candidate},
                            {"family", c.family},
                            {"points", c.points.size()}});
    j["contours"] = contours;
    json families = json::array();
    for (const auto& f : doc.families)
        families.push_back({{"kind", f.kind}, {"centers", f.centers}, {"masks", f.masks}, {"contours", f.contours}});
    j["families"] = families;
    json comps = json::array();
    for (const auto& p : doc.mask_components) comps.push_back(point_json(p));
    json outline = json::array();
    for (const auto& line : doc.mask_outline) {
        json l = json::array();
        for (const auto& p : line) l.push_back(point_json(p));
        outline.push_back(l);
    }
    j["mask"] = {{"components", comps}, {"outline", outline}};
    return j.dump(1) + "\n";
}

PortraitDocument read_document(const std::string& summary, const std::string& contours_csv,
                               const std::string& separatrices_csv) {
    PortraitDocument d;
    try {
        const json j = json::parse(summary);
        const auto& s = j.at("scenario");
        d.meta.scenario = s.at("label").get<std::string>();
        d.meta.type = s.at("type").get<std::string>();
        d.meta.mu = s.at("mu").get<double>();
        const auto axis = [](const json& a) {
            return DocumentAxis{a.at("name").get<std::string>(), a.at("lo").get<double>(), a.at("hi").get<double>(),
                                a.at("periodic").get<bool>(), a.at("nodes").get<int>()};
        };
        d.meta.u = axis(j.at("axes").at("u"));
        d.meta.v = axis(j.at("axes").at("v"));
        d.meta.levels = j.at("levels").get<std::vector<double>>();
        d.meta.masked_nodes = j.at("counts").at("masked_nodes").get<int>();
        for (const auto& c : j.at("critical_points"))
            d.critical.push_back({c.at("kind").get<std::string>(),
                                  {c.at("u").get<double>(), c.at("v").get<double>()},
                                  c.at("energy").get<double>(),
                                  c.at("hessian_det").get<double>()});
        const auto& g = j.at("separatrix_graph");
        d.saddle_cycle = g.at("single_cycle").get<bool>();
        for (const auto& e : g.at("edges")) d.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        std::map<int, std::size_t> branch_points, contour_points;
        for (const auto& b : g.at("branches")) {
            d.branches.push_back({b.at("id").get<int>(), b.at("saddle").get<int>(), b.at("end").get<std::string>(),
                                  b.at("target").get<int>(), {}});
            branch_points[d.branches.back().id] = b.at("points").get<std::size_t>();
        }
        for (const auto& c : j.at("contours")) {
            d.contours.push_back({c.at("id").get<int>(), c.at("level").get<double>(), c.at("closed").get<bool>(),
                                  c.at("separatrix_candidate").get<bool>(), c.at("family").get<int>(), {}});
            contour_points[d.contours.back().id] = c.at("points").get<std::size_t>();
        }
        for (const auto& f : j.at("families"))
            d.families.push_back({f.at("kind").get<std::string>(), f.at("centers").get<std::vector<int>>(),
                                  f.at("masks").get<std::vector<int>>(), f.at("contours").get<int>()});
        for (const auto& p : j.at("mask").at("components")) d.mask_components.push_back(point_from(p));
        for (const auto& line : j.at("mask").at("outline")) {
            std::vector<ReducedPoint> l;
            for (const auto& p : line) l.push_back(point_from(p));
            d.mask_outline.push_back(std::move(l));
        }

        const auto& counts = j.at("counts");
        if (counts.at("centers").get<int>() != d.count("center") ||
            counts.at("saddles").get<int>() != d.count("saddle") ||
            counts.at("degenerate").get<int>() != d.count("degenerate") ||
            counts.at("contours").get<std::size_t>() != d.contours.size() ||
            counts.at("branches").get<std::size_t>() != d.branches.size())
            throw ConfigError("summary counts disagree with its lists");

        std::map<int, std::size_t> contour_index, branch_index;
        for (std::size_t k = 0; k < d.contours.size(); ++k) contour_index[d.contours[k].id] = k;
        for (std::size_t k = 0; k < d.branches.size(); ++k) branch_index[d.branches[k].id] = k;
        for (const auto& row : csv_rows(contours_csv, "contour_id,level,u,v", 4)) {
            const auto it = contour_index.find(parse_int(row[0]));
            if (it == contour_index.end()) throw ConfigError("contour CSV names an unknown contour");
            auto& c = d.contours[it->second];
            if (parse_double(row[1]) != c.level) throw ConfigError("contour CSV level disagrees with the summary");
            c.points.push_back({parse_double(row[2]), parse_double(row[3])});
        }
        for (const auto& row : csv_rows(separatrices_csv, "branch_id,saddle,end,target,u,v", 6)) {
            const auto it = branch_index.find(parse_int(row[0]));
            if (it == branch_index.end()) throw ConfigError("separatrix CSV names an unknown branch");
            d.branches[it->second].points.push_back({parse_double(row[4]), parse_double(row[5])});
        }
        for (const auto& c : d.contours)
            if (c.points.size() != contour_points[c.id])
                throw ConfigError(fmt::format("contour {} has {} vertices, summary says {}", c.id, c.points.size(),
                                              contour_points[c.id]));
        for (const auto& b : d.branches)
            if (b.points.size() != branch_points[b.id])
                throw ConfigError(fmt::format("branch {} has {} vertices, summary says {}", b.id, b.points.size(),
                                              branch_points[b.id]));
    } catch (const json::exception& e) {
        throw ConfigError(fmt::format("malformed portrait summary: {}", e.what()));
    }
    return d;
}

// ---------------------------------------------------------------------- svg

namespace {

struct Frame {
    DocumentAxis u, v;
    double left = 60, top = 20, width = 640, height = 640;

    double x(double a) const { return left + (a - u.lo) / (u.hi - u.lo) * width; }
    double y(double b) const { return top + height - (b - v.lo) / (v.hi - v.lo) * height; }
};

// Polyline path data, broken where a periodic coordinate wraps.
std::string path_data(const Frame& f, const std::vector<ReducedPoint>& pts) {
    std::string d;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        bool jump = k == 0;
        if (k > 0) {
            jump = (f.u.periodic && std::abs(pts[k].u - pts[k - 1].u) > 0.5 * (f.u.hi - f.u.lo)) ||
                   (f.v.periodic && std::abs(pts[k].v - pts[k - 1].v) > 0.5 * (f.v.hi - f.v.lo));
        }
        d += fmt::format("{}{:.2f},{:.2f} ", jump ? "M" : "L", f.x(pts[k].u), f.y(pts[k].v));
    }
    return d;
}

}  // namespace

std::string render_svg(const PortraitDocument& doc, const EnergyField& field) {
    Frame f{doc.meta.u, doc.meta.v};
    std::ostringstream os;
    const double w = f.left + f.width + 20, h = f.top + f.height + 50;
    os << fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{:.0f}" height="{:.0f}" viewBox="0 0 {:.0f} {:.0f}">)",
                      w, h, w, h)
       << "\n";
    os << fmt::format("<title>{}</title>\n", doc.meta.scenario);
    os << fmt::format(R"(<rect x="{}" y="{}" width="{}" height="{}" fill="white" stroke="black"/>)", f.left, f.top,
                      f.width, f.height)
       << "\n";

    // Masked nodes as merged runs along v.
    const double du = f.width / field.u.cells(), dv = f.height / field.v.cells();
    os << R"(<g fill="#bbbbbb" stroke="none">)" << "\n";
    for (int i = 0; i < field.u.n; ++i) {
        int j = 0;
        while (j < field.v.n) {
            if (!field.masked(i, j)) {
                ++j;
                continue;
            }
            int k = j;
            while (k + 1 < field.v.n && field.masked(i, k + 1)) ++k;
            const double x0 = f.x(field.u.node(i)) - 0.5 * du;
            const double y0 = f.y(field.v.node(k)) - 0.5 * dv;
            os << fmt::format(R"(<rect x="{:.2f}" y="{:.2f}" width="{:.2f}" height="{:.2f}"/>)", x0, y0, du,
                              (k - j + 1) * dv)
               << "\n";
            j = k + 1;
        }
    }
    os << "</g>\n";

    os << R"(<g fill="none" stroke="#555555" stroke-width="0.6">)" << "\n";
    for (const auto& c : doc.contours) os << fmt::format(R"(<path d="{}"/>)", path_data(f, c.points)) << "\n";
    os << "</g>\n";

    os << R"(<g fill="none" stroke="#1f4fd1" stroke-width="1.6">)" << "\n";
    for (const auto& b : doc.branches) os << fmt::format(R"(<path d="{}"/>)", path_data(f, b.points)) << "\n";
    os << "</g>\n";

    os << R"(<g fill="none" stroke="#a00000" stroke-width="1.2">)" << "\n";
    for (const auto& l : doc.mask_outline) os << fmt::format(R"(<path d="{}"/>)", path_data(f, l)) << "\n";
    os << "</g>\n";

    for (const auto& c : doc.critical) {
        const double x = f.x(c.location.u), y = f.y(c.location.v);
        if (c.kind == "center")
            os << fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="5" fill="#1a9e3a"/>)", x, y) << "\n";
        else if (c.kind == "saddle")
            os << fmt::format(
                      R"(<path d="M{:.2f},{:.2f} l10,10 m0,-10 l-10,10" stroke="#d10000" stroke-width="2.5"/>)",
                      x - 5, y - 5)
               << "\n";
        else
            os << fmt::format(R"(<rect x="{:.2f}" y="{:.2f}" width="9" height="9" fill="#e08a00"/>)", x - 4.5,
                              y - 4.5)
               << "\n";
    }

    os << fmt::format(R"(<text x="{:.0f}" y="{:.0f}" font-size="14" text-anchor="middle">{}</text>)",
                      f.left + 0.5 * f.width, f.top + f.height + 35, doc.meta.u.name)
       << "\n";
    os << fmt::format(R"svg(<text x="20" y="{:.0f}" font-size="14" text-anchor="middle" transform="rotate(-90 20 {:.0f})">{}</text>)svg",
                      f.top + 0.5 * f.height, f.top + 0.5 * f.height, doc.meta.v.name)
       << "\n";
    const auto tick = [&](double a) { return fmt::format("{:.3g}", a); };
    os << fmt::format(R"(<text x="{:.0f}" y="{:.0f}" font-size="11">{}</text>)", f.left, f.top + f.height + 15,
                      tick(f.u.lo))
       << "\n";
    os << fmt::format(R"(<text x="{:.0f}" y="{:.0f}" font-size="11" text-anchor="end">{}</text>)", f.left + f.width,
                      f.top + f.height + 15, tick(f.u.hi))
       << "\n";
    os << fmt::format(R"(<text x="{:.0f}" y="{:.0f}" font-size="11" text-anchor="end">{}</text>)", f.left - 4,
                      f.top + f.height, tick(f.v.lo))
       << "\n";
    os << fmt::format(R"(<text x="{:.0f}" y="{:.0f}" font-size="11" text-anchor="end">{}</text>)", f.left - 4,
                      f.top + 10, tick(f.v.hi))
       << "\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace vrpo
