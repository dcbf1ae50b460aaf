#include "vrpo/commands.hpp"
#include "vrpo/config.hpp"
#include "vrpo/document.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <variant>

using namespace vrpo;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

fs::path scratch_dir(const std::string& name) {
    const auto d = fs::temp_directory_path() / ("vrpo_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

ScenarioConfig small_portrait(const fs::path& dir) {
    auto c = parse_config(R"({
        "scenario": {"type": "cn_two_rings_poles", "n": 3, "pole_vorticity": 1.0, "mu": 4.0},
        "grid": {"resolution": 80, "level_count": 10},
        "output": {"stem": "t"}})");
    c.out_dir = dir;
    return c;
}

}  // namespace

TEST_CASE("configuration documents parse into typed settings") {
    const auto c = parse_config(R"({
        "scenario": {"type": "sphere_two_rings", "n": 3, "ring_ratio": 2.0, "mu": 1.0},
        "grid": {"nu": 120, "nv": 90, "ranges": {"u": [0.1, 3.0], "v": [0.0, 6.2]}, "levels": [1.0, 2.0]},
        "integrator": {"rtol": 1e-9, "atol": 1e-11},
        "integrate": {"t_end": 3.5, "initial": {"reduced": [0.75, 3.14]}},
        "output": {"dir": "x", "stem": "y"},
        "seed": 9})");
    REQUIRE(c.scenario);
    const auto& s = std::get<SphereTwoRings>(*c.scenario);
    CHECK(s.n == 3);
    CHECK(s.ring_ratio == 2.0);
    CHECK(c.grid.nu == 120);
    CHECK(c.grid.nv == 90);
    REQUIRE(c.grid.ranges);
    CHECK(c.grid.ranges->u_hi == 3.0);
    CHECK(c.grid.levels.size() == 2);
    CHECK(c.integrator.rtol == 1e-9);
    CHECK(c.integrate.t_end == 3.5);
    REQUIRE(c.integrate.initial);
    CHECK(c.integrate.initial->reduced->u == 0.75);
    CHECK(c.out_dir == fs::path("x"));
    CHECK(c.stem == "y");
    CHECK(c.seed == 9);
}

TEST_CASE("malformed configurations are rejected") {
    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"scenario": {"type": "nope"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"scenario": {"type": "ch_pairs", "mu": 0.8, "extra": 1}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"integrator": {"rtol": -1}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"integrator": {"atol": 0}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"grid": {"resolution": 1}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"unknown": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"scenario": {"type": "dancing_vortices", "n": 0}})"), InvalidInput);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("explicit initial configurations") {
    const auto c = parse_config(R"({"integrate": {"t_end": 1, "initial": {
        "surface": "sphere", "vorticities": [1, -1], "points": [[0, 0, 1], [0, 0, -1]]}}})");
    REQUIRE(c.integrate.initial);
    REQUIRE(c.integrate.initial->system);
    CHECK(c.integrate.initial->configuration.size() == 2);
    CHECK_THROWS_AS(parse_config(R"({"integrate": {"initial": {
        "surface": "sphere", "vorticities": [1], "points": [[0, 0, 1], [0, 0, -1]]}}})"),
                    ConfigError);
}

TEST_CASE("momentum substitution and scan grids") {
    const auto s = with_mu(CnTwoRingsPoles{3, 1.0, 4.0}, 2.5);
    CHECK(std::get<CnTwoRingsPoles>(s).mu == 2.5);
    CHECK_THROWS_AS(with_mu(DancingVortices{2}, 1.0), ConfigError);
    const auto g = scan_grid({2.5, 3.1, 0.05, 100});
    REQUIRE(g.size() == 13);
    CHECK(g.front() == 2.5);
    CHECK(g.back() == doctest::Approx(3.1).epsilon(1e-14));
}

TEST_CASE("portrait files round-trip through the reader") {
    const auto dir = scratch_dir("roundtrip");
    std::ostringstream log;
    const auto r = cmd_portrait(small_portrait(dir), log);
    const auto doc = read_document(slurp(r.summary_json), slurp(r.contours_csv), slurp(r.separatrices_csv));
    CHECK(doc.count("center") == r.document.count("center"));
    CHECK(doc.count("saddle") == r.document.count("saddle"));
    REQUIRE(doc.contours.size() == r.document.contours.size());
    for (std::size_t k = 0; k < doc.contours.size(); ++k) {
        REQUIRE(doc.contours[k].points.size() == r.document.contours[k].points.size());
        for (std::size_t i = 0; i < doc.contours[k].points.size(); ++i) {
            CHECK(doc.contours[k].points[i].u == r.document.contours[k].points[i].u);
            CHECK(doc.contours[k].points[i].v == r.document.contours[k].points[i].v);
        }
    }
    CHECK(summary_json(doc) == slurp(r.summary_json));
    std::ostringstream again;
    write_contours_csv(again, doc);
    CHECK(again.str() == slurp(r.contours_csv));
    CHECK(slurp(r.contours_csv).rfind("contour_id,level,u,v\n", 0) == 0);
    const auto svg = slurp(r.svg);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(log.str().find("centers 3  saddles 3") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("coordinates stay within the declared ranges") {
    const auto dir = scratch_dir("ranges");
    std::ostringstream log;
    const auto doc = cmd_portrait(small_portrait(dir), log).document;
    const double eps = 1e-12;
    for (const auto& c : doc.contours)
        for (const auto& p : c.points) {
            CHECK(p.u >= doc.meta.u.lo - eps);
            CHECK(p.u <= doc.meta.u.hi + eps);
            CHECK(p.v >= doc.meta.v.lo - eps);
            CHECK(p.v <= doc.meta.v.hi + eps);
        }
    fs::remove_all(dir);
}

TEST_CASE("reader rejects inconsistent counts") {
    const auto dir = scratch_dir("tamper");
    std::ostringstream log;
    const auto r = cmd_portrait(small_portrait(dir), log);
    std::string contours = slurp(r.contours_csv);
    contours.erase(contours.rfind('\n', contours.size() - 2) + 1);
    CHECK_THROWS_AS(read_document(slurp(r.summary_json), contours, slurp(r.separatrices_csv)), InvalidInput);
    fs::remove_all(dir);
}

TEST_CASE("outputs are byte-identical across runs") {
    const auto a = scratch_dir("det_a"), b = scratch_dir("det_b");
    std::ostringstream log;
    const auto ra = cmd_portrait(small_portrait(a), log);
    const auto rb = cmd_portrait(small_portrait(b), log);
    CHECK(slurp(ra.contours_csv) == slurp(rb.contours_csv));
    CHECK(slurp(ra.separatrices_csv) == slurp(rb.separatrices_csv));
    CHECK(slurp(ra.summary_json) == slurp(rb.summary_json));
    CHECK(slurp(ra.svg) == slurp(rb.svg));

    auto c = parse_config(R"({"scenario": {"type": "dancing_vortices", "n": 2},
        "integrator": {"sample_interval": 0.05},
        "integrate": {"t_end": 2, "initial": {"reduced": [1.3, 0.1]}}, "output": {"stem": "d"}})");
    c.out_dir = a;
    const auto ia = cmd_integrate(c, log);
    c.out_dir = b;
    const auto ib = cmd_integrate(c, log);
    CHECK(slurp(ia.trajectory_csv) == slurp(ib.trajectory_csv));
    CHECK(slurp(ia.summary_json) == slurp(ib.summary_json));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("equilibrium input gives identical position rows") {
    const auto dir = scratch_dir("eq");
    auto c = parse_config(R"({"integrator": {"sample_interval": 0.5},
        "integrate": {"t_end": 5, "initial": {"surface": "sphere", "vorticities": [1, 1, 1, 1, 1, 1],
        "points": [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]]}},
        "output": {"stem": "eq"}})");
    c.out_dir = dir;
    std::ostringstream log;
    const auto r = cmd_integrate(c, log);
    std::istringstream csv(slurp(r.trajectory_csv));
    std::string header, line, first;
    std::getline(csv, header);
    CHECK(header.rfind("t,theta_1,phi_1,", 0) == 0);
    int rows = 0;
    while (std::getline(csv, line)) {
        // Positions: every column between t and H, Jx, Jy, Jz.
        std::string pos = line.substr(line.find(',') + 1);
        for (int k = 0; k < 4; ++k) pos.erase(pos.rfind(','));
        if (rows == 0) first = pos;
        CHECK(pos == first);
        ++rows;
    }
    CHECK(rows == 11);
    fs::remove_all(dir);
}

TEST_CASE("catalog text matches the stored tables") {
    CHECK(cmd_catalog("all") == slurp(fs::path(VRPO_FIXTURE_DIR) / "catalog_all.txt"));
    CHECK(cmd_catalog("C_i").find("SO(3)") != std::string::npos);
    CHECK_THROWS_AS(cmd_catalog("Q_7"), InvalidInput);
}

TEST_CASE("verify exit codes") {
    std::ostringstream log;
    auto c = parse_config(R"({"verify": {"suite": "equilibrium"}})");
    CHECK(cmd_verify(c, log) == kExitOk);
    c = parse_config(R"({"verify": {"suite": "equilibrium", "tolerance": 1e-30}})");
    CHECK(cmd_verify(c, log) == kExitCheckFailed);
    c = parse_config(R"({"verify": {"suite": "bogus"}})");
    CHECK(run_guarded([&] { return cmd_verify(c, log); }, log) == kExitInvalidConfig);
}

TEST_CASE("guarded runs map errors to exit codes") {
    std::ostringstream err;
    CHECK(run_guarded([] { return 0; }, err) == kExitOk);
    CHECK(run_guarded([]() -> int { throw CollisionError("close", 1e-9, 0.5); }, err) == kExitNumericalAbort);
    CHECK(err.str().find("t = 0.5") != std::string::npos);
    CHECK(run_guarded([]() -> int { throw NumericalError("underflow"); }, err) == kExitNumericalAbort);
    CHECK(run_guarded([]() -> int { throw InfeasibleError("empty"); }, err) == kExitInvalidConfig);
    CHECK(run_guarded([]() -> int { throw ConfigError("bad"); }, err) == kExitInvalidConfig);

    const auto c = parse_config(R"({"scenario": {"type": "cn_two_rings_poles", "n": 3, "mu": 100}})");
    std::ostringstream log;
    CHECK(run_guarded([&] { cmd_portrait(c, log); return 0; }, err) == kExitInvalidConfig);
}

TEST_CASE("overrides replace output directory and seed") {
    auto c = parse_config(R"({"output": {"dir": "a"}, "seed": 3})");
    c = apply_overrides(c, {fs::path("b"), 7});
    CHECK(c.out_dir == fs::path("b"));
    CHECK(c.seed == 7);
    CHECK(output_stem(parse_config(R"({"scenario": {"type": "ch_pairs", "mu": 0.8}})"), "x") != "");
}
