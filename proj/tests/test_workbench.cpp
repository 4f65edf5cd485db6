#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "splitaffine/catalog.hpp"
#include "splitaffine/mesh.hpp"
#include "splitaffine/workbench.hpp"

using namespace splitaffine;
using namespace splitaffine::workbench;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = fs::path(SPLITAFFINE_SOURCE_DIR) / "configs";

json load(const std::string& name) {
    std::ifstream is(kConfigs / name);
    REQUIRE(is);
    return json::parse(is, nullptr, true, true);
}

RunOptions dry(std::pair<int, int> grid = {11, 11}) {
    RunOptions o;
    o.dry_run = true;
    o.grid = grid;
    o.config_dir = kConfigs.string();
    return o;
}

fs::path scratch_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("splitaffine_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

int count_prefix(const std::string& text, const std::string& prefix) {
    std::istringstream is(text);
    std::string line;
    int n = 0;
    while (std::getline(is, line)) n += line.rfind(prefix, 0) == 0;
    return n;
}

SurfaceGrid flat_grid(int ns, int nt) {
    SurfaceGrid g;
    g.ns = ns;
    g.nt = nt;
    for (int j = 0; j < nt; ++j)
        for (int i = 0; i < ns; ++i)
            g.cells.push_back({double(i), double(j), {double(i), double(j), 0.0}, {0, 0, 1}, 1.0, CellFlag::Ok});
    return g;
}

}  // namespace

TEST_CASE("grid strings") {
    CHECK(parse_grid("21x31") == std::pair<int, int>{21, 31});
    CHECK_THROWS_AS(parse_grid("1x5"), ConfigError);
    CHECK_THROWS_AS(parse_grid("abc"), ConfigError);
    CHECK_THROWS_AS(parse_grid("5x"), ConfigError);
    CHECK_THROWS_AS(parse_grid("5x5x5"), ConfigError);
    CHECK(task_names().size() == 7);
}

TEST_CASE("OBJ export") {
    std::ostringstream two;
    write_obj(two, flat_grid(2, 2));
    CHECK(count_prefix(two.str(), "v ") == 4);
    CHECK(count_prefix(two.str(), "f ") == 2);

    SurfaceGrid g = flat_grid(3, 3);
    g.at(0, 0).flag = CellFlag::Singular;
    std::ostringstream corner;
    write_obj(corner, g);
    CHECK(count_prefix(corner.str(), "v ") == 9);
    CHECK(count_prefix(corner.str(), "f ") == 6);
    g.at(1, 1).flag = CellFlag::Invalid;
    std::ostringstream centre;
    write_obj(centre, g);
    CHECK(count_prefix(centre.str(), "f ") == 0);
    CHECK(centre.str().find("v 0 0 0 # invalid") != std::string::npos);
}

TEST_CASE("singular flags") {
    SurfaceGrid g = flat_grid(4, 1);
    g.at(0, 0).rho = 0.5;
    g.at(1, 0).rho = 0.1;
    g.at(2, 0).rho = -0.3;
    g.at(3, 0).rho = 1e-12;
    flag_singular(g);
    CHECK(g.at(0, 0).flag == CellFlag::Ok);
    CHECK(g.at(1, 0).flag == CellFlag::Singular);
    CHECK(g.at(2, 0).flag == CellFlag::Ok);
    CHECK(g.at(3, 0).flag == CellFlag::Singular);
}

TEST_CASE("CSV round trip is bit-identical") {
    const AffineSurface S = build_surface(orbit_pair({Group::G3, 0.3, 0.0, 1.2, 2.5}, {-1, 1}), 0.0);
    const SurfaceGrid grid = sample_surface(S, {{-1, 1}, {-0.7, 0.9}}, 7, 5);
    std::ostringstream os;
    write_csv(os, grid);
    std::istringstream is(os.str());
    const SurfaceGrid back = read_csv(is);
    CHECK(back.ns == 7);
    CHECK(back.nt == 5);
    REQUIRE(back.cells.size() == grid.cells.size());
    for (std::size_t k = 0; k < grid.cells.size(); ++k) {
        const GridCell &a = grid.cells[k], &b = back.cells[k];
        const double va[] = {a.s, a.t, a.psi.x, a.psi.y, a.psi.z, a.N.x, a.N.y, a.N.z, a.rho};
        const double vb[] = {b.s, b.t, b.psi.x, b.psi.y, b.psi.z, b.N.x, b.N.y, b.N.z, b.rho};
        CHECK(std::memcmp(va, vb, sizeof va) == 0);
        CHECK(a.flag == b.flag);
    }
    std::ostringstream again;
    write_csv(again, back);
    CHECK(again.str() == os.str());

    std::istringstream bad("x,y\n1,2\n");
    CHECK_THROWS_AS(read_csv(bad), Error);
    std::istringstream ragged("s,t,x,y,z,nx,ny,nz,rho,flag\n0,0,0,0,0,0,0,1,1,ok\n1,0,0,0\n");
    CHECK_THROWS_AS(read_csv(ragged), Error);
}

TEST_CASE("unevaluable cells are flagged, not dropped") {
    const auto alpha = AnalyticCurve3::parse({"s", "log(s)", "s^2"}, {}, {1, 2});
    const auto pair = check_admissible(alpha, conormal_from_metric(alpha, BoundExpr::constant(1.0)));
    const AffineSurface S = build_surface(pair, 1.5);
    const SurfaceGrid grid = sample_surface(S, {{1, 2}, {-1.5, 1.5}}, 5, 7, 2);
    CHECK(grid.cells.size() == 35);
    int invalid = 0;
    for (const auto& c : grid.cells) invalid += c.flag == CellFlag::Invalid;
    CHECK(invalid > 0);
    CHECK(grid.at(2, 3).flag != CellFlag::Invalid);
}

TEST_CASE("parallel sampling equals serial sampling") {
    const AffineSurface S = build_surface(orbit_pair({Group::G2, 0.4, 0.0, 1.0, 1.0}, {-3, 3}), 0.0);
    const Window w{{-3, 3}, {-1, 1}};
    const SurfaceGrid a = sample_surface(S, w, 13, 17, 1);
    const SurfaceGrid b = sample_surface(S, w, 13, 17, 4);
    std::ostringstream oa, ob;
    write_csv(oa, a);
    write_csv(ob, b);
    CHECK(oa.str() == ob.str());
}

TEST_CASE("every shipped config runs and passes its gates") {
    for (const char* name : {"circle.json", "helicoidal_g3.json", "saddle.json", "affine_map.json", "classify_g3.json",
                             "verify_circle.json"}) {
        CAPTURE(name);
        const json cfg = load(name);
        const RunResult r = run(cfg.at("task").get<std::string>(), cfg, dry());
        CHECK(r.passed);
        CHECK(r.report.at("schema") == kSchemaVersion);
        CHECK(r.report.contains("residuals"));
        CHECK(r.report.at("config").at("task") == cfg.at("task"));
        for (const auto& g : r.gates) {
            CAPTURE(g.name);
            CHECK(g.passed);
        }
    }
    json sweep = load("sweep.json");
    sweep["count"] = 25;
    CHECK(run("sweep", sweep, dry()).passed);
}

TEST_CASE("catalog run reports the classification") {
    const RunResult r = run("catalog", load("helicoidal_g3.json"), dry());
    CHECK(r.report.at("classification").at("kind") == "CompleteNonFlat");
    CHECK(r.report.at("singular_set").empty());
    CHECK(std::find(r.files.begin(), r.files.end(), "catalog.obj") != r.files.end());
    const json off = r.report.at("closed_form_offset");
    CHECK(off[2].get<double>() == doctest::Approx(1.0));

    json ruled = {{"name", "ruled"}, {"g", "cos(s)"}, {"grid", {9, 9}}};
    const RunResult rr = run("catalog", ruled, dry());
    CHECK(rr.passed);
    CHECK(rr.report.at("residuals").at("hessian_fd").get<double>() < 1e-6);
}

TEST_CASE("cauchy run writes a table and the Hessian line") {
    RunOptions o = dry({5, 5});
    o.format = "csv";
    const RunResult r = run("cauchy", load("saddle.json"), o);
    CHECK(r.passed);
    CHECK(r.files.front() == "cauchy.csv");
    bool has_line = false;
    for (const auto& line : r.summary) has_line = has_line || line.rfind("max hessian residual:", 0) == 0;
    CHECK(has_line);
}

TEST_CASE("config errors") {
    const json circle = load("circle.json");
    auto without = [&](const char* key) {
        json c = circle;
        c.erase(key);
        return c;
    };
    CHECK_THROWS_AS(run("bjorling", without("curve"), dry()), ConfigError);
    CHECK_THROWS_AS(run("bjorling", without("params"), dry()), ConfigError);
    CHECK_THROWS_AS(run("cauchy", circle, dry()), ConfigError);
    CHECK_THROWS_AS(run("torus", json::object(), dry()), ConfigError);
    CHECK_THROWS_AS(run("bjorling", json::array(), dry()), ConfigError);
    json c = circle;
    c["grid"] = {1, 5};
    RunOptions no_override = dry();
    no_override.grid.reset();
    CHECK_THROWS_AS(run("bjorling", c, no_override), ConfigError);
    c = circle;
    c["window"]["t"] = {0.5, 0.5};
    CHECK_THROWS_AS(run("bjorling", c, dry()), ConfigError);
    c = circle;
    c["format"] = "ply";
    CHECK_THROWS_AS(run("bjorling", c, dry()), ConfigError);
    c = circle;
    c["curve"] = {"c*cos(s", "0", "0"};
    CHECK_THROWS_AS(run("bjorling", c, dry()), SyntaxError);
    c = circle;
    c["metric"] = "-m";
    CHECK_THROWS_AS(run("bjorling", c, dry()), LambdaNonPositive);
    c["allow_negative_metric"] = true;
    CHECK(run("bjorling", c, dry()).passed);
}

TEST_CASE("exit codes") {
    const fs::path out = scratch_dir("exit");
    RunOptions o;
    o.out_dir = out.string();
    o.grid = std::pair{9, 9};
    std::ostringstream sout, serr;
    CHECK(run_main("bjorling", (kConfigs / "circle.json").string(), o, sout, serr) == kOk);
    CHECK(sout.str().find("PASS metric_identity") != std::string::npos);
    CHECK(fs::exists(out / "bjorling.obj"));
    CHECK(fs::exists(out / "bjorling.report.json"));

    CHECK(run_main("bjorling", (kConfigs / "missing.json").string(), o, sout, serr) == kConfigError);
    CHECK(run_main("cauchy", (kConfigs / "circle.json").string(), o, sout, serr) == kConfigError);

    // --tol sets the quadrature tolerance; an unattainable one is a numeric failure.
    RunOptions strict = o;
    strict.tol = 1e-300;
    std::ostringstream err;
    CHECK(run_main("catalog", (kConfigs / "helicoidal_g3.json").string(), strict, sout, err) == kNumericFailure);
    CHECK(err.str().find("numeric failure") != std::string::npos);
    {
        std::ifstream in(out / "catalog.report.json");
        const json rep = json::parse(in);
        CHECK(rep.at("passed") == false);
        CHECK(rep.contains("error"));
    }

    // A gate threshold nothing can meet.
    json tight = load("helicoidal_g3.json");
    tight["tolerances"] = {{"closed_form", 1e-300}};
    std::ofstream(out / "tight.json") << tight.dump();
    std::ostringstream err1;
    CHECK(run_main("catalog", (out / "tight.json").string(), o, sout, err1) == kNumericFailure);
    CHECK(err1.str().find("gate failed: closed_form") != std::string::npos);
    {
        std::ifstream in(out / "catalog.report.json");
        const json rep = json::parse(in);
        CHECK(rep.at("passed") == false);
        bool named = false;
        for (const auto& g : rep.at("gates")) named = named || (g.at("name") == "closed_form" && g.at("passed") == false);
        CHECK(named);
    }

    // A chart window the solution does not cover.
    json wide = load("saddle.json");
    wide["window"] = {{"x", {-5, 5}}, {"y", {-1, 1}}};
    std::ofstream(out / "wide.json") << wide.dump();
    std::ostringstream err2;
    CHECK(run_main("cauchy", (out / "wide.json").string(), o, sout, err2) == kNumericFailure);
    CHECK(err2.str().find("gate failed: chart_coverage") != std::string::npos);
    fs::remove_all(out);
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
    const fs::path a = scratch_dir("det_a"), b = scratch_dir("det_b");
    for (const char* name : {"circle.json", "saddle.json"}) {
        const json cfg = load(name);
        const std::string task = cfg.at("task");
        RunOptions oa;
        oa.out_dir = a.string();
        oa.threads = 1;
        oa.grid = std::pair{9, 9};
        oa.format = "csv";
        RunOptions ob = oa;
        ob.out_dir = b.string();
        ob.threads = 4;
        const RunResult ra = run(task, cfg, oa);
        run(task, cfg, ob);
        for (const auto& f : ra.files) {
            CAPTURE(f);
            CHECK(slurp(a / f) == slurp(b / f));
        }
    }
    fs::remove_all(a);
    fs::remove_all(b);
}
