#include "splitaffine/workbench.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "splitaffine/catalog.hpp"
#include "splitaffine/cauchy.hpp"
#include "splitaffine/diagnostics.hpp"
#include "splitaffine/mesh.hpp"

namespace splitaffine::workbench {

namespace fs = std::filesystem;

const std::vector<std::string>& task_names() {
    static const std::vector<std::string> names{"bjorling", "cauchy",   "catalog", "affine-map",
                                                "verify",   "classify", "sweep"};
    return names;
}

std::pair<int, int> parse_grid(const std::string& text) {
    const auto x = text.find_first_of("xX");
    if (x == std::string::npos) throw ConfigError("grid must look like NSxNT, got '" + text + "'");
    try {
        std::size_t p1 = 0, p2 = 0;
        const int ns = std::stoi(text.substr(0, x), &p1);
        const int nt = std::stoi(text.substr(x + 1), &p2);
        if (p1 != x || p2 != text.size() - x - 1) throw std::invalid_argument(text);
        if (ns < 2 || nt < 2) throw ConfigError("grid must be at least 2x2");
        return {ns, nt};
    } catch (const std::logic_error&) {
        throw ConfigError("grid must look like NSxNT, got '" + text + "'");
    }
}

namespace {

// ---------------------------------------------------------------------------
// Config access

struct Tolerances {
    double quadrature = 1e-10;
    double admissibility = 1e-7;
    double residual = 1e-5;
    double fd_step = 1e-4;
    double closed_form = 1e-8;
    double metric = 1e-9;
    double hessian = 1e-6;
    double hessian_step = 1e-3;
    double rho = 1e-10;
};

double number_at(const json& cfg, const std::string& key, double fallback) {
    if (!cfg.contains(key)) return fallback;
    const json& v = cfg.at(key);
    if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError("'" + key + "' must be finite");
    return d;
}

std::string string_at(const json& cfg, const std::string& key) {
    if (!cfg.contains(key)) throw ConfigError("missing '" + key + "'");
    const json& v = cfg.at(key);
    if (v.is_number()) return format_double(v.get<double>());
    if (!v.is_string()) throw ConfigError("'" + key + "' must be a string");
    return v.get<std::string>();
}

Tolerances tolerances(const json& cfg, const RunOptions& opts) {
    Tolerances t;
    if (cfg.contains("tolerances")) {
        const json& j = cfg.at("tolerances");
        if (!j.is_object()) throw ConfigError("'tolerances' must be an object");
        t.quadrature = number_at(j, "quadrature", t.quadrature);
        t.admissibility = number_at(j, "admissibility", t.admissibility);
        t.residual = number_at(j, "residual", t.residual);
        t.fd_step = number_at(j, "fd_step", t.fd_step);
        t.closed_form = number_at(j, "closed_form", t.closed_form);
        t.metric = number_at(j, "metric", t.metric);
        t.hessian = number_at(j, "hessian", t.hessian);
        t.hessian_step = number_at(j, "hessian_step", t.hessian_step);
        t.rho = number_at(j, "rho", t.rho);
    }
    if (opts.tol) t.quadrature = *opts.tol;
    if (!(t.quadrature > 0.0)) throw ConfigError("quadrature tolerance must be positive");
    return t;
}

Params params_of(const json& cfg) {
    Params p;
    if (!cfg.contains("params")) return p;
    const json& j = cfg.at("params");
    if (!j.is_object()) throw ConfigError("'params' must be an object");
    for (const auto& [k, v] : j.items()) {
        if (!v.is_number()) throw ConfigError("parameter '" + k + "' must be a number");
        p[k] = v.get<double>();
    }
    return p;
}

void require_bound(const CurveExpr& e, const Params& p) {
    for (const auto& name : e.parameters())
        if (!p.count(name)) throw ConfigError("unbound parameter '" + name + "' in '" + e.str() + "'");
}

BoundExpr expr_at(const json& cfg, const std::string& key, const Params& p) {
    BoundExpr e = BoundExpr::parse(string_at(cfg, key), p);
    require_bound(e.expr, p);
    return e;
}

std::array<std::string, 3> curve_strings(const json& cfg, const std::string& key) {
    if (!cfg.contains(key)) throw ConfigError("missing '" + key + "'");
    const json& j = cfg.at(key);
    std::array<std::string, 3> out;
    if (j.is_array() && j.size() == 3) {
        for (int i = 0; i < 3; ++i) {
            if (j[i].is_number())
                out[i] = format_double(j[i].get<double>());
            else if (j[i].is_string())
                out[i] = j[i].get<std::string>();
            else
                throw ConfigError("'" + key + "' components must be strings");
        }
    } else if (j.is_object()) {
        out = {string_at(j, "x"), string_at(j, "y"), string_at(j, "z")};
    } else {
        throw ConfigError("'" + key + "' must be three expressions");
    }
    return out;
}

AnalyticCurve3 curve_at(const json& cfg, const std::string& key, const Params& p, Interval I) {
    AnalyticCurve3 c = AnalyticCurve3::parse(curve_strings(cfg, key), p, I);
    for (const auto& e : *c.expressions()) require_bound(e, p);
    return c;
}

Interval interval_at(const json& cfg, const std::string& key, Interval fallback) {
    if (!cfg.contains(key)) return fallback;
    const json& j = cfg.at(key);
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError("'" + key + "' must be [lo, hi]");
    Interval I{j[0].get<double>(), j[1].get<double>()};
    if (!(I.lo < I.hi) || !std::isfinite(I.lo) || !std::isfinite(I.hi))
        throw ConfigError("'" + key + "' must be a nonempty finite interval");
    return I;
}

Window window_at(const json& cfg, const char* k1, const char* k2, Window fallback) {
    if (!cfg.contains("window")) return fallback;
    const json& w = cfg.at("window");
    if (!w.is_object()) throw ConfigError("'window' must be an object");
    return {interval_at(w, k1, fallback.s), interval_at(w, k2, fallback.t)};
}

std::pair<int, int> grid_at(const json& cfg, const RunOptions& opts, std::pair<int, int> fallback) {
    if (opts.grid) return *opts.grid;
    if (!cfg.contains("grid")) return fallback;
    const json& g = cfg.at("grid");
    if (g.is_string()) return parse_grid(g.get<std::string>());
    if (!g.is_array() || g.size() != 2 || !g[0].is_number_integer() || !g[1].is_number_integer())
        throw ConfigError("'grid' must be [ns, nt] or \"NSxNT\"");
    const int ns = g[0].get<int>(), nt = g[1].get<int>();
    if (ns < 2 || nt < 2) throw ConfigError("grid must be at least 2x2");
    return {ns, nt};
}

Vec3R xi_at(const json& cfg) {
    if (!cfg.contains("xi")) return kE3;
    const json& j = cfg.at("xi");
    if (!j.is_array() || j.size() != 3) throw ConfigError("'xi' must be [x, y, z]");
    Vec3R v;
    for (int i = 0; i < 3; ++i) {
        if (!j[i].is_number()) throw ConfigError("'xi' must be numeric");
        v[i] = j[i].get<double>();
    }
    if (norm(v) == 0.0) throw ConfigError("'xi' must be nonzero");
    return v;
}

std::string format_of(const json& cfg, const RunOptions& opts) {
    std::string f = opts.format ? *opts.format : (cfg.contains("format") ? string_at(cfg, "format") : "obj");
    if (f != "obj" && f != "csv") throw ConfigError("format must be obj or csv, got '" + f + "'");
    return f;
}

// ---------------------------------------------------------------------------
// Report helpers

json vec_json(const Vec3R& v) { return json::array({v.x, v.y, v.z}); }

void add_gate(RunResult& r, const std::string& name, double value, double threshold) {
    const bool ok = std::isfinite(value) && value < threshold;
    r.gates.push_back({name, value, threshold, ok});
    r.passed = r.passed && ok;
}

void add_residuals(RunResult& r, const DiagnosticsReport& rep, double threshold) {
    for (const auto& f : rep.fields) {
        r.report["residuals"][f.name] = f.sup;
        add_gate(r, "structure." + f.name, f.sup, threshold);
    }
    r.report["metric_constant"] = rep.metric_constant;
}

json singular_json(const std::vector<SingularPoint>& pts) {
    json arr = json::array();
    for (const auto& p : pts) arr.push_back({{"s", p.s}, {"t", p.t}, {"rho", p.rho}, {"isolated", p.isolated_candidate}});
    return arr;
}

json classification_json(const Classification& c) {
    json locus = json::array();
    for (const auto& l : c.locus) locus.push_back({{"t", l.t}, {"isolated", l.isolated}});
    return {{"kind", kind_name(c.kind)}, {"locus", locus}, {"description", c.description}};
}

void write_text(RunResult& r, const RunOptions& opts, const std::string& name, const std::string& text) {
    r.files.push_back(name);
    if (opts.dry_run) return;
    fs::create_directories(opts.out_dir);
    std::ofstream os(fs::path(opts.out_dir) / name, std::ios::binary);
    if (!os) throw Error("cannot write " + (fs::path(opts.out_dir) / name).string());
    os << text;
    if (!os) throw Error("write failed for " + name);
}

void write_grid(RunResult& r, const RunOptions& opts, const std::string& stem, const SurfaceGrid& grid,
                const std::string& format) {
    std::ostringstream os;
    if (format == "obj")
        write_obj(os, grid);
    else
        write_csv(os, grid);
    write_text(r, opts, stem + "." + format, os.str());
    int singular = 0, invalid = 0;
    for (const auto& c : grid.cells) {
        singular += c.flag == CellFlag::Singular;
        invalid += c.flag == CellFlag::Invalid;
    }
    r.report["grid"] = {{"ns", grid.ns}, {"nt", grid.nt}, {"singular_cells", singular}, {"invalid_cells", invalid}};
}

// ---------------------------------------------------------------------------
// Surface construction shared by bjorling, affine-map, catalog and verify

struct Built {
    AffineSurface surface;
    std::optional<AdmissiblePair> pair;
    std::optional<BoundExpr> lambda;
    Interval interval;
    Window window;
};

Built build_bjorling(const json& cfg, const Tolerances& tol) {
    const Params p = params_of(cfg);
    const Interval I = interval_at(cfg, "interval", {0.0, 1.0});
    const Vec3R xi = xi_at(cfg);
    const AnalyticCurve3 alpha = curve_at(cfg, "curve", p, I);
    Built b;
    b.interval = I;
    AnalyticCurve3 U;
    if (cfg.contains("conormal")) {
        U = curve_at(cfg, "conormal", p, I);
    } else if (cfg.contains("metric")) {
        b.lambda = expr_at(cfg, "metric", p);
        U = conormal_from_metric(alpha, *b.lambda, xi);
    } else {
        throw ConfigError("bjorling needs 'conormal' or 'metric'");
    }
    AdmissibleOptions aopt;
    aopt.tolerance = tol.admissibility;
    aopt.allow_negative_metric = cfg.value("allow_negative_metric", false);
    b.pair = check_admissible(alpha, U, xi, aopt);
    const double s0 = number_at(cfg, "base_point", I.lo);
    if (!I.contains(s0)) throw ConfigError("'base_point' must lie in the interval");
    b.surface = build_surface(*b.pair, s0, SurfaceOptions{{tol.quadrature, 1 << 14}});
    b.window = window_at(cfg, "s", "t", {I, {-0.25 * I.length(), 0.25 * I.length()}});
    return b;
}

Built build_affine(const json& cfg, const Tolerances& tol) {
    const Params p = params_of(cfg);
    const Interval I = interval_at(cfg, "interval", {0.0, 1.0});
    const Vec3R xi = xi_at(cfg);
    const AnalyticCurve3 alpha = curve_at(cfg, "curve", p, I);
    const double s0 = number_at(cfg, "base_point", I.lo);
    if (!I.contains(s0)) throw ConfigError("'base_point' must lie in the interval");
    Built b;
    b.interval = I;
    b.surface = build_affine_map(alpha, s0, xi, SurfaceOptions{{tol.quadrature, 1 << 14}});
    b.window = window_at(cfg, "s", "t", {I, {-0.25 * I.length(), 0.25 * I.length()}});
    return b;
}

Window catalog_window(const std::string& name) {
    const double pi = std::numbers::pi;
    if (name == "revolution" || name == "helicoidal-g2") return {{0.0, 2.0 * pi}, {-0.5, 0.5}};
    return {{-1.0, 1.0}, {-0.5, 0.5}};
}

struct BuiltCatalog {
    Built built;
    HelicoidalSpec spec;
};

BuiltCatalog build_catalog(const json& cfg, const Tolerances& tol) {
    const std::string name = string_at(cfg, "name");
    BuiltCatalog bc;
    bc.spec = catalog_spec(name, params_of(cfg));
    Built& b = bc.built;
    b.window = window_at(cfg, "s", "t", catalog_window(name));
    b.interval = interval_at(cfg, "interval", b.window.s);
    b.pair = orbit_pair(bc.spec, b.interval);
    b.lambda = BoundExpr::constant(bc.spec.m);
    b.surface = build_surface(*b.pair, b.interval.lo, SurfaceOptions{{tol.quadrature, 1 << 14}});
    return bc;
}

std::pair<int, int> diagnostics_grid(const json& cfg) {
    if (!cfg.contains("diagnostics_grid")) return {21, 21};
    const json& g = cfg.at("diagnostics_grid");
    if (!g.is_array() || g.size() != 2 || !g[0].is_number_integer() || !g[1].is_number_integer() || g[0].get<int>() < 2 ||
        g[1].get<int>() < 2)
        throw ConfigError("'diagnostics_grid' must be [ns, nt], both >= 2");
    return {g[0].get<int>(), g[1].get<int>()};
}

void metric_gate(RunResult& r, const Built& b, double threshold) {
    if (!b.pair) return;
    double sup = 0.0;
    const int sigma = b.surface.orientation();
    for (double s : b.interval.samples(257)) {
        const double lam = b.lambda ? (*b.lambda)(s) : b.pair->lambda(s);
        sup = std::max(sup, std::abs(2.0 * sigma * b.surface.rho(s, 0.0) - lam));
    }
    r.report["residuals"]["metric_identity"] = sup;
    add_gate(r, "metric_identity", sup, threshold);
}

void surface_outputs(RunResult& r, const Built& b, const json& cfg, const RunOptions& opts, const Tolerances& tol,
                     const std::string& stem) {
    const auto [ns, nt] = grid_at(cfg, opts, {41, 41});
    const SurfaceGrid grid = sample_surface(b.surface, b.window, ns, nt, opts.threads, tol.rho);
    write_grid(r, opts, stem, grid, format_of(cfg, opts));
    r.report["singular_set"] = singular_json(singular_scan(b.surface, b.window, ns, nt, {tol.rho, 1e-6}));
    const auto [dns, dnt] = diagnostics_grid(cfg);
    add_residuals(r, full_residual_report(b.surface, b.window, dns, dnt, tol.fd_step), tol.residual);
}

// ---------------------------------------------------------------------------
// Tasks

RunResult task_bjorling(const json& cfg, const RunOptions& opts) {
    const Tolerances tol = tolerances(cfg, opts);
    const Built b = build_bjorling(cfg, tol);
    RunResult r;
    r.report["orientation"] = b.surface.orientation();
    const auto& adm = b.pair->report();
    r.report["admissibility"] = {{"orthogonality", adm.orthogonality},
                                 {"normalization", adm.normalization},
                                 {"symmetry", adm.symmetry},
                                 {"lambda_min", adm.lambda_min},
                                 {"lambda_max", adm.lambda_max}};
    metric_gate(r, b, tol.metric);
    surface_outputs(r, b, cfg, opts, tol, "bjorling");
    return r;
}

RunResult task_affine_map(const json& cfg, const RunOptions& opts) {
    const Tolerances tol = tolerances(cfg, opts);
    const Built b = build_affine(cfg, tol);
    RunResult r;
    const Vec3R xi = xi_at(cfg);
    double bracket_min = std::numeric_limits<double>::infinity(), rho_sup = 0.0, psi_sup = 0.0;
    for (double s : b.interval.samples(257)) {
        const AnalyticCurve3& alpha = b.surface.curve();
        bracket_min = std::min(bracket_min, std::abs(det3(alpha.derivative(s, 1), alpha.derivative(s, 2), xi)));
        rho_sup = std::max(rho_sup, std::abs(b.surface.rho(s, 0.0)));
        psi_sup = std::max(psi_sup, max_abs(b.surface.psi(s, 0.0) - alpha.value(s)));
    }
    r.report["residuals"]["bracket_min"] = bracket_min;
    r.report["residuals"]["rho_on_curve"] = rho_sup;
    r.report["residuals"]["psi_on_curve"] = psi_sup;
    add_gate(r, "rho_on_curve", rho_sup, tol.metric);
    add_gate(r, "psi_on_curve", psi_sup, tol.closed_form);
    surface_outputs(r, b, cfg, opts, tol, "affine-map");
    return r;
}

RunResult task_ruled(const json& cfg, const RunOptions& opts) {
    const Tolerances tol = tolerances(cfg, opts);
    const Params p = params_of(cfg);
    const RuledGraph g = ruled_graph(expr_at(cfg, "g", p));
    const Window w = window_at(cfg, "x", "y", {{-1.0, 1.0}, {-1.0, 1.0}});
    const auto [nx, ny] = grid_at(cfg, opts, {41, 41});
    SurfaceGrid grid;
    grid.ns = nx;
    grid.nt = ny;
    double fd = 0.0, exact = 0.0;
    const double h = tol.hessian_step;
    for (double y : w.t.samples(ny)) {
        for (double x : w.s.samples(nx)) {
            const double f0 = g.f(x, y);
            const double fxx = (g.f(x + h, y) - 2 * f0 + g.f(x - h, y)) / (h * h);
            const double fyy = (g.f(x, y + h) - 2 * f0 + g.f(x, y - h)) / (h * h);
            const double fxy = (g.f(x + h, y + h) - g.f(x + h, y - h) - g.f(x - h, y + h) + g.f(x - h, y - h)) / (4 * h * h);
            fd = std::max(fd, std::abs(fxx * fyy - fxy * fxy + 1.0));
            exact = std::max(exact, std::abs(g.hessian_residual(x)));
            // Conormal of a graph is (-f_x, -f_y, 1) and the metric is the Hessian.
            const Jet gx = g.g().jet(x, 1);
            grid.cells.push_back({x, y, {x, y, f0}, {-(y + gx[1]), -x, 1.0}, -1.0, CellFlag::Ok});
        }
    }
    RunResult r;
    write_grid(r, opts, "catalog", grid, format_of(cfg, opts));
    r.report["residuals"]["hessian_fd"] = fd;
    r.report["residuals"]["hessian_exact"] = exact;
    add_gate(r, "hessian_fd", fd, tol.hessian);
    add_gate(r, "hessian_exact", exact, 1e-15);
    return r;
}

RunResult task_catalog(const json& cfg, const RunOptions& opts) {
    if (string_at(cfg, "name") == "ruled") return task_ruled(cfg, opts);
    const Tolerances tol = tolerances(cfg, opts);
    const BuiltCatalog bc = build_catalog(cfg, tol);
    const Built& b = bc.built;
    const ClosedFormSurface closed = helicoidal(bc.spec);
    RunResult r;
    const auto [ns, nt] = grid_at(cfg, opts, {41, 41});
    const double s0 = b.interval.lo;
    const Vec3R offset = b.surface.psi(s0, 0.0) - closed.psi(s0, 0.0);
    double cf = 0.0, dens = 0.0;
    for (double t : b.window.t.samples(nt)) {
        for (double s : b.window.s.samples(ns)) {
            cf = std::max(cf, max_abs(b.surface.psi(s, t) - closed.psi(s, t) - offset));
            dens = std::max(dens, std::abs(2.0 * b.surface.rho(s, t) - closed.density(t)));
        }
    }
    r.report["closed_form_offset"] = vec_json(offset);
    r.report["residuals"]["closed_form"] = cf;
    r.report["residuals"]["density"] = dens;
    r.report["residuals"]["density_at_zero"] = std::abs(closed.density(0.0) - bc.spec.m);
    add_gate(r, "closed_form", cf, tol.closed_form);
    add_gate(r, "density", dens, tol.closed_form);
    add_gate(r, "density_at_zero", std::abs(closed.density(0.0) - bc.spec.m), 1e-12);
    metric_gate(r, b, tol.metric);
    const Classification cls = classify(bc.spec);
    r.report["classification"] = classification_json(cls);
    r.summary.push_back(std::string("classification: ") + kind_name(cls.kind));
    surface_outputs(r, b, cfg, opts, tol, "catalog");
    return r;
}

CauchyData cauchy_data(const json& cfg, const Tolerances& tol) {
    const Params p = params_of(cfg);
    CauchyData d;
    d.a = expr_at(cfg, "a", p);
    d.b = expr_at(cfg, "b", p);
    d.interval = interval_at(cfg, "interval", {-1.0, 1.0});
    d.x0 = number_at(cfg, "x0", 0.5 * (d.interval.lo + d.interval.hi));
    if (!d.interval.contains(d.x0)) throw ConfigError("'x0' must lie in the interval");
    d.t_half_width = number_at(cfg, "t_half_width", 0.0);
    d.quadrature.abs_tol = std::min(tol.quadrature, 1e-12);
    if (cfg.contains("seed_grid")) {
        const json& g = cfg.at("seed_grid");
        if (!g.is_array() || g.size() != 2) throw ConfigError("'seed_grid' must be [ns, nt]");
        d.seed_ns = g[0].get<int>();
        d.seed_nt = g[1].get<int>();
        if (d.seed_ns < 2 || d.seed_nt < 2) throw ConfigError("'seed_grid' must be at least 2x2");
    }
    return d;
}

RunResult task_cauchy(const json& cfg, const RunOptions& opts) {
    const Tolerances tol = tolerances(cfg, opts);
    const CauchyData d = cauchy_data(cfg, tol);
    const GraphSolution sol = solve_cauchy(d);
    const Window w = window_at(cfg, "x", "y", {{-0.5, 0.5}, {-0.5, 0.5}});
    const auto [nx, ny] = grid_at(cfg, opts, {21, 21});
    const double h = tol.hessian_step;
    const std::string format = format_of(cfg, opts);

    RunResult r;
    std::ostringstream csv;
    csv << "x,y,f,hessian_residual\n";
    SurfaceGrid grid;
    grid.ns = nx;
    grid.nt = ny;
    double hess = 0.0, agree = 0.0;
    int missed = 0;
    for (double y : w.t.samples(ny)) {
        for (double x : w.s.samples(nx)) {
            GridCell cell{x, y, {x, y, 0.0}, {}, 0.0, CellFlag::Ok};
            try {
                const ParamPoint pp = sol.invert(x, y);
                const double f0 = sol.f_param(pp.s, pp.t);
                agree = std::max(agree, std::abs(f0 - sol.f_explicit(pp.s, pp.t)));
                const double res = hessian_residual_at(sol, x, y, h);
                hess = std::max(hess, std::abs(res));
                cell.psi.z = f0;
                cell.N = sol.surface().conormal(pp.s, pp.t);
                cell.rho = sol.surface().rho(pp.s, pp.t);
                csv << format_double(x) << ',' << format_double(y) << ',' << format_double(f0) << ','
                    << format_double(res) << '\n';
            } catch (const OutOfChart&) {
                ++missed;
                cell.flag = CellFlag::Invalid;
                csv << format_double(x) << ',' << format_double(y) << ",nan,nan\n";
            } catch (const JacobianSingular&) {
                ++missed;
                cell.flag = CellFlag::Invalid;
                csv << format_double(x) << ',' << format_double(y) << ",nan,nan\n";
            }
            grid.cells.push_back(cell);
        }
    }
    if (format == "csv") {
        write_text(r, opts, "cauchy.csv", csv.str());
    } else {
        write_grid(r, opts, "cauchy", grid, "obj");
    }
    double initial = 0.0, slope = 0.0;
    for (double x : d.interval.samples(101)) {
        initial = std::max(initial, std::abs(sol.f_param(x, 0.0) - d.a(x)));
        const double he = 1e-5;
        slope = std::max(slope, std::abs((sol.f(x, he) - sol.f(x, -he)) / (2 * he) - d.b(x)));
    }
    r.report["residuals"]["hessian"] = hess;
    r.report["residuals"]["explicit_agreement"] = agree;
    r.report["residuals"]["initial_value"] = initial;
    r.report["residuals"]["initial_slope"] = slope;
    r.report["out_of_chart"] = missed;
    add_gate(r, "hessian", hess, tol.hessian);
    add_gate(r, "explicit_agreement", agree, tol.closed_form);
    add_gate(r, "initial_value", initial, tol.closed_form);
    add_gate(r, "initial_slope", slope, 1e-6);
    add_gate(r, "chart_coverage", missed, 0.5);
    r.summary.push_back("max hessian residual: " + format_double(hess));
    return r;
}

HelicoidalSpec spec_from(const json& cfg) {
    if (cfg.contains("name")) return catalog_spec(string_at(cfg, "name"), params_of(cfg));
    const std::string g = string_at(cfg, "group");
    HelicoidalSpec spec;
    if (g == "G1" || g == "g1" || g == "1")
        spec.group = Group::G1;
    else if (g == "G2" || g == "g2" || g == "2")
        spec.group = Group::G2;
    else if (g == "G3" || g == "g3" || g == "3")
        spec.group = Group::G3;
    else
        throw ConfigError("unknown group '" + g + "'");
    const Params p = params_of(cfg);
    auto get = [&](const char* k, double fallback) {
        const auto it = p.find(k);
        return it == p.end() ? number_at(cfg, k, fallback) : it->second;
    };
    spec.a = get("a", spec.a);
    spec.b = get("b", spec.b);
    spec.c = get("c", spec.group == Group::G1 ? 0.0 : spec.c);
    spec.m = get("m", spec.m);
    validate(spec);
    return spec;
}

RunResult task_classify(const json& cfg, const RunOptions&) {
    const HelicoidalSpec spec = spec_from(cfg);
    const Classification cls = classify(spec);
    RunResult r;
    r.report["spec"] = {{"group", group_name(spec.group)}, {"a", spec.a}, {"b", spec.b}, {"c", spec.c}, {"m", spec.m}};
    r.report["classification"] = classification_json(cls);
    r.report["density_at_zero"] = helicoidal(spec).density(0.0);
    r.summary.push_back(std::string("classification: ") + kind_name(cls.kind) + " (" + cls.description + ")");
    return r;
}

RunResult task_sweep(const json& cfg, const RunOptions& opts) {
    const int count = static_cast<int>(number_at(cfg, "count", 200));
    if (count < 1) throw ConfigError("'count' must be positive");
    std::uint64_t seed = 1;
    if (cfg.contains("seed")) seed = cfg.at("seed").get<std::uint64_t>();
    if (opts.seed) seed = *opts.seed;
    json ranges = cfg.value("ranges", json::object());
    const Interval ra = interval_at(ranges, "a", {-4.0, 4.0});
    const Interval rc = interval_at(ranges, "c", {0.2, 3.0});
    const Interval rm = interval_at(ranges, "m", {0.1, 6.0});
    if (!(rc.lo > 0.0) || !(rm.lo > 0.0)) throw ConfigError("c and m ranges must be positive");
    const Interval tr = interval_at(cfg, "t_range", {-10.0, 10.0});
    const int samples = static_cast<int>(number_at(cfg, "t_samples", 4001));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> da(ra.lo, ra.hi), dc(rc.lo, rc.hi), dm(rm.lo, rm.hi);
    std::ostringstream csv;
    csv << "a,c,m,kind,min_density,strict_inequality,agree\n";
    int disagreements = 0, complete = 0;
    for (int k = 0; k < count; ++k) {
        HelicoidalSpec spec;
        spec.group = Group::G3;
        spec.a = da(rng);
        spec.c = dc(rng);
        spec.m = dm(rng);
        const Classification cls = classify(spec);
        const ClosedFormSurface surf = helicoidal(spec);
        double dmin = std::numeric_limits<double>::infinity();
        for (double t : tr.samples(samples)) dmin = std::min(dmin, surf.density(t));
        const bool strict = 4 * spec.c * spec.m > std::abs(4 * spec.c * spec.c + spec.m * spec.m - spec.a * spec.a);
        const bool expected = dmin > 0.0 && strict;
        const bool got = cls.kind == ClassKind::CompleteNonFlat;
        const bool agree = expected == got;
        disagreements += !agree;
        complete += got;
        csv << format_double(spec.a) << ',' << format_double(spec.c) << ',' << format_double(spec.m) << ','
            << kind_name(cls.kind) << ',' << format_double(dmin) << ',' << (strict ? 1 : 0) << ',' << (agree ? 1 : 0)
            << '\n';
    }
    RunResult r;
    write_text(r, opts, "sweep.csv", csv.str());
    r.report["seed"] = seed;
    r.report["count"] = count;
    r.report["complete_non_flat"] = complete;
    r.report["residuals"]["disagreements"] = disagreements;
    add_gate(r, "disagreements", disagreements, 0.5);
    r.summary.push_back("disagreements: " + std::to_string(disagreements) + " of " + std::to_string(count));
    return r;
}

RunResult task_verify(const json& cfg, const RunOptions& opts) {
    const std::string source = string_at(cfg, "source");
    fs::path path(source);
    if (path.is_relative()) path = fs::path(opts.config_dir) / path;
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open source '" + path.string() + "'");
    json src = json::parse(is, nullptr, true, true);
    std::string task;
    json scfg;
    if (src.contains("schema") && src.contains("config")) {
        scfg = src.at("config");
        task = src.at("task").get<std::string>();
    } else {
        scfg = src;
        task = string_at(src, "task");
    }
    RunOptions sopts = opts;
    sopts.config_dir = path.parent_path().string();
    const Tolerances tol = tolerances(scfg, sopts);
    RunResult r;
    r.report["source"] = source;
    r.report["source_task"] = task;
    if (src.contains("passed")) r.report["source_passed"] = src.at("passed");
    std::optional<Built> b;
    if (task == "bjorling") {
        b = build_bjorling(scfg, tol);
    } else if (task == "affine-map") {
        b = build_affine(scfg, tol);
    } else if (task == "catalog" && string_at(scfg, "name") != "ruled") {
        b = build_catalog(scfg, tol).built;
    } else if (task == "cauchy") {
        const GraphSolution sol = solve_cauchy(cauchy_data(scfg, tol));
        const Window w = window_at(scfg, "x", "y", {{-0.5, 0.5}, {-0.5, 0.5}});
        const auto [nx, ny] = grid_at(cfg, opts, {11, 11});
        const ResidualField rf = hessian_residual(sol, w, nx, ny, tol.hessian_step);
        r.report["residuals"]["hessian"] = rf.sup;
        add_gate(r, "hessian", rf.sup, tol.hessian);
    } else if (task == "catalog") {
        RunOptions dry = sopts;
        dry.dry_run = true;
        const RunResult inner = task_ruled(scfg, dry);
        r.report["residuals"] = inner.report["residuals"];
        for (const auto& g : inner.gates) add_gate(r, g.name, g.value, g.threshold);
    } else {
        throw ConfigError("nothing to verify for task '" + task + "'");
    }
    if (b) {
        const auto [ns, nt] = grid_at(cfg, opts, diagnostics_grid(scfg));
        const DiagnosticsReport rep = full_residual_report(b->surface, b->window, ns, nt, tol.fd_step);
        add_residuals(r, rep, tol.residual);
        if (b->pair) metric_gate(r, *b, tol.metric);
    }
    std::ostringstream table;
    for (const auto& [k, v] : r.report["residuals"].items()) table << k << ' ' << format_double(v.get<double>()) << '\n';
    r.summary.push_back("residual sup-norms:\n" + table.str());
    return r;
}

}  // namespace

RunResult run(const std::string& task, const json& config, const RunOptions& options) {
    if (!config.is_object()) throw ConfigError("config must be a JSON object");
    if (config.contains("task") && config.at("task") != task)
        throw ConfigError("config is for task '" + config.at("task").get<std::string>() + "', not '" + task + "'");
    RunResult r;
    if (task == "bjorling")
        r = task_bjorling(config, options);
    else if (task == "cauchy")
        r = task_cauchy(config, options);
    else if (task == "catalog")
        r = task_catalog(config, options);
    else if (task == "affine-map")
        r = task_affine_map(config, options);
    else if (task == "verify")
        r = task_verify(config, options);
    else if (task == "classify")
        r = task_classify(config, options);
    else if (task == "sweep")
        r = task_sweep(config, options);
    else
        throw ConfigError("unknown task '" + task + "'");

    json& rep = r.report;
    rep["schema"] = kSchemaVersion;
    rep["task"] = task;
    rep["params"] = config.value("params", json::object());
    if (!rep.contains("residuals")) rep["residuals"] = json::object();
    json gates = json::array();
    for (const auto& g : r.gates)
        gates.push_back({{"name", g.name}, {"value", g.value}, {"threshold", g.threshold}, {"passed", g.passed}});
    rep["gates"] = gates;
    rep["passed"] = r.passed;
    json cfg = config;
    cfg["task"] = task;
    rep["config"] = cfg;
    rep["files"] = r.files;
    write_text(r, options, task + ".report.json", rep.dump(2) + "\n");
    return r;
}

namespace {

bool is_config_error(const std::exception& e) {
    return dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const json::exception*>(&e) ||
           dynamic_cast<const SyntaxError*>(&e) || dynamic_cast<const SpecInvalid*>(&e) ||
           dynamic_cast<const NotAdmissible*>(&e) || dynamic_cast<const LambdaNonPositive*>(&e) ||
           dynamic_cast<const ConvexityViolation*>(&e) || dynamic_cast<const DegenerateProjection*>(&e) ||
           dynamic_cast<const ZeroVector*>(&e) || dynamic_cast<const EvalError*>(&e);
}

}  // namespace

int run_main(const std::string& task, const std::string& config_path, RunOptions options, std::ostream& out,
             std::ostream& err) {
    try {
        json cfg = json::object();
        if (!config_path.empty()) {
            std::ifstream is(config_path);
            if (!is) throw ConfigError("cannot open config '" + config_path + "'");
            cfg = json::parse(is, nullptr, true, true);
            options.config_dir = fs::path(config_path).parent_path().string();
            if (options.config_dir.empty()) options.config_dir = ".";
        }
        const RunResult r = run(task, cfg, options);
        for (const auto& line : r.summary) out << line << '\n';
        for (const auto& g : r.gates)
            out << (g.passed ? "PASS " : "FAIL ") << g.name << " " << g.value << " < " << g.threshold << '\n';
        for (const auto& f : r.files) out << "wrote " << (fs::path(options.out_dir) / f).string() << '\n';
        if (!r.passed) {
            for (const auto& g : r.gates)
                if (!g.passed) err << "gate failed: " << g.name << '\n';
            return kNumericFailure;
        }
        return kOk;
    } catch (const std::exception& e) {
        if (is_config_error(e)) {
            err << "config error: " << e.what() << '\n';
            return kConfigError;
        }
        err << "numeric failure: " << e.what() << '\n';
        if (!options.dry_run) {
            try {
                json rep = {{"schema", kSchemaVersion}, {"task", task}, {"passed", false},
                            {"gates", json::array({{{"name", "exception"}, {"passed", false}}})},
                            {"error", e.what()}};
                fs::create_directories(options.out_dir);
                std::ofstream os(fs::path(options.out_dir) / (task + ".report.json"));
                os << rep.dump(2) << '\n';
            } catch (const std::exception&) {
            }
        }
        return kNumericFailure;
    }
}

}  // namespace splitaffine::workbench
