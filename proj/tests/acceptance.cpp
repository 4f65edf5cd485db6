// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "splitaffine/catalog.hpp"
#include "splitaffine/cauchy.hpp"
#include "splitaffine/diagnostics.hpp"

using namespace splitaffine;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void check(bool ok, const std::string& what, double value) {
        passed = passed && ok;
        detail << (detail.tellp() > 0 ? "; " : "") << what << " " << value << (ok ? "" : " (!)");
    }
};

double dist(const Vec3R& a, const Vec3R& b) { return max_abs(a - b); }

CauchyData cauchy(const char* a, const char* b, Interval I, double half) {
    CauchyData d;
    d.a = BoundExpr::parse(a);
    d.b = BoundExpr::parse(b);
    d.interval = I;
    d.t_half_width = half;
    return d;
}

struct CatalogCase {
    std::string label;
    HelicoidalSpec spec;
    Window window;
};

std::vector<CatalogCase> catalog_cases() {
    return {
        {"revolution", {Group::G2, 0.0, 0.0, 1.0, 1.0}, {{0, 2 * kPi}, {-0.5, 0.5}}},
        {"G1", {Group::G1, 1.0, 0.0, 0.0, 1.0}, {{-1, 1}, {-1, 1}}},
        {"G1 singular", {Group::G1, 2.0, 0.0, 0.0, 3.0}, {{-1, 1}, {-0.5, 1.5}}},
        {"G2", {Group::G2, 0.0, 0.0, 1.0, 1.0}, {{-kPi, kPi}, {-1, 1}}},
        {"G2 pitched", {Group::G2, 0.7, 0.0, 1.3, 0.6}, {{-2, 2}, {-0.5, 0.5}}},
        {"G3", {Group::G3, 1.0, 0.0, 1.0, 2.0}, {{-1, 1}, {-1, 1}}},
        {"G3 isolated", {Group::G3, 0.0, 0.0, 1.0, 3.0}, {{-1, 1}, {-1, 0}}},
    };
}

AdmissiblePair generic_pair() {
    const auto alpha = AnalyticCurve3::parse({"cos(s) + s/3", "sin(s)", "s^2/3"}, {}, {-1, 1});
    return check_admissible(alpha, conormal_from_metric(alpha, BoundExpr::parse("1 + s^2/2")));
}

Outcome c1_cauchy() {
    Outcome o;
    const Window sq{{-1, 1}, {-1, 1}};
    struct Oracle {
        const char* name;
        CauchyData data;
        std::function<double(double, double)> f;
    };
    const Oracle oracles[] = {
        {"saddle", cauchy("s^2/2", "0", {-1.5, 1.5}, 1.5), [](double x, double y) { return (x * x - y * y) / 2; }},
        {"ruled", cauchy("s^2/2", "s", {-2.5, 2.5}, 1.5), [](double x, double y) { return x * x / 2 + x * y; }},
    };
    for (const Oracle& oc : oracles) {
        const GraphSolution sol = solve_cauchy(oc.data);
        double err = 0.0;
        for (double y : sq.t.samples(41))
            for (double x : sq.s.samples(41)) err = std::max(err, std::abs(sol.f(x, y) - oc.f(x, y)));
        const double hess = hessian_residual(sol, sq, 21, 21, 1e-3).sup;
        o.check(err < 1e-8, std::string(oc.name) + " error", err);
        o.check(hess < 1e-6, std::string(oc.name) + " hessian", hess);
    }
    return o;
}

Outcome c2_closed_forms() {
    Outcome o;
    struct Item {
        std::string label;
        HelicoidalSpec spec;
        Window window;
        bool use_revolution;
    };
    const Item items[] = {
        {"circle", {Group::G2, 0.0, 0.0, 1.0, 1.0}, {{0, 2 * kPi}, {-0.5, 0.5}}, true},
        {"G1", {Group::G1, 1.0, 0.0, 0.0, 1.0}, {{-1, 1}, {-1, 1}}, false},
        {"G2", {Group::G2, 0.0, 0.0, 1.0, 1.0}, {{0, 2 * kPi}, {-0.5, 0.5}}, false},
        {"G3", {Group::G3, 1.0, 0.0, 1.0, 2.0}, {{-1, 1}, {-1, 1}}, false},
    };
    for (const Item& it : items) {
        const ClosedFormSurface cf = it.use_revolution ? revolution(it.spec.c, it.spec.m) : helicoidal(it.spec);
        const double s0 = it.window.s.lo;
        const AffineSurface S = build_surface(orbit_pair(it.spec, it.window.s), s0);
        // The surfaces are unique up to translation; align at (s0, 0).
        const Vec3R offset = S.psi(s0, 0) - cf.psi(s0, 0);
        double err = 0.0;
        for (double t : it.window.t.samples(41))
            for (double s : it.window.s.samples(41)) err = std::max(err, dist(S.psi(s, t) - offset, cf.psi(s, t)));
        o.check(err < 1e-8, it.label, err);
    }
    return o;
}

Outcome c3_metric() {
    Outcome o;
    double curve = 0.0;
    std::vector<AdmissiblePair> pairs{generic_pair()};
    for (const auto& cc : catalog_cases()) pairs.push_back(orbit_pair(cc.spec, cc.window.s));
    for (const char* b : {"0", "s", "s^2/2"}) {
        const CauchyData d = cauchy("cosh(s)", b, {-1, 1}, 0.5);
        const GraphSolution sol = solve_cauchy(d);
        for (double s : d.interval.samples(101)) {
            const double lam = std::cosh(s);
            curve = std::max(curve, std::abs(2 * sol.surface().rho(s, 0) - lam));
        }
    }
    for (const AdmissiblePair& p : pairs) {
        const AffineSurface S = build_surface(p, p.alpha().domain().lo);
        for (double s : p.alpha().domain().samples(101)) curve = std::max(curve, std::abs(2 * S.rho(s, 0) - p.lambda(s)));
    }
    o.check(curve < 1e-9, "|2 rho(s,0) - lambda|", curve);
    double dens = 0.0;
    for (const auto& cc : catalog_cases()) {
        const AffineSurface S = build_surface(orbit_pair(cc.spec, cc.window.s), 0.0);
        const ClosedFormSurface cf = helicoidal(cc.spec);
        for (double t : cc.window.t.samples(41))
            for (double s : cc.window.s.samples(41)) dens = std::max(dens, std::abs(2 * S.rho(s, t) - cf.density(t)));
    }
    o.check(dens < 1e-8, "|2 rho - D|", dens);
    return o;
}

Outcome c4_structure() {
    Outcome o;
    const char* fields[] = {"wave", "laplace", "conormal_s", "conormal_t", "normalization", "volume", "volume_conormal"};
    for (const auto& cc : catalog_cases()) {
        const AffineSurface S = build_surface(orbit_pair(cc.spec, cc.window.s), 0.0);
        const DiagnosticsReport rep = full_residual_report(S, cc.window, 21, 21, 1e-4);
        double worst = 0.0;
        for (const char* f : fields) worst = std::max(worst, rep.sup(f));
        o.check(worst < 1e-5, cc.label, worst);
    }
    return o;
}

Outcome c5_loci() {
    Outcome o;
    auto scan = [&](const std::string& label, const HelicoidalSpec& spec, const Window& w, double want, bool isolated) {
        const AffineSurface S = build_surface(orbit_pair(spec, w.s), 0.0);
        const auto pts = singular_scan(S, w, 9, 8);
        double err = pts.empty() ? INFINITY : 0.0;
        bool flags = !pts.empty();
        for (const auto& p : pts) {
            err = std::max(err, std::abs(p.t - want));
            flags = flags && p.isolated_candidate == isolated;
        }
        double cls = INFINITY;
        for (const Locus& l : classify(spec).locus)
            if (l.isolated == isolated) cls = std::min(cls, std::abs(l.t - want));
        o.check(err < 1e-9 && flags, label + " scan", err);
        o.check(cls < 1e-9, label + " classify", cls);
    };
    scan("G1", {Group::G1, 2.0, 0.0, 0.0, 3.0}, {{-1, 1}, {0.3, 1.7}}, 1.0, false);
    scan("G3", {Group::G3, 0.0, 0.0, 1.0, 3.0}, {{-1, 1}, {-1.2, -0.4}}, 0.5 * std::log(0.2), true);
    scan("G2", {Group::G2, 0.0, 0.0, 1.0, 1.0}, {{0, 2 * kPi}, {0.3, 1.2}}, kPi / 4, true);
    return o;
}

Outcome c6_classification() {
    Outcome o;
    std::mt19937_64 rng(20261015);
    std::uniform_real_distribution<double> a(-4, 4), c(0.2, 3), m(0.1, 6);
    int disagreements = 0, complete = 0;
    for (int k = 0; k < 200; ++k) {
        const HelicoidalSpec spec{Group::G3, a(rng), 0.0, c(rng), m(rng)};
        const ClosedFormSurface cf = helicoidal(spec);
        bool positive = true;
        for (int i = 0; i <= 20000; ++i) positive = positive && cf.density(-10.0 + 0.001 * i) > 0;
        const bool strict = 4 * spec.c * spec.m > std::abs(4 * spec.c * spec.c + spec.m * spec.m - spec.a * spec.a);
        const bool verdict = classify(spec).kind == ClassKind::CompleteNonFlat;
        disagreements += verdict != (positive && strict);
        complete += verdict;
    }
    o.check(disagreements == 0, "disagreements", disagreements);
    o.detail << "; complete " << complete << "/200";
    return o;
}

Outcome c7_geodesic() {
    Outcome o;
    double worst = 0.0;
    for (double c : {0.5, 1.0, 1.7}) {
        const AdmissiblePair p = orbit_pair({Group::G2, 0.0, 0.0, c, c * c}, {-3.2, 3.2});
        worst = std::max(worst, pregeodesic_sup(p));
    }
    o.check(worst < 1e-10, "m = c^2 residual", worst);
    const double r = pregeodesic_sup(orbit_pair({Group::G2, 0.0, 0.0, 1.0, 2.0}, {-3.2, 3.2}));
    o.check(std::abs(r - 3.0) < 1e-9, "m = 2, c = 1 |r|", r);
    return o;
}

Outcome c8_symmetry() {
    Outcome o;
    const Window w{{-1, 1}, {-0.5, 0.5}};
    const SymmetrySpec rot{group_transform(Group::G2, 0.0, kPi / 3), BoundExpr::parse("s + p", {{"p", kPi / 3}})};
    const double d1 = symmetry_check(orbit_pair({Group::G2, 0.0, 0.0, 1.0, 1.0}, {-3.2, 3.2}), rot, w, 21, 21);
    o.check(d1 < 1e-8, "circle rotation", d1);
    const HelicoidalSpec g3{Group::G3, 1.0, 0.0, 1.0, 2.0};
    const SymmetrySpec shift{group_transform(Group::G3, g3.a, 0.5), BoundExpr::parse("s + 0.5")};
    const double d2 = symmetry_check(orbit_pair(g3, {-1, 1}), shift, w, 21, 21);
    o.check(d2 < 1e-8, "G3 translation", d2);
    return o;
}

Outcome c9_affine_map() {
    Outcome o;
    const auto alpha = AnalyticCurve3::parse({"cos(s)", "sin(s)", "cos(2*s)"}, {}, {0, 2 * kPi});
    double bracket = 0.0;
    for (double s : alpha.domain().samples(100))
        bracket = std::max(bracket, std::abs(det3(alpha.derivative(s, 1), alpha.derivative(s, 2), kE3) - 1.0));
    o.check(bracket < 1e-12, "|[a', a'', e3] - 1|", bracket);
    const AffineSurface S = build_affine_map(alpha, 0.0);
    double rho = 0.0, psi = 0.0;
    for (double s : alpha.domain().samples(100)) {
        rho = std::max(rho, std::abs(S.rho(s, 0.0)));
        psi = std::max(psi, dist(S.psi(s, 0.0), alpha.value(s)));
    }
    o.check(rho < 1e-9, "rho(s,0)", rho);
    o.check(psi < S.quadrature().abs_tol, "|psi(s,0) - alpha|", psi);
    return o;
}

Outcome c10_exactness() {
    Outcome o;
    double path = 0.0, base = 0.0;
    std::vector<AdmissiblePair> pairs{generic_pair(), orbit_pair({Group::G3, 1.0, 0.0, 1.0, 2.0}, {-1, 1}),
                                      orbit_pair({Group::G2, 0.7, 0.0, 1.3, 0.6}, {-1, 1})};
    for (const AdmissiblePair& p : pairs) {
        const AffineSurface A = build_surface(p, -0.5);
        const AffineSurface B = build_surface(p, 0.7);
        const Vec3R shift = B.psi(0, 0) - A.psi(0, 0);
        for (double s : Interval{-1, 1}.samples(9))
            for (double t : Interval{-0.6, 0.6}.samples(7)) {
                path = std::max(path, dist(A.psi(s, t, IntegrationPath::AxisFirst),
                                           A.psi(s, t, IntegrationPath::VerticalFirst)));
                base = std::max(base, dist(B.psi(s, t) - A.psi(s, t), shift));
            }
    }
    o.check(path < 1e-8, "path independence", path);
    o.check(base < 1e-8, "base point translation", base);
    return o;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"cauchy oracles", c1_cauchy},
        {"closed-form agreement", c2_closed_forms},
        {"metric identity", c3_metric},
        {"structure equations", c4_structure},
        {"singularity loci", c5_loci},
        {"classification property", c6_classification},
        {"geodesic criterion", c7_geodesic},
        {"symmetry principle", c8_symmetry},
        {"affine map", c9_affine_map},
        {"exactness and uniqueness", c10_exactness},
    };
    int failed = 0, id = 0;
    for (const auto& [name, fn] : criteria) {
        ++id;
        bool ok = false;
        std::string detail;
        try {
            Outcome o = fn();
            ok = o.passed;
            detail = o.detail.str();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        failed += !ok;
        std::printf("%s %2d %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    }
    std::printf("%d/%d criteria passed\n", id - failed, id);
    return failed == 0 ? 0 : 1;
}
