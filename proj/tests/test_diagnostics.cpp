#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "splitaffine/catalog.hpp"
#include "splitaffine/diagnostics.hpp"

using namespace splitaffine;

namespace {

constexpr double kPi = 3.14159265358979323846;

AdmissiblePair circle(double c, double m) { return orbit_pair({Group::G2, 0.0, 0.0, c, m}, {-3.2, 3.2}); }

const char* kFields[] = {"wave", "laplace", "conormal_s", "conormal_t", "normalization", "volume", "volume_conormal"};

}  // namespace

TEST_CASE("pre-geodesic residual examples") {
    CHECK(pregeodesic_sup(circle(1.0, 1.0)) < 1e-10);
    const auto r = pregeodesic_residual(circle(1.0, 2.0));
    for (double s : {-2.0, 0.0, 1.7}) CHECK(r(s) == doctest::Approx(-3.0).epsilon(1e-12));

    const double m = 1.5;
    const auto alpha = AnalyticCurve3::parse({"s", "0", "m*s^2/2"}, {{"m", m}}, {-1, 1});
    const auto U = AnalyticCurve3::parse({"-m*s", "0", "1"}, {{"m", m}}, {-1, 1});
    const auto pair = check_admissible(alpha, shifted_conormal(U, alpha, BoundExpr::parse("s")));
    CHECK(pregeodesic_sup(pair) < 1e-12);
    const auto bent = check_admissible(alpha, shifted_conormal(U, alpha, BoundExpr::parse("s^2")));
    CHECK(pregeodesic_sup(bent) > 1.0);
}

TEST_CASE("pre-geodesic residual of the circle family") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> cd(0.3, 3), md(0.1, 5);
    for (int k = 0; k < 50; ++k) {
        const double c = cd(rng), m = md(rng);
        const auto r = pregeodesic_residual(circle(c, m));
        for (double s : {-1.0, 0.5, 2.0}) CHECK(std::abs(r(s) - (c * c - m * m / (c * c))) < 1e-10);
    }
}

TEST_CASE("geodesic_check examples") {
    const auto unit = AnalyticCurve3::parse({"cos(s)", "sin(s)", "0"}, {}, {-3, 3});
    const GeodesicResult yes = geodesic_check(unit, 1.0);
    CHECK(yes.geodesic);
    CHECK(yes.residual < 1e-8);
    const GeodesicResult no = geodesic_check(unit, 2.0);
    CHECK_FALSE(no.geodesic);
    CHECK(no.residual == doctest::Approx(3.0));
    const auto ex = AnalyticCurve3::parse({"cos(s)", "sin(s)", "cos(2*s)"}, {}, {-3, 3});
    const GeodesicResult r = geodesic_check(ex, 1.0);
    CHECK(std::isfinite(r.residual));
    CHECK_THROWS_AS(geodesic_check(AnalyticCurve3::parse({"s", "0", "s^2"}, {}, {-1, 1}), 1.0), DegenerateProjection);
}

TEST_CASE("symmetry examples") {
    const Window w{{-1, 1}, {-0.5, 0.5}};
    const SymmetrySpec rot{group_transform(Group::G2, 0.0, kPi / 3), BoundExpr::parse("s + p", {{"p", kPi / 3}})};
    CHECK(symmetry_check(circle(1.0, 1.0), rot, w, 11, 11) < 1e-8);

    const HelicoidalSpec g3{Group::G3, 1.0, 0.0, 1.0, 2.0};
    const SymmetrySpec shift{group_transform(Group::G3, g3.a, 0.5), BoundExpr::parse("s + 0.5")};
    CHECK(symmetry_check(orbit_pair(g3, {-1, 1}), shift, w, 11, 11) < 1e-8);

    const HelicoidalSpec g1{Group::G1, 2.0, 0.3, 0.5, 1.0};
    const SymmetrySpec slide{group_transform(Group::G1, g1.a, -0.3), BoundExpr::parse("s - 0.3")};
    CHECK(symmetry_check(orbit_pair(g1, {-1, 1}), slide, {{-1, 1}, {-0.3, 0.3}}, 9, 9) < 1e-8);

    const SymmetrySpec wrong{rot.frame, BoundExpr::parse("2*s")};
    CHECK_THROWS_AS(symmetry_check(circle(1.0, 1.0), wrong, w, 5, 5), SymmetryMismatch);
    const SymmetrySpec tilt{normalize_frame({0, 0.2, 1}), BoundExpr::parse("s")};
    CHECK_THROWS_AS(symmetry_check(circle(1.0, 1.0), tilt, w, 5, 5), SymmetryMismatch);
    const SymmetrySpec flat{rot.frame, BoundExpr::parse("1 + 0*s")};
    CHECK_THROWS_AS(symmetry_check(circle(1.0, 1.0), flat, w, 5, 5), SymmetryMismatch);
}

TEST_CASE("symmetry deviation is controlled by the quadrature tolerance") {
    const Window w{{-1, 1}, {-0.5, 0.5}};
    const SymmetrySpec rot{group_transform(Group::G2, 0.0, kPi / 3), BoundExpr::parse("s + 1.0471975511965976")};
    for (double tol : {1e-4, 1e-6, 1e-8, 1e-10, 1e-12}) {
        const double dev = symmetry_check(circle(1.0, 1.0), rot, w, 9, 9, SurfaceOptions{{tol, 1 << 14}});
        CAPTURE(tol);
        CHECK(dev <= 4 * tol + 1e-14);
    }
}

TEST_CASE("residual report on the surface of revolution") {
    const AffineSurface S = build_surface(circle(1.0, 1.0), 0.0);
    const DiagnosticsReport rep = full_residual_report(S, {{0, 2 * kPi}, {-0.5, 0.5}}, 21, 21);
    for (const char* f : kFields) {
        CAPTURE(f);
        CHECK(rep.sup(f) < 1e-5);
    }
    CHECK(rep.sup("monge_ampere") < 1e-5);
    CHECK_FALSE(rep.metric_constant);
    CHECK_THROWS_AS(rep.sup("nonsense"), std::out_of_range);
}

TEST_CASE("residual report on the Cayley surface") {
    const AffineSurface S = build_surface(orbit_pair({Group::G1, 1.0, 0.0, 0.0, 1.0}, {-1, 1}), 0.0);
    const DiagnosticsReport rep = full_residual_report(S, {{-1, 1}, {-1, 1}}, 15, 15);
    for (const char* f : kFields) {
        CAPTURE(f);
        CHECK(rep.sup(f) < 1e-6);
    }
    CHECK(rep.metric_constant);
}

TEST_CASE("residual report on the affine map") {
    const auto alpha = AnalyticCurve3::parse({"cos(s)", "sin(s)", "cos(2*s)"}, {}, {-3.2, 3.2});
    const AffineSurface S = build_affine_map(alpha, 0.0);
    double on_curve = 0.0;
    for (double s : alpha.domain().samples(101)) on_curve = std::max(on_curve, std::abs(S.rho(s, 0.0)));
    CHECK(on_curve < 1e-9);
    const DiagnosticsReport rep = full_residual_report(S, {{-1, 1}, {-0.5, 0.5}}, 11, 11);
    CHECK(rep.sup("laplace") < 1e-5);
    CHECK(rep.sup("volume") < 1e-6);
}

TEST_CASE("finite-difference residuals converge at second order") {
    const AffineSurface S = build_surface(circle(1.0, 1.0), 0.0);
    const Window w{{0.3, 2.0}, {-0.4, 0.4}};
    const double coarse = full_residual_report(S, w, 7, 7, 0.02).sup("laplace");
    const double fine = full_residual_report(S, w, 7, 7, 0.01).sup("laplace");
    CHECK(coarse > 1e-8);
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.1));
}
