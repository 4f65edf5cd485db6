#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "splitaffine/curve.hpp"
#include "splitaffine/equiaffine.hpp"
#include "splitaffine/quadrature.hpp"

using namespace splitaffine;

namespace {

double dist(const Vec3R& a, const Vec3R& b) { return max_abs(a - b); }

SplitVec3 random_split(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-2, 2);
    return {{d(rng), d(rng)}, {d(rng), d(rng)}, {d(rng), d(rng)}};
}

bool close(const SplitVec3& a, const SplitVec3& b, double tol) {
    for (int i = 0; i < 3; ++i)
        if (abs_max(a[i] - b[i]) > tol) return false;
    return true;
}

}  // namespace

TEST_CASE("cross product basis") {
    CHECK(cross(Vec3R{1, 0, 0}, Vec3R{0, 1, 0}) == Vec3R{0, 0, 1});
    const SplitVec3 e1{1, 0, 0}, e2{0, 1, 0};
    CHECK(cross(e1, e2) == SplitVec3{0, 0, 1});
    CHECK(det3(Vec3R{1, 0, 0}, Vec3R{0, 1, 0}, kE3) == 1.0);
}

TEST_CASE("bracket [alpha', alpha'', e3] for the example curves") {
    const auto curve = AnalyticCurve3::parse({"cos(s)", "sin(s)", "cos(2*s)"}, {}, {0, 6.3});
    for (double s : Interval{0, 6.3}.samples(50))
        CHECK(det3(curve.derivative(s, 1), curve.derivative(s, 2), kE3) == doctest::Approx(1.0).epsilon(1e-12));
    const double c = 1.7;
    const auto circle = AnalyticCurve3::parse({"c*cos(s)", "c*sin(s)", "0"}, {{"c", c}}, {0, 6.3});
    for (double s : Interval{0, 6.3}.samples(50))
        CHECK(det3(circle.derivative(s, 1), circle.derivative(s, 2), kE3) == doctest::Approx(c * c));
}

TEST_CASE("det3 is alternating") {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 200; ++k) {
        const SplitVec3 a = random_split(rng), b = random_split(rng), c = random_split(rng);
        const SplitScalar d = det3(a, b, c);
        CHECK(abs_max(det3(b, a, c) + d) < 1e-12);
        CHECK(abs_max(det3(a, c, b) + d) < 1e-12);
        CHECK(abs_max(det3(c, b, a) + d) < 1e-12);
        CHECK(abs_max(det3(b, c, a) - d) < 1e-12);
    }
}

TEST_CASE("conjugation commutes with cross and dot") {
    std::mt19937_64 rng(19);
    for (int k = 0; k < 200; ++k) {
        const SplitVec3 a = random_split(rng), b = random_split(rng);
        CHECK(close(cross(a, b).conj(), cross(a.conj(), b.conj()), 1e-14));
        CHECK(abs_max(dot(a, b).conj() - dot(a.conj(), b.conj())) < 1e-14);
    }
}

TEST_CASE("normalize_frame examples") {
    const EquiaffineFrame id = normalize_frame(kE3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) CHECK(id.A(r, c) == doctest::Approx(r == c ? 1.0 : 0.0));

    const EquiaffineFrame two = normalize_frame({0, 0, 2});
    CHECK(two.A(0, 0) == doctest::Approx(std::sqrt(2.0)));
    CHECK(two.A(1, 1) == doctest::Approx(std::sqrt(2.0)));
    CHECK(two.A(2, 2) == doctest::Approx(0.5));
    CHECK(two.A(0, 1) == doctest::Approx(0.0));
    CHECK(dist(two.A * Vec3R{0, 0, 2}, kE3) < 1e-12);

    const EquiaffineFrame ex = normalize_frame({1, 0, 0});
    CHECK(dist(ex.A * Vec3R{1, 0, 0}, kE3) < 1e-12);
    CHECK(ex.A.det() == doctest::Approx(1.0));
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            const double v = std::abs(ex.A(r, c));
            CHECK((v < 1e-15 || std::abs(v - 1.0) < 1e-15));
        }

    CHECK_THROWS_AS(normalize_frame({0, 0, 0}), ZeroVector);
}

TEST_CASE("normalize_frame is unimodular and maps xi to e3") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> d(-3, 3);
    for (int k = 0; k < 500; ++k) {
        const Vec3R xi{d(rng), d(rng), d(rng)};
        if (norm(xi) < 1e-3) continue;
        const EquiaffineFrame f = normalize_frame(xi);
        CHECK(std::abs(f.A.det() - 1.0) < 1e-12);
        CHECK(dist(f.A * xi, kE3) < 1e-12);
    }
}

TEST_CASE("frames preserve brackets and pairings") {
    const EquiaffineFrame f = normalize_frame({0.3, -1.2, 0.8});
    const Vec3R a{1, 2, 3}, b{-1, 0.5, 2}, c{0.2, 0.1, -4};
    CHECK(det3(f.A * a, f.A * b, f.A * c) == doctest::Approx(det3(a, b, c)));
    CHECK(dot(f.apply_conormal(a), f.A * b) == doctest::Approx(dot(a, b)));
    CHECK(dist(f.apply_inverse(f.apply(a)), a) < 1e-12);
    CHECK(dist(f.apply_conormal_inverse(f.apply_conormal(a)), a) < 1e-12);
}

TEST_CASE("Mat3 algebra") {
    const Mat3 m = Mat3::from_columns({2, 0, 1}, {1, 3, 0}, {0, 1, 1});
    CHECK(m(0, 1) == 1.0);
    CHECK(m.det() == doctest::Approx(7.0));
    const Mat3 p = m * m.inverse();
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) CHECK(p(r, c) == doctest::Approx(r == c ? 1.0 : 0.0).scale(1));
    CHECK_THROWS_AS(Mat3::diag(1, 0, 1).inverse(), Error);
    CHECK(m.transposed()(1, 0) == 1.0 * m(0, 1));
}

TEST_CASE("quadrature") {
    const auto poly = integrate<double>([](double x) { return 3 * x * x - x + 2; }, -1.0, 2.0);
    CHECK(poly.value == doctest::Approx(13.5).epsilon(1e-14));
    const auto e = integrate<double>([](double x) { return std::exp(x); }, 0.0, 3.0, {1e-13, 1 << 14});
    CHECK(std::abs(e.value - (std::exp(3.0) - 1.0)) < 1e-12);
    const auto rev = integrate<double>([](double x) { return std::cos(x); }, 1.0, 0.0);
    CHECK(rev.value == doctest::Approx(-std::sin(1.0)));
    CHECK(integrate<double>([](double) { return 0.0; }, 0.0, 1.0).segments == 1);
    const auto vec = integrate<Vec3R>([](double x) { return Vec3R{1, x, x * x}; }, 0.0, 1.0);
    CHECK(vec.value.z == doctest::Approx(1.0 / 3));
    CHECK_THROWS_AS(integrate<double>([](double x) { return std::sqrt(std::abs(x - 0.3)); }, 0.0, 1.0, {1e-15, 4}),
                    QuadratureFailure);
}

TEST_CASE("jet vector helpers") {
    const Jet3 a{Jet::variable(0.5, 3), Jet(1.0, 3), Jet(0.0, 3)};
    const Jet3 b{Jet(0.0, 3), Jet::variable(0.5, 3), Jet(2.0, 3)};
    const Jet3 c = cross(a, b);
    CHECK(coeff(c, 0).z == doctest::Approx(0.25));
    CHECK(coeff(c, 1).z == doctest::Approx(1.0));
    CHECK(derivative(a[0]).order() == 2);
    CHECK(det3(a, b, constant_jet3(kE3, 3))[0] == doctest::Approx(0.25));
}
