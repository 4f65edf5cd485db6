#pragma once

#include <array>
#include <cmath>
#include <ostream>

#include "splitaffine/split.hpp"

namespace splitaffine {

struct Vec3R {
    double x = 0.0, y = 0.0, z = 0.0;

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3R& operator+=(const Vec3R& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    Vec3R& operator-=(const Vec3R& o) {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    Vec3R& operator*=(double k) {
        x *= k;
        y *= k;
        z *= k;
        return *this;
    }

    friend Vec3R operator+(Vec3R a, const Vec3R& b) { return a += b; }
    friend Vec3R operator-(Vec3R a, const Vec3R& b) { return a -= b; }
    friend Vec3R operator-(Vec3R a) { return a *= -1.0; }
    friend Vec3R operator*(double k, Vec3R a) { return a *= k; }
    friend Vec3R operator*(Vec3R a, double k) { return a *= k; }
    friend bool operator==(const Vec3R& a, const Vec3R& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }

    friend std::ostream& operator<<(std::ostream& os, const Vec3R& v) {
        return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
    }
};

inline constexpr Vec3R kE3{0.0, 0.0, 1.0};

inline double dot(const Vec3R& a, const Vec3R& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3R cross(const Vec3R& a, const Vec3R& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double det3(const Vec3R& a, const Vec3R& b, const Vec3R& c) { return dot(cross(a, b), c); }
inline double norm(const Vec3R& a) { return std::sqrt(dot(a, a)); }
inline double max_abs(const Vec3R& a) { return std::max({std::abs(a.x), std::abs(a.y), std::abs(a.z)}); }

inline SplitVec3 to_split(const Vec3R& v) { return {v.x, v.y, v.z}; }

/// Formal cross product in the split 3-space, right-handed.
SplitVec3 cross(const SplitVec3& a, const SplitVec3& b);
SplitScalar dot(const SplitVec3& a, const SplitVec3& b);
/// det3(a, b, c) = dot(cross(a, b), c).
SplitScalar det3(const SplitVec3& a, const SplitVec3& b, const SplitVec3& c);

/// Row-major 3x3 real matrix.
struct Mat3 {
    std::array<std::array<double, 3>, 3> m{};

    static Mat3 identity();
    static Mat3 diag(double a, double b, double c);
    static Mat3 from_columns(const Vec3R& c0, const Vec3R& c1, const Vec3R& c2);

    double& operator()(int r, int c) { return m[r][c]; }
    double operator()(int r, int c) const { return m[r][c]; }

    Mat3 transposed() const;
    double det() const;
    /// Throws Error when singular.
    Mat3 inverse() const;

    friend Vec3R operator*(const Mat3& a, const Vec3R& v);
    friend Mat3 operator*(const Mat3& a, const Mat3& b);
};

/// Equiaffine map v -> A v + v0 with det A = 1.
struct EquiaffineFrame {
    Mat3 A = Mat3::identity();
    Vec3R v0{};

    Vec3R apply(const Vec3R& v) const { return A * v + v0; }
    Vec3R apply_inverse(const Vec3R& w) const { return A.inverse() * (w - v0); }
    /// Conormals transform by the inverse transpose (A^t)^{-1}.
    Vec3R apply_conormal(const Vec3R& n) const { return A.transposed().inverse() * n; }
    Vec3R apply_conormal_inverse(const Vec3R& n) const { return A.transposed() * n; }
};

/// Unimodular frame with A xi = e3.  The basis is completed by Gram-Schmidt
/// against the two coordinate axes least aligned with xi and scaled so that
/// det A = 1.  Throws ZeroVector for xi = 0.
EquiaffineFrame normalize_frame(const Vec3R& xi);

}  // namespace splitaffine
