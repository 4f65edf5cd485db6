#pragma once

// Split-complex (hyperbolic) numbers s + j t with j*j = 1.
//
// Every split-complex number factors through the idempotents
// e+ = (1 + j)/2 and e- = (1 - j)/2 as  z = u e+ + v e-  with the null
// coordinates u = s + t and v = s - t.  Products, quotients and analytic
// functions act independently on u and v, which is how holomorphic objects
// are evaluated throughout the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <ostream>

#include "splitaffine/errors.hpp"

namespace splitaffine {

struct SplitScalar {
    double re = 0.0;
    double im = 0.0;

    constexpr SplitScalar() = default;
    constexpr SplitScalar(double r) : re(r) {}  // NOLINT: reals embed implicitly
    constexpr SplitScalar(double r, double i) : re(r), im(i) {}

    static constexpr SplitScalar from_null(double u, double v) { return {0.5 * (u + v), 0.5 * (u - v)}; }
    static constexpr SplitScalar j() { return {0.0, 1.0}; }

    constexpr double u() const { return re + im; }
    constexpr double v() const { return re - im; }

    /// re^2 - im^2 = u v; zero exactly on the null cone.
    constexpr double modulus() const { return re * re - im * im; }
    bool invertible() const { return u() != 0.0 && v() != 0.0; }

    constexpr SplitScalar conj() const { return {re, -im}; }

    constexpr SplitScalar& operator+=(SplitScalar o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    constexpr SplitScalar& operator-=(SplitScalar o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    constexpr SplitScalar& operator*=(SplitScalar o) {
        const double r = re * o.re + im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }

    friend constexpr SplitScalar operator+(SplitScalar a, SplitScalar b) { return a += b; }
    friend constexpr SplitScalar operator-(SplitScalar a, SplitScalar b) { return a -= b; }
    friend constexpr SplitScalar operator*(SplitScalar a, SplitScalar b) { return a *= b; }
    friend constexpr SplitScalar operator-(SplitScalar a) { return {-a.re, -a.im}; }
    friend constexpr bool operator==(SplitScalar a, SplitScalar b) { return a.re == b.re && a.im == b.im; }

    friend std::ostream& operator<<(std::ostream& os, SplitScalar z) {
        return os << z.re << (z.im < 0 ? " - " : " + ") << std::abs(z.im) << "j";
    }
};

SplitScalar mul(SplitScalar a, SplitScalar b);

/// Throws ZeroDivisor on the null cone.
SplitScalar inv(SplitScalar a);
SplitScalar operator/(SplitScalar a, SplitScalar b);

/// Split-holomorphic extension of a real-analytic F:
/// F(s + j t) = (F(u) + F(v))/2 + j (F(u) - F(v))/2.
SplitScalar extend_analytic(const std::function<double(double)>& f, SplitScalar z);

/// Size measure used for residuals.
inline double abs_max(SplitScalar z) { return std::max(std::abs(z.re), std::abs(z.im)); }

struct SplitVec3 {
    SplitScalar x, y, z;

    SplitScalar& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    const SplitScalar& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    SplitVec3 conj() const { return {x.conj(), y.conj(), z.conj()}; }
    std::array<double, 3> real() const { return {x.re, y.re, z.re}; }
    std::array<double, 3> imag() const { return {x.im, y.im, z.im}; }

    friend SplitVec3 operator+(const SplitVec3& a, const SplitVec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend SplitVec3 operator-(const SplitVec3& a, const SplitVec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend SplitVec3 operator*(SplitScalar k, const SplitVec3& a) { return {k * a.x, k * a.y, k * a.z}; }
    friend bool operator==(const SplitVec3& a, const SplitVec3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
};

}  // namespace splitaffine
