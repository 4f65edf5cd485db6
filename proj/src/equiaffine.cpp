#include "splitaffine/equiaffine.hpp"

#include <algorithm>
#include <numeric>

namespace splitaffine {

SplitVec3 cross(const SplitVec3& a, const SplitVec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

SplitScalar dot(const SplitVec3& a, const SplitVec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

SplitScalar det3(const SplitVec3& a, const SplitVec3& b, const SplitVec3& c) { return dot(cross(a, b), c); }

Mat3 Mat3::identity() { return diag(1.0, 1.0, 1.0); }

Mat3 Mat3::diag(double a, double b, double c) {
    Mat3 r;
    r.m[0][0] = a;
    r.m[1][1] = b;
    r.m[2][2] = c;
    return r;
}

Mat3 Mat3::from_columns(const Vec3R& c0, const Vec3R& c1, const Vec3R& c2) {
    Mat3 r;
    for (int i = 0; i < 3; ++i) {
        r.m[i][0] = c0[i];
        r.m[i][1] = c1[i];
        r.m[i][2] = c2[i];
    }
    return r;
}

Mat3 Mat3::transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) r.m[i][k] = m[k][i];
    return r;
}

double Mat3::det() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 Mat3::inverse() const {
    const double d = det();
    if (d == 0.0) throw Error("singular 3x3 matrix");
    Mat3 r;
    for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 3; ++k) {
            // cofactor of (k, i) for the adjugate
            const int r0 = (k + 1) % 3, r1 = (k + 2) % 3;
            const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            r.m[i][k] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) / d;
        }
    }
    return r;
}

Vec3R operator*(const Mat3& a, const Vec3R& v) {
    Vec3R r;
    for (int i = 0; i < 3; ++i) r[i] = a.m[i][0] * v.x + a.m[i][1] * v.y + a.m[i][2] * v.z;
    return r;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) r.m[i][k] += a.m[i][l] * b.m[l][k];
    return r;
}

EquiaffineFrame normalize_frame(const Vec3R& xi) {
    const double len = norm(xi);
    if (len == 0.0 || !std::isfinite(len)) throw ZeroVector("affine normal must be a nonzero finite vector");

    std::array<int, 3> axes{0, 1, 2};
    std::stable_sort(axes.begin(), axes.end(), [&](int a, int b) { return std::abs(xi[a]) < std::abs(xi[b]); });

    const Vec3R n = (1.0 / len) * xi;
    std::array<Vec3R, 2> basis;
    for (int k = 0; k < 2; ++k) {
        Vec3R e{};
        e[axes[k]] = 1.0;
        e -= dot(e, n) * n;
        for (int j = 0; j < k; ++j) e -= dot(e, basis[j]) * basis[j];
        basis[k] = (1.0 / norm(e)) * e;
    }
    // det[b1, b2, xi] = +-|xi|; fix orientation then scale to det 1.
    if (det3(basis[0], basis[1], xi) < 0) basis[1] = -basis[1];
    const double scale = 1.0 / std::sqrt(len);
    const Mat3 B = Mat3::from_columns(scale * basis[0], scale * basis[1], xi);

    EquiaffineFrame frame;
    frame.A = B.inverse();
    return frame;
}

}  // namespace splitaffine
