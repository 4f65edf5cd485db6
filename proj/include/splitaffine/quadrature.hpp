#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature with an absolute
// tolerance.  The local error estimate is |K15 - G7|, which is pessimistic
// for analytic integrands; the returned value is the Kronrod sum and is in
// practice far more accurate than the estimate.

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "splitaffine/equiaffine.hpp"
#include "splitaffine/errors.hpp"

namespace splitaffine {

struct QuadratureSettings {
    double abs_tol = 1e-10;
    int max_segments = 1 << 14;
};

template <class T>
struct QuadratureResult {
    T value{};
    double error = 0.0;
    int segments = 0;
};

namespace detail {

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Vec3R& v) { return max_abs(v); }

// Kronrod abscissae (descending) and weights; Gauss weights belong to the
// odd-indexed abscissae plus the centre.
inline constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Segment {
    double a, b;
    T value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class T, class F>
Segment<T> gk15(const F& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const T fc = f(centre);
    T kronrod = kWgk[7] * fc;
    T gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        const T sum = f(centre - dx) + f(centre + dx);
        kronrod = kronrod + kWgk[i] * sum;
        if (i % 2 == 1) gauss = gauss + kWg[i / 2] * sum;
    }
    kronrod = half * kronrod;
    gauss = half * gauss;
    return {a, b, kronrod, magnitude(kronrod - gauss)};
}

}  // namespace detail

/// Integrates f over [a, b] (either order).  Throws QuadratureFailure when
/// the segment budget is exhausted before the estimate drops below abs_tol.
template <class T, class F>
QuadratureResult<T> integrate(const F& f, double a, double b, const QuadratureSettings& settings = {}) {
    QuadratureResult<T> out;
    if (a == b) return out;
    std::priority_queue<detail::Segment<T>> heap;
    heap.push(detail::gk15<T>(f, a, b));
    double total_error = heap.top().error;
    int count = 1;
    while (total_error > settings.abs_tol && count < settings.max_segments) {
        const auto worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) break;
        heap.pop();
        const auto left = detail::gk15<T>(f, worst.a, mid);
        const auto right = detail::gk15<T>(f, mid, worst.b);
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++count;
    }
    // Re-sum from scratch so the reported error is not polluted by
    // incremental cancellation, and sum values in a fixed order.
    std::vector<detail::Segment<T>> segs;
    segs.reserve(heap.size());
    while (!heap.empty()) {
        segs.push_back(heap.top());
        heap.pop();
    }
    std::sort(segs.begin(), segs.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
    total_error = 0.0;
    for (const auto& sg : segs) {
        out.value = out.value + sg.value;
        total_error += sg.error;
    }
    out.error = total_error;
    out.segments = count;
    if (!(total_error <= settings.abs_tol)) throw QuadratureFailure(settings.abs_tol, total_error);
    return out;
}

}  // namespace splitaffine
