#pragma once

// Truncated Taylor jets of one real variable.
//
// A Jet of order n at base point s0 stores c[k] = f^(k)(s0) / k! for
// k = 0..n.  Arithmetic is exact truncated power-series arithmetic, so the
// derivatives it delivers carry no finite-difference noise.

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>

namespace splitaffine {

class Jet {
public:
    static constexpr int kMaxOrder = 8;
    static constexpr int kDefaultOrder = 4;

    Jet() = default;

    /// Constant jet.
    explicit Jet(double value, int order = kDefaultOrder) : order_(order) {
        assert(order >= 0 && order <= kMaxOrder);
        c_[0] = value;
    }

    /// The identity s at s0: coefficients (s0, 1, 0, ...).
    static Jet variable(double s0, int order = kDefaultOrder) {
        Jet j(s0, order);
        if (order >= 1) j.c_[1] = 1.0;
        return j;
    }

    int order() const { return order_; }
    double operator[](int k) const { return c_[k]; }
    double& operator[](int k) { return c_[k]; }
    double value() const { return c_[0]; }

    /// k-th derivative, i.e. k! c[k].
    double derivative(int k) const {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return f * c_[k];
    }

    Jet truncated(int order) const {
        Jet r = *this;
        for (int k = order + 1; k <= kMaxOrder; ++k) r.c_[k] = 0.0;
        r.order_ = std::min(order, order_);
        return r;
    }

    Jet& operator+=(const Jet& o) {
        order_ = std::min(order_, o.order_);
        for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        order_ = std::min(order_, o.order_);
        for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k];
        return *this;
    }
    Jet& operator*=(double a) {
        for (int k = 0; k <= order_; ++k) c_[k] *= a;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(Jet a) { return a *= -1.0; }
    friend Jet operator*(Jet a, double k) { return a *= k; }
    friend Jet operator*(double k, Jet a) { return a *= k; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        r.order_ = std::min(a.order_, b.order_);
        for (int k = 0; k <= r.order_; ++k) {
            double acc = 0.0;
            for (int i = 0; i <= k; ++i) acc += a.c_[i] * b.c_[k - i];
            r.c_[k] = acc;
        }
        return r;
    }

    /// Caller guarantees b[0] != 0.
    friend Jet operator/(const Jet& a, const Jet& b) {
        Jet q;
        q.order_ = std::min(a.order_, b.order_);
        for (int k = 0; k <= q.order_; ++k) {
            double acc = a.c_[k];
            for (int i = 1; i <= k; ++i) acc -= b.c_[i] * q.c_[k - i];
            q.c_[k] = acc / b.c_[0];
        }
        return q;
    }

private:
    int order_ = kDefaultOrder;
    std::array<double, kMaxOrder + 1> c_{};

    friend Jet exp(const Jet&);
    friend Jet log(const Jet&);
    friend void sincos(const Jet&, Jet&, Jet&);
    friend void sinhcosh(const Jet&, Jet&, Jet&);
};

Jet exp(const Jet& a);
/// Caller guarantees a[0] > 0.
Jet log(const Jet& a);
void sincos(const Jet& a, Jet& s, Jet& c);
void sinhcosh(const Jet& a, Jet& sh, Jet& ch);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);
/// Integer power; negative exponents require a[0] != 0.
Jet pow(const Jet& a, int n);

}  // namespace splitaffine
