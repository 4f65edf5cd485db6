#include "splitaffine/jet.hpp"

namespace splitaffine {

// Coefficient recurrences follow from differentiating the defining ODEs,
// e.g. (exp a)' = a' exp a gives k e_k = sum_{i=1..k} i a_i e_{k-i}.

Jet exp(const Jet& a) {
    Jet e(std::exp(a.c_[0]), a.order_);
    for (int k = 1; k <= a.order_; ++k) {
        double acc = 0.0;
        for (int i = 1; i <= k; ++i) acc += i * a.c_[i] * e.c_[k - i];
        e.c_[k] = acc / k;
    }
    return e;
}

Jet log(const Jet& a) {
    Jet l(std::log(a.c_[0]), a.order_);
    for (int k = 1; k <= a.order_; ++k) {
        double acc = a.c_[k];
        for (int i = 1; i < k; ++i) acc -= (static_cast<double>(i) / k) * l.c_[i] * a.c_[k - i];
        l.c_[k] = acc / a.c_[0];
    }
    return l;
}

void sincos(const Jet& a, Jet& s, Jet& c) {
    s = Jet(std::sin(a.c_[0]), a.order_);
    c = Jet(std::cos(a.c_[0]), a.order_);
    for (int k = 1; k <= a.order_; ++k) {
        double ss = 0.0, cc = 0.0;
        for (int i = 1; i <= k; ++i) {
            ss += i * a.c_[i] * c.c_[k - i];
            cc -= i * a.c_[i] * s.c_[k - i];
        }
        s.c_[k] = ss / k;
        c.c_[k] = cc / k;
    }
}

void sinhcosh(const Jet& a, Jet& sh, Jet& ch) {
    sh = Jet(std::sinh(a.c_[0]), a.order_);
    ch = Jet(std::cosh(a.c_[0]), a.order_);
    for (int k = 1; k <= a.order_; ++k) {
        double ss = 0.0, cc = 0.0;
        for (int i = 1; i <= k; ++i) {
            ss += i * a.c_[i] * ch.c_[k - i];
            cc += i * a.c_[i] * sh.c_[k - i];
        }
        sh.c_[k] = ss / k;
        ch.c_[k] = cc / k;
    }
}

Jet sin(const Jet& a) {
    Jet s, c;
    sincos(a, s, c);
    return s;
}

Jet cos(const Jet& a) {
    Jet s, c;
    sincos(a, s, c);
    return c;
}

Jet sinh(const Jet& a) {
    Jet s, c;
    sinhcosh(a, s, c);
    return s;
}

Jet cosh(const Jet& a) {
    Jet s, c;
    sinhcosh(a, s, c);
    return c;
}

Jet pow(const Jet& a, int n) {
    if (n < 0) return Jet(1.0, a.order()) / pow(a, -n);
    Jet result(1.0, a.order());
    Jet base = a;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

}  // namespace splitaffine
