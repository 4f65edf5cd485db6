#include "splitaffine/curve.hpp"

#include <algorithm>
#include <limits>

namespace splitaffine {

std::vector<double> Interval::samples(int n) const {
    n = std::max(n, 2);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    out.back() = hi;
    return out;
}

Jet dot(const Jet3& a, const Jet3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Jet3 cross(const Jet3& a, const Jet3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Jet det3(const Jet3& a, const Jet3& b, const Jet3& c) { return dot(cross(a, b), c); }

Jet derivative(const Jet& a) {
    const int n = std::max(a.order() - 1, 0);
    Jet d(0.0, n);
    for (int k = 0; k <= n && k + 1 <= a.order(); ++k) d[k] = (k + 1) * a[k + 1];
    return d;
}

Jet3 derivative(const Jet3& a) { return {derivative(a[0]), derivative(a[1]), derivative(a[2])}; }

Jet3 constant_jet3(const Vec3R& v, int order) { return {Jet(v.x, order), Jet(v.y, order), Jet(v.z, order)}; }

Jet3 operator+(const Jet3& a, const Jet3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Jet3 operator-(const Jet3& a, const Jet3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Jet3 operator*(const Jet& k, const Jet3& a) { return {k * a[0], k * a[1], k * a[2]}; }

Jet3 operator*(const Mat3& m, const Jet3& a) {
    Jet3 r;
    for (int i = 0; i < 3; ++i) r[i] = m(i, 0) * a[0] + m(i, 1) * a[1] + m(i, 2) * a[2];
    return r;
}

Vec3R coeff(const Jet3& a, int k) { return {a[0][k], a[1][k], a[2][k]}; }

namespace {

class ExprCurve final : public CurveSource {
public:
    ExprCurve(std::array<CurveExpr, 3> c, Params p) : c_(std::move(c)), p_(std::move(p)) {}

    Jet3 jet(double s, int order) const override {
        return {c_[0].jet(s, order, p_), c_[1].jet(s, order, p_), c_[2].jet(s, order, p_)};
    }

    std::string describe() const override {
        return "(" + c_[0].str() + ", " + c_[1].str() + ", " + c_[2].str() + ")";
    }

private:
    std::array<CurveExpr, 3> c_;
    Params p_;
};

}  // namespace

AnalyticCurve3::AnalyticCurve3(std::array<CurveExpr, 3> components, Params params, Interval domain)
    : source_(std::make_shared<ExprCurve>(components, params)),
      domain_(domain),
      exprs_(std::move(components)),
      params_(std::move(params)) {}

AnalyticCurve3::AnalyticCurve3(std::shared_ptr<const CurveSource> source, Interval domain)
    : source_(std::move(source)), domain_(domain) {}

AnalyticCurve3 AnalyticCurve3::parse(const std::array<std::string, 3>& components, Params params, Interval domain) {
    return AnalyticCurve3({splitaffine::parse(components[0]), splitaffine::parse(components[1]),
                           splitaffine::parse(components[2])},
                          std::move(params), domain);
}

Vec3R AnalyticCurve3::value(double s) const { return coeff(jet(s, 0), 0); }

Vec3R AnalyticCurve3::derivative(double s, int k) const {
    const Jet3 j = jet(s, k);
    return {j[0].derivative(k), j[1].derivative(k), j[2].derivative(k)};
}

double AnalyticCurve3::min_speed(int samples) const {
    double best = std::numeric_limits<double>::infinity();
    for (double s : domain_.samples(samples)) best = std::min(best, norm(derivative(s, 1)));
    return best;
}

Interval AnalyticCurve3::evaluable_range(double lo, double hi, int samples) const {
    auto ok = [&](double s) {
        try {
            (void)jet(s, 1);
            return true;
        } catch (const DomainError&) {
            return false;
        }
    };
    Interval out = domain_;
    const Interval left{lo, domain_.lo};
    const Interval right{domain_.hi, hi};
    if (lo < domain_.lo) {
        auto pts = left.samples(samples / 2);
        for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
            if (!ok(*it)) break;
            out.lo = *it;
        }
    }
    if (hi > domain_.hi) {
        for (double s : right.samples(samples / 2)) {
            if (!ok(s)) break;
            out.hi = s;
        }
    }
    return out;
}

}  // namespace splitaffine
