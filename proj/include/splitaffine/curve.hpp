#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "splitaffine/curve_lang.hpp"
#include "splitaffine/equiaffine.hpp"

namespace splitaffine {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    double length() const { return hi - lo; }
    bool contains(double s) const { return s >= lo && s <= hi; }
    /// n >= 2 equally spaced samples including both endpoints.
    std::vector<double> samples(int n) const;
};

using Jet3 = std::array<Jet, 3>;

Jet dot(const Jet3& a, const Jet3& b);
Jet3 cross(const Jet3& a, const Jet3& b);
Jet det3(const Jet3& a, const Jet3& b, const Jet3& c);
/// d/ds of a jet: order drops by one.
Jet derivative(const Jet& a);
Jet3 derivative(const Jet3& a);
Jet3 constant_jet3(const Vec3R& v, int order);
Jet3 operator+(const Jet3& a, const Jet3& b);
Jet3 operator-(const Jet3& a, const Jet3& b);
Jet3 operator*(const Jet& k, const Jet3& a);
Jet3 operator*(const Mat3& m, const Jet3& a);
/// Coefficient k of each component as a vector.
Vec3R coeff(const Jet3& a, int k);

/// Anything that can produce exact Taylor jets of a space curve.
class CurveSource {
public:
    virtual ~CurveSource() = default;
    virtual Jet3 jet(double s, int order) const = 0;
    virtual std::string describe() const = 0;
};

/// A real-analytic curve I -> R^3.  Values may be requested outside I as
/// long as the underlying expressions evaluate there; that is what the
/// split-holomorphic extension needs off the real axis.
class AnalyticCurve3 {
public:
    AnalyticCurve3() = default;
    AnalyticCurve3(std::array<CurveExpr, 3> components, Params params, Interval domain);
    AnalyticCurve3(std::shared_ptr<const CurveSource> source, Interval domain);

    static AnalyticCurve3 parse(const std::array<std::string, 3>& components, Params params, Interval domain);

    Jet3 jet(double s, int order) const { return source_->jet(s, order); }
    Vec3R value(double s) const;
    /// k-th derivative vector.
    Vec3R derivative(double s, int k) const;

    const Interval& domain() const { return domain_; }
    std::string describe() const { return source_->describe(); }
    /// Present when the curve was built from expressions.
    const std::optional<std::array<CurveExpr, 3>>& expressions() const { return exprs_; }
    const Params& params() const { return params_; }

    /// min |alpha'(s)| over `samples` points of I.
    double min_speed(int samples = 257) const;
    bool is_regular(int samples = 257) const { return min_speed(samples) > 0.0; }

    /// Widest sub-interval of [lo, hi] containing I on which every sampled
    /// value evaluates; the honest stand-in for the unspecified extension
    /// domain of the curve.
    Interval evaluable_range(double lo, double hi, int samples = 1025) const;

private:
    std::shared_ptr<const CurveSource> source_;
    Interval domain_;
    std::optional<std::array<CurveExpr, 3>> exprs_;
    Params params_;
};

}  // namespace splitaffine
