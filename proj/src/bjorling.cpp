#include "splitaffine/bjorling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace splitaffine {

namespace {

class ConormalFromMetric final : public CurveSource {
public:
    ConormalFromMetric(AnalyticCurve3 alpha, BoundExpr lambda, Vec3R xi)
        : alpha_(std::move(alpha)), lambda_(std::move(lambda)), xi_(xi) {}

    Jet3 jet(double s, int order) const override {
        const Jet3 a = alpha_.jet(s, order + 2);
        const Jet3 d1 = derivative(a);
        const Jet3 d2 = derivative(d1);
        const Jet3 xi = constant_jet3(xi_, order);
        const Jet det = det3(d1, d2, xi);
        if (det[0] == 0.0) throw DegenerateProjection(s, 0.0);
        const Jet lam = lambda_.jet(s, order);
        const Jet3 num = cross(d1, d2 - lam * xi);
        return {num[0] / det, num[1] / det, num[2] / det};
    }

    std::string describe() const override {
        return "conormal of " + alpha_.describe() + " with metric " + lambda_.expr.str();
    }

private:
    AnalyticCurve3 alpha_;
    BoundExpr lambda_;
    Vec3R xi_;
};

class ShiftedConormal final : public CurveSource {
public:
    ShiftedConormal(AnalyticCurve3 U, AnalyticCurve3 alpha, BoundExpr mu, Vec3R xi)
        : U_(std::move(U)), alpha_(std::move(alpha)), mu_(std::move(mu)), xi_(xi) {}

    Jet3 jet(double s, int order) const override {
        const Jet3 d1 = derivative(alpha_.jet(s, order + 1));
        return U_.jet(s, order) + mu_.jet(s, order) * cross(constant_jet3(xi_, order), d1);
    }

    std::string describe() const override { return U_.describe() + " + (" + mu_.expr.str() + ") xi x alpha'"; }

private:
    AnalyticCurve3 U_;
    AnalyticCurve3 alpha_;
    BoundExpr mu_;
    Vec3R xi_;
};

class LinearImage final : public CurveSource {
public:
    LinearImage(AnalyticCurve3 c, Mat3 A, Vec3R v0) : c_(std::move(c)), A_(A), v0_(v0) {}

    Jet3 jet(double s, int order) const override { return A_ * c_.jet(s, order) + constant_jet3(v0_, order); }

    std::string describe() const override { return "equiaffine image of " + c_.describe(); }

private:
    AnalyticCurve3 c_;
    Mat3 A_;
    Vec3R v0_;
};

double bracket_scale(const Vec3R& d1, const Vec3R& d2, const Vec3R& xi) { return norm(d1) * norm(d2) * norm(xi); }

}  // namespace

// ---------------------------------------------------------------------------
// Admissibility

AdmissibilityReport admissibility_residuals(const AnalyticCurve3& alpha, const AnalyticCurve3& conormal,
                                            const Vec3R& xi, int samples) {
    AdmissibilityReport r;
    r.samples = samples;
    r.lambda_min = std::numeric_limits<double>::infinity();
    r.lambda_max = -std::numeric_limits<double>::infinity();
    for (double s : alpha.domain().samples(samples)) {
        const Jet3 a = alpha.jet(s, 2);
        const Jet3 U = conormal.jet(s, 1);
        const Vec3R a1 = coeff(a, 1);
        const Vec3R a2 = 2.0 * coeff(a, 2);
        const Vec3R U0 = coeff(U, 0);
        const Vec3R U1 = coeff(U, 1);
        const double orth = std::abs(dot(a1, U0));
        const double normal = std::abs(dot(xi, U0) - 1.0);
        const double lambda = dot(a2, U0);
        const double sym = std::abs(lambda + dot(a1, U1));
        if (orth > r.orthogonality) {
            r.orthogonality = orth;
            r.worst_s[0] = s;
        }
        if (normal > r.normalization) {
            r.normalization = normal;
            r.worst_s[1] = s;
        }
        if (sym > r.symmetry) {
            r.symmetry = sym;
            r.worst_s[2] = s;
        }
        r.lambda_min = std::min(r.lambda_min, lambda);
        r.lambda_max = std::max(r.lambda_max, lambda);
    }
    return r;
}

double AdmissiblePair::lambda(double s) const {
    const Vec3R a2 = alpha_.derivative(s, 2);
    return dot(a2, conormal_.value(s));
}

AdmissiblePair check_admissible(const AnalyticCurve3& alpha, const AnalyticCurve3& conormal, const Vec3R& xi,
                                const AdmissibleOptions& options) {
    if (norm(xi) == 0.0) throw ZeroVector("affine normal must be nonzero");
    const AdmissibilityReport r = admissibility_residuals(alpha, conormal, xi, options.samples);
    if (r.orthogonality > options.tolerance) throw NotAdmissible("<alpha', U> = 0", r.worst_s[0], r.orthogonality);
    if (r.normalization > options.tolerance) throw NotAdmissible("<xi, U> = 1", r.worst_s[1], r.normalization);
    if (r.symmetry > options.tolerance)
        throw NotAdmissible("<alpha'', U> = -<alpha', U'>", r.worst_s[2], r.symmetry);

    AdmissiblePair pair;
    pair.alpha_ = alpha;
    pair.conormal_ = conormal;
    pair.xi_ = xi;
    pair.report_ = r;

    auto first_violation = [&](auto bad) {
        for (double s : alpha.domain().samples(options.samples)) {
            const double l = pair.lambda(s);
            if (bad(l)) throw LambdaNonPositive(s, l);
        }
    };
    if (r.lambda_min > 0.0) {
        pair.orientation_ = 1;
    } else if (options.allow_negative_metric && r.lambda_max < 0.0) {
        pair.orientation_ = -1;
    } else {
        first_violation([](double l) { return !(l > 0.0); });
    }
    return pair;
}

AnalyticCurve3 conormal_from_metric(const AnalyticCurve3& alpha, const BoundExpr& lambda, const Vec3R& xi) {
    if (norm(xi) == 0.0) throw ZeroVector("affine normal must be nonzero");
    for (double s : alpha.domain().samples(257)) {
        const Vec3R d1 = alpha.derivative(s, 1);
        const Vec3R d2 = alpha.derivative(s, 2);
        const double det = det3(d1, d2, xi);
        if (std::abs(det) <= 1e-12 * std::max(1.0, bracket_scale(d1, d2, xi))) throw DegenerateProjection(s, det);
    }
    return AnalyticCurve3(std::make_shared<ConormalFromMetric>(alpha, lambda, xi), alpha.domain());
}

AnalyticCurve3 shifted_conormal(const AnalyticCurve3& conormal, const AnalyticCurve3& alpha, const BoundExpr& mu,
                                const Vec3R& xi) {
    return AnalyticCurve3(std::make_shared<ShiftedConormal>(conormal, alpha, mu, xi), conormal.domain());
}

AnalyticCurve3 transform_curve(const AnalyticCurve3& curve, const EquiaffineFrame& frame) {
    return AnalyticCurve3(std::make_shared<LinearImage>(curve, frame.A, frame.v0), curve.domain());
}

AnalyticCurve3 transform_conormal(const AnalyticCurve3& curve, const EquiaffineFrame& frame) {
    return AnalyticCurve3(std::make_shared<LinearImage>(curve, frame.A.transposed().inverse(), Vec3R{}),
                          curve.domain());
}

// ---------------------------------------------------------------------------
// Holomorphic data

namespace {

HolomorphicData::Value half_sum(const Jet3& U, const Jet3& a, double sign) {
    // (U +- e3 x alpha) / 2 with e3 x alpha = (-alpha_y, alpha_x, 0)
    HolomorphicData::Value v;
    for (int k = 0; k < 2; ++k) {
        const Vec3R Uk = coeff(U, k);
        const Vec3R ak = coeff(a, k);
        const Vec3R w{Uk.x - sign * ak.y, Uk.y + sign * ak.x, Uk.z};
        (k == 0 ? v.phi : v.dphi) = 0.5 * w;
    }
    return v;
}

SplitVec3 combine(const Vec3R& plus, const Vec3R& minus) {
    return {SplitScalar::from_null(plus.x, minus.x), SplitScalar::from_null(plus.y, minus.y),
            SplitScalar::from_null(plus.z, minus.z)};
}

}  // namespace

HolomorphicData::Value HolomorphicData::plus(double x) const {
    return half_sum(conormal_.jet(x, 1), alpha_.jet(x, 1), 1.0);
}

HolomorphicData::Value HolomorphicData::minus(double x) const {
    return half_sum(conormal_.jet(x, 1), alpha_.jet(x, 1), -1.0);
}

SplitVec3 HolomorphicData::phi(SplitScalar z) const { return combine(plus(z.u()).phi, minus(z.v()).phi); }

SplitVec3 HolomorphicData::dphi(SplitScalar z) const { return combine(plus(z.u()).dphi, minus(z.v()).dphi); }

// ---------------------------------------------------------------------------
// Surface evaluation

AffineSurface::Local AffineSurface::local(double s, double t) const {
    Local l;
    l.p = data_.plus(s + t);
    l.m = data_.minus(s - t);
    l.N = l.p.phi + l.m.phi;
    return l;
}

double AffineSurface::psi3_gauge(double s, double t, IntegrationPath path) const {
    // psi3_u = (Phi+' x N)_3, psi3_v = (N x Phi-')_3
    auto grad = [this](double ss, double tt) {
        const Local l = local(ss, tt);
        const double du = l.p.dphi.x * l.N.y - l.p.dphi.y * l.N.x;
        const double dv = l.N.x * l.m.dphi.y - l.N.y * l.m.dphi.x;
        return std::pair<double, double>{du + dv, du - dv};
    };
    const auto ds = [&](double tt) { return [&, tt](double ss) { return grad(ss, tt).first; }; };
    const auto dt = [&](double ss) { return [&, ss](double tt) { return grad(ss, tt).second; }; };
    double value = anchor_.z;
    if (path == IntegrationPath::AxisFirst) {
        value += integrate<double>(ds(0.0), s0_, s, quad_).value;
        value += integrate<double>(dt(s), 0.0, t, quad_).value;
    } else {
        value += integrate<double>(dt(s0_), 0.0, t, quad_).value;
        value += integrate<double>(ds(t), s0_, s, quad_).value;
    }
    return value;
}

Vec3R AffineSurface::psi_gauge(double s, double t, IntegrationPath path) const {
    const Local l = local(s, t);
    return {l.p.phi.y - l.m.phi.y, l.m.phi.x - l.p.phi.x, psi3_gauge(s, t, path)};
}

Vec3R AffineSurface::to_user_point(const Vec3R& p) const { return frame_ ? frame_->apply_inverse(p) : p; }
Vec3R AffineSurface::to_user_vector(const Vec3R& v) const { return inverse_A_ ? (*inverse_A_) * v : v; }
Vec3R AffineSurface::to_user_conormal(const Vec3R& n) const {
    return frame_ ? frame_->apply_conormal_inverse(n) : n;
}

SurfacePoint AffineSurface::evaluate(double s, double t) const {
    const Local l = local(s, t);
    SurfacePoint p;
    p.psi = to_user_point({l.p.phi.y - l.m.phi.y, l.m.phi.x - l.p.phi.x, psi3_gauge(s, t, IntegrationPath::AxisFirst)});
    p.N = to_user_conormal(l.N);
    p.rho = orientation_ * det3(l.N, l.p.dphi, l.m.dphi);
    return p;
}

Vec3R AffineSurface::psi(double s, double t, IntegrationPath path) const { return to_user_point(psi_gauge(s, t, path)); }

Vec3R AffineSurface::conormal(double s, double t) const { return to_user_conormal(local(s, t).N); }

double AffineSurface::rho(double s, double t) const {
    const Local l = local(s, t);
    return orientation_ * det3(l.N, l.p.dphi, l.m.dphi);
}

Tangents AffineSurface::tangents(double s, double t) const {
    const Local l = local(s, t);
    const Vec3R pu = cross(l.p.dphi, l.N);
    const Vec3R pv = cross(l.N, l.m.dphi);
    return {to_user_vector(pu + pv), to_user_vector(pu - pv)};
}

Vec3R AffineSurface::psi_integrated(double s, double t) const {
    auto grad = [this](double ss, double tt) {
        const Local l = local(ss, tt);
        const Vec3R pu = cross(l.p.dphi, l.N);
        const Vec3R pv = cross(l.N, l.m.dphi);
        return std::pair<Vec3R, Vec3R>{pu + pv, pu - pv};
    };
    Vec3R value = anchor_;
    value += integrate<Vec3R>([&](double ss) { return grad(ss, 0.0).first; }, s0_, s, quad_).value;
    value += integrate<Vec3R>([&](double tt) { return grad(s, tt).second; }, 0.0, t, quad_).value;
    return to_user_point(value);
}

namespace {

struct Gauge {
    std::optional<EquiaffineFrame> frame;
    AnalyticCurve3 alpha;
    AnalyticCurve3 conormal;
};

Gauge to_gauge(const AnalyticCurve3& alpha, const AnalyticCurve3& conormal, const Vec3R& xi) {
    if (xi == kE3) return {std::nullopt, alpha, conormal};
    const EquiaffineFrame frame = normalize_frame(xi);
    return {frame, transform_curve(alpha, frame), transform_conormal(conormal, frame)};
}

}  // namespace

AffineSurface build_surface(const AdmissiblePair& pair, double s0, const SurfaceOptions& options) {
    Gauge g = to_gauge(pair.alpha(), pair.conormal(), pair.xi());
    AffineSurface surf;
    surf.data_ = HolomorphicData(g.alpha, g.conormal);
    surf.user_alpha_ = pair.alpha();
    surf.s0_ = s0;
    surf.anchor_ = g.alpha.value(s0);
    surf.quad_ = options.quadrature;
    surf.orientation_ = pair.orientation();
    surf.frame_ = g.frame;
    if (g.frame) surf.inverse_A_ = g.frame->A.inverse();
    return surf;
}

AffineSurface build_affine_map(const AnalyticCurve3& alpha, double s0, const Vec3R& xi,
                               const SurfaceOptions& options) {
    const AnalyticCurve3 U = conormal_from_metric(alpha, BoundExpr::constant(0.0), xi);
    Gauge g = to_gauge(alpha, U, xi);
    AffineSurface surf;
    surf.data_ = HolomorphicData(g.alpha, g.conormal);
    surf.user_alpha_ = alpha;
    surf.s0_ = s0;
    surf.anchor_ = g.alpha.value(s0);
    surf.quad_ = options.quadrature;
    surf.affine_map_ = true;
    surf.frame_ = g.frame;
    if (g.frame) surf.inverse_A_ = g.frame->A.inverse();
    return surf;
}

// ---------------------------------------------------------------------------
// Singular set

namespace {

// Bisection on f over [a, b] with f(a) f(b) < 0.
double bisect(const std::function<double(double)>& f, double a, double b, double fa, double tol) {
    double best = a, best_val = std::abs(fa);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid == a || mid == b) break;
        const double fm = f(mid);
        if (std::abs(fm) < best_val) {
            best = mid;
            best_val = std::abs(fm);
        }
        if (fm == 0.0) return mid;
        if ((fm < 0) == (fa < 0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
        if (best_val <= tol && std::abs(b - a) <= 1e-13 * std::max(1.0, std::abs(mid))) break;
    }
    return best;
}

}  // namespace

std::vector<SingularPoint> singular_scan(const AffineSurface& surface, const Window& window, int ns, int nt,
                                         const ScanOptions& options) {
    const auto ss = window.s.samples(ns);
    const auto ts = window.t.samples(nt);
    ns = static_cast<int>(ss.size());
    nt = static_cast<int>(ts.size());
    std::vector<double> rho(static_cast<std::size_t>(ns) * nt);
    for (int j = 0; j < nt; ++j)
        for (int i = 0; i < ns; ++i) rho[j * ns + i] = surface.rho(ss[i], ts[j]);

    std::vector<SingularPoint> out;
    auto add = [&](double s, double t) {
        for (const auto& p : out)
            if (std::abs(p.s - s) < 1e-9 && std::abs(p.t - t) < 1e-9) return;
        SingularPoint p{s, t, surface.rho(s, t), false};
        // Tangent of the zero set is (-rho_t, rho_s).
        const double h = 1e-6;
        const double rs = (surface.rho(s + h, t) - surface.rho(s - h, t)) / (2 * h);
        const double rt = (surface.rho(s, t + h) - surface.rho(s, t - h)) / (2 * h);
        const double g = std::hypot(rs, rt);
        if (g > 0.0) {
            const Tangents tg = surface.tangents(s, t);
            const Vec3R along = (-rt / g) * tg.psi_s + (rs / g) * tg.psi_t;
            const double scale = std::max(1.0, norm(tg.psi_s) + norm(tg.psi_t));
            p.isolated_candidate = norm(along) <= options.stationary_tol * scale;
        }
        out.push_back(p);
    };

    for (int j = 0; j < nt; ++j) {
        for (int i = 0; i < ns; ++i) {
            const double r = rho[j * ns + i];
            if (std::abs(r) <= options.rho_tol) {
                add(ss[i], ts[j]);
                continue;
            }
            if (i + 1 < ns) {
                const double r2 = rho[j * ns + i + 1];
                if (std::abs(r2) > options.rho_tol && (r < 0) != (r2 < 0)) {
                    const double t = ts[j];
                    const double s = bisect([&](double x) { return surface.rho(x, t); }, ss[i], ss[i + 1], r,
                                            options.rho_tol);
                    add(s, t);
                }
            }
            if (j + 1 < nt) {
                const double r2 = rho[(j + 1) * ns + i];
                if (std::abs(r2) > options.rho_tol && (r < 0) != (r2 < 0)) {
                    const double s = ss[i];
                    const double t = bisect([&](double y) { return surface.rho(s, y); }, ts[j], ts[j + 1], r,
                                            options.rho_tol);
                    add(s, t);
                }
            }
        }
    }
    return out;
}

}  // namespace splitaffine
