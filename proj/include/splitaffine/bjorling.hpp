#pragma once

// Indefinite improper affine spheres from Bjorling data.
//
// Given an admissible pair (alpha, U) for the affine normal xi = e3, the
// split-holomorphic curve
//
//     Phi(z) = (U(z) + j xi x alpha(z)) / 2
//
// decomposes in null coordinates u = s + t, v = s - t as
// Phi = e+ Phi+(u) + e- Phi-(v) with Phi+- = (U +- e3 x alpha) / 2, two real
// curves.  From them
//
//     N          = Phi+(u) + Phi-(v)
//     (psi1, psi2) = (Phi+_2(u) - Phi-_2(v), Phi-_1(v) - Phi+_1(u))
//     psi_u      = Phi+'(u) x N,      psi_v = N x Phi-'(v)
//     rho        = [N, Phi+'(u), Phi-'(v)]
//
// psi3 is the integral of the exact form psi3_u du + psi3_v dv, anchored at
// alpha3(s0).  The metric is h = 2 rho (ds^2 - dt^2).

#include <optional>
#include <vector>

#include "splitaffine/curve.hpp"
#include "splitaffine/quadrature.hpp"

namespace splitaffine {

struct AdmissibilityReport {
    double orthogonality = 0.0;  ///< max |<alpha', U>|
    double normalization = 0.0;  ///< max |<xi, U> - 1|
    double symmetry = 0.0;       ///< max |<alpha'', U> + <alpha', U'>|
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double worst_s[3] = {0.0, 0.0, 0.0};
    int samples = 0;
};

struct AdmissibleOptions {
    int samples = 257;
    double tolerance = 1e-7;
    /// Accept lambda < 0 everywhere by exchanging the roles of s and t in
    /// the conformal frame.  Off by default.
    bool allow_negative_metric = false;
};

/// Residuals of the admissibility system on a uniform grid of I; never
/// throws for residual size.
AdmissibilityReport admissibility_residuals(const AnalyticCurve3& alpha, const AnalyticCurve3& conormal,
                                            const Vec3R& xi, int samples = 257);

class AdmissiblePair {
public:
    const AnalyticCurve3& alpha() const { return alpha_; }
    const AnalyticCurve3& conormal() const { return conormal_; }
    const Vec3R& xi() const { return xi_; }
    const AdmissibilityReport& report() const { return report_; }
    /// +1 for lambda > 0; -1 when negative metric was accepted.
    int orientation() const { return orientation_; }
    /// lambda(s) = <alpha''(s), U(s)>.
    double lambda(double s) const;

private:
    friend AdmissiblePair check_admissible(const AnalyticCurve3&, const AnalyticCurve3&, const Vec3R&,
                                           const AdmissibleOptions&);
    AnalyticCurve3 alpha_;
    AnalyticCurve3 conormal_;
    Vec3R xi_ = kE3;
    AdmissibilityReport report_;
    int orientation_ = 1;
};

/// Throws NotAdmissible (residual above tolerance) or LambdaNonPositive.
AdmissiblePair check_admissible(const AnalyticCurve3& alpha, const AnalyticCurve3& conormal, const Vec3R& xi = kE3,
                                const AdmissibleOptions& options = {});

/// U = alpha' x (alpha'' - lambda xi) / [alpha', alpha'', xi].  Throws
/// DegenerateProjection when the bracket vanishes on the sample grid of I.
AnalyticCurve3 conormal_from_metric(const AnalyticCurve3& alpha, const BoundExpr& lambda, const Vec3R& xi = kE3);

/// U + mu xi x alpha'; admissible again whenever [alpha', alpha'', xi] = 0.
AnalyticCurve3 shifted_conormal(const AnalyticCurve3& conormal, const AnalyticCurve3& alpha, const BoundExpr& mu,
                                const Vec3R& xi = kE3);

/// The image of a curve under v -> A v + v0.
AnalyticCurve3 transform_curve(const AnalyticCurve3& curve, const EquiaffineFrame& frame);
/// The image of a conormal curve under the inverse transpose (A^t)^{-1}.
AnalyticCurve3 transform_conormal(const AnalyticCurve3& curve, const EquiaffineFrame& frame);

/// Phi+ and Phi- as real curves, in the gauge xi = e3.
class HolomorphicData {
public:
    struct Value {
        Vec3R phi;
        Vec3R dphi;
    };

    HolomorphicData() = default;
    HolomorphicData(AnalyticCurve3 alpha, AnalyticCurve3 conormal)
        : alpha_(std::move(alpha)), conormal_(std::move(conormal)) {}

    Value plus(double x) const;
    Value minus(double x) const;
    /// Phi(z) = e+ Phi+(u) + e- Phi-(v).
    SplitVec3 phi(SplitScalar z) const;
    SplitVec3 dphi(SplitScalar z) const;

    const AnalyticCurve3& alpha() const { return alpha_; }
    const AnalyticCurve3& conormal() const { return conormal_; }

private:
    AnalyticCurve3 alpha_;
    AnalyticCurve3 conormal_;
};

struct SurfaceOptions {
    QuadratureSettings quadrature;
};

struct SurfacePoint {
    Vec3R psi;
    Vec3R N;
    double rho = 0.0;
};

struct Tangents {
    Vec3R psi_s;
    Vec3R psi_t;
};

struct Window {
    Interval s;
    Interval t;
};

enum class IntegrationPath {
    AxisFirst,     ///< (s0, 0) -> (s, 0) -> (s, t)
    VerticalFirst  ///< (s0, 0) -> (s0, t) -> (s, t)
};

/// Immutable evaluator; safe for concurrent use.
class AffineSurface {
public:
    SurfacePoint evaluate(double s, double t) const;
    Vec3R psi(double s, double t, IntegrationPath path = IntegrationPath::AxisFirst) const;
    Vec3R conormal(double s, double t) const;
    /// Metric density (h = 2 rho (ds^2 - dt^2)); needs no quadrature.
    double rho(double s, double t) const;
    /// Exact first derivatives of psi.
    Tangents tangents(double s, double t) const;
    /// psi from integrating psi_z = -j (Phi + conj Phi) x Phi_z for all three
    /// coordinates; an independent route to the algebraic psi1, psi2.
    Vec3R psi_integrated(double s, double t) const;

    double base_point() const { return s0_; }
    int orientation() const { return orientation_; }
    bool is_affine_map() const { return affine_map_; }
    const HolomorphicData& data() const { return data_; }
    const QuadratureSettings& quadrature() const { return quad_; }
    /// Frame taking user coordinates to the internal gauge xi = e3.
    const std::optional<EquiaffineFrame>& frame() const { return frame_; }
    /// The generating curve in user coordinates.
    const AnalyticCurve3& curve() const { return user_alpha_; }

private:
    friend AffineSurface build_surface(const AdmissiblePair&, double, const SurfaceOptions&);
    friend AffineSurface build_affine_map(const AnalyticCurve3&, double, const Vec3R&, const SurfaceOptions&);

    struct Local {
        HolomorphicData::Value p, m;
        Vec3R N;
    };
    Local local(double s, double t) const;
    double psi3_gauge(double s, double t, IntegrationPath path) const;
    Vec3R psi_gauge(double s, double t, IntegrationPath path) const;
    Vec3R to_user_point(const Vec3R& p) const;
    Vec3R to_user_vector(const Vec3R& v) const;
    Vec3R to_user_conormal(const Vec3R& n) const;

    HolomorphicData data_;
    AnalyticCurve3 user_alpha_;
    double s0_ = 0.0;
    Vec3R anchor_;  // alpha(s0) in gauge coordinates
    QuadratureSettings quad_;
    int orientation_ = 1;
    bool affine_map_ = false;
    std::optional<EquiaffineFrame> frame_;
    std::optional<Mat3> inverse_A_;
};

AffineSurface build_surface(const AdmissiblePair& pair, double s0, const SurfaceOptions& options = {});

/// The improper affine map singular along alpha: U = alpha' x alpha'' /
/// [alpha', alpha'', xi], i.e. lambda = 0.  Throws DegenerateProjection.
AffineSurface build_affine_map(const AnalyticCurve3& alpha, double s0, const Vec3R& xi = kE3,
                               const SurfaceOptions& options = {});

struct SingularPoint {
    double s = 0.0;
    double t = 0.0;
    double rho = 0.0;
    /// The singular curve through this point is stationary in space: psi
    /// maps it to (locally) a single point.
    bool isolated_candidate = false;
};

struct ScanOptions {
    double rho_tol = 1e-10;
    double stationary_tol = 1e-6;
};

/// Sign changes of rho along grid edges, refined by bisection.
std::vector<SingularPoint> singular_scan(const AffineSurface& surface, const Window& window, int ns, int nt,
                                         const ScanOptions& options = {});

}  // namespace splitaffine
