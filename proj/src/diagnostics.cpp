#include "splitaffine/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace splitaffine {

std::function<double(double)> pregeodesic_residual(const AdmissiblePair& pair) {
    return [pair](double s) {
        const Jet3 a = pair.alpha().jet(s, 2);
        const Jet3 U = pair.conormal().jet(s, 2);
        const Vec3R a1 = coeff(a, 1);
        const Vec3R a2 = 2.0 * coeff(a, 2);
        return det3(a1, a2, pair.xi()) - det3(coeff(U, 0), coeff(U, 1), 2.0 * coeff(U, 2));
    };
}

double pregeodesic_sup(const AdmissiblePair& pair, int samples) {
    const auto r = pregeodesic_residual(pair);
    double sup = 0.0;
    for (double s : pair.alpha().domain().samples(samples)) sup = std::max(sup, std::abs(r(s)));
    return sup;
}

GeodesicResult geodesic_check(const AnalyticCurve3& alpha, double m, const Vec3R& xi) {
    if (!(m > 0.0)) throw DomainError("geodesic_check needs m > 0");
    const AnalyticCurve3 U = conormal_from_metric(alpha, BoundExpr::constant(m), xi);
    const AdmissiblePair pair = check_admissible(alpha, U, xi);
    GeodesicResult out;
    out.residual = pregeodesic_sup(pair);
    out.geodesic = out.residual < 1e-8;
    return out;
}

double symmetry_check(const AdmissiblePair& pair, const SymmetrySpec& sym, const Window& window, int ns, int nt,
                      const SurfaceOptions& options) {
    const Mat3& A = sym.frame.A;
    const Vec3R xi = pair.xi();
    if (max_abs(A * xi - xi) > 1e-12 * std::max(1.0, max_abs(xi))) throw SymmetryMismatch("A xi = xi", 0.0);
    const Mat3 conormal_map = A.transposed().inverse();
    for (double s : pair.alpha().domain().samples(257)) {
        const Jet g = sym.reparam.jet(s, 1);
        if (g[1] == 0.0) throw SymmetryMismatch("Gamma' != 0", s);
        const double gs = g[0];
        if (max_abs(pair.alpha().value(gs) - sym.frame.apply(pair.alpha().value(s))) > 1e-8)
            throw SymmetryMismatch("alpha(Gamma(s)) = T alpha(s)", s);
        if (max_abs(pair.conormal().value(gs) - conormal_map * pair.conormal().value(s)) > 1e-8)
            throw SymmetryMismatch("U(Gamma(s)) = (A^t)^-1 U(s)", s);
    }
    const AffineSurface surf = build_surface(pair, window.s.lo, options);
    double dev = 0.0;
    for (double t : window.t.samples(nt)) {
        for (double s : window.s.samples(ns)) {
            const double gu = sym.reparam(s + t);
            const double gv = sym.reparam(s - t);
            const Vec3R image = surf.psi(0.5 * (gu + gv), 0.5 * (gu - gv));
            dev = std::max(dev, max_abs(sym.frame.apply(surf.psi(s, t)) - image));
        }
    }
    return dev;
}

double DiagnosticsReport::sup(const std::string& name) const {
    for (const auto& f : fields)
        if (f.name == name) return f.sup;
    throw std::out_of_range("no residual named " + name);
}

DiagnosticsReport full_residual_report(const AffineSurface& surface, const Window& window, int ns, int nt,
                                       double h) {
    const auto ss = window.s.samples(ns);
    const auto ts = window.t.samples(nt);
    DiagnosticsReport rep;
    rep.window = window;
    rep.ns = static_cast<int>(ss.size());
    rep.nt = static_cast<int>(ts.size());
    rep.h = h;
    const char* names[] = {"wave",   "laplace",         "conormal_s",  "conormal_t",
                           "normalization", "volume", "volume_conormal", "monge_ampere"};
    for (const char* n : names) rep.fields.push_back({n, rep.ns, rep.nt, {}, 0.0});
    auto put = [&](int k, double v) {
        rep.fields[k].values.push_back(v);
        rep.fields[k].sup = std::max(rep.fields[k].sup, std::abs(v));
    };

    Vec3R xi = kE3;
    Mat3 A = Mat3::identity();
    Mat3 conormal_map = Mat3::identity();
    if (surface.frame()) {
        A = surface.frame()->A;
        xi = A.inverse() * kE3;
        conormal_map = A.transposed().inverse();
    }
    const int sigma = surface.orientation();

    double d_first = 0.0;
    bool first = true;
    rep.metric_constant = true;
    for (double t : ts) {
        for (double s : ss) {
            const Vec3R ps_p = surface.psi(s + h, t), ps_m = surface.psi(s - h, t);
            const Vec3R pt_p = surface.psi(s, t + h), pt_m = surface.psi(s, t - h);
            const Vec3R N = surface.conormal(s, t);
            const Vec3R Ns_p = surface.conormal(s + h, t), Ns_m = surface.conormal(s - h, t);
            const Vec3R Nt_p = surface.conormal(s, t + h), Nt_m = surface.conormal(s, t - h);
            const double rho_raw = sigma * surface.rho(s, t);

            const Vec3R psi_s = (1.0 / (2 * h)) * (ps_p - ps_m);
            const Vec3R psi_t = (1.0 / (2 * h)) * (pt_p - pt_m);
            const Vec3R N_s = (1.0 / (2 * h)) * (Ns_p - Ns_m);
            const Vec3R N_t = (1.0 / (2 * h)) * (Nt_p - Nt_m);
            const Vec3R wave = (1.0 / (h * h)) * ((Ns_p + Ns_m) - (Nt_p + Nt_m));
            const Vec3R lap = (0.25 / (h * h)) * ((ps_p + ps_m) - (pt_p + pt_m));

            put(0, max_abs(wave));
            put(1, max_abs(lap - rho_raw * xi));
            put(2, dot(N, psi_s));
            put(3, dot(N, psi_t));
            put(4, dot(N, xi) - 1.0);
            const double vol = det3(psi_s, psi_t, xi);
            put(5, vol - 2.0 * rho_raw);
            put(6, vol + det3(N_s, N_t, N));

            double ma = 0.0;
            if (std::abs(rho_raw) > 1e-2) {
                const Vec3R gs = A * psi_s, gt = A * psi_t;
                const Vec3R ns = conormal_map * N_s, nt = conormal_map * N_t;
                const double jpsi = gs.x * gt.y - gs.y * gt.x;
                const double jn = ns.x * nt.y - ns.y * nt.x;
                ma = jn / jpsi + 1.0;
            }
            put(7, ma);

            const double d = 2.0 * rho_raw;
            if (first) {
                d_first = d;
                first = false;
            } else if (std::abs(d - d_first) > 1e-8) {
                rep.metric_constant = false;
            }
        }
    }
    return rep;
}

}  // namespace splitaffine
