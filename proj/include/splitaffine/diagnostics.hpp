#pragma once

// Geodesic criteria, the symmetry principle and structure-equation residuals.

#include <functional>
#include <string>
#include <vector>

#include "splitaffine/bjorling.hpp"
#include "splitaffine/cauchy.hpp"

namespace splitaffine {

/// r(s) = [alpha', alpha'', xi] - [U, U', U'']; alpha is a pre-geodesic iff
/// r vanishes identically.
std::function<double(double)> pregeodesic_residual(const AdmissiblePair& pair);

/// max |r| over `samples` points of the pair's interval.
double pregeodesic_sup(const AdmissiblePair& pair, int samples = 257);

struct GeodesicResult {
    bool geodesic = false;
    double residual = 0.0;
};

/// U from a constant metric m, then the pre-geodesic test at threshold 1e-8.
GeodesicResult geodesic_check(const AnalyticCurve3& alpha, double m, const Vec3R& xi = kE3);

struct SymmetrySpec {
    EquiaffineFrame frame;
    BoundExpr reparam;
};

/// Deviation max |T psi(s, t) - psi(G(s, t))| with G the split-holomorphic
/// extension of the reparametrisation.  Throws SymmetryMismatch when the
/// pair is not symmetric under `sym` to 1e-8.
double symmetry_check(const AdmissiblePair& pair, const SymmetrySpec& sym, const Window& window, int ns, int nt,
                      const SurfaceOptions& options = {});

struct DiagnosticsReport {
    Window window;
    int ns = 0;
    int nt = 0;
    double h = 0.0;
    std::vector<ResidualField> fields;
    /// 2 rho is constant over the grid to 1e-8.
    bool metric_constant = false;

    /// Sup-norm of a named field; throws std::out_of_range.
    double sup(const std::string& name) const;
};

/// Residual names: wave (N_ss - N_tt), laplace (psi_zzbar - rho xi),
/// conormal_s, conormal_t, normalization, volume ([psi_s, psi_t, xi] - 2 rho),
/// volume_conormal ([psi_s, psi_t, xi] + [N_s, N_t, N]) and monge_ampere
/// (det Hess f + 1 where |rho| > 1e-2, in the gauge xi = e3).
DiagnosticsReport full_residual_report(const AffineSurface& surface, const Window& window, int ns, int nt,
                                       double h = 1e-4);

}  // namespace splitaffine
