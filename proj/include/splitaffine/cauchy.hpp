#pragma once

// Cauchy problem for the Hessian -1 equation
//
//     f_xx f_yy - f_xy^2 = -1,   f(x, 0) = a(x),   f_y(x, 0) = b(x),
//
// solved through the Bjorling pair alpha = (s, 0, a), U = (-a', -b, 1).  The
// graph chart is x = s - Im b(z), y = Im a'(z) with z = s + j t.

#include <utility>
#include <vector>

#include "splitaffine/bjorling.hpp"

namespace splitaffine {

struct CauchyData {
    BoundExpr a;
    BoundExpr b;
    Interval interval{-1.0, 1.0};
    double x0 = 0.0;
    /// Half-width of the t-range of the parameter window; <= 0 means |I| / 2.
    double t_half_width = 0.0;
    int seed_ns = 201;
    int seed_nt = 201;
    QuadratureSettings quadrature{1e-12, 1 << 14};
    double newton_tol = 1e-12;
    int newton_max_iter = 50;
};

struct ChartPoint {
    double x = 0.0;
    double y = 0.0;
};

struct ParamPoint {
    double s = 0.0;
    double t = 0.0;
};

class GraphSolution {
public:
    /// Chart map (s, t) -> (x, y).
    ChartPoint chart(double s, double t) const;
    /// Rows (x_s, x_t), (y_s, y_t).
    std::array<double, 4> jacobian(double s, double t) const;
    double jacobian_det(double s, double t) const;

    /// Inverse chart by damped Newton from the nearest seed with rho > 0.
    /// Throws OutOfChart or JacobianSingular.
    ParamPoint invert(double x, double y) const;

    /// f at a chart point.
    double f(double x, double y) const;
    /// f at a parameter point through psi3.
    double f_param(double s, double t) const;
    /// f at a parameter point through the explicit integral
    ///   a(x0) + 1/2 Re int [(a' + conj a')(1 - j b') + a'' (j b + j conj b - z + conj z)] dz
    /// along x0 -> s -> s + j t.
    double f_explicit(double s, double t) const;

    const AffineSurface& surface() const { return surface_; }
    const CauchyData& data() const { return data_; }
    const Window& window() const { return window_; }

private:
    friend GraphSolution solve_cauchy(const CauchyData&);

    struct Seed {
        double s, t, x, y;
    };

    CauchyData data_;
    AffineSurface surface_;
    Window window_;
    std::vector<Seed> seeds_;
};

/// Throws ConvexityViolation when a'' <= 0 somewhere on I.
GraphSolution solve_cauchy(const CauchyData& data);

inline double eval_f(const GraphSolution& sol, double x, double y) { return sol.f(x, y); }

struct ResidualField {
    std::string name;
    int nx = 0;
    int ny = 0;
    std::vector<double> values;  ///< row-major, x fastest
    double sup = 0.0;
};

/// f_xx f_yy - f_xy^2 + 1 at one point, 9-point stencil of step h.
double hessian_residual_at(const GraphSolution& sol, double x, double y, double h = 1e-3);

/// f_xx f_yy - f_xy^2 + 1 by central differences on an nx x ny grid of the
/// (x, y) window.  Propagates OutOfChart.
ResidualField hessian_residual(const GraphSolution& sol, const Window& xy_window, int nx, int ny, double h = 1e-3);

}  // namespace splitaffine
