#include "splitaffine/cauchy.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace splitaffine {

namespace {

class GraphCurve final : public CurveSource {
public:
    explicit GraphCurve(BoundExpr a) : a_(std::move(a)) {}

    Jet3 jet(double s, int order) const override {
        return {Jet::variable(s, order), Jet(0.0, order), a_.jet(s, order)};
    }
    std::string describe() const override { return "(s, 0, " + a_.expr.str() + ")"; }

private:
    BoundExpr a_;
};

class CauchyConormal final : public CurveSource {
public:
    CauchyConormal(BoundExpr a, BoundExpr b) : a_(std::move(a)), b_(std::move(b)) {}

    Jet3 jet(double s, int order) const override {
        return {-1.0 * derivative(a_.jet(s, order + 1)), -1.0 * b_.jet(s, order), Jet(1.0, order)};
    }
    std::string describe() const override {
        return "(-(" + a_.expr.str() + ")', -(" + b_.expr.str() + "), 1)";
    }

private:
    BoundExpr a_;
    BoundExpr b_;
};

// k-th derivative of a bound expression, extended through null coordinates.
SplitScalar extend(const BoundExpr& e, SplitScalar z, int k) {
    return SplitScalar::from_null(e.jet(z.u(), k).derivative(k), e.jet(z.v(), k).derivative(k));
}

}  // namespace

GraphSolution solve_cauchy(const CauchyData& data) {
    for (double x : data.interval.samples(1025)) {
        const double a2 = data.a.jet(x, 2).derivative(2);
        if (!(a2 > 0.0)) throw ConvexityViolation(x, a2);
    }
    const Interval I = data.interval;
    AnalyticCurve3 alpha(std::make_shared<GraphCurve>(data.a), I);
    AnalyticCurve3 U(std::make_shared<CauchyConormal>(data.a, data.b), I);
    const AdmissiblePair pair = check_admissible(alpha, U);

    GraphSolution sol;
    sol.data_ = data;
    sol.surface_ = build_surface(pair, data.x0, SurfaceOptions{data.quadrature});
    const double T = data.t_half_width > 0.0 ? data.t_half_width : 0.5 * I.length();
    sol.window_ = Window{I, Interval{-T, T}};

    const auto ss = I.samples(data.seed_ns);
    const auto ts = sol.window_.t.samples(data.seed_nt);
    sol.seeds_.reserve(ss.size() * ts.size());
    for (double t : ts) {
        for (double s : ss) {
            if (!(sol.surface_.rho(s, t) > 0.0)) continue;
            const ChartPoint c = sol.chart(s, t);
            sol.seeds_.push_back({s, t, c.x, c.y});
        }
    }
    return sol;
}

ChartPoint GraphSolution::chart(double s, double t) const {
    const auto p = surface_.data().plus(s + t).phi;
    const auto m = surface_.data().minus(s - t).phi;
    return {p.y - m.y, m.x - p.x};
}

std::array<double, 4> GraphSolution::jacobian(double s, double t) const {
    const Tangents tg = surface_.tangents(s, t);
    return {tg.psi_s.x, tg.psi_t.x, tg.psi_s.y, tg.psi_t.y};
}

double GraphSolution::jacobian_det(double s, double t) const {
    const auto J = jacobian(s, t);
    return J[0] * J[3] - J[1] * J[2];
}

ParamPoint GraphSolution::invert(double x, double y) const {
    auto where = [&] {
        std::ostringstream os;
        os << "(" << x << ", " << y << ")";
        return os.str();
    };
    if (seeds_.empty()) throw OutOfChart("no regular seed points in the parameter window");
    const Seed* best = &seeds_.front();
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& sd : seeds_) {
        const double d = (sd.x - x) * (sd.x - x) + (sd.y - y) * (sd.y - y);
        if (d < best_d) {
            best_d = d;
            best = &sd;
        }
    }
    double s = best->s, t = best->t;
    auto residual = [&](double ss, double tt) {
        const ChartPoint c = chart(ss, tt);
        return std::array<double, 2>{c.x - x, c.y - y};
    };
    auto size = [](const std::array<double, 2>& r) { return std::max(std::abs(r[0]), std::abs(r[1])); };

    auto F = residual(s, t);
    double err = size(F);
    bool converged = err <= data_.newton_tol;
    int polish = 0;
    for (int it = 0; it < data_.newton_max_iter && polish < 3; ++it) {
        const auto J = jacobian(s, t);
        const double det = J[0] * J[3] - J[1] * J[2];
        if (std::abs(det) < 1e-10) {
            if (err <= 1e-6) throw JacobianSingular("chart Jacobian vanishes at " + where());
            throw OutOfChart("Newton iteration for " + where() + " ran into the singular set");
        }
        const double ds = -(J[3] * F[0] - J[1] * F[1]) / det;
        const double dt = -(-J[2] * F[0] + J[0] * F[1]) / det;
        double step = 1.0;
        std::array<double, 2> Fn{};
        double en = 0.0;
        for (int k = 0; k < 30; ++k, step *= 0.5) {
            Fn = residual(s + step * ds, t + step * dt);
            en = size(Fn);
            if (en < err) break;
        }
        if (!(en < err)) break;
        s += step * ds;
        t += step * dt;
        F = Fn;
        err = en;
        if (err <= data_.newton_tol) {
            converged = true;
            ++polish;
        }
    }
    if (!converged) throw OutOfChart("Newton inversion did not reach " + where());
    const double margin = 1e-9 * std::max(1.0, window_.s.length());
    if (s < window_.s.lo - margin || s > window_.s.hi + margin || t < window_.t.lo - margin ||
        t > window_.t.hi + margin)
        throw OutOfChart(where() + " lies outside the parameter window");
    if (!(surface_.rho(s, t) > 0.0)) throw OutOfChart(where() + " lies beyond the singular set");
    return {s, t};
}

double GraphSolution::f_param(double s, double t) const { return surface_.psi(s, t).z; }

double GraphSolution::f(double x, double y) const {
    const ParamPoint p = invert(x, y);
    return f_param(p.s, p.t);
}

double GraphSolution::f_explicit(double s, double t) const {
    const SplitScalar J = SplitScalar::j();
    auto integrand = [&](SplitScalar z) {
        const SplitScalar a1 = extend(data_.a, z, 1);
        const SplitScalar a2 = extend(data_.a, z, 2);
        const SplitScalar b0 = extend(data_.b, z, 0);
        const SplitScalar b1 = extend(data_.b, z, 1);
        return (a1 + a1.conj()) * (SplitScalar(1.0) - J * b1) + a2 * (J * b0 + J * b0.conj() - z + z.conj());
    };
    const double x0 = data_.x0;
    double value = data_.a(x0);
    value += 0.5 * integrate<double>([&](double sigma) { return integrand(SplitScalar(sigma, 0.0)).re; }, x0, s,
                                     data_.quadrature)
                       .value;
    // dz = j dtau, so Re(I j) = Im I.
    value += 0.5 * integrate<double>([&](double tau) { return integrand(SplitScalar(s, tau)).im; }, 0.0, t,
                                     data_.quadrature)
                       .value;
    return value;
}

double hessian_residual_at(const GraphSolution& sol, double x, double y, double h) {
    const double f0 = sol.f(x, y);
    const double fxx = (sol.f(x + h, y) - 2.0 * f0 + sol.f(x - h, y)) / (h * h);
    const double fyy = (sol.f(x, y + h) - 2.0 * f0 + sol.f(x, y - h)) / (h * h);
    const double fxy =
        (sol.f(x + h, y + h) - sol.f(x + h, y - h) - sol.f(x - h, y + h) + sol.f(x - h, y - h)) / (4.0 * h * h);
    return fxx * fyy - fxy * fxy + 1.0;
}

ResidualField hessian_residual(const GraphSolution& sol, const Window& xy, int nx, int ny, double h) {
    ResidualField out;
    out.name = "hessian";
    const auto xs = xy.s.samples(nx);
    const auto ys = xy.t.samples(ny);
    out.nx = static_cast<int>(xs.size());
    out.ny = static_cast<int>(ys.size());
    out.values.reserve(xs.size() * ys.size());
    for (double y : ys) {
        for (double x : xs) {
            const double r = hessian_residual_at(sol, x, y, h);
            out.values.push_back(r);
            out.sup = std::max(out.sup, std::abs(r));
        }
    }
    return out;
}

}  // namespace splitaffine
