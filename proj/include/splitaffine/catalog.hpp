#pragma once

// Closed-form indefinite improper affine spheres: the surface of revolution
// through a circle, the three helicoidal families and the ruled graphs
// f = x y + g(x).

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "splitaffine/bjorling.hpp"

namespace splitaffine {

enum class Group { G1, G2, G3 };

const char* group_name(Group g);

/// Orbit of p under a one-parameter group.  G1 uses p = (0, b, c); G2 uses
/// p = (c, 0, 0); G3 uses p = (c, 1, 0).
struct HelicoidalSpec {
    Group group = Group::G3;
    double a = 0.0;
    double b = 0.0;
    double c = 1.0;
    double m = 1.0;
};

/// Throws SpecInvalid.
void validate(const HelicoidalSpec& spec);

class ClosedFormSurface {
public:
    ClosedFormSurface(std::string name, std::function<Vec3R(double, double)> psi,
                      std::function<double(double)> density)
        : name_(std::move(name)), psi_(std::move(psi)), density_(std::move(density)) {}

    Vec3R psi(double s, double t) const { return psi_(s, t); }
    /// D with h = D(t) (ds^2 - dt^2).
    double density(double t) const { return density_(t); }
    const std::string& name() const { return name_; }

private:
    std::string name_;
    std::function<Vec3R(double, double)> psi_;
    std::function<double(double)> density_;
};

ClosedFormSurface revolution(double c, double m);
ClosedFormSurface helicoidal(const HelicoidalSpec& spec);

/// alpha_p(s) = T^s(p) as a DSL curve with parameters a, b, c, m bound.
AnalyticCurve3 orbit_curve(const HelicoidalSpec& spec, Interval domain);
/// The conormal displayed for each family (constant metric m on the orbit).
AnalyticCurve3 orbit_conormal(const HelicoidalSpec& spec, Interval domain);
/// (alpha_p, U) with U from conormal_from_metric and lambda = m.
AdmissiblePair orbit_pair(const HelicoidalSpec& spec, Interval domain);

/// The group element T^sigma.  G2 rotates in the direction of travel of
/// its orbit (c cos s, c sin s, a s).
EquiaffineFrame group_transform(Group group, double a, double sigma);

enum class ClassKind { CayleyFlatComplete, SingularCurve, IsolatedSingularity, CompleteNonFlat, ImmersionIncomplete };

const char* kind_name(ClassKind k);

struct Locus {
    double t = 0.0;
    /// The line t = const is mapped to a single point.
    bool isolated = false;
};

struct Classification {
    ClassKind kind = ClassKind::CompleteNonFlat;
    /// Zeros of the density.  G2 lists one period, t in (-pi/2, pi/2).
    std::vector<Locus> locus;
    std::string description;
};

Classification classify(const HelicoidalSpec& spec);

/// f(x, y) = x y + g(x).
class RuledGraph {
public:
    explicit RuledGraph(BoundExpr g) : g_(std::move(g)) {}

    double f(double x, double y) const { return x * y + g_(x); }
    /// (f_xx, f_xy, f_yy) from the jet of g.
    std::array<double, 3> hessian(double x) const;
    double hessian_residual(double x) const;
    const BoundExpr& g() const { return g_; }

private:
    BoundExpr g_;
};

RuledGraph ruled_graph(BoundExpr g);

/// Catalog entry by name: "revolution" (c, m), "cayley" (b, c, m),
/// "helicoidal-g1" (a, b, c, m), "helicoidal-g2" and "helicoidal-g3"
/// (a, c, m).  Missing parameters take the HelicoidalSpec defaults.
/// "ruled" has no helicoidal spec and is rejected here.  Throws SpecInvalid.
HelicoidalSpec catalog_spec(const std::string& name, const Params& params);

}  // namespace splitaffine
