#include "splitaffine/catalog.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace splitaffine {

const char* group_name(Group g) {
    switch (g) {
        case Group::G1: return "G1";
        case Group::G2: return "G2";
        case Group::G3: return "G3";
    }
    return "?";
}

const char* kind_name(ClassKind k) {
    switch (k) {
        case ClassKind::CayleyFlatComplete: return "CayleyFlatComplete";
        case ClassKind::SingularCurve: return "SingularCurve";
        case ClassKind::IsolatedSingularity: return "IsolatedSingularity";
        case ClassKind::CompleteNonFlat: return "CompleteNonFlat";
        case ClassKind::ImmersionIncomplete: return "ImmersionIncomplete";
    }
    return "?";
}

void validate(const HelicoidalSpec& spec) {
    for (double v : {spec.a, spec.b, spec.c, spec.m})
        if (!std::isfinite(v)) throw SpecInvalid("helicoidal parameters must be finite");
    if (!(spec.m > 0.0)) throw SpecInvalid("metric constant m must be positive");
    if (spec.group != Group::G1 && !(spec.c > 0.0)) throw SpecInvalid("c must be positive for G2 and G3");
}

ClosedFormSurface revolution(double c, double m) {
    if (!(c > 0.0) || !(m > 0.0)) throw SpecInvalid("revolution needs c > 0 and m > 0");
    auto psi = [c, m](double s, double t) {
        const double r = c * std::cos(t) - m * std::sin(t) / c;
        const double ct = std::cos(t);
        return Vec3R{std::cos(s) * r, std::sin(s) * r,
                     -0.5 * (c * c + m * m / (c * c)) * t + m * (ct * ct - 1.0) +
                         0.25 * (c * c - m * m / (c * c)) * std::sin(2.0 * t)};
    };
    auto density = [c, m](double t) {
        return m * std::cos(2.0 * t) - ((m * m - c * c * c * c) / (c * c)) * std::cos(t) * std::sin(t);
    };
    return ClosedFormSurface("revolution", psi, density);
}

ClosedFormSurface helicoidal(const HelicoidalSpec& spec) {
    validate(spec);
    const double a = spec.a, b = spec.b, c = spec.c, m = spec.m;
    switch (spec.group) {
        case Group::G1:
            return ClosedFormSurface(
                "helicoidal-g1",
                [=](double s, double t) {
                    return Vec3R{s - a * t, b + s * s / 2 + m * t - a * s * t + t * t / 2,
                                 c + a * b * s + a * s * s * s / 6 - m * m * t - a * a * b * t + a * m * s * t -
                                     s * s / 2 * a * a * t - m * t * t + t * t / 2 * a * s - t * t * t / 3 +
                                     a * a * t * t * t / 6};
                },
                [=](double t) { return m + (1.0 - a * a) * t; });
        case Group::G2:
            return ClosedFormSurface(
                "helicoidal-g2",
                [=](double s, double t) {
                    const double r = c * std::cos(t) - m * std::sin(t) / c;
                    const double ct = std::cos(t);
                    return Vec3R{std::cos(s) * r + a * std::sin(s) * std::sin(t) / c,
                                 std::sin(s) * r - a * std::cos(s) * std::sin(t) / c,
                                 a * s - 0.5 * (c * c + m * m / (c * c) + a * a / (c * c)) * t + m * (ct * ct - 1.0) +
                                     0.25 * (c * c - m * m / (c * c) - a * a / (c * c)) * std::sin(2.0 * t)};
                },
                [=](double t) {
                    return m * std::cos(2.0 * t) - (a * a - c * c * c * c + m * m) * std::cos(t) * std::sin(t) / (c * c);
                });
        case Group::G3:
            return ClosedFormSurface(
                "helicoidal-g3",
                [=](double s, double t) {
                    const double e2t = std::exp(2.0 * t);
                    return Vec3R{0.25 * std::exp(s - t) * (e2t * (a + 2 * c + m) - a + 2 * c - m),
                                 std::exp(-s - t) * (e2t * (-a + 2 * c + m) + a + 2 * c - m) / (4 * c),
                                 a * s + (std::exp(-2.0 * t) * (-a * a + (-2 * c + m) * (-2 * c + m)) +
                                          e2t * (a * a - (2 * c + m) * (2 * c + m)) +
                                          4 * (a * a + 4 * c * c - m * m) * t) /
                                             (16 * c)};
                },
                [=](double t) {
                    return m * std::cosh(2.0 * t) + (4 * c * c + m * m - a * a) * std::sinh(2.0 * t) / (4 * c);
                });
    }
    throw SpecInvalid("unknown group");
}

namespace {

Params spec_params(const HelicoidalSpec& spec) {
    return {{"a", spec.a}, {"b", spec.b}, {"c", spec.c}, {"m", spec.m}};
}

}  // namespace

AnalyticCurve3 orbit_curve(const HelicoidalSpec& spec, Interval domain) {
    validate(spec);
    switch (spec.group) {
        case Group::G1:
            return AnalyticCurve3::parse({"s", "b + s^2/2", "a*b*s + c + a*s^3/6"}, spec_params(spec), domain);
        case Group::G2:
            return AnalyticCurve3::parse({"c*cos(s)", "c*sin(s)", "a*s"}, spec_params(spec), domain);
        case Group::G3:
            return AnalyticCurve3::parse({"c*exp(s)", "exp(-s)", "a*s"}, spec_params(spec), domain);
    }
    throw SpecInvalid("unknown group");
}

AnalyticCurve3 orbit_conormal(const HelicoidalSpec& spec, Interval domain) {
    validate(spec);
    switch (spec.group) {
        case Group::G1:
            return AnalyticCurve3::parse({"-a*b - m*s + a*s^2/2", "m - a*s", "1"}, spec_params(spec), domain);
        case Group::G2:
            return AnalyticCurve3::parse({"(-m*cos(s) + a*sin(s))/c", "(-a*cos(s) - m*sin(s))/c", "1"},
                                         spec_params(spec), domain);
        case Group::G3:
            return AnalyticCurve3::parse({"exp(-s)*(m - a)/(2*c)", "exp(s)*(a + m)/2", "1"}, spec_params(spec),
                                         domain);
    }
    throw SpecInvalid("unknown group");
}

AdmissiblePair orbit_pair(const HelicoidalSpec& spec, Interval domain) {
    const AnalyticCurve3 alpha = orbit_curve(spec, domain);
    return check_admissible(alpha, conormal_from_metric(alpha, BoundExpr::constant(spec.m)));
}

EquiaffineFrame group_transform(Group group, double a, double sigma) {
    EquiaffineFrame T;
    switch (group) {
        case Group::G1:
            T.A = Mat3::identity();
            T.A(1, 0) = sigma;
            T.A(2, 0) = a * sigma * sigma / 2;
            T.A(2, 1) = a * sigma;
            T.v0 = {sigma, sigma * sigma / 2, a * sigma * sigma * sigma / 6};
            break;
        case Group::G2:
            T.A = Mat3::identity();
            T.A(0, 0) = std::cos(sigma);
            T.A(0, 1) = -std::sin(sigma);
            T.A(1, 0) = std::sin(sigma);
            T.A(1, 1) = std::cos(sigma);
            T.v0 = {0.0, 0.0, a * sigma};
            break;
        case Group::G3:
            T.A = Mat3::diag(std::exp(sigma), std::exp(-sigma), 1.0);
            T.v0 = {0.0, 0.0, a * sigma};
            break;
    }
    return T;
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

Classification classify(const HelicoidalSpec& spec) {
    validate(spec);
    const double a = spec.a, c = spec.c, m = spec.m;
    Classification out;
    switch (spec.group) {
        case Group::G1: {
            const double k = a * a - 1.0;
            if (std::abs(k) <= 1e-12) {
                out.kind = ClassKind::CayleyFlatComplete;
                out.description = "Cayley surface, flat metric D = m";
            } else {
                out.kind = ClassKind::SingularCurve;
                out.locus.push_back({m / k, false});
                out.description = "singular curve at t = " + fmt(m / k);
            }
            break;
        }
        case Group::G2: {
            if (a == 0.0) {
                const double t_iso = std::atan(c * c / m);
                const double t_curve = std::atan(-m / (c * c));
                out.kind = ClassKind::IsolatedSingularity;
                out.locus = {{t_curve, false}, {t_iso, true}};
                out.description = "isolated singularity at t = " + fmt(t_iso) + " (c^2 cos t = m sin t), singular curve at t = " +
                                  fmt(t_curve) + ", period pi";
            } else {
                const double K = (a * a - c * c * c * c + m * m) / (c * c);
                const double phi = std::atan2(K / 2.0, m);
                const double t1 = (std::numbers::pi / 2.0 - phi) / 2.0;
                out.kind = ClassKind::SingularCurve;
                out.locus = {{t1 - std::numbers::pi / 2.0, false}, {t1, false}};
                out.description = "singular curves at t = " + fmt(t1 - std::numbers::pi / 2.0) + " and t = " + fmt(t1) +
                                  ", period pi";
            }
            break;
        }
        case Group::G3: {
            const double lhs = 4.0 * c * m;
            const double rhs = std::abs(4.0 * c * c + m * m - a * a);
            const double K = (4.0 * c * c + m * m - a * a) / (4.0 * c);
            const bool equal = std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, lhs);
            if (lhs > rhs && !equal) {
                out.kind = ClassKind::CompleteNonFlat;
                out.description = "complete non-flat metric, 4cm > |4c^2 + m^2 - a^2|";
            } else if (a == 0.0 && m > 2.0 * c) {
                const double t = 0.5 * std::log((m - 2.0 * c) / (m + 2.0 * c));
                out.kind = ClassKind::IsolatedSingularity;
                out.locus.push_back({t, true});
                out.description = "isolated singularity at t = " + fmt(t) + " (e^{2t}(2c + m) = m - 2c)";
            } else if (equal) {
                out.kind = ClassKind::ImmersionIncomplete;
                out.description = "immersion with positive metric, boundary case 4cm = |4c^2 + m^2 - a^2|";
            } else {
                const double t = 0.5 * std::atanh(-m / K);
                out.kind = ClassKind::SingularCurve;
                out.locus.push_back({t, false});
                out.description = "singular curve at t = " + fmt(t);
            }
            break;
        }
    }
    return out;
}

std::array<double, 3> RuledGraph::hessian(double x) const {
    return {g_.jet(x, 2).derivative(2), 1.0, 0.0};
}

double RuledGraph::hessian_residual(double x) const {
    const auto H = hessian(x);
    return H[0] * H[2] - H[1] * H[1] + 1.0;
}

RuledGraph ruled_graph(BoundExpr g) { return RuledGraph(std::move(g)); }

HelicoidalSpec catalog_spec(const std::string& name, const Params& params) {
    HelicoidalSpec spec;
    auto get = [&](const char* key, double fallback) {
        const auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    if (name == "revolution") {
        spec.group = Group::G2;
        spec.a = 0.0;
    } else if (name == "cayley") {
        spec.group = Group::G1;
        spec.a = 1.0;
        spec.c = 0.0;
    } else if (name == "helicoidal-g1") {
        spec.group = Group::G1;
        spec.c = 0.0;
        spec.a = get("a", 0.0);
    } else if (name == "helicoidal-g2") {
        spec.group = Group::G2;
        spec.a = get("a", 0.0);
    } else if (name == "helicoidal-g3") {
        spec.group = Group::G3;
        spec.a = get("a", 0.0);
    } else {
        throw SpecInvalid("unknown catalog entry '" + name + "'");
    }
    if (spec.group == Group::G1) spec.b = get("b", 0.0);
    spec.c = get("c", spec.c);
    spec.m = get("m", spec.m);
    validate(spec);
    return spec;
}

}  // namespace splitaffine
