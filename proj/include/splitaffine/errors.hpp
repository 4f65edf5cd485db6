#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace splitaffine {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// split_algebra ------------------------------------------------------------

/// Inversion of a null (zero-divisor) split-complex value.
class ZeroDivisor : public Error {
public:
    using Error::Error;
};

/// A real function was asked for a value outside its domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// curve_lang ---------------------------------------------------------------

class SyntaxError : public Error {
public:
    /// position is 1-based: the column of the offending character, or
    /// length + 1 when the input ended early.
    SyntaxError(const std::string& what, std::size_t position)
        : Error(what + " at offset " + std::to_string(position)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class UnknownFunction : public SyntaxError {
public:
    UnknownFunction(const std::string& name, std::size_t position)
        : SyntaxError("unknown function '" + name + "'", position), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class NonIntegerExponent : public SyntaxError {
public:
    using SyntaxError::SyntaxError;
};

/// Domain violation during expression evaluation, carrying the offending
/// subexpression in printed form.
class EvalError : public DomainError {
public:
    EvalError(const std::string& what, std::string subexpr)
        : DomainError(what + " in '" + subexpr + "'"), subexpr_(std::move(subexpr)) {}
    const std::string& subexpression() const noexcept { return subexpr_; }

private:
    std::string subexpr_;
};

// equiaffine ---------------------------------------------------------------

class ZeroVector : public Error {
public:
    using Error::Error;
};

// bjorling_core ------------------------------------------------------------

class NotAdmissible : public Error {
public:
    NotAdmissible(std::string condition, double s, double residual)
        : Error("pair not admissible: " + condition + " residual " + std::to_string(residual) +
                " at s = " + std::to_string(s)),
          condition_(std::move(condition)), s_(s), residual_(residual) {}
    const std::string& condition() const noexcept { return condition_; }
    double s() const noexcept { return s_; }
    double residual() const noexcept { return residual_; }

private:
    std::string condition_;
    double s_;
    double residual_;
};

class LambdaNonPositive : public Error {
public:
    LambdaNonPositive(double s, double lambda)
        : Error("metric lambda = " + std::to_string(lambda) + " is not positive at s = " +
                std::to_string(s)),
          s_(s), lambda_(lambda) {}
    double s() const noexcept { return s_; }
    double lambda() const noexcept { return lambda_; }

private:
    double s_;
    double lambda_;
};

/// [alpha', alpha'', xi] vanishes, so the conormal is not determined by the
/// metric along the curve.
class DegenerateProjection : public Error {
public:
    DegenerateProjection(double s, double det)
        : Error("[alpha', alpha'', xi] = " + std::to_string(det) + " vanishes at s = " +
                std::to_string(s)),
          s_(s) {}
    double s() const noexcept { return s_; }

private:
    double s_;
};

class QuadratureFailure : public Error {
public:
    QuadratureFailure(double requested, double achieved)
        : Error("quadrature did not converge: requested " + std::to_string(requested) +
                ", achieved " + std::to_string(achieved)),
          requested_(requested), achieved_(achieved) {}
    double requested() const noexcept { return requested_; }
    double achieved() const noexcept { return achieved_; }

private:
    double requested_;
    double achieved_;
};

// hessian_cauchy -----------------------------------------------------------

class ConvexityViolation : public Error {
public:
    ConvexityViolation(double x, double a2)
        : Error("a''(" + std::to_string(x) + ") = " + std::to_string(a2) +
                " is not positive; negate the data (f -> -f) to solve the concave problem"),
          x_(x), a2_(a2) {}
    double x() const noexcept { return x_; }
    double second_derivative() const noexcept { return a2_; }

private:
    double x_;
    double a2_;
};

class OutOfChart : public Error {
public:
    using Error::Error;
};

class JacobianSingular : public Error {
public:
    using Error::Error;
};

// surface_catalog / diagnostics --------------------------------------------

class SpecInvalid : public Error {
public:
    using Error::Error;
};

class SymmetryMismatch : public Error {
public:
    SymmetryMismatch(std::string condition, double s)
        : Error("symmetry mismatch: " + condition + " fails at s = " + std::to_string(s)),
          condition_(std::move(condition)), s_(s) {}
    const std::string& condition() const noexcept { return condition_; }
    double s() const noexcept { return s_; }

private:
    std::string condition_;
    double s_;
};

}  // namespace splitaffine
