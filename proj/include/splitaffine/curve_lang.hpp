#pragma once

// A closed expression language for analytic functions of one variable `s`.
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' exponent)?          exponent: integer literal, '-'
//                                           allowed, right-associative chains
//                                           fold to a single integer
//   atom   := number | 's' | ident | func '(' expr ')' | '(' expr ')'
//   func   := sin | cos | sinh | cosh | exp | log
//
// Any identifier other than `s` and the function names is a parameter bound
// at evaluation time.  Unary minus binds looser than '^' (-s^2 = -(s^2)) and
// tighter than '*' and '/'.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "splitaffine/jet.hpp"
#include "splitaffine/split.hpp"

namespace splitaffine {

using Params = std::map<std::string, double>;

enum class Func { Sin, Cos, Sinh, Cosh, Exp, Log };

const char* func_name(Func f);

class CurveExpr {
public:
    enum class Kind { Number, Variable, Parameter, Negate, Add, Sub, Mul, Div, Pow, Call };

    /// The zero constant.
    CurveExpr();

    static CurveExpr number(double value);
    static CurveExpr variable();
    static CurveExpr parameter(std::string name);
    static CurveExpr negate(CurveExpr operand);
    static CurveExpr binary(Kind kind, CurveExpr lhs, CurveExpr rhs);
    static CurveExpr pow(CurveExpr base, int exponent);
    static CurveExpr call(Func f, CurveExpr arg);

    Kind kind() const;
    double number_value() const;
    const std::string& name() const;
    int exponent() const;
    Func func() const;
    /// Operand of Negate/Pow/Call, left operand of binary nodes.
    const CurveExpr& lhs() const;
    const CurveExpr& rhs() const;

    /// Structural equality (numbers compared exactly).
    bool operator==(const CurveExpr& other) const;

    /// Minimal-parenthesis rendering that re-parses to the same tree.
    std::string str() const;

    std::set<std::string> parameters() const;

    /// Taylor jet at s0: coefficient k is the k-th derivative over k!.
    /// Throws EvalError on a domain violation or an unbound parameter.
    Jet jet(double s0, int order, const Params& params = {}) const;
    double eval(double s, const Params& params = {}) const;

    /// Split-holomorphic extension evaluated through the null coordinates.
    SplitScalar eval_split(SplitScalar z, const Params& params = {}) const;

    /// The same extension computed by walking the tree with split-complex
    /// arithmetic; functions are applied with extend_analytic.  Division by
    /// a null value raises ZeroDivisor.
    SplitScalar eval_split_direct(SplitScalar z, const Params& params = {}) const;

private:
    struct Node;
    explicit CurveExpr(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

CurveExpr parse(std::string_view text);

Jet eval_jet(const CurveExpr& e, double s0, int order, const Params& params = {});
SplitScalar eval_split(const CurveExpr& e, SplitScalar z, const Params& params = {});

/// An expression together with its parameter bindings: a real-analytic
/// scalar function of s.
struct BoundExpr {
    CurveExpr expr;
    Params params;

    BoundExpr() = default;
    BoundExpr(CurveExpr e, Params p = {}) : expr(std::move(e)), params(std::move(p)) {}
    static BoundExpr parse(std::string_view text, Params p = {});
    static BoundExpr constant(double c) { return BoundExpr(CurveExpr::number(c)); }

    Jet jet(double s, int order) const { return expr.jet(s, order, params); }
    double operator()(double s) const { return expr.eval(s, params); }
    SplitScalar operator()(SplitScalar z) const { return expr.eval_split(z, params); }
};

}  // namespace splitaffine
