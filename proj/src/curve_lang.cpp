#include "splitaffine/curve_lang.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <optional>

namespace splitaffine {

struct CurveExpr::Node {
    Kind kind = Kind::Number;
    double number = 0.0;
    std::string name;
    int exponent = 0;
    Func func = Func::Sin;
    std::vector<CurveExpr> children;
};

namespace {

std::optional<Func> lookup_func(std::string_view name) {
    if (name == "sin") return Func::Sin;
    if (name == "cos") return Func::Cos;
    if (name == "sinh") return Func::Sinh;
    if (name == "cosh") return Func::Cosh;
    if (name == "exp") return Func::Exp;
    if (name == "log") return Func::Log;
    return std::nullopt;
}

int precedence(CurveExpr::Kind k) {
    using K = CurveExpr::Kind;
    switch (k) {
        case K::Add:
        case K::Sub: return 1;
        case K::Mul:
        case K::Div: return 2;
        case K::Negate: return 3;
        case K::Pow: return 4;
        default: return 5;
    }
}

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s(buf);
    // Shortest representation that round-trips.
    for (int prec = 1; prec < 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) {
            s = buf;
            break;
        }
    }
    if (x < 0) s = "(" + s + ")";
    return s;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    CurveExpr parse_all() {
        CurveExpr e = expr();
        skip_ws();
        if (pos_ < text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_ + 1); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' before end of input");
            fail(std::string("expected '") + c + "'");
        }
    }

    CurveExpr expr() {
        CurveExpr lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = CurveExpr::binary(CurveExpr::Kind::Add, lhs, term());
            else if (accept('-'))
                lhs = CurveExpr::binary(CurveExpr::Kind::Sub, lhs, term());
            else
                return lhs;
        }
    }

    CurveExpr term() {
        CurveExpr lhs = factor();
        for (;;) {
            if (accept('*'))
                lhs = CurveExpr::binary(CurveExpr::Kind::Mul, lhs, factor());
            else if (accept('/'))
                lhs = CurveExpr::binary(CurveExpr::Kind::Div, lhs, factor());
            else
                return lhs;
        }
    }

    CurveExpr factor() {
        if (accept('-')) return CurveExpr::negate(factor());
        return power();
    }

    CurveExpr power() {
        CurveExpr base = atom();
        if (accept('^')) return CurveExpr::pow(base, exponent());
        return base;
    }

    // Right-associative integer chain: 2^3^2 = 2^(3^2).
    int exponent() {
        skip_ws();
        const std::size_t start = pos_;
        bool negative = false;
        bool paren = accept('(');
        if (accept('-')) negative = true;
        skip_ws();
        std::size_t digits_begin = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == digits_begin || (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' ||
                                                             text_[pos_] == 'E' || std::isalpha(
                                                                 static_cast<unsigned char>(text_[pos_]))))) {
            throw NonIntegerExponent("exponent must be an integer literal", start + 1);
        }
        const std::string digits(text_.substr(digits_begin, pos_ - digits_begin));
        if (digits.size() > 4) throw NonIntegerExponent("exponent out of range", start + 1);
        long value = std::stol(digits);
        if (paren) expect(')');
        if (negative) value = -value;
        if (accept('^')) {
            const int e = exponent();
            if (e < 0) throw NonIntegerExponent("negative exponent in an exponent chain", start + 1);
            long r = 1;
            for (int i = 0; i < e; ++i) {
                r *= value;
                if (std::labs(r) > 4096) throw NonIntegerExponent("exponent out of range", start + 1);
            }
            value = r;
        }
        if (std::labs(value) > 4096) throw NonIntegerExponent("exponent out of range", start + 1);
        return static_cast<int>(value);
    }

    CurveExpr atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            CurveExpr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string ident(text_.substr(start, pos_ - start));
            skip_ws();
            const bool call = pos_ < text_.size() && text_[pos_] == '(';
            if (auto f = lookup_func(ident)) {
                if (!call) {
                    pos_ = start;
                    fail("function '" + ident + "' requires a parenthesized argument");
                }
                ++pos_;
                CurveExpr arg = expr();
                expect(')');
                return CurveExpr::call(*f, arg);
            }
            if (call) throw UnknownFunction(ident, start + 1);
            if (ident == "s") return CurveExpr::variable();
            return CurveExpr::parameter(ident);
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    CurveExpr number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t n = digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            n += digits();
        }
        if (n == 0) {
            pos_ = start;
            fail("malformed number");
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            const std::size_t mark = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (digits() == 0) {
                pos_ = mark;
                fail("malformed exponent in number");
            }
        }
        const std::string lit(text_.substr(start, pos_ - start));
        return CurveExpr::number(std::strtod(lit.c_str(), nullptr));
    }
};

double real_func(Func f, double x) {
    switch (f) {
        case Func::Sin: return std::sin(x);
        case Func::Cos: return std::cos(x);
        case Func::Sinh: return std::sinh(x);
        case Func::Cosh: return std::cosh(x);
        case Func::Exp: return std::exp(x);
        case Func::Log: return std::log(x);
    }
    return 0.0;
}

}  // namespace

const char* func_name(Func f) {
    switch (f) {
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
        case Func::Sinh: return "sinh";
        case Func::Cosh: return "cosh";
        case Func::Exp: return "exp";
        case Func::Log: return "log";
    }
    return "?";
}

CurveExpr::CurveExpr() : CurveExpr(number(0.0)) {}
CurveExpr::CurveExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

CurveExpr CurveExpr::number(double value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Number;
    n->number = value;
    return CurveExpr(std::move(n));
}

CurveExpr CurveExpr::variable() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    return CurveExpr(std::move(n));
}

CurveExpr CurveExpr::parameter(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Parameter;
    n->name = std::move(name);
    return CurveExpr(std::move(n));
}

CurveExpr CurveExpr::negate(CurveExpr operand) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Negate;
    n->children = {std::move(operand)};
    return CurveExpr(std::move(n));
}

CurveExpr CurveExpr::binary(Kind kind, CurveExpr lhs, CurveExpr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->children = {std::move(lhs), std::move(rhs)};
    return CurveExpr(std::move(n));
}

CurveExpr CurveExpr::pow(CurveExpr base, int exponent) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Pow;
    n->exponent = exponent;
    n->children = {std::move(base)};
    return CurveExpr(std::move(n));
}

CurveExpr CurveExpr::call(Func f, CurveExpr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Call;
    n->func = f;
    n->children = {std::move(arg)};
    return CurveExpr(std::move(n));
}

CurveExpr::Kind CurveExpr::kind() const { return node_->kind; }
double CurveExpr::number_value() const { return node_->number; }
const std::string& CurveExpr::name() const { return node_->name; }
int CurveExpr::exponent() const { return node_->exponent; }
Func CurveExpr::func() const { return node_->func; }
const CurveExpr& CurveExpr::lhs() const { return node_->children.at(0); }
const CurveExpr& CurveExpr::rhs() const { return node_->children.at(1); }

bool CurveExpr::operator==(const CurveExpr& o) const {
    if (node_ == o.node_) return true;
    const Node& a = *node_;
    const Node& b = *o.node_;
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Kind::Number: return a.number == b.number;
        case Kind::Variable: return true;
        case Kind::Parameter: return a.name == b.name;
        case Kind::Pow:
            if (a.exponent != b.exponent) return false;
            break;
        case Kind::Call:
            if (a.func != b.func) return false;
            break;
        default: break;
    }
    if (a.children.size() != b.children.size()) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!(a.children[i] == b.children[i])) return false;
    return true;
}

std::string CurveExpr::str() const {
    const Node& n = *node_;
    auto wrap = [](const CurveExpr& e, bool paren) { return paren ? "(" + e.str() + ")" : e.str(); };
    switch (n.kind) {
        case Kind::Number: return format_number(n.number);
        case Kind::Variable: return "s";
        case Kind::Parameter: return n.name;
        case Kind::Negate: return "-" + wrap(lhs(), precedence(lhs().kind()) < 4);
        case Kind::Pow: return wrap(lhs(), precedence(lhs().kind()) < 5) + "^" + std::to_string(n.exponent);
        case Kind::Call: return std::string(func_name(n.func)) + "(" + lhs().str() + ")";
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
        case Kind::Div: {
            const int p = precedence(n.kind);
            const char* op = n.kind == Kind::Add ? "+" : n.kind == Kind::Sub ? "-" : n.kind == Kind::Mul ? "*" : "/";
            return wrap(lhs(), precedence(lhs().kind()) < p) + op + wrap(rhs(), precedence(rhs().kind()) <= p);
        }
    }
    return {};
}

std::set<std::string> CurveExpr::parameters() const {
    std::set<std::string> out;
    if (node_->kind == Kind::Parameter) out.insert(node_->name);
    for (const auto& c : node_->children) {
        auto sub = c.parameters();
        out.insert(sub.begin(), sub.end());
    }
    return out;
}

Jet CurveExpr::jet(double s0, int order, const Params& params) const {
    const Node& n = *node_;
    Jet r;
    switch (n.kind) {
        case Kind::Number: return Jet(n.number, order);
        case Kind::Variable: return Jet::variable(s0, order);
        case Kind::Parameter: {
            auto it = params.find(n.name);
            if (it == params.end()) throw EvalError("unbound parameter '" + n.name + "'", str());
            return Jet(it->second, order);
        }
        case Kind::Negate: return -lhs().jet(s0, order, params);
        case Kind::Add: return lhs().jet(s0, order, params) + rhs().jet(s0, order, params);
        case Kind::Sub: return lhs().jet(s0, order, params) - rhs().jet(s0, order, params);
        case Kind::Mul: return lhs().jet(s0, order, params) * rhs().jet(s0, order, params);
        case Kind::Div: {
            const Jet den = rhs().jet(s0, order, params);
            if (den[0] == 0.0) throw EvalError("division by zero", str());
            r = lhs().jet(s0, order, params) / den;
            break;
        }
        case Kind::Pow: {
            const Jet base = lhs().jet(s0, order, params);
            if (n.exponent < 0 && base[0] == 0.0) throw EvalError("negative power of zero", str());
            r = splitaffine::pow(base, n.exponent);
            break;
        }
        case Kind::Call: {
            const Jet a = lhs().jet(s0, order, params);
            switch (n.func) {
                case Func::Sin: r = sin(a); break;
                case Func::Cos: r = cos(a); break;
                case Func::Sinh: r = sinh(a); break;
                case Func::Cosh: r = cosh(a); break;
                case Func::Exp: r = exp(a); break;
                case Func::Log:
                    if (!(a[0] > 0.0)) throw EvalError("log of non-positive argument", str());
                    r = log(a);
                    break;
            }
            break;
        }
    }
    if (!std::isfinite(r[0])) throw EvalError("non-finite value", str());
    return r;
}

double CurveExpr::eval(double s, const Params& params) const { return jet(s, 0, params)[0]; }

SplitScalar CurveExpr::eval_split(SplitScalar z, const Params& params) const {
    return SplitScalar::from_null(eval(z.u(), params), eval(z.v(), params));
}

SplitScalar CurveExpr::eval_split_direct(SplitScalar z, const Params& params) const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Number: return {n.number, 0.0};
        case Kind::Variable: return z;
        case Kind::Parameter: {
            auto it = params.find(n.name);
            if (it == params.end()) throw EvalError("unbound parameter '" + n.name + "'", str());
            return {it->second, 0.0};
        }
        case Kind::Negate: return -lhs().eval_split_direct(z, params);
        case Kind::Add: return lhs().eval_split_direct(z, params) + rhs().eval_split_direct(z, params);
        case Kind::Sub: return lhs().eval_split_direct(z, params) - rhs().eval_split_direct(z, params);
        case Kind::Mul: return lhs().eval_split_direct(z, params) * rhs().eval_split_direct(z, params);
        case Kind::Div: return lhs().eval_split_direct(z, params) / rhs().eval_split_direct(z, params);
        case Kind::Pow: {
            SplitScalar base = lhs().eval_split_direct(z, params);
            int e = n.exponent;
            if (e < 0) {
                base = inv(base);
                e = -e;
            }
            SplitScalar r(1.0);
            for (int i = 0; i < e; ++i) r = r * base;
            return r;
        }
        case Kind::Call: {
            const SplitScalar a = lhs().eval_split_direct(z, params);
            const Func f = n.func;
            if (f == Func::Log && !(a.u() > 0.0 && a.v() > 0.0))
                throw EvalError("log of non-positive null coordinate", str());
            return extend_analytic([f](double x) { return real_func(f, x); }, a);
        }
    }
    return {};
}

CurveExpr parse(std::string_view text) { return Parser(text).parse_all(); }

Jet eval_jet(const CurveExpr& e, double s0, int order, const Params& params) { return e.jet(s0, order, params); }

SplitScalar eval_split(const CurveExpr& e, SplitScalar z, const Params& params) {
    return e.eval_split(z, params);
}

BoundExpr BoundExpr::parse(std::string_view text, Params p) { return BoundExpr(splitaffine::parse(text), std::move(p)); }

}  // namespace splitaffine
