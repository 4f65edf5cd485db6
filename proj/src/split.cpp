#include "splitaffine/split.hpp"

namespace splitaffine {

SplitScalar mul(SplitScalar a, SplitScalar b) { return a * b; }

SplitScalar inv(SplitScalar a) {
    if (!a.invertible()) throw ZeroDivisor("split-complex value on the null cone has no inverse");
    return SplitScalar::from_null(1.0 / a.u(), 1.0 / a.v());
}

SplitScalar operator/(SplitScalar a, SplitScalar b) { return a * inv(b); }

SplitScalar extend_analytic(const std::function<double(double)>& f, SplitScalar z) {
    return SplitScalar::from_null(f(z.u()), f(z.v()));
}

}  // namespace splitaffine
