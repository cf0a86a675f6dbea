#include "ellkzb/curvefun.hpp"

namespace ellkzb {

namespace {

// num * y^k reduced into normal form.
CurvePoly mul_y_pow(const CurvePoly& p, int k) {
    RawPoly raw;
    for (const auto& [m, c] : p.terms()) raw[{m.ex, m.ey + k, m.eu, m.ev}] = c;
    return CurvePoly::normalize(raw);
}

}  // namespace

void CurveFun::canonicalize() {
    if (num_.is_zero()) {
        ypow_ = dpow_ = 0;
        return;
    }
    // num = p0 + p1*y is divisible by y exactly when the curve rhs divides p0:
    // y*(q + p1... ) -- concretely y*(a + b*y) = b*(4x^3-ux-v) + a*y.
    while (ypow_ > 0) {
        CurvePoly p0, p1;
        num_.split_y(p0, p1);
        auto q = p0.divide_exact(CurvePoly::curve_rhs());
        if (!q) break;
        num_ = p1 + mul_y_pow(*q, 1);
        --ypow_;
    }
    while (dpow_ > 0) {
        auto q = num_.divide_exact(CurvePoly::discriminant());
        if (!q) break;
        num_ = *q;
        --dpow_;
    }
}

CurveFun CurveFun::operator+(const CurveFun& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    int a = std::max(ypow_, o.ypow_);
    int b = std::max(dpow_, o.dpow_);
    CurvePoly n1 = mul_y_pow(num_, a - ypow_);
    CurvePoly n2 = mul_y_pow(o.num_, a - o.ypow_);
    n1 = n1 * CurvePoly::discriminant().pow(b - dpow_);
    n2 = n2 * CurvePoly::discriminant().pow(b - o.dpow_);
    return CurveFun(n1 + n2, a, b);
}

CurveFun CurveFun::operator*(const CurveFun& o) const {
    if (is_zero() || o.is_zero()) return CurveFun();
    return CurveFun(num_ * o.num_, ypow_ + o.ypow_, dpow_ + o.dpow_);
}

CurveFun CurveFun::operator*(const Rat& c) const {
    if (c == 0) return CurveFun();
    return with_no_canon(num_ * c, ypow_, dpow_);
}

CurveFun CurveFun::pow(int n) const {
    if (n < 0) throw std::invalid_argument("CurveFun::pow: negative exponent");
    CurveFun out(Rat(1));
    for (int i = 0; i < n; ++i) out = out * *this;
    return out;
}

CurveFun CurveFun::substitute_uv(const Rat& u0, const Rat& v0) const {
    Rat delta0 = u0 * u0 * u0 - Rat(27) * v0 * v0;
    if (delta0 == 0) throw std::invalid_argument("substitute_uv: fiber on the discriminant locus");
    CurvePoly n = num_.substitute_uv(u0, v0);
    Rat scale(1);
    for (int i = 0; i < dpow_; ++i) scale /= delta0;
    return CurveFun(n * scale, ypow_, 0);
}

std::string CurveFun::to_string() const {
    if (is_zero()) return "0";
    std::string n = poly_string(num_);
    if (ypow_ == 0 && dpow_ == 0) return n;
    std::string den;
    if (ypow_ == 1)
        den = "y";
    else if (ypow_ > 1)
        den = "y^" + std::to_string(ypow_);
    if (dpow_ > 0) {
        if (!den.empty()) den += "*";
        den += (dpow_ == 1) ? "Delta" : "Delta^" + std::to_string(dpow_);
    }
    bool wrap = num_.terms().size() > 1;
    return (wrap ? "(" + n + ")" : n) + "/(" + den + ")";
}

}  // namespace ellkzb
