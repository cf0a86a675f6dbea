#include "ellkzb/laurent.hpp"

#include <sstream>

namespace ellkzb {

LaurentSeries LaurentSeries::from_coeff(const CurveFun& c, int exponent, int trunc) {
    LaurentSeries s(trunc);
    s.set(exponent, c);
    return s;
}

CurveFun LaurentSeries::coeff(int n) const {
    if (n >= trunc_) throw truncation_error("LaurentSeries: coefficient beyond truncation");
    auto it = c_.find(n);
    return it == c_.end() ? CurveFun() : it->second;
}

void LaurentSeries::set(int exponent, const CurveFun& c) {
    if (exponent >= trunc_) return;
    if (c.is_zero())
        c_.erase(exponent);
    else
        c_[exponent] = c;
}

LaurentSeries LaurentSeries::operator-() const {
    LaurentSeries out(trunc_);
    for (const auto& [e, c] : c_) out.c_[e] = -c;
    return out;
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
    LaurentSeries out(std::min(trunc_, o.trunc_));
    for (const auto& [e, c] : c_)
        if (e < out.trunc_) out.c_[e] = c;
    for (const auto& [e, c] : o.c_) {
        if (e >= out.trunc_) continue;
        auto [it, ins] = out.c_.emplace(e, c);
        if (!ins) {
            it->second = it->second + c;
            if (it->second.is_zero()) out.c_.erase(it);
        }
    }
    return out;
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& o) const { return *this + (-o); }

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
    // Valid exponents of the product: bounded by each factor's truncation
    // plus the other's valuation.
    int t = std::min(trunc_ + o.valuation(), o.trunc_ + valuation());
    LaurentSeries out(t);
    for (const auto& [e1, c1] : c_)
        for (const auto& [e2, c2] : o.c_) {
            int e = e1 + e2;
            if (e >= t) continue;
            auto [it, ins] = out.c_.emplace(e, c1 * c2);
            if (!ins) {
                it->second = it->second + c1 * c2;
                if (it->second.is_zero()) out.c_.erase(it);
            }
        }
    return out;
}

LaurentSeries LaurentSeries::operator*(const CurveFun& c) const {
    LaurentSeries out(trunc_);
    if (c.is_zero()) return out;
    for (const auto& [e, co] : c_) out.c_[e] = co * c;
    return out;
}

LaurentSeries LaurentSeries::operator*(const Rat& c) const { return *this * CurveFun(c); }

LaurentSeries LaurentSeries::pow(int n) const {
    if (n < 0) throw std::invalid_argument("LaurentSeries::pow: negative exponent");
    if (n == 0) {
        // An exact constant: effectively unlimited precision.
        LaurentSeries out(1 << 20);
        out.set(0, CurveFun(Rat(1)));
        return out;
    }
    LaurentSeries out = *this;
    for (int i = 1; i < n; ++i) out = out * *this;
    return out;
}

LaurentSeries LaurentSeries::inverse() const {
    if (c_.empty()) throw std::invalid_argument("LaurentSeries::inverse: zero series");
    int m = valuation();
    CurveFun lead = c_.begin()->second;
    if (!lead.is_constant()) throw std::invalid_argument("LaurentSeries::inverse: non-constant leading coefficient");
    Rat linv = Rat(1) / lead.as_rat();
    // f = c s^m (1 + h), 1/f = c^-1 s^-m (1 - h + h^2 - ...)
    int ht = trunc_ - m;  // truncation of h (exponents >= 1 stored)
    LaurentSeries h(ht);
    for (const auto& [e, c] : c_) {
        if (e == m) continue;
        h.set(e - m, c * linv);
    }
    LaurentSeries geom(ht);
    geom.set(0, CurveFun(Rat(1)));
    LaurentSeries hk = h;
    int sign = -1;
    int hv = h.valuation();
    if (hv < 1) throw std::invalid_argument("LaurentSeries::inverse: internal");
    for (int k = 1; k * hv < ht && !hk.is_zero_to_trunc(); ++k) {
        geom = geom + hk * rat(sign);
        hk = hk * h;
        sign = -sign;
    }
    LaurentSeries out(trunc_ - 2 * m);
    for (const auto& [e, c] : geom.coeffs())
        if (e - m < out.trunc_) out.set(e - m, c * linv);
    return out;
}

LaurentSeries LaurentSeries::derivative() const {
    LaurentSeries out(trunc_ - 1);
    for (const auto& [e, c] : c_) {
        if (e == 0) continue;
        out.set(e - 1, c * rat(e));
    }
    return out;
}

LaurentSeries LaurentSeries::truncate(int new_trunc) const {
    LaurentSeries out(std::min(trunc_, new_trunc));
    for (const auto& [e, c] : c_)
        if (e < out.trunc_) out.c_[e] = c;
    return out;
}

std::string LaurentSeries::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : c_) {
        if (!first) os << " + ";
        os << "(" << c.to_string() << ")*s^" << e;
        first = false;
    }
    if (first) os << "0";
    os << " + O(s^" << trunc_ << ")";
    return os.str();
}

WeierstrassData weierstrass_laurent(int order) {
    if (order < 0) throw std::invalid_argument("weierstrass_laurent: negative order");
    if (order > 400) throw truncation_error("weierstrass_laurent: order too large");
    // x = s^-2 + sum_{k>=1} c_k s^(2k), with c_1 = u/20, c_2 = v/28 and
    // c_k = 3/((2k+3)(k-2)) * sum_{i+j=k-1} c_i c_j for k >= 3
    // (from x'' = 6x^2 - u/2; the first two seed the recursion).
    int kmax = std::max(1, (order + 2) / 2 + 1);
    std::vector<CurveFun> c(kmax + 1, CurveFun());
    if (kmax >= 1) c[1] = CurveFun(CurvePoly::U()) * rat(1, 20);
    if (kmax >= 2) c[2] = CurveFun(CurvePoly::V()) * rat(1, 28);
    for (int k = 3; k <= kmax; ++k) {
        CurveFun acc;
        for (int i = 1; i <= k - 2; ++i) acc = acc + c[i] * c[k - 1 - i];
        c[k] = acc * rat(3) * (Rat(1) / Rat((2 * k + 3) * (k - 2)));
    }
    WeierstrassData w;
    w.order = order;
    w.xs = LaurentSeries(order);
    w.xs.set(-2, CurveFun(Rat(1)));
    for (int k = 1; k <= kmax; ++k) w.xs.set(2 * k, c[k]);
    w.ys = w.xs.derivative();
    return w;
}

LaurentSeries laurent_at_identity(const CurveFun& f, int order) {
    if (f.is_zero()) return LaurentSeries(order);
    // Worst-case pole: each x contributes s^-2, each y s^-3 (numerator or
    // denominator side); expansions need that much headroom.
    int pole_bound = 3 * f.ypow();
    for (const auto& [m, c] : f.num().terms()) pole_bound = std::max(pole_bound, 2 * m.ex + 3 * m.ey + 3 * f.ypow());
    int need = order + pole_bound + 6;
    WeierstrassData w = weierstrass_laurent(need);

    // Powers of x(s) cached as we sweep monomials in increasing x-degree.
    LaurentSeries result(need);
    std::map<int, LaurentSeries> xpow;
    auto x_power = [&](int k) -> const LaurentSeries& {
        auto it = xpow.find(k);
        if (it != xpow.end()) return it->second;
        LaurentSeries p = w.xs.pow(k);
        return xpow.emplace(k, std::move(p)).first->second;
    };
    for (const auto& [m, co] : f.num().terms()) {
        LaurentSeries term = x_power(m.ex);
        if (m.ey == 1) term = term * w.ys;
        CurveFun scalar = CurveFun(CurvePoly::monomial({0, 0, m.eu, m.ev}, co));
        result = result + term * scalar;
    }
    if (f.ypow() > 0) result = result * w.ys.inverse().pow(f.ypow());
    if (f.dpow() > 0) result = result * CurveFun(CurvePoly(Rat(1)), 0, f.dpow());
    return result.truncate(order);
}

int valuation_at_identity(const CurveFun& f) {
    if (f.is_zero()) return 0;
    for (int order = 4; order <= 256; order *= 2) {
        LaurentSeries s = laurent_at_identity(f, order);
        if (!s.is_zero_to_trunc()) return s.valuation();
    }
    throw truncation_error("valuation_at_identity: no nonzero coefficient found");
}

}  // namespace ellkzb
