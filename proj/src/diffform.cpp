#include "ellkzb/diffform.hpp"

namespace ellkzb {

DiffForm1 dy_form(DMode mode) {
    // 2y dy = (12x^2 - u)dx - x du - dv
    CurvePoly twelve_x2_minus_u = CurvePoly::X() * CurvePoly::X() * Rat(12) - CurvePoly::U();
    CurveFun half_inv_y(CurvePoly(Rat(1)), 1, 0);
    half_inv_y = half_inv_y * rat(1, 2);
    DiffForm1 out;
    out.fx = CurveFun(twelve_x2_minus_u) * half_inv_y;
    if (mode == DMode::universal) {
        out.fu = -CurveFun(CurvePoly::X()) * half_inv_y;
        out.fv = -half_inv_y;
    }
    return out;
}

DiffForm1 exterior_d(const CurveFun& f, DMode mode) {
    if (f.is_zero()) return {};
    const CurvePoly& n = f.num();
    DiffForm1 dy = dy_form(mode);
    CurveFun inv_den(CurvePoly(Rat(1)), f.ypow(), f.dpow());

    DiffForm1 dn;
    dn.fx = CurveFun(n.derivative('x'));
    if (mode == DMode::universal) {
        dn.fu = CurveFun(n.derivative('u'));
        dn.fv = CurveFun(n.derivative('v'));
    }
    CurveFun ny(n.derivative('y'));
    dn = dn + dy * ny;

    DiffForm1 out = dn * inv_den;
    if (f.ypow() > 0) {
        CurveFun inv_y(CurvePoly(Rat(1)), 1, 0);
        out = out - dy * (f * inv_y * Rat(f.ypow()));
    }
    if (f.dpow() > 0 && mode == DMode::universal) {
        out = out - dlog_delta() * (f * Rat(f.dpow()));
    }
    return out;
}

DiffForm2 wedge(const DiffForm1& a, const DiffForm1& b) {
    DiffForm2 out;
    out.fxu = a.fx * b.fu - a.fu * b.fx;
    out.fxv = a.fx * b.fv - a.fv * b.fx;
    out.fuv = a.fu * b.fv - a.fv * b.fu;
    return out;
}

DiffForm2 d2(const DiffForm1& w, DMode mode) {
    DiffForm2 out;
    out = out + wedge(exterior_d(w.fx, mode), DiffForm1::dx());
    out = out + wedge(exterior_d(w.fu, mode), DiffForm1::du());
    out = out + wedge(exterior_d(w.fv, mode), DiffForm1::dv());
    return out;
}

std::optional<int> weight_of(const CurveFun& f) { return f.weight(); }

std::optional<int> weight_of(const DiffForm1& w) {
    std::optional<int> result;
    auto feed = [&](const CurveFun& c, int basis_wt) -> bool {
        if (c.is_zero()) return true;
        auto cw = c.weight();
        if (!cw) return false;
        int total = *cw + basis_wt;
        if (result && *result != total) return false;
        result = total;
        return true;
    };
    if (!feed(w.fx, -2) || !feed(w.fu, -4) || !feed(w.fv, -6)) return std::nullopt;
    if (!result) return 0;
    return result;
}

DiffForm1 alpha_form() {
    DiffForm1 a;
    a.fu = CurveFun(CurvePoly::V() * Rat(-3));
    a.fv = CurveFun(CurvePoly::U() * Rat(2));
    return a;
}

CurveFun delta_fun() { return CurveFun(CurvePoly::discriminant()); }

DiffForm1 dlog_delta() {
    // dDelta = 3u^2 du - 54 v dv
    CurveFun inv_delta(CurvePoly(Rat(1)), 0, 1);
    DiffForm1 d;
    d.fu = CurveFun(CurvePoly::U() * CurvePoly::U() * Rat(3)) * inv_delta;
    d.fv = CurveFun(CurvePoly::V() * Rat(-54)) * inv_delta;
    return d;
}

DiffForm1 dx_over_y() {
    DiffForm1 w;
    w.fx = CurveFun(CurvePoly(Rat(1)), 1, 0);
    return w;
}

std::string DiffForm1::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    auto add = [&](const CurveFun& c, const char* basis) {
        if (c.is_zero()) return;
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string() + ")*" + basis;
    };
    add(fx, "dx");
    add(fu, "du");
    add(fv, "dv");
    return out;
}

std::string DiffForm2::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    auto add = [&](const CurveFun& c, const char* basis) {
        if (c.is_zero()) return;
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string() + ")*" + basis;
    };
    add(fxu, "dx^du");
    add(fxv, "dx^dv");
    add(fuv, "du^dv");
    return out;
}

}  // namespace ellkzb
