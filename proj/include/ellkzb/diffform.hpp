#pragma once

#include "ellkzb/curvefun.hpp"

namespace ellkzb {

// Differentiation mode: on the universal family d sees u, v as coordinates;
// on a single curve they are constants and du = dv = 0.
enum class DMode { universal, fiber };

// 1-form fx dx + fu du + fv dv. dy is always eliminated through
// dy = ((12x^2 - u)dx - x du - dv) / (2y).
struct DiffForm1 {
    CurveFun fx, fu, fv;

    bool is_zero() const { return fx.is_zero() && fu.is_zero() && fv.is_zero(); }
    DiffForm1 operator-() const { return {-fx, -fu, -fv}; }
    DiffForm1 operator+(const DiffForm1& o) const { return {fx + o.fx, fu + o.fu, fv + o.fv}; }
    DiffForm1 operator-(const DiffForm1& o) const { return {fx - o.fx, fu - o.fu, fv - o.fv}; }
    DiffForm1 operator*(const CurveFun& c) const { return {fx * c, fu * c, fv * c}; }
    DiffForm1 operator*(const Rat& c) const { return {fx * c, fu * c, fv * c}; }
    friend bool operator==(const DiffForm1&, const DiffForm1&) = default;

    static DiffForm1 dx() { return {CurveFun(Rat(1)), CurveFun(), CurveFun()}; }
    static DiffForm1 du() { return {CurveFun(), CurveFun(Rat(1)), CurveFun()}; }
    static DiffForm1 dv() { return {CurveFun(), CurveFun(), CurveFun(Rat(1))}; }

    std::string to_string() const;
};

inline DiffForm1 operator*(const CurveFun& c, const DiffForm1& w) { return w * c; }

// 2-form on basis dx^du, dx^dv, du^dv (in this order).
struct DiffForm2 {
    CurveFun fxu, fxv, fuv;

    bool is_zero() const { return fxu.is_zero() && fxv.is_zero() && fuv.is_zero(); }
    DiffForm2 operator+(const DiffForm2& o) const { return {fxu + o.fxu, fxv + o.fxv, fuv + o.fuv}; }
    DiffForm2 operator-(const DiffForm2& o) const { return {fxu - o.fxu, fxv - o.fxv, fuv - o.fuv}; }
    DiffForm2 operator*(const CurveFun& c) const { return {fxu * c, fxv * c, fuv * c}; }
    friend bool operator==(const DiffForm2&, const DiffForm2&) = default;
    std::string to_string() const;
};

// dy as a 1-form (universal or fiberwise).
DiffForm1 dy_form(DMode mode);

// Exterior derivative of an exact curve function.
DiffForm1 exterior_d(const CurveFun& f, DMode mode = DMode::universal);

DiffForm2 wedge(const DiffForm1& a, const DiffForm1& b);

// Exterior derivative of a 1-form in the fixed coordinate basis.
DiffForm2 d2(const DiffForm1& w, DMode mode = DMode::universal);

// Modular weights: dx -2, du -4, dv -6 on top of the coefficient weight.
std::optional<int> weight_of(const CurveFun& f);
std::optional<int> weight_of(const DiffForm1& w);

// Standard 1-forms on the family.
DiffForm1 alpha_form();                 // 2u dv - 3v du
DiffForm1 dlog_delta();                 // dDelta / Delta
DiffForm1 dx_over_y();                  // dx / y
CurveFun delta_fun();

}  // namespace ellkzb
