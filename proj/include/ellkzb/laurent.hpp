#pragma once

#include "ellkzb/curvefun.hpp"

namespace ellkzb {

struct truncation_error : std::runtime_error {
    explicit truncation_error(const std::string& m) : std::runtime_error(m) {}
};

// Truncated Laurent series in the local parameter s at the identity
// (s is the primitive of dx/y there). Coefficients are exact functions of
// u, v only; terms with exponent >= trunc are unknown.
class LaurentSeries {
  public:
    LaurentSeries() = default;
    explicit LaurentSeries(int trunc) : trunc_(trunc) {}

    static LaurentSeries from_coeff(const CurveFun& c, int exponent, int trunc);

    int trunc() const { return trunc_; }
    const std::map<int, CurveFun>& coeffs() const { return c_; }
    CurveFun coeff(int n) const;
    bool is_zero_to_trunc() const { return c_.empty(); }
    // Lowest exponent with nonzero coefficient; trunc() when none stored.
    int valuation() const { return c_.empty() ? trunc_ : c_.begin()->first; }

    void set(int exponent, const CurveFun& c);
    LaurentSeries operator-() const;
    LaurentSeries operator+(const LaurentSeries& o) const;
    LaurentSeries operator-(const LaurentSeries& o) const;
    LaurentSeries operator*(const LaurentSeries& o) const;
    LaurentSeries operator*(const CurveFun& c) const;
    LaurentSeries operator*(const Rat& c) const;
    LaurentSeries pow(int n) const;
    // Requires an invertible (rational, nonzero) leading coefficient.
    LaurentSeries inverse() const;
    // Termwise d/ds.
    LaurentSeries derivative() const;
    LaurentSeries truncate(int new_trunc) const;

    std::string to_string() const;

  private:
    std::map<int, CurveFun> c_;
    int trunc_ = 0;
};

// x(s), y(s) with x = s^-2 + sum c_k s^(2k), y = dx/ds, coefficients in
// Q[u,v], solved from y^2 = 4x^3 - ux - v.
struct WeierstrassData {
    LaurentSeries xs, ys;
    int order = 0;
};

WeierstrassData weierstrass_laurent(int order);

// Expansion of f at the identity: substitute x(s), y(s). Coefficients stay
// in Q[u,v] (with explicit Delta^-1 factors when f carries them).
LaurentSeries laurent_at_identity(const CurveFun& f, int order);

// Valuation at the identity of a nonzero f, computed from the expansion
// (cancellations are invisible to degree bookkeeping); 0 for f = 0.
int valuation_at_identity(const CurveFun& f);

}  // namespace ellkzb
