#pragma once

#include "ellkzb/curvepoly.hpp"

namespace ellkzb {

// Exact function on the (universal) curve: num / (y^ypow * Delta^dpow),
// with num in normal form and (ypow, dpow) minimal. Uniqueness of the
// representation follows because y and Delta generate prime ideals in the
// coordinate ring, so equality is plain field-by-field comparison.
class CurveFun {
  public:
    CurveFun() = default;
    explicit CurveFun(const Rat& c) : num_(c) {}
    explicit CurveFun(long c) : num_(Rat(c)) {}
    explicit CurveFun(const CurvePoly& p) : num_(p) {}
    CurveFun(const CurvePoly& num, int ypow, int dpow) : num_(num), ypow_(ypow), dpow_(dpow) {
        if (ypow < 0 || dpow < 0) throw std::invalid_argument("CurveFun: negative denominator power");
        canonicalize();
    }

    static CurveFun X() { return CurveFun(CurvePoly::X()); }
    static CurveFun Y() { return CurveFun(CurvePoly::Y()); }
    static CurveFun U() { return CurveFun(CurvePoly::U()); }
    static CurveFun V() { return CurveFun(CurvePoly::V()); }

    bool is_zero() const { return num_.is_zero(); }
    const CurvePoly& num() const { return num_; }
    int ypow() const { return ypow_; }
    int dpow() const { return dpow_; }
    bool is_polynomial() const { return ypow_ == 0 && dpow_ == 0; }
    bool is_constant() const {
        return is_polynomial() && (num_.is_zero() || (num_.terms().size() == 1 && num_.terms().begin()->first == Mono{}));
    }
    Rat as_rat() const {
        if (!is_constant()) throw std::runtime_error("CurveFun: not a constant");
        return num_.is_zero() ? Rat(0) : num_.terms().begin()->second;
    }

    CurveFun operator-() const { return with_no_canon(-num_, ypow_, dpow_); }
    CurveFun operator+(const CurveFun& o) const;
    CurveFun operator-(const CurveFun& o) const { return *this + (-o); }
    CurveFun operator*(const CurveFun& o) const;
    CurveFun operator*(const Rat& c) const;
    CurveFun pow(int n) const;
    friend bool operator==(const CurveFun& a, const CurveFun& b) {
        return a.ypow_ == b.ypow_ && a.dpow_ == b.dpow_ && a.num_ == b.num_;
    }

    // Substitute an exact rational fiber; rejects the discriminant locus.
    CurveFun substitute_uv(const Rat& u0, const Rat& v0) const;

    std::optional<int> weight() const {
        auto w = num_.weight();
        if (!w && !num_.is_zero()) return std::nullopt;
        if (num_.is_zero()) return 0;
        return *w + 3 * ypow_ + 12 * dpow_;
    }

    std::string to_string() const;

  private:
    CurvePoly num_;
    int ypow_ = 0;
    int dpow_ = 0;

    void canonicalize();
    static CurveFun with_no_canon(const CurvePoly& n, int a, int b) {
        CurveFun f;
        f.num_ = n;
        f.ypow_ = n.is_zero() ? 0 : a;
        f.dpow_ = n.is_zero() ? 0 : b;
        return f;
    }
};

inline CurveFun operator*(const Rat& c, const CurveFun& f) { return f * c; }

}  // namespace ellkzb
