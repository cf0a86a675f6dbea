#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ellkzb/rational.hpp"

namespace ellkzb {

// Monomial x^ex y^ey u^eu v^ev. Ordered graded-lex on (ex,ey,eu,ev).
struct Mono {
    int ex = 0, ey = 0, eu = 0, ev = 0;

    int total() const { return ex + ey + eu + ev; }
    // Modular weight of the monomial under the scaling action
    // (x,y,u,v) -> (l^-2 x, l^-3 y, l^-4 u, l^-6 v).
    int weight() const { return -2 * ex - 3 * ey - 4 * eu - 6 * ev; }

    friend bool operator==(const Mono& a, const Mono& b) {
        return a.ex == b.ex && a.ey == b.ey && a.eu == b.eu && a.ev == b.ev;
    }
    friend bool operator<(const Mono& a, const Mono& b) {
        if (a.total() != b.total()) return a.total() < b.total();
        if (a.ex != b.ex) return a.ex < b.ex;
        if (a.ey != b.ey) return a.ey < b.ey;
        if (a.eu != b.eu) return a.eu < b.eu;
        return a.ev < b.ev;
    }
    bool divides(const Mono& m) const {
        return ex <= m.ex && ey <= m.ey && eu <= m.eu && ev <= m.ev;
    }
    Mono operator*(const Mono& m) const { return {ex + m.ex, ey + m.ey, eu + m.eu, ev + m.ev}; }
    Mono operator/(const Mono& m) const { return {ex - m.ex, ey - m.ey, eu - m.eu, ev - m.ev}; }
};

// A raw polynomial may carry arbitrary y-exponents; CurvePoly keeps the
// normal form with y-degree <= 1 modulo y^2 = 4x^3 - ux - v.
using RawPoly = std::map<Mono, Rat>;

class CurvePoly {
  public:
    CurvePoly() = default;
    explicit CurvePoly(const Rat& c) {
        if (c != 0) t_[Mono{}] = c;
    }
    explicit CurvePoly(long c) : CurvePoly(Rat(c)) {}

    static CurvePoly monomial(const Mono& m, const Rat& c);
    static CurvePoly X();
    static CurvePoly Y();
    static CurvePoly U();
    static CurvePoly V();
    // 4x^3 - ux - v (the y^2 substitute) and u^3 - 27v^2 (discriminant).
    static const CurvePoly& curve_rhs();
    static const CurvePoly& discriminant();

    // Reduce a raw polynomial into normal form (y-degree <= 1).
    static CurvePoly normalize(const RawPoly& raw);

    bool is_zero() const { return t_.empty(); }
    const std::map<Mono, Rat>& terms() const { return t_; }
    Rat coeff(const Mono& m) const {
        auto it = t_.find(m);
        return it == t_.end() ? Rat(0) : it->second;
    }
    // Max total degree; -1 for the zero polynomial.
    int degree() const { return t_.empty() ? -1 : t_.rbegin()->first.total(); }
    bool has_xy() const;

    CurvePoly operator-() const;
    CurvePoly operator+(const CurvePoly& o) const;
    CurvePoly operator-(const CurvePoly& o) const;
    CurvePoly operator*(const CurvePoly& o) const;
    CurvePoly operator*(const Rat& c) const;
    CurvePoly pow(int n) const;
    friend bool operator==(const CurvePoly& a, const CurvePoly& b) { return a.t_ == b.t_; }

    // Partial derivative with respect to one of 'x','y','u','v'
    // (formal; no chain rule for y).
    CurvePoly derivative(char var) const;

    // Exact division test in Q[x,y,u,v] (no curve reduction); the divisor's
    // leading term must stay a plain monomial, which holds for the two
    // divisors used here (curve_rhs, discriminant).
    std::optional<CurvePoly> divide_exact(const CurvePoly& divisor) const;

    // Split num = p0 + p1*y with p0, p1 free of y.
    void split_y(CurvePoly& p0, CurvePoly& p1) const;

    CurvePoly substitute_uv(const Rat& u0, const Rat& v0) const;

    // Common modular weight of all monomials, or nullopt when mixed.
    std::optional<int> weight() const;

    std::string to_string() const;

  private:
    std::map<Mono, Rat> t_;

    void add_term(const Mono& m, const Rat& c);
    friend class CurveFun;
};

inline CurvePoly operator*(const Rat& c, const CurvePoly& p) { return p * c; }

std::string mono_string(const Mono& m, const Rat& c, bool leading);
std::string poly_string(const CurvePoly& p);

}  // namespace ellkzb
