#pragma once

#include <vector>

#include "ellkzb/curvefun.hpp"
#include "ellkzb/laurent.hpp"

namespace ellkzb {

// Truncated q-expansion with exact rational coefficients c[0..trunc].
struct QSeries {
    std::vector<Rat> c;
    int weight = 0;

    explicit QSeries(int trunc = 0, int w = 0) : c(trunc + 1, Rat(0)), weight(w) {}
    int trunc() const { return (int)c.size() - 1; }

    QSeries operator+(const QSeries& o) const;
    QSeries operator-(const QSeries& o) const;
    QSeries operator*(const QSeries& o) const;
    QSeries operator*(const Rat& s) const;
    bool is_zero() const;
};

Rat bernoulli(int n);

// sigma_k(n) = sum of k-th powers of divisors.
Rat sigma_power(int n, int k);

// Normalized weight-k Eisenstein q-expansion: constant -B_k/(2k), then
// sigma_{k-1}(n) q^n. Odd k gives the zero series.
QSeries eisenstein_G(int k, int trunc);

// Weighted-homogeneous p_m(u,v) (u of weight 4, v of weight 6) matching the
// weight-m Eisenstein expansion under u -> 20*G4, v -> (7/3)*G6.
CurvePoly p_poly(int m);

// The curve-coordinate polynomials: P_2 = x, P_3 = -y/2, then the
// product recurrence at m = 2 with Eisenstein values replaced by p_m(u,v).
CurvePoly P_poly(int k);

// Residual of the product recurrence for a general index pair (zero iff the
// family is internally consistent); valid for m,n >= 2.
CurvePoly P_recurrence_residual(int m, int n);

// Partition sums; parts >= 2 for q_n (polynomial), parts >= 1 for r_n
// (P_1 = -2x^2/y makes it a function with a y-power denominator).
CurvePoly q_poly(int n);
CurveFun r_fun(int n);
CurveFun P1_fun();

// Descending-part partitions of n with all parts >= min_part.
std::vector<std::vector<int>> partitions(int n, int min_part);

}  // namespace ellkzb
