#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "ellkzb/special.hpp"

using namespace ellkzb;

namespace {

// Independent Bernoulli oracle: invert the power series (e^x - 1)/x over Q.
std::vector<Rat> bernoulli_by_series(int n) {
    std::vector<Rat> a(n + 1);  // (e^x-1)/x = sum x^k/(k+1)!
    for (int k = 0; k <= n; ++k) a[k] = Rat(1) / rat_factorial(k + 1);
    std::vector<Rat> b(n + 1, Rat(0));  // reciprocal series
    b[0] = Rat(1);
    for (int k = 1; k <= n; ++k) {
        Rat acc(0);
        for (int j = 1; j <= k; ++j) acc += a[j] * b[k - j];
        b[k] = -acc;
    }
    for (int k = 0; k <= n; ++k) b[k] *= rat_factorial(k);
    return b;
}

// Truncated commutative series in one variable with CurveFun coefficients,
// just enough to exponentiate the generating functions.
struct TSeries {
    std::vector<CurveFun> c;

    explicit TSeries(int order) : c(order + 1) {}
    int order() const { return (int)c.size() - 1; }

    TSeries mul(const TSeries& o) const {
        TSeries out(order());
        for (int i = 0; i <= order(); ++i) {
            if (c[i].is_zero()) continue;
            for (int j = 0; i + j <= order(); ++j) out.c[i + j] = out.c[i + j] + c[i] * o.c[j];
        }
        return out;
    }
};

TSeries tseries_exp(const TSeries& a) {
    TSeries out(a.order());
    out.c[0] = CurveFun(Rat(1));
    TSeries pw = out;
    Rat fact(1);
    for (int k = 1; k <= a.order(); ++k) {
        pw = pw.mul(a);
        fact *= Rat(k);
        for (int i = 0; i <= a.order(); ++i) out.c[i] = out.c[i] + pw.c[i] * (Rat(1) / fact);
    }
    return out;
}

}  // namespace

TEST_CASE("Bernoulli numbers against the generating function") {
    auto oracle = bernoulli_by_series(14);
    CHECK(oracle[0] == Rat(1));
    CHECK(oracle[1] == rat(-1, 2));
    CHECK(oracle[4] == rat(-1, 30));
    for (int n = 0; n <= 14; ++n) CHECK(bernoulli(n) == oracle[n]);
}

TEST_CASE("Eisenstein expansions") {
    QSeries g4 = eisenstein_G(4, 6);
    CHECK(g4.c[0] == rat(1, 240));
    CHECK(g4.c[1] == Rat(1));
    CHECK(g4.c[2] == Rat(9));  // sigma_3(2) = 1 + 8
    CHECK(eisenstein_G(3, 6).is_zero());
    // divisor power sums by brute force
    for (int n = 1; n <= 10; ++n) {
        Rat acc(0);
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) acc += Rat(d) * Rat(d) * Rat(d);
        CHECK(sigma_power(n, 3) == acc);
    }
}

TEST_CASE("weight-matching polynomials") {
    CurvePoly u = CurvePoly::U(), v = CurvePoly::V();
    CHECK(p_poly(4) == u * rat(1, 20));
    CHECK(p_poly(6) == v * rat(3, 7));
    CHECK(p_poly(8) == u * u * rat(3, 10));

    // independent check of p8: q-expansions of both sides to 12 terms
    {
        QSeries lhs = eisenstein_G(8, 12);
        QSeries u4 = eisenstein_G(4, 12) * Rat(20);
        QSeries rhs = u4 * u4 * rat(3, 10);
        CHECK((lhs - rhs).is_zero());
    }

    for (int m = 4; m <= 14; m += 2) {
        CurvePoly p = p_poly(m);
        auto w = p.weight();
        REQUIRE(w.has_value());
        CHECK(*w == -m);
    }
}

TEST_CASE("curve-coordinate polynomials") {
    CurvePoly x = CurvePoly::X(), y = CurvePoly::Y(), u = CurvePoly::U(), v = CurvePoly::V();
    CHECK(P_poly(2) == x);
    CHECK(P_poly(3) == y * rat(-1, 2));
    CHECK(P_poly(4) == x * x - u * rat(1, 10));
    CHECK(P_poly(5) == x * y * rat(-1, 2));

    for (int total = 4; total <= 12; ++total)
        for (int m = 2; m <= total - 2; ++m) REQUIRE(P_recurrence_residual(m, total - m).is_zero());

    for (int k = 2; k <= 10; ++k) {
        auto w = P_poly(k).weight();
        REQUIRE(w.has_value());
        CHECK(*w == -k);
    }
}

TEST_CASE("partition sums match the displayed values") {
    CurvePoly x = CurvePoly::X(), y = CurvePoly::Y(), u = CurvePoly::U();
    CHECK(q_poly(2) == x * rat(-1, 2));
    CHECK(q_poly(3) == y * rat(-1, 6));
    CHECK(q_poly(4) == u * rat(1, 40) - x * x * rat(1, 8));
    CHECK(q_poly(5) == P_poly(5) * rat(1, 5) - P_poly(2) * P_poly(3) * rat(1, 6));

    CHECK(r_fun(1) == CurveFun(x * x * Rat(-2), 1, 0));
    // r2 = -x/2 + 2x^4/y^2
    CurveFun r2 = CurveFun(x) * rat(-1, 2) + CurveFun(x.pow(4) * Rat(2), 2, 0);
    CHECK(r_fun(2) == r2);
    CurveFun p1 = P1_fun();
    CurveFun r4 = CurveFun(P_poly(4)) * rat(-1, 4) + CurveFun(P_poly(3)) * p1 * rat(1, 3) +
                  CurveFun(P_poly(2) * P_poly(2)) * rat(1, 8) - CurveFun(P_poly(2)) * p1 * p1 * rat(1, 4) +
                  p1.pow(4) * rat(1, 24);
    CHECK(r_fun(4) == r4);
}

TEST_CASE("coefficient extraction from the exponential generating function") {
    // exp(-sum_{k>=2} (-T)^k/k P_k) reproduces q_n as the T^n coefficient,
    // and the k>=1 variant reproduces r_n.
    int order = 6;
    auto build = [&](int kmin) {
        TSeries a(order);
        for (int k = std::max(kmin, 1); k <= order; ++k) {
            CurveFun pk = (k == 1) ? P1_fun() : CurveFun(P_poly(k));
            Rat coeff = Rat((k % 2 == 0) ? -1 : 1) / Rat(k);  // -(-1)^k/k
            a.c[k] = pk * coeff;
        }
        return tseries_exp(a);
    };
    TSeries q = build(2);
    for (int n = 2; n <= order; ++n) REQUIRE(q.c[n] == CurveFun(q_poly(n)));
    TSeries r = build(1);
    for (int n = 1; n <= order; ++n) REQUIRE(r.c[n] == r_fun(n));
}

TEST_CASE("partition enumeration") {
    CHECK(partitions(6, 1).size() == 11);
    CHECK(partitions(6, 2).size() == 4);  // 6, 4+2, 3+3, 2+2+2
    CHECK(partitions(5, 2).size() == 2);  // 5, 3+2
    for (const auto& parts : partitions(9, 2)) {
        int sum = 0;
        for (size_t i = 0; i < parts.size(); ++i) {
            sum += parts[i];
            REQUIRE(parts[i] >= 2);
            if (i) REQUIRE(parts[i] <= parts[i - 1]);
        }
        REQUIRE(sum == 9);
    }
}

TEST_CASE("weights of the families") {
    for (int n = 2; n <= 7; ++n) {
        auto w = CurveFun(q_poly(n)).weight();
        REQUIRE(w.has_value());
        CHECK(*w == -n);
    }
    for (int n = 1; n <= 7; ++n) {
        auto w = r_fun(n).weight();
        REQUIRE(w.has_value());
        CHECK(*w == -n);
    }
}
