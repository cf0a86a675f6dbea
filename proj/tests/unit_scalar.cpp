#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "ellkzb/diffform.hpp"
#include "ellkzb/laurent.hpp"

using namespace ellkzb;

namespace {

std::mt19937 rng(20240811);

Rat rand_rat() {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    return rat(num(rng), den(rng));
}

RawPoly rand_raw(int max_terms = 5, int max_exp = 3, int max_y = 4) {
    std::uniform_int_distribution<int> e(0, max_exp), ey(0, max_y), nterms(1, max_terms);
    RawPoly raw;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) raw[{e(rng), ey(rng), e(rng), e(rng)}] = rand_rat();
    return raw;
}

CurvePoly rand_poly() { return CurvePoly::normalize(rand_raw()); }

CurveFun rand_fun() {
    std::uniform_int_distribution<int> yp(0, 2), dp(0, 1);
    return CurveFun(rand_poly(), yp(rng), dp(rng));
}

}  // namespace

TEST_CASE("normal form under the curve relation") {
    CurvePoly R = CurvePoly::curve_rhs();
    RawPoly y2{{Mono{0, 2, 0, 0}, Rat(1)}};
    CHECK(CurvePoly::normalize(y2) == R);

    RawPoly rel = y2;
    for (const auto& [m, c] : R.terms()) rel[m] = rel[m] - c;
    CHECK(CurvePoly::normalize(rel).is_zero());

    RawPoly y3{{Mono{0, 3, 0, 0}, Rat(1)}};
    CHECK(CurvePoly::normalize(y3) == R * CurvePoly::Y());

    // idempotent and multiplicative on random input
    for (int i = 0; i < 50; ++i) {
        RawPoly a = rand_raw(), b = rand_raw();
        CurvePoly na = CurvePoly::normalize(a), nb = CurvePoly::normalize(b);
        RawPoly again;
        for (const auto& [m, c] : na.terms()) again[m] = c;
        CHECK(CurvePoly::normalize(again) == na);
        RawPoly prod;
        for (const auto& [m1, c1] : a)
            for (const auto& [m2, c2] : b) prod[m1 * m2] = prod[m1 * m2] + c1 * c2;
        CHECK(CurvePoly::normalize(prod) == na * nb);
    }
}

TEST_CASE("unique minimal denominators") {
    // R / y = y as functions
    CHECK(CurveFun(CurvePoly::curve_rhs(), 1, 0) == CurveFun::Y());
    // Delta p / Delta = p
    CurvePoly p = rand_poly();
    CHECK(CurveFun(p * CurvePoly::discriminant(), 0, 1) == CurveFun(p));
    // y^2 / y^2 via numerator reduction
    CHECK(CurveFun(CurvePoly::curve_rhs(), 2, 0) == CurveFun(Rat(1)));
}

TEST_CASE("exterior derivative basics") {
    CHECK(exterior_d(CurveFun::X()) == DiffForm1::dx());
    DiffForm1 dDelta;
    dDelta.fu = CurveFun(CurvePoly::U() * CurvePoly::U() * Rat(3));
    dDelta.fv = CurveFun(CurvePoly::V() * Rat(-54));
    CHECK(exterior_d(delta_fun()) == dDelta);

    // 2y dy = (12x^2 - u)dx - x du - dv
    DiffForm1 dy = exterior_d(CurveFun::Y());
    DiffForm1 lhs = dy * (CurveFun::Y() * Rat(2));
    DiffForm1 rhs = DiffForm1::dx() * CurveFun(CurvePoly::X() * CurvePoly::X() * Rat(12) - CurvePoly::U()) -
                    DiffForm1::du() * CurveFun::X() - DiffForm1::dv();
    CHECK(lhs == rhs);
}

TEST_CASE("Leibniz rule on random pairs") {
    for (int i = 0; i < 1000; ++i) {
        CurveFun f = rand_fun(), g = rand_fun();
        DiffForm1 lhs = exterior_d(f * g);
        DiffForm1 rhs = exterior_d(f) * g + exterior_d(g) * f;
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("wedge and d^2") {
    CHECK(wedge(DiffForm1::dx(), DiffForm1::dx()).is_zero());
    DiffForm2 xu = wedge(DiffForm1::dx(), DiffForm1::du());
    CHECK(xu.fxu == CurveFun(Rat(1)));
    CHECK(xu.fxv.is_zero());

    for (int i = 0; i < 30; ++i) {
        DiffForm1 a{rand_fun(), rand_fun(), rand_fun()}, b{rand_fun(), rand_fun(), rand_fun()};
        DiffForm2 ab = wedge(a, b), ba = wedge(b, a);
        CHECK(ab.fxu == -ba.fxu);
        CHECK(ab.fxv == -ba.fxv);
        CHECK(ab.fuv == -ba.fuv);
    }

    // d^2 = 0, including the quoted x y / Delta example
    CurveFun xyd(CurvePoly::X() * CurvePoly::Y(), 0, 1);
    CHECK(d2(exterior_d(xyd)).is_zero());
    for (int i = 0; i < 100; ++i) {
        CurveFun f = rand_fun();
        REQUIRE(d2(exterior_d(f)).is_zero());
    }
}

TEST_CASE("expansion at the identity") {
    LaurentSeries x = laurent_at_identity(CurveFun::X(), 6);
    CHECK(x.coeff(-2) == CurveFun(Rat(1)));
    CHECK(x.coeff(0).is_zero());
    CHECK(x.coeff(2) == CurveFun(CurvePoly::U()) * rat(1, 20));
    CHECK(x.coeff(4) == CurveFun(CurvePoly::V()) * rat(1, 28));

    // 2x^2/y = -1/s + O(s)
    CurveFun f(CurvePoly::X() * CurvePoly::X() * Rat(2), 1, 0);
    LaurentSeries s = laurent_at_identity(f, 1);
    CHECK(s.coeff(-1) == CurveFun(Rat(-1)));
    CHECK(s.coeff(0).is_zero());

    CHECK(laurent_at_identity(CurveFun(Rat(1)), 3).coeff(0) == CurveFun(Rat(1)));

    // y(s) leading term
    WeierstrassData w = weierstrass_laurent(8);
    CHECK(w.ys.coeff(-3) == CurveFun(Rat(-2)));

    // y^2 and the curve rhs agree to order 10
    LaurentSeries left = laurent_at_identity(CurveFun(CurvePoly::normalize(RawPoly{{Mono{0, 2, 0, 0}, Rat(1)}})), 10);
    LaurentSeries right = laurent_at_identity(CurveFun(CurvePoly::curve_rhs()), 10);
    CHECK((left - right).is_zero_to_trunc());

    // multiplicativity
    for (int i = 0; i < 40; ++i) {
        CurveFun a = rand_fun(), b = rand_fun();
        LaurentSeries ea = laurent_at_identity(a, 4), eb = laurent_at_identity(b, 4);
        LaurentSeries eab = laurent_at_identity(a * b, 4);
        LaurentSeries prod = ea * eb;
        int t = std::min(eab.trunc(), prod.trunc());
        REQUIRE((eab.truncate(t) - prod.truncate(t)).is_zero_to_trunc());
    }
}

TEST_CASE("curve relation holds in the expansion to high order") {
    WeierstrassData w = weierstrass_laurent(20);
    LaurentSeries rel = w.ys * w.ys - w.xs.pow(3) * rat(4) + w.xs * CurveFun(CurvePoly::U()) +
                        LaurentSeries::from_coeff(CurveFun(CurvePoly::V()), 0, 20);
    CHECK(rel.is_zero_to_trunc());
    CHECK(rel.trunc() >= 14);
}

TEST_CASE("modular weights") {
    CHECK(weight_of(delta_fun()) == -12);
    DiffForm1 xdxy = dx_over_y() * CurveFun::X();
    CHECK(weight_of(xdxy) == -1);
    CHECK(!CurveFun(CurvePoly::X() + CurvePoly::U()).weight().has_value());

    for (int i = 0; i < 200; ++i) {
        // homogeneous random: single monomial over y^a Delta^b
        std::uniform_int_distribution<int> e(0, 3), ey(0, 1), yp(0, 2), dp(0, 1);
        CurveFun f(CurvePoly::monomial({e(rng), ey(rng), e(rng), e(rng)}, rand_rat()), yp(rng), dp(rng));
        if (f.is_zero()) continue;
        auto wf = weight_of(f);
        REQUIRE(wf.has_value());
        DiffForm1 df = exterior_d(f);
        if (df.is_zero()) continue;
        auto wd = weight_of(df);
        REQUIRE(wd.has_value());
        REQUIRE(*wd == *wf);
    }
}

TEST_CASE("fiber specialization") {
    CHECK(delta_fun().substitute_uv(rat(4), rat(1)) == CurveFun(Rat(37)));
    CurveFun xu = CurveFun::X() * CurveFun::U();
    CHECK(xu.substitute_uv(rat(4), rat(1)) == CurveFun::X() * Rat(4));
    CurveFun inv_delta(CurvePoly(Rat(1)), 0, 1);
    CHECK(inv_delta.substitute_uv(rat(0), rat(1)) == CurveFun(rat(-1, 27)));
    CHECK_THROWS_AS(inv_delta.substitute_uv(rat(3), rat(1)), std::invalid_argument);  // 27 - 27 = 0
}
