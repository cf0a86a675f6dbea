#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "ellkzb/gaugesolve.hpp"
#include "ellkzb/special.hpp"

using namespace ellkzb;

namespace {

std::mt19937 rng(909131);

CurvePoly rand_member() {
    std::uniform_int_distribution<int> e(0, 3), ey(0, 1), num(-6, 6), den(1, 4), nt(1, 4);
    RawPoly raw;
    for (int i = 0, n = nt(rng); i < n; ++i) raw[{e(rng), ey(rng), 0, 0}] = rat(num(rng), den(rng));
    return CurvePoly::normalize(raw);
}

}  // namespace

TEST_CASE("reduction to the cohomology frame") {
    ReduceResult r1 = reduce_form(CurvePoly(Rat(1)));
    CHECK(r1.cls.c1 == CurvePoly(Rat(1)));
    CHECK(r1.cls.c2.is_zero());
    CHECK(r1.primitive.is_zero());

    // y dx/y = dx
    ReduceResult r2 = reduce_form(CurvePoly::Y());
    CHECK(r2.cls.is_zero());
    CHECK(r2.primitive == CurvePoly::X());

    // x^2 dx/y = (u/12) dx/y + d(y/6)
    ReduceResult r3 = reduce_form(CurvePoly::X() * CurvePoly::X());
    CHECK(r3.cls.c1 == CurvePoly::U() * rat(1, 12));
    CHECK(r3.cls.c2.is_zero());
    CHECK(r3.primitive == CurvePoly::Y() * rat(1, 6));
}

TEST_CASE("reduction reconstructs the form") {
    for (int i = 0; i < 100; ++i) {
        CurvePoly f = rand_member();
        ReduceResult r = reduce_form(f);
        // f = c1 + c2 x + y * (d primitive).fx as functions
        CurveFun rebuilt = CurveFun(r.cls.c1) + CurveFun(r.cls.c2) * CurveFun::X() +
                           exterior_d(CurveFun(r.primitive), DMode::fiber).fx * CurveFun::Y();
        REQUIRE(CurveFun(f) == rebuilt);
        // and re-reducing the primitive part gives a zero class
        ReduceResult again = reduce_form((exterior_d(CurveFun(r.primitive), DMode::fiber).fx * CurveFun::Y()).num());
        REQUIRE(again.cls.is_zero());
    }
}

TEST_CASE("exact forms have zero class") {
    for (int i = 0; i < 200; ++i) {
        CurvePoly h = rand_member();
        DiffForm1 dh = exterior_d(CurveFun(h), DMode::fiber);
        CurveFun f = dh.fx * CurveFun::Y();
        REQUIRE(f.ypow() == 0);
        ReduceResult r = reduce_form(f.num());
        REQUIRE(r.cls.is_zero());
    }
}

TEST_CASE("reduction is linear") {
    for (int i = 0; i < 50; ++i) {
        CurvePoly f = rand_member(), g = rand_member();
        ReduceResult rf = reduce_form(f), rg = reduce_form(g), rs = reduce_form(f + g);
        REQUIRE(rs.cls.c1 == rf.cls.c1 + rg.cls.c1);
        REQUIRE(rs.cls.c2 == rf.cls.c2 + rg.cls.c2);
    }
}

TEST_CASE("group-structure-preserving gauge problem is obstructed at degree 3") {
    const std::vector<std::pair<long, long>> fibers{{4, 1}, {1, 0}, {0, 1}, {5, 2}, {-3, 1}};
    for (auto [u0, v0] : fibers) {
        GaugeProblem p{GaugeMode::inner, 3, rat(u0), rat(v0)};
        SolveResult r = solve_gauge(p);
        REQUIRE(r.obstruction.has_value());
        CHECK(r.obstruction->degree == 3);
        CHECK(r.obstruction->mentions("mu = -1/2"));
        CHECK(r.obstruction->mentions("mu = 0"));
    }
}

TEST_CASE("automorphism-valued gauge problem solves through degree 5") {
    const std::vector<std::pair<long, long>> fibers{{4, 1}, {1, 0}, {0, 1}, {5, 2}, {-3, 1}};
    for (auto [u0, v0] : fibers) {
        GaugeProblem p{GaugeMode::full, 5, rat(u0), rat(v0)};
        SolveResult r = solve_gauge(p);
        REQUIRE(r.success.has_value());
        REQUIRE(r.success->verified);
        // degree-3 action on T under the zero-constant normalization
        CHECK(r.success->action_on_t.coeff("STT") == CurveFun(rat(1, 2)));
    }
}

TEST_CASE("full solve at low degree matches the classical leading term") {
    GaugeProblem p{GaugeMode::full, 3, rat(4), rat(1)};
    SolveResult r = solve_gauge(p);
    REQUIRE(r.success.has_value());
    REQUIRE(r.success->verified);
    LieElt<CurveFun> t_img = r.success->action_on_t;
    CHECK(t_img.coeff("T") == CurveFun(Rat(1)));
    CHECK(t_img.coeff("STT") == CurveFun(rat(1, 2)));  // T + (1/2)[T,[T,S]]
}

TEST_CASE("bad fibers are rejected") {
    GaugeProblem p{GaugeMode::inner, 3, rat(3), rat(1)};  // 27 - 27 = 0
    CHECK_THROWS_AS(solve_gauge(p), std::invalid_argument);
}
