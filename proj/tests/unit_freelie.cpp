#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "ellkzb/freelie.hpp"

using namespace ellkzb;

namespace {

std::mt19937 rng(77002);

LieElt<Rat> rand_lie(int trunc, int min_deg = 1) {
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    LieElt<Rat> out(trunc);
    for (int n = min_deg; n <= trunc; ++n)
        for (const Word& w : lyndon_words(n)) out.add(w, rat(num(rng), den(rng)));
    return out;
}

// independent Lyndon test: strictly least among all rotations
bool lyndon_by_rotations(const Word& w) {
    for (size_t i = 1; i < w.size(); ++i) {
        Word rot = w.substr(i) + w.substr(0, i);
        if (!(w < rot)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("Lyndon words and Witt dimensions") {
    CHECK(lyndon_words(1) == std::vector<Word>{"S", "T"});
    CHECK(lyndon_words(2) == std::vector<Word>{"ST"});
    CHECK(lyndon_words(5).size() == 6);

    // dimensions against brute-force rotation counting
    std::vector<long> expect{2, 1, 2, 3, 6, 9, 18, 30};
    for (int n = 1; n <= 8; ++n) {
        long count = 0;
        for (long mask = 0; mask < (1L << n); ++mask) {
            Word w;
            for (int i = 0; i < n; ++i) w += (mask >> i & 1) ? 'T' : 'S';
            if (lyndon_by_rotations(w)) ++count;
        }
        CHECK(count == expect[n - 1]);
        CHECK(witt_dimension(n) == expect[n - 1]);
        CHECK((long)lyndon_words(n).size() == expect[n - 1]);
    }
}

TEST_CASE("bracket basics") {
    int N = 5;
    auto S = LieElt<Rat>::generator('S', N), T = LieElt<Rat>::generator('T', N);
    CHECK(bracket(S, S).is_zero());
    CHECK((bracket(S, T) + bracket(T, S)).is_zero());

    // [S,[S,T]] is the basis element of the word SST
    LieElt<Rat> sst(N);
    sst.add("SST", Rat(1));
    CHECK(bracket(S, bracket(S, T)) == sst);

    // cross-check against the associative commutator expansion
    AssocElt<Rat> sa = S.to_assoc(), ta = T.to_assoc();
    AssocElt<Rat> st = sa * ta - ta * sa;
    AssocElt<Rat> expand = sa * st - st * sa;
    CHECK(LieElt<Rat>::from_assoc(expand) == sst);
}

TEST_CASE("iterated adjoint action") {
    int N = 6;
    auto S = LieElt<Rat>::generator('S', N);
    CHECK(ad_pow(0, S) == S);
    LieElt<Rat> ts(N);
    ts.add("ST", Rat(-1));
    CHECK(ad_pow(1, S) == ts);  // [T,S] = -[S,T]

    // associative oracle: ad_T^n(S) = sum_k (-1)^k C(n,k) T^(n-k) S T^k
    for (int n = 0; n <= 5; ++n) {
        AssocElt<Rat> expect(N);
        for (int k = 0; k <= n; ++k) {
            Word w = Word(n - k, 'T') + "S" + Word(k, 'T');
            Rat sign = (k % 2 == 0) ? Rat(1) : Rat(-1);
            expect.add(w, sign * rat_binomial(n, k));
        }
        CHECK(ad_pow(n, S).to_assoc() == expect);
    }
}

TEST_CASE("Jacobi identity on random triples") {
    int N = 6;
    for (int i = 0; i < 500; ++i) {
        LieElt<Rat> a = rand_lie(N), b = rand_lie(N), c = rand_lie(N);
        LieElt<Rat> j = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
        REQUIRE(j.is_zero());
    }
}

TEST_CASE("derivations") {
    int N = 5;
    auto S = LieElt<Rat>::generator('S', N), T = LieElt<Rat>::generator('T', N);
    Derivation<Rat> s_dt{LieElt<Rat>(N), S};  // T -> S, S -> 0 ... values (on_s, on_t)
    // careful: Derivation{on_s, on_t}; S d/dT maps T to S
    CHECK(s_dt.apply(T) == S);
    CHECK(s_dt.apply(S).is_zero());

    CHECK(dbracket(inner_derivation(S), inner_derivation(T)) == inner_derivation(bracket(S, T)));

    for (int i = 0; i < 60; ++i) {
        Derivation<Rat> d1{rand_lie(N, 2), rand_lie(N, 2)}, d2{rand_lie(N, 2), rand_lie(N, 2)};
        LieElt<Rat> x = rand_lie(N);
        LieElt<Rat> lhs = dbracket(d1, d2).apply(x);
        LieElt<Rat> rhs = d1.apply(d2.apply(x)) - d2.apply(d1.apply(x));
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("exp, log and the BCH expansion") {
    int N = 6;
    auto S = LieElt<Rat>::generator('S', N), T = LieElt<Rat>::generator('T', N);
    CHECK(assoc_exp(AssocElt<Rat>(N)) == AssocElt<Rat>::one(N));
    CHECK(LieElt<Rat>::from_assoc(assoc_log(assoc_exp(S.to_assoc()))) == S);

    AssocElt<Rat> g = assoc_exp(S.to_assoc()) * assoc_exp(T.to_assoc());
    LieElt<Rat> bch = LieElt<Rat>::from_assoc(assoc_log(g)).truncate(3);
    LieElt<Rat> expect(3);
    expect.add("S", Rat(1));
    expect.add("T", Rat(1));
    expect.add("ST", rat(1, 2));     // (1/2)[S,T]
    expect.add("SST", rat(1, 12));   // (1/12)[S,[S,T]]
    expect.add("STT", rat(1, 12));   // (1/12)[[S,T],T] = (1/12)[T,[T,S]]
    CHECK(bch == expect);

    for (int i = 0; i < 25; ++i) {
        AssocElt<Rat> a = rand_lie(N).to_assoc();
        REQUIRE(assoc_log(assoc_exp(a)) == a);
    }
}

TEST_CASE("group-like elements and the shuffle relation") {
    int N = 6;
    auto S = LieElt<Rat>::generator('S', N), T = LieElt<Rat>::generator('T', N);
    CHECK(is_grouplike(AssocElt<Rat>::one(N)));

    // exp(S + 2[S,T]) checked through degree 4
    LieElt<Rat> prim(4);
    prim.add("S", Rat(1));
    prim.add("ST", Rat(2));
    CHECK(is_grouplike(assoc_exp(prim.to_assoc())));

    // 1 + S + T fails at degree 2: c(ST) + c(TS) = 0 but c(S) c(T) = 1
    AssocElt<Rat> bad = AssocElt<Rat>::one(2);
    bad.add("S", Rat(1));
    bad.add("T", Rat(1));
    CHECK(!is_grouplike(bad));

    for (int i = 0; i < 20; ++i) REQUIRE(is_grouplike(assoc_exp(rand_lie(N).to_assoc())));
}

TEST_CASE("function coefficients") {
    int N = 4;
    auto S = LieElt<CurveFun>::generator('S', N), T = LieElt<CurveFun>::generator('T', N);
    LieElt<CurveFun> a = S.scale(CurveFun::X()) + T.scale(CurveFun(CurvePoly::U()));
    LieElt<CurveFun> b = bracket(a, T);
    LieElt<CurveFun> expect(N);
    expect.add("ST", CurveFun::X());
    CHECK(b == expect);
}
