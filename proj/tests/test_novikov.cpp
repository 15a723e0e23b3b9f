#include "doctest.h"

#include <random>

#include "ghcat/novikov.hpp"
#include "support/gen.hpp"

using namespace ghcat;

static const Trunc E4 = Trunc::lambda0(Rat(4));

TEST_CASE("scalar canonical form and equality") {
    Scalar a = Scalar::from_terms({{Rat(1, 2), Rat(1)}, {Rat(0), Rat(1)}});
    Scalar b = add(Scalar::one(), Scalar::tpow(Rat(1, 2)));
    CHECK(a == b);
    CHECK(a.str() == "1 + T^1/2");
    // cancellation: (1 + T^{1/2}) + (-T^{1/2}) = 1
    Scalar c = add(a, neg(Scalar::tpow(Rat(1, 2))));
    CHECK(c == Scalar::one());
    CHECK(add(Scalar::zero(), a) == a);
}

TEST_CASE("truncation drops terms at the cap") {
    Trunc e1 = Trunc::lambda0(Rat(1));
    Scalar x = add(Scalar::tpow(Rat(2)), Scalar::tpow(Rat(3)));
    CHECK(truncate(x, e1).is_zero());
}

TEST_CASE("multiplication") {
    // (1 + T^{1/2})(1 - T^{1/2}) = 1 - T
    Scalar a = add(Scalar::one(), Scalar::tpow(Rat(1, 2)));
    Scalar b = add(Scalar::one(), neg(Scalar::tpow(Rat(1, 2))));
    CHECK(mul(a, b, E4) == sub(Scalar::one(), Scalar::tpow(Rat(1))));
    CHECK(mul(Scalar::tpow(Rat(1, 3)), Scalar::tpow(Rat(1, 6)), E4) == Scalar::tpow(Rat(1, 2)));
    Scalar x = Scalar::from_terms({{Rat(0), Rat(2, 3)}, {Rat(3, 2), Rat(-1)}});
    CHECK(mul(x, Scalar::one(), E4) == x);
}

TEST_CASE("valuation") {
    Scalar x = add(Scalar::tpow(Rat(3, 10)), scale(Scalar::tpow(Rat(7, 10)), Rat(2)));
    CHECK(*x.valuation() == Rat(3, 10));
    CHECK(!Scalar::zero().valuation().has_value());
    // valuation additivity through a negative-exponent factor
    Trunc lam = Trunc::lambda(Rat(4));
    Scalar y = Scalar::tpow(Rat(1, 2));
    Scalar t = Scalar::tpow(Rat(-1, 4));
    CHECK(*mul(t, y, lam).valuation() == Rat(1, 4));
}

TEST_CASE("tshift") {
    CHECK(tshift(Scalar::one(), Rat(1, 2), E4) == Scalar::tpow(Rat(1, 2)));
    Scalar x = Scalar::from_terms({{Rat(1, 2), Rat(3)}, {Rat(1), Rat(-1)}});
    CHECK(tshift(tshift(x, Rat(1, 4), E4), Rat(-1, 4), E4) == x);
    CHECK_THROWS_AS(tshift(Scalar::tpow(Rat(1, 4)), Rat(-1, 2), E4), Error);
}

TEST_CASE("floor underflow") {
    Trunc b0 = Trunc::lambda0(Rat(4));
    Trunc b1 = Trunc::with_floor(Rat(4), Rat(1));
    Scalar t = Scalar::tpow(Rat(-1, 2));
    CHECK_THROWS_AS(mul(t, t, b0), Error);
    CHECK(mul(t, t, b1) == Scalar::tpow(Rat(-1)));
}

TEST_CASE("series division") {
    Trunc e4 = Trunc::lambda0(Rat(4));
    Scalar den = sub(Scalar::one(), Scalar::tpow(Rat(1)));
    Scalar q = div_exact(Scalar::one(), den, e4);
    // 1/(1-T) = 1 + T + T^2 + T^3 mod T^4
    Scalar want = Scalar::from_terms({{Rat(0), Rat(1)}, {Rat(1), Rat(1)}, {Rat(2), Rat(1)}, {Rat(3), Rat(1)}});
    CHECK(q == want);
    CHECK(truncate(sub(mul(q, den, e4), Scalar::one()), Trunc::lambda(Rat(4))).is_zero());
}

TEST_CASE("ring axioms on random truncated scalars") {
    testgen::Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        Scalar a = testgen::random_scalar(rng), b = testgen::random_scalar(rng),
               c = testgen::random_scalar(rng);
        CHECK(add(a, b) == add(b, a));
        CHECK(add(add(a, b), c) == add(a, add(b, c)));
        CHECK(mul(a, b, E4) == mul(b, a, E4));
        CHECK(mul(mul(a, b, E4), c, E4) == mul(a, mul(b, c, E4), E4));
        CHECK(mul(a, add(b, c), E4) == add(mul(a, b, E4), mul(a, c, E4)));
        // valuation rules
        auto va = a.valuation(), vb = b.valuation();
        Scalar p = mul(a, b, E4);
        if (va && vb && *va + *vb < Rat(4)) {
            CHECK(*p.valuation() == *va + *vb);
        }
        auto vs = add(a, b).valuation();
        if (vs && va && vb) CHECK(*vs >= std::min(*va, *vb));
    }
}

TEST_CASE("rational parsing round trip") {
    CHECK(rat_parse("3/2") == Rat(3, 2));
    CHECK(rat_parse("-7") == Rat(-7));
    CHECK(rat_str(rat(6, 4)) == "3/2");
    CHECK_THROWS_AS(rat_parse("1.5"), Error);
    CHECK_THROWS_AS(rat_parse(""), Error);
}
