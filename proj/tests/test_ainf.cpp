#include "doctest.h"

#include "ghcat/ainf.hpp"
#include "ghcat/complex_cat.hpp"
#include "support/cats.hpp"

using namespace ghcat;

TEST_CASE("category with only m_1, m_1^2 = 0") {
    Category C = testgen::simple_m1();
    CHECK(verify_ainf(C).pass());
    // break it: m_1(y) = x makes d^2 nonzero
    Category bad = C;
    bad.add_op({1}, 0, Scalar::one());
    CHECK(!verify_ainf(bad).pass());
}

TEST_CASE("metric DG category verifies and is strictly unital") {
    std::vector<std::vector<Rat>> d{{Rat(0), Rat(1, 2), Rat(1)},
                                    {Rat(1, 2), Rat(0), Rat(3, 4)},
                                    {Rat(1), Rat(3, 4), Rat(0)}};
    Category C = testgen::metric_category(d);
    CHECK(verify_ainf(C).pass());
    CHECK(verify_strict_unit(C).pass());
    CHECK(C.is_dg());
}

TEST_CASE("category of complexes is a strictly unital DG category") {
    auto V0 = testgen::point_complex("p");
    auto V1 = testgen::point_complex("q", true, Rat(1, 4));
    Category C = complex_category({V0, V1}, Rat(100));
    CHECK(verify_ainf(C).pass());
    CHECK(verify_strict_unit(C).pass());

    GenId t12 = elementary_map(C, 0, 1, "p", "q");
    GenId t21 = elementary_map(C, 1, 0, "q", "p");
    REQUIRE(t12 >= 0);
    REQUIRE(t21 >= 0);
    Combo tt = C.eval_gens({t12, t21});
    CHECK(tt == Combo{{C.unit_of(0), Scalar::one()}});
}

TEST_CASE("broken strict unit is reported") {
    Category C = testgen::metric_category({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
    // damage: m_1(e_0) = T * e_0
    GenId e0 = C.unit_of(0);
    C.add_op({e0}, e0, Scalar::tpow(Rat(1)));
    CHECK(!verify_strict_unit(C).pass());

    // unit with positive valuation shift fails item (3)
    Category C2 = testgen::metric_category({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
    C2.gens[C2.unit_of(0)].shift = Rat(1, 2);
    CHECK(!verify_strict_unit(C2).pass());
}

TEST_CASE("gapped verification") {
    Category C = testgen::simple_m1(Rat(1)); // exponent 1
    CHECK(verify_gapped(C, {Rat(1)}));
    Category C2 = testgen::simple_m1(Rat(1, 2));
    CHECK(!verify_gapped(C2, {Rat(1)}));
    Category C3 = testgen::simple_m1(Rat(3)); // {0, 3} against {3/2}
    C3.add_op({C3.find_gen("x")}, C3.find_gen("y"), Scalar::tpow(Rat(3, 2)));
    CHECK(verify_gapped(C3, {Rat(3, 2)}));
}

TEST_CASE("bar coderivation squares to zero iff relations hold") {
    testgen::Rng rng(17);
    const Trunc lam = Trunc::lambda(Rat(100));
    for (int trial = 0; trial < 50; ++trial) {
        Category C;
        C.trunc = Trunc::lambda0(Rat(100));
        C.arity_cap = 3;
        ObId c = C.add_object("c");
        std::uniform_int_distribution<int> degd(0, 2), nops(1, 4), pick(0, 3), coin(0, 1);
        for (int i = 0; i < 4; ++i) C.add_gen("x" + std::to_string(i), c, c, degd(rng));
        int k = nops(rng);
        for (int i = 0; i < k; ++i) {
            std::vector<GenId> in;
            int arity = 1 + coin(rng);
            for (int j = 0; j < arity; ++j) in.push_back(pick(rng));
            GenId out = pick(rng);
            int dp = 1;
            for (GenId g : in) dp += C.gens[g].deg - 1;
            if (C.gens[out].deg - 1 != dp) continue; // keep ops degree-correct
            C.add_op(in, out, Scalar::monomial(testgen::random_coeff(rng),
                                               testgen::random_exponent(rng)));
        }
        bool rel = verify_ainf(C).pass();
        bool dsq = true;
        for (int len = 1; len <= C.arity_cap && dsq; ++len) {
            for_each_tuple(C, len, [&](const std::vector<GenId>& w) {
                WordCombo dd;
                for (const auto& [w1, s1] : bar_coderivation(C, w))
                    for (const auto& [w2, s2] : bar_coderivation(C, w1)) {
                        WordCombo term{{w2, mul(s1, s2, lam)}};
                        dd = word_combo_add(dd, term);
                    }
                if (!word_combo_is_zero(dd)) dsq = false;
            });
        }
        CHECK(rel == dsq);
    }
}

TEST_CASE("bar coproduct deconcatenations") {
    Category C = testgen::metric_category({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
    GenId u = C.find_gen("u01"), v = C.find_gen("u10");
    auto splits = bar_coproduct({u, v, u});
    CHECK(splits.size() == 2);
    CHECK(splits[0].first == Word{u});
    CHECK(splits[0].second == Word{v, u});
    CHECK(bar_coproduct({u}).empty());
}

TEST_CASE("identity and composition of functors") {
    Category C = testgen::metric_category({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
    Functor id = identity_functor(C);
    CHECK(verify_functor(id).pass());
    CHECK(verify_unital_functor(id).pass());
    Functor idid = compose_functors(id, id);
    CHECK(idid.comps == id.comps);
    CHECK(verify_functor(idid).pass());
}

TEST_CASE("linear T-shift functor has the declared loss") {
    Category C = testgen::simple_m1(Rat(1, 2));
    Functor f;
    f.src = f.dst = &C;
    f.loss = Rat(1, 10);
    f.ob[0] = 0;
    const Trunc lam = Trunc::lambda(C.trunc.energy_cap);
    for (GenId g = 0; g < static_cast<GenId>(C.gens.size()); ++g)
        f.comps[{g}] = Combo{{g, Scalar::tpow(Rat(-1, 10))}};
    CHECK(verify_functor(f).pass());
    // loss 1/10 claimed but drops by 1/5: rejected
    Functor g = f;
    for (auto& [in, out] : g.comps) out = combo_scale(out, Scalar::tpow(Rat(-1, 10)), lam);
    CHECK(!verify_functor(g).pass());
    // composition of two shifts declares summed loss
    Functor ff = compose_functors(f, f);
    CHECK(ff.loss == Rat(1, 5));
    CHECK(verify_functor(ff).pass());
}
