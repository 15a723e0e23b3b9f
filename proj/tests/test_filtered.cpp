#include "doctest.h"

#include "ghcat/barcode_oracle.hpp"
#include "ghcat/filtered.hpp"
#include "support/gen.hpp"

using namespace ghcat;

static std::optional<Rat> inf() { return std::nullopt; }

TEST_CASE("barcode construction drops zeros and sorts") {
    Barcode b = Barcode::make({Rat(1), inf(), Rat(0), Rat(2)});
    CHECK(b.entries.size() == 3);
    CHECK(!b.entries[0].has_value());
    CHECK(*b.entries[1] == Rat(2));
    CHECK(*b.entries[2] == Rat(1));
}

TEST_CASE("spectral dimension") {
    Barcode b = Barcode::make({inf(), Rat(2), Rat(1)});
    CHECK(spectral_dimension(b, Rat(3, 2)) == 2);
    CHECK(spectral_dimension(Barcode{}, Rat(5)) == 0);
    Barcode just_inf = Barcode::make({inf()});
    CHECK(spectral_dimension(just_inf, Rat(1000000)) == 1);
    // non-increasing in lambda
    testgen::Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        std::vector<std::optional<Rat>> es;
        for (int j = 0; j < 4; ++j) es.push_back(testgen::random_exponent(rng));
        Barcode r = Barcode::make(es);
        Rat l1 = testgen::random_exponent(rng), l2 = l1 + testgen::random_exponent(rng);
        CHECK(spectral_dimension(r, l1) >= spectral_dimension(r, l2));
    }
}

TEST_CASE("almost isomorphic") {
    Barcode a = Barcode::make({Rat(2), Rat(1)});
    Barcode b = Barcode::make({Rat(1), Rat(2)});
    Barcode c = Barcode::make({Rat(2)});
    CHECK(almost_isomorphic(a, b));
    CHECK(!almost_isomorphic(a, c));
    // Lambda_0 and Lambda_+ stand-ins both encode as (inf)
    CHECK(almost_isomorphic(Barcode::make({inf()}), Barcode::make({inf()})));
    // reflexive on random barcodes
    testgen::Rng rng(11);
    for (int i = 0; i < 30; ++i) {
        Barcode x = Barcode::make({testgen::random_exponent(rng), testgen::random_exponent(rng)});
        CHECK(almost_isomorphic(x, x));
    }
}

TEST_CASE("limit barcode") {
    Barcode s = Barcode::make({Rat(2), Rat(1)});
    auto lim = limit_barcode({s, s}, {Rat(0)});
    CHECK(lim.value == s);
    CHECK(lim.error == 0);

    // entries 1 + 1/2^n for n = 1,2,3 with losses 1/2^n; declared tail 1/4
    std::vector<Barcode> seq{Barcode::make({Rat(3, 2)}), Barcode::make({Rat(5, 4)}),
                             Barcode::make({Rat(9, 8)})};
    auto lim2 = limit_barcode(seq, {Rat(1, 2), Rat(1, 4)}, Rat(1, 4));
    CHECK(lim2.value == Barcode::make({Rat(9, 8)}));
    CHECK(lim2.error == Rat(1, 4));

    // Lipschitz violation
    std::vector<Barcode> bad{Barcode::make({Rat(3)}), Barcode::make({Rat(1)})};
    CHECK_THROWS_AS(limit_barcode(bad, {Rat(1, 2)}), Error);
    // infinite entry against finite entry
    std::vector<Barcode> bad2{Barcode::make({inf()}), Barcode::make({Rat(1)})};
    CHECK_THROWS_AS(limit_barcode(bad2, {Rat(1, 2)}), Error);
}

TEST_CASE("spectral Lipschitz check") {
    Barcode b21 = Barcode::make({Rat(2), Rat(1)});
    CHECK(spectral_lipschitz_check(b21, b21, Rat(0)));
    CHECK(spectral_lipschitz_check(Barcode::make({Rat(2)}), Barcode::make({Rat(5, 2)}), Rat(1, 2)));
    CHECK(!spectral_lipschitz_check(Barcode::make({Rat(2)}), Barcode::make({Rat(4)}), Rat(1, 2)));
}

static FilteredComplex two_gen_complex(const Scalar& entry) {
    FilteredComplex c;
    c.trunc = Trunc::lambda0(Rat(100));
    c.gens.push_back({"x", 0, Rat(0)});
    c.gens.push_back({"y", 1, Rat(0)});
    if (!entry.is_zero()) c.diff[{0, 1}] = entry;
    return c;
}

TEST_CASE("verify complex") {
    auto ok = two_gen_complex(Scalar::tpow(Rat(1, 2)));
    CHECK(verify_complex(ok).pass());

    // d(x) = y, d(y) = x is neither degree-correct nor d^2 = 0
    FilteredComplex bad;
    bad.trunc = Trunc::lambda0(Rat(100));
    bad.gens.push_back({"x", 0, Rat(0)});
    bad.gens.push_back({"y", 1, Rat(0)});
    bad.diff[{0, 1}] = Scalar::one();
    bad.diff[{1, 0}] = Scalar::one();
    CHECK(!verify_complex(bad).pass());

    // negative valuation entry violates the filtration on a Lambda_0 complex
    FilteredComplex neg;
    neg.trunc = Trunc::lambda0(Rat(100));
    neg.gens.push_back({"x", 0, Rat(0)});
    neg.gens.push_back({"y", 1, Rat(0)});
    neg.diff[{0, 1}] = Scalar::tpow(Rat(-1, 2));
    CHECK(!verify_complex(neg).pass());
}

TEST_CASE("barcode normal form, small cases") {
    auto c = two_gen_complex(Scalar::tpow(Rat(3, 2)));
    auto nf = barcode_normal_form(c);
    CHECK(nf[1] == Barcode::make({Rat(3, 2)})); // torsion sits in y's degree
    CHECK(nf[0] == Barcode{});

    auto z = two_gen_complex(Scalar::zero());
    auto nfz = barcode_normal_form(z);
    CHECK(nfz[0] == Barcode::make({inf()}));
    CHECK(nfz[1] == Barcode::make({inf()}));

    // unit pivot: acyclic pair contributes nothing
    auto u = two_gen_complex(Scalar::one());
    auto nfu = barcode_normal_form(u);
    CHECK(nfu[0] == Barcode{});
    CHECK(nfu[1] == Barcode{});
}

TEST_CASE("barcode normal form agrees with the all-pivot-orders oracle") {
    testgen::Rng rng(2024);
    for (int i = 0; i < 60; ++i) {
        FilteredComplex c = testgen::random_complex(rng, 6, 6);
        REQUIRE(verify_complex(c).pass());
        auto nf = barcode_normal_form(c);
        auto oracle = barcode_oracle(c);
        CHECK(oracle.pivot_order_invariant);
        for (const auto& [deg, bc] : oracle.barcodes) {
            CHECK(nf[deg] == bc);
        }
    }
}

TEST_CASE("barcode invariant under filtered basis change") {
    testgen::Rng rng(5);
    for (int rep = 0; rep < 40; ++rep) {
        FilteredComplex c = testgen::random_complex(rng, 5, 6);
        auto base = barcode_normal_form(c);
        // elementary filtered transform: x_i <- x_i + q x_j (same degree)
        FilteredComplex t = c;
        std::uniform_int_distribution<int> pick(0, static_cast<int>(c.gens.size()) - 1);
        int i = pick(rng), j = pick(rng);
        if (i == j || c.gens[i].deg != c.gens[j].deg) continue;
        Scalar q = Scalar::monomial(testgen::random_coeff(rng), testgen::random_exponent(rng));
        // rows: d(x_i) += q d(x_j)
        for (std::size_t w = 0; w < c.gens.size(); ++w) {
            Scalar upd = add(t.entry(i, static_cast<int>(w)),
                             mul(q, t.entry(j, static_cast<int>(w)), t.trunc));
            if (upd.is_zero())
                t.diff.erase({i, static_cast<int>(w)});
            else
                t.diff[{i, static_cast<int>(w)}] = upd;
        }
        // columns: entries into x_j lose q * (entries into x_i)
        for (std::size_t z = 0; z < c.gens.size(); ++z) {
            Scalar upd = sub(t.entry(static_cast<int>(z), j),
                             mul(q, t.entry(static_cast<int>(z), i), t.trunc));
            if (upd.is_zero())
                t.diff.erase({static_cast<int>(z), j});
            else
                t.diff[{static_cast<int>(z), j}] = upd;
        }
        REQUIRE(verify_complex(t).pass());
        auto changed = barcode_normal_form(t);
        CHECK(changed == base);
    }
}
