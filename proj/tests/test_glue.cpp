#include "doctest.h"

#include <random>

#include "ghcat/glue.hpp"
#include "support/cats.hpp"

using namespace ghcat;

namespace {

// hand-built metric-style DG category on two named objects
Category two_object_metric(const std::string& o1, const std::string& o2, Rat d) {
    Category C;
    C.trunc = Trunc::lambda0(Rat(100));
    C.arity_cap = 3;
    ObId a = C.add_object(o1);
    ObId b = C.add_object(o2);
    GenId ea = C.add_gen("e_" + o1, a, a, 0);
    GenId eb = C.add_gen("e_" + o2, b, b, 0);
    GenId u = C.add_gen("u_" + o1 + o2, a, b, 0);
    GenId v = C.add_gen("u_" + o2 + o1, b, a, 0);
    C.units[a] = ea;
    C.units[b] = eb;
    C.add_op({u, v}, ea, Scalar::tpow(d));
    C.add_op({v, u}, eb, Scalar::tpow(d));
    for (GenId g : {u, v}) {
        ObId s = C.gens[g].src, t = C.gens[g].dst;
        C.set_op({C.units.at(s), g}, Combo{{g, Scalar::one()}});
        C.set_op({g, C.units.at(t)}, Combo{{g, Scalar::one()}});
    }
    C.set_op({ea, ea}, Combo{{ea, Scalar::one()}});
    C.set_op({eb, eb}, Combo{{eb, Scalar::one()}});
    return C;
}

// C12/C23 pair sharing the middle object M with gens {e_M, w}; each side adds
// an acyclic endomorphism pair on M and an arm to its outer object
struct GlueFix {
    Category C12, C23;
    GlueCategory gl;

    GlueFix(int cap = 5) {
        auto build_side = [&](const std::string& outer, const std::string& x0,
                              const std::string& x1, bool arm_into) {
            Category C;
            C.trunc = Trunc::lambda0(Rat(100));
            C.arity_cap = 3;
            ObId m = C.add_object("M");
            ObId s = C.add_object(outer);
            GenId em = C.add_gen("e_M", m, m, 0);
            GenId es = C.add_gen("e_" + outer, s, s, 0);
            C.add_gen("w", m, m, 1);
            GenId a = C.add_gen(x0, m, m, 0);
            GenId b = C.add_gen(x1, m, m, 1);
            C.units[m] = em;
            C.units[s] = es;
            C.add_op({a}, b, Scalar::one()); // d(x0) = x1, contractible pair
            if (arm_into) {
                C.add_gen("p", s, m, 0);
                C.add_gen("q", m, s, 0);
            } else {
                C.add_gen("r", m, s, 0);
            }
            for (GenId g = 0; g < static_cast<GenId>(C.gens.size()); ++g) {
                bool is_unit = g == em || g == es;
                if (is_unit) continue;
                ObId src = C.gens[g].src, dst = C.gens[g].dst;
                C.set_op({C.units.at(src), g}, Combo{{g, Scalar::one()}});
                int sign = C.gens[g].deg % 2 == 0 ? 1 : -1;
                C.set_op({g, C.units.at(dst)},
                         Combo{{g, sign > 0 ? Scalar::one() : neg(Scalar::one())}});
            }
            C.set_op({em, em}, Combo{{em, Scalar::one()}});
            C.set_op({es, es}, Combo{{es, Scalar::one()}});
            return C;
        };
        C12 = build_side("S1", "f", "g", true);
        C23 = build_side("S3", "a", "b", false);
        REQUIRE(verify_ainf(C12).pass());
        REQUIRE(verify_ainf(C23).pass());
        gl = build_glue_category(C12, C23, {"M"}, {"e_M", "w"}, cap);
    }
};

} // namespace

TEST_CASE("glue of a category with itself along everything is the category") {
    Category C2 = two_object_metric("M", "N", Rat(1, 2));
    GlueCategory gl = build_glue_category(C2, C2, {"M", "N"},
                                          {"e_M", "e_N", "u_MN", "u_NM"}, 3);
    CHECK(gl.cat.gens.size() == C2.gens.size());
    CHECK(gl.cat.objects.size() == C2.objects.size());
    // all words contract to single letters and the operations agree
    for (const auto& [in, out] : C2.ops) {
        std::vector<GenId> tin;
        for (GenId g : in) tin.push_back(gl.word_gen(GlueWord{{0, g}}));
        const Combo* o = gl.cat.op(tin);
        REQUIRE(o != nullptr);
        Combo want;
        for (const auto& [g, s] : out) want[gl.word_gen(GlueWord{{0, g}})] = s;
        CHECK(*o == want);
    }
}

TEST_CASE("glue category is a strictly unital DG category") {
    GlueFix fx;
    auto rep = verify_ainf(fx.gl.cat);
    INFO(rep.first_failure());
    CHECK(rep.pass());
    CHECK(verify_strict_unit(fx.gl.cat).pass());
    // mixed S1 -> S3 morphisms start at two-letter words through the middle
    ObId s1 = fx.gl.cat.find_object("S1");
    ObId s3 = fx.gl.cat.find_object("S3");
    int len2 = 0;
    for (GenId g = 0; g < static_cast<GenId>(fx.gl.words.size()); ++g) {
        if (fx.gl.cat.gens[g].src != s1 || fx.gl.cat.gens[g].dst != s3) continue;
        CHECK(fx.gl.words[g].size() >= 2);
        if (fx.gl.words[g].size() == 2) ++len2;
    }
    CHECK(len2 > 0); // p (x) r sums
}

TEST_CASE("canonical forms are confluent under random contraction orders") {
    GlueFix fx;
    testgen::Rng rng(31);
    // random raw words with violations: same-tag adjacencies and middle letters
    std::uniform_int_distribution<int> len(2, 4), coin(0, 1);
    for (int trial = 0; trial < 100; ++trial) {
        GlueWord raw;
        std::string at = "M";
        int l = len(rng);
        for (int i = 0; i < l; ++i) {
            // pick any letter starting at `at`, ending at M (to keep chains going)
            std::vector<GlueLetter> candidates;
            for (int tag : {0, 1}) {
                const Category& C = tag == 0 ? fx.C12 : fx.C23;
                for (GenId g = 0; g < static_cast<GenId>(C.gens.size()); ++g)
                    if (C.objects[C.gens[g].src] == at && C.objects[C.gens[g].dst] == "M")
                        candidates.push_back({tag, g});
            }
            if (candidates.empty()) break;
            std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
            raw.push_back(candidates[pick(rng)]);
            at = "M";
        }
        if (raw.empty()) continue;
        auto det = fx.gl.normalize(raw, Scalar::one());
        for (int order = 0; order < 3; ++order) {
            auto rnd = fx.gl.normalize(raw, Scalar::one(), [&](std::size_t n) {
                std::uniform_int_distribution<std::size_t> p(0, n - 1);
                return p(rng);
            });
            CHECK(rnd == det);
        }
    }
}

TEST_CASE("glue homotopy: G-hat vanishes on N_0 and shrinks N levels") {
    GlueFix fx;
    const Category& C23 = fx.C23;
    GlueHomotopy h;
    ObId m23 = C23.find_object("M");
    std::map<GenId, Combo> gmap;
    GenId a = C23.find_gen("a"), b = C23.find_gen("b");
    gmap[b] = Combo{{a, Scalar::one()}}; // G(b) = a since d(a) = b
    gmap[a] = Combo{};
    gmap[C23.find_gen("e_M")] = Combo{};
    gmap[C23.find_gen("w")] = Combo{};
    h.sub_g[{m23, m23}] = gmap;

    ObId s1 = fx.gl.cat.find_object("S1");
    auto rep = verify_glue_homotopy(fx.gl, h, s1, s1);
    INFO(rep.first_failure());
    CHECK(rep.pass());

    // single-slot words: G-hat is G applied to the unique slot
    GenId p = fx.C12.find_gen("p"), q = fx.C12.find_gen("q");
    GlueWord w{{0, p}, {1, b}, {0, q}};
    GenId wg = fx.gl.word_gen(w);
    REQUIRE(wg >= 0);
    Combo gh = glue_g_hat(fx.gl, h, wg);
    GlueWord want{{0, p}, {1, a}, {0, q}};
    CHECK(gh == Combo{{fx.gl.word_gen(want), Scalar::one()}});
    // and N_0 words are untouched
    GenId single = fx.gl.word_gen(GlueWord{{0, p}});
    CHECK(combo_is_zero(glue_g_hat(fx.gl, h, single)));
}

TEST_CASE("triangle certificate composes with exact bound additivity") {
    Category C12 = two_object_metric("A", "M", Rat(1, 5));
    Category C23 = two_object_metric("M", "B", Rat(3, 10));
    Category C1 = full_subcategory(C12, {C12.find_object("A")});
    Category C2 = full_subcategory(C12, {C12.find_object("M")});
    Category C3 = full_subcategory(C23, {C23.find_object("B")});

    auto mk_cert = [&](const Category& amb, Rat d, Rat bound) {
        GHCertificate cert;
        cert.ambient = &amb;
        cert.side1 = {0};
        cert.side2 = {1};
        Matching m;
        m.c1 = 0;
        m.c2 = 1;
        Witness w;
        w.c1 = 0;
        w.c2 = 1;
        w.t12 = Combo{{2, Scalar::tpow(-d / 2)}}; // u_{o1 o2}
        w.t21 = Combo{{3, Scalar::tpow(-d / 2)}};
        w.eps1 = d / 2;
        w.eps2 = d / 2;
        m.finite = w;
        cert.matchings = {m};
        cert.bound = bound;
        return cert;
    };
    GHCertificate cert12 = mk_cert(C12, Rat(1, 5), Rat(1, 4));
    GHCertificate cert23 = mk_cert(C23, Rat(3, 10), Rat(2, 5));
    REQUIRE(verify_gh_certificate(cert12, C1, C2).pass());
    REQUIRE(verify_gh_certificate(cert23, C2, C3).pass());

    TriangleResult tri = gh_triangle_certificate(cert12, cert23, C1, C2, C3,
                                                 {"e_M"}, 4);
    CHECK(tri.cert.bound == Rat(1, 4) + Rat(2, 5));
    auto rep = verify_gh_certificate(tri.cert, C1, C3);
    INFO(rep.first_failure());
    CHECK(rep.pass());
    // exact loss additivity on the composed matching
    CHECK(hofer_bound(*tri.cert.matchings[0].finite) == Rat(1, 5) + Rat(3, 10));
}

TEST_CASE("gh certificate negative cases") {
    Category C12 = two_object_metric("A", "M", Rat(1, 5));
    Category C1 = full_subcategory(C12, {C12.find_object("A")});
    Category C2 = full_subcategory(C12, {C12.find_object("M")});
    GHCertificate cert;
    cert.ambient = &C12;
    cert.side1 = {0};
    cert.side2 = {1};
    cert.bound = Rat(1);
    // missing matching: Hausdorff condition fails
    CHECK(!verify_gh_certificate(cert, C1, C2).pass());
    // monotone in the claimed bound
    Matching m;
    m.c1 = 0;
    m.c2 = 1;
    Witness w;
    w.c1 = 0;
    w.c2 = 1;
    w.t12 = Combo{{2, Scalar::tpow(Rat(-1, 10))}};
    w.t21 = Combo{{3, Scalar::tpow(Rat(-1, 10))}};
    w.eps1 = Rat(1, 10);
    w.eps2 = Rat(1, 10);
    m.finite = w;
    cert.matchings = {m};
    CHECK(verify_gh_certificate(cert, C1, C2).pass());
    GHCertificate tight = cert;
    tight.bound = Rat(1, 5); // bound not strictly below
    CHECK(!verify_gh_certificate(tight, C1, C2).pass());
    GHCertificate wide = cert;
    wide.bound = Rat(2);
    CHECK(verify_gh_certificate(wide, C1, C2).pass());
}
