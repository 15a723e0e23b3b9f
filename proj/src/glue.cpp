#include "ghcat/glue.hpp"

#include <algorithm>

namespace ghcat {

namespace {

// bit-exact comparison of a full subcategory of the ambient with a side
// presentation, matched by names
Report compare_embedding(const Category& ambient, const std::vector<ObId>& side,
                         const Category& side_cat) {
    Report rep;
    Category sub = full_subcategory(ambient, side);
    rep.require(sub.objects.size() == side_cat.objects.size(), "object counts agree");
    for (const auto& o : side_cat.objects)
        rep.require(sub.find_object(o) >= 0, "object " + o + " embedded");
    rep.require(sub.gens.size() == side_cat.gens.size(), "generator counts agree");
    for (GenId g = 0; g < static_cast<GenId>(side_cat.gens.size()); ++g) {
        GenId h = sub.find_gen(side_cat.gens[g].name);
        if (h < 0) {
            rep.require(false, "generator " + side_cat.gens[g].name + " embedded");
            continue;
        }
        const Generator& a = side_cat.gens[g];
        const Generator& b = sub.gens[h];
        bool same = a.deg == b.deg && a.shift == b.shift &&
                    side_cat.objects[a.src] == sub.objects[b.src] &&
                    side_cat.objects[a.dst] == sub.objects[b.dst];
        rep.require(same, "generator data " + a.name);
    }
    // operations coincide bit-exactly under the name translation
    std::map<GenId, GenId> to_sub;
    for (GenId g = 0; g < static_cast<GenId>(side_cat.gens.size()); ++g)
        to_sub[g] = sub.find_gen(side_cat.gens[g].name);
    std::size_t matched = 0;
    for (const auto& [in, out] : side_cat.ops) {
        std::vector<GenId> tin;
        for (GenId g : in) tin.push_back(to_sub[g]);
        const Combo* o = sub.op(tin);
        Combo want;
        for (const auto& [g, s] : out) want[to_sub[g]] = s;
        bool ok = o && *o == want;
        rep.require(ok, "op over " + side_cat.gens[in.front()].name + "...",
                    ok ? "" : "embedded operation differs");
        if (ok) ++matched;
    }
    rep.require(matched == sub.ops.size() || side_cat.ops.size() == sub.ops.size(),
                "no extra operations in the embedded image");
    return rep;
}

} // namespace

Report verify_gh_certificate(const GHCertificate& cert, const Category& C1, const Category& C2) {
    Report rep;
    const Category& A = *cert.ambient;
    // disjoint partition of the ambient objects
    std::set<ObId> s1(cert.side1.begin(), cert.side1.end());
    std::set<ObId> s2(cert.side2.begin(), cert.side2.end());
    bool disjoint = true;
    for (ObId c : cert.side1)
        if (s2.count(c)) disjoint = false;
    rep.require(disjoint, "sides disjoint");
    rep.require(s1.size() + s2.size() == A.objects.size(), "sides partition the ambient objects");

    rep.merge(compare_embedding(A, cert.side1, C1), "side 1");
    rep.merge(compare_embedding(A, cert.side2, C2), "side 2");

    // Hausdorff condition, both directions
    std::set<ObId> covered1, covered2;
    for (const Matching& m : cert.matchings) {
        rep.require(s1.count(m.c1) && s2.count(m.c2), "matching endpoints on opposite sides");
        Rat b;
        if (cert.infinite_mode) {
            if (!m.infinite) {
                rep.require(false, "infinite witness present");
                continue;
            }
            Report w = verify_inf_witness(A, *m.infinite);
            rep.require(w.pass(), "infinite witness verifies", w.first_failure());
            b = hofer_bound(*m.infinite);
        } else {
            if (!m.finite) {
                rep.require(false, "finite witness present");
                continue;
            }
            Report w = verify_witness(A, *m.finite);
            rep.require(w.pass(), "witness verifies", w.first_failure());
            b = hofer_bound(*m.finite);
        }
        rep.require(b < cert.bound, "witness bound " + rat_str(b) + " < " + rat_str(cert.bound));
        covered1.insert(m.c1);
        covered2.insert(m.c2);
    }
    rep.require(covered1 == s1, "every side-1 object matched");
    rep.require(covered2 == s2, "every side-2 object matched");
    return rep;
}

GenId GlueCategory::word_gen(const GlueWord& w) const {
    auto it = index.find(w);
    return it == index.end() ? -1 : it->second;
}

bool GlueCategory::letter_is_middle(const GlueLetter& l) const {
    const Category& C = l.tag == 0 ? *c12 : *c23;
    return middle_gens.count(C.gens[l.gen].name) > 0;
}

int GlueCategory::n_level(GenId g) const {
    int n = 0;
    for (const GlueLetter& l : words[g])
        if (l.tag == 1) ++n;
    return n;
}

namespace {

std::string letter_obj_src(const GlueCategory& gl, const GlueLetter& l) {
    const Category& C = l.tag == 0 ? *gl.c12 : *gl.c23;
    return C.objects[C.gens[l.gen].src];
}
std::string letter_obj_dst(const GlueCategory& gl, const GlueLetter& l) {
    const Category& C = l.tag == 0 ? *gl.c12 : *gl.c23;
    return C.objects[C.gens[l.gen].dst];
}
int letter_deg(const GlueCategory& gl, const GlueLetter& l) {
    const Category& C = l.tag == 0 ? *gl.c12 : *gl.c23;
    return C.gens[l.gen].deg;
}

// translate a middle generator between the two categories by name
GenId middle_in(const Category& C, const Category& from, GenId g) {
    return C.find_gen(from.gens[g].name);
}

} // namespace

std::map<GlueWord, Scalar> GlueCategory::normalize(
    const GlueWord& raw, const Scalar& coeff,
    const std::function<std::size_t(std::size_t)>& pick) const {
    std::map<GlueWord, Scalar> out;
    if (coeff.is_zero()) return out;
    const Trunc lam = Trunc::lambda(cat.trunc.energy_cap);

    // find the rewriting sites: same-tag adjacencies and middle letters in
    // multi-letter words
    std::vector<std::pair<int, std::size_t>> sites; // (kind 0 = compose, 1 = contract, pos)
    for (std::size_t i = 0; i + 1 < raw.size(); ++i)
        if (raw[i].tag == raw[i + 1].tag) sites.push_back({0, i});
    if (raw.size() >= 2)
        for (std::size_t i = 0; i < raw.size(); ++i)
            if (letter_is_middle(raw[i])) sites.push_back({1, i});

    if (sites.empty()) {
        GlueWord w = raw;
        // single middle letters are normalized to the C12 copy
        if (w.size() == 1 && w[0].tag == 1 && letter_is_middle(w[0])) {
            GenId t = middle_in(*c12, *c23, w[0].gen);
            if (t < 0) fail(ErrKind::InputError, "middle generator missing from C12");
            w[0] = {0, t};
        }
        auto it = out.find(w);
        Scalar cur = it == out.end() ? Scalar::zero() : it->second;
        Scalar sum = add(cur, coeff);
        if (!sum.is_zero()) out[w] = sum;
        return out;
    }

    auto [kind, i] = sites[pick ? pick(sites.size()) % sites.size() : 0];
    // the pair to compose: for a contraction, fold the middle letter into its
    // left neighbor (right neighbor at the word start), inside that
    // neighbor's category
    std::size_t lo;
    if (kind == 0) {
        lo = i;
    } else {
        lo = i > 0 ? i - 1 : i;
    }
    const GlueLetter& L = raw[lo];
    const GlueLetter& R = raw[lo + 1];
    int tag = kind == 0 ? L.tag : (letter_is_middle(raw[i]) && i > 0 ? L.tag : R.tag);
    const Category& C = tag == 0 ? *c12 : *c23;
    auto in_cat = [&](const GlueLetter& l) -> GenId {
        if (l.tag == tag) return l.gen;
        GenId t = middle_in(C, l.tag == 0 ? *c12 : *c23, l.gen);
        if (t < 0) fail(ErrKind::InputError, "letter not translatable to the middle");
        return t;
    };
    Combo prod = C.circ(Combo{{in_cat(L), Scalar::one()}}, Combo{{in_cat(R), Scalar::one()}});
    for (const auto& [g, s] : prod) {
        GlueWord next;
        next.insert(next.end(), raw.begin(), raw.begin() + lo);
        next.push_back({tag, g});
        next.insert(next.end(), raw.begin() + lo + 2, raw.end());
        for (auto& [w2, s2] : normalize(next, mul(coeff, s, lam), pick)) {
            auto it = out.find(w2);
            Scalar cur = it == out.end() ? Scalar::zero() : it->second;
            Scalar sum = add(cur, s2);
            if (sum.is_zero())
                out.erase(w2);
            else
                out[w2] = sum;
        }
    }
    return out;
}

Combo GlueCategory::embed(int tag, const Combo& x) const {
    Combo out;
    const Trunc lam = Trunc::lambda(cat.trunc.energy_cap);
    for (const auto& [g, s] : x) {
        for (auto& [w, s2] : normalize(GlueWord{{tag, g}}, s)) {
            GenId h = word_gen(w);
            if (h < 0) fail(ErrKind::InputError, "embedded word missing");
            out = combo_add(out, Combo{{h, s2}});
        }
    }
    return out;
}

GlueCategory build_glue_category(const Category& C12, const Category& C23,
                                 const std::vector<std::string>& middle_objects,
                                 const std::vector<std::string>& middle_gens, int len_cap) {
    if (!C12.is_dg() || !C23.is_dg()) fail(ErrKind::InputError, "glue needs DG inputs");
    GlueCategory gl;
    gl.c12 = &C12;
    gl.c23 = &C23;
    gl.len_cap = len_cap;
    gl.middle_objects.insert(middle_objects.begin(), middle_objects.end());
    gl.middle_gens.insert(middle_gens.begin(), middle_gens.end());
    gl.cat.trunc = C12.trunc;
    gl.cat.grading_mod = C12.grading_mod;
    gl.cat.arity_cap = 3;
    gl.cat.word_cap = len_cap;

    // middle data must agree bit-exactly between the two inputs
    for (const std::string& nm : middle_gens) {
        GenId a = C12.find_gen(nm), b = C23.find_gen(nm);
        if (a < 0 || b < 0) fail(ErrKind::InputError, "middle generator '" + nm + "' missing");
        if (C12.gens[a].deg != C23.gens[b].deg)
            fail(ErrKind::InputError, "middle generator '" + nm + "' degree mismatch");
    }

    // objects: C12's plus C23's new ones, identified along the middle by name
    std::map<std::string, ObId> obj_of;
    for (const auto& o : C12.objects) obj_of[o] = gl.cat.add_object(o);
    for (const auto& o : C23.objects) {
        if (obj_of.count(o)) {
            if (!gl.middle_objects.count(o))
                fail(ErrKind::InputError, "shared object '" + o + "' not declared middle");
            continue;
        }
        obj_of[o] = gl.cat.add_object(o);
    }

    // enumerate canonical words: single letters (middle ones only in the C12
    // copy), and alternating complement words
    auto push_word = [&](const GlueWord& w) {
        if (gl.index.count(w)) return;
        gl.index[w] = static_cast<GenId>(gl.words.size());
        gl.words.push_back(w);
    };
    for (GenId g = 0; g < static_cast<GenId>(C12.gens.size()); ++g)
        push_word(GlueWord{{0, g}});
    for (GenId g = 0; g < static_cast<GenId>(C23.gens.size()); ++g)
        if (!gl.middle_gens.count(C23.gens[g].name)) push_word(GlueWord{{1, g}});
    std::function<void(GlueWord&)> grow = [&](GlueWord& w) {
        if (static_cast<int>(w.size()) >= len_cap) return;
        std::string at = letter_obj_dst(gl, w.back());
        int want_tag = 1 - w.back().tag;
        const Category& C = want_tag == 0 ? C12 : C23;
        for (GenId g = 0; g < static_cast<GenId>(C.gens.size()); ++g) {
            if (gl.middle_gens.count(C.gens[g].name)) continue;
            if (C.objects[C.gens[g].src] != at) continue;
            w.push_back({want_tag, g});
            // every letter of a multi-letter canonical word is a complement
            // letter, the first included
            if (!gl.letter_is_middle(w.front())) push_word(w);
            grow(w);
            w.pop_back();
        }
    };
    for (GenId g = 0; g < static_cast<GenId>(C12.gens.size()); ++g) {
        if (gl.middle_gens.count(C12.gens[g].name)) continue;
        GlueWord w{{0, g}};
        grow(w);
    }
    for (GenId g = 0; g < static_cast<GenId>(C23.gens.size()); ++g) {
        if (gl.middle_gens.count(C23.gens[g].name)) continue;
        GlueWord w{{1, g}};
        grow(w);
    }
    std::sort(gl.words.begin(), gl.words.end());
    gl.index.clear();
    for (std::size_t i = 0; i < gl.words.size(); ++i) gl.index[gl.words[i]] = static_cast<GenId>(i);

    for (const GlueWord& w : gl.words) {
        std::string name;
        int deg = 0;
        for (const GlueLetter& l : w) {
            const Category& C = l.tag == 0 ? C12 : C23;
            name += (name.empty() ? "" : "&") + C.gens[l.gen].name;
            deg += letter_deg(gl, l);
        }
        ObId src = obj_of.at(letter_obj_src(gl, w.front()));
        ObId dst = obj_of.at(letter_obj_dst(gl, w.back()));
        gl.cat.add_gen(name, src, dst, deg);
        gl.cat.word_len.push_back(static_cast<int>(w.size()));
    }
    // units: the middle ones in the C12 copy
    for (const auto& [c, e] : C12.units) {
        GenId g = gl.word_gen(GlueWord{{0, e}});
        if (g >= 0) gl.cat.units[obj_of.at(C12.objects[c])] = g;
    }
    for (const auto& [c, e] : C23.units) {
        std::string nm = C23.objects[c];
        if (gl.middle_objects.count(nm)) continue;
        GenId t = gl.word_gen(GlueWord{{1, e}});
        if (t < 0) {
            // a middle unit name in the C23 copy normalizes to C12
            GenId tr = middle_in(C12, C23, e);
            if (tr >= 0) t = gl.word_gen(GlueWord{{0, tr}});
        }
        if (t >= 0) gl.cat.units[obj_of.at(nm)] = t;
    }

    const Trunc lam = Trunc::lambda(gl.cat.trunc.energy_cap);
    // m_1: letterwise Leibniz with the circ signs, then normalization
    for (GenId g = 0; g < static_cast<GenId>(gl.words.size()); ++g) {
        const GlueWord& w = gl.words[g];
        Combo d;
        int par = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const Category& C = w[i].tag == 0 ? C12 : C23;
            const Combo* d1 = C.op({w[i].gen});
            if (d1) {
                for (const auto& [h, s] : *d1) {
                    GlueWord nw = w;
                    nw[i] = {w[i].tag, h};
                    Scalar c = par ? neg(s) : s;
                    for (auto& [cw, s2] : gl.normalize(nw, c)) {
                        GenId o = gl.word_gen(cw);
                        if (o < 0) continue;
                        d = combo_add(d, Combo{{o, s2}});
                    }
                }
            }
            par ^= letter_deg(gl, w[i]) & 1;
        }
        if (!combo_is_zero(d)) gl.cat.set_op({g}, d);
    }
    // m_2(x,y) = (-1)^{deg x} (concatenate then contract)
    for (GenId a = 0; a < static_cast<GenId>(gl.words.size()); ++a)
        for (GenId b = 0; b < static_cast<GenId>(gl.words.size()); ++b) {
            const GlueWord& wa = gl.words[a];
            const GlueWord& wb = gl.words[b];
            if (letter_obj_dst(gl, wa.back()) != letter_obj_src(gl, wb.front())) continue;
            if (static_cast<int>(wa.size() + wb.size()) > len_cap + 1) continue;
            GlueWord raw = wa;
            raw.insert(raw.end(), wb.begin(), wb.end());
            int sign = gl.cat.gens[a].deg & 1;
            Combo out;
            bool capped = false;
            for (auto& [cw, s] : gl.normalize(raw, sign ? neg(Scalar::one()) : Scalar::one())) {
                GenId o = gl.word_gen(cw);
                if (o < 0) {
                    capped = true;
                    continue;
                }
                out = combo_add(out, Combo{{o, s}});
            }
            if (capped && static_cast<int>(wa.size() + wb.size()) > len_cap) continue;
            if (!combo_is_zero(out)) gl.cat.set_op({a, b}, out);
        }
    return gl;
}

Combo glue_g_hat(const GlueCategory& gl, const GlueHomotopy& h, GenId word) {
    const GlueWord& w = gl.words[word];
    int m = gl.n_level(word);
    if (m == 0) return {};
    const Category& C23 = *gl.c23;
    const Trunc lam = Trunc::lambda(gl.cat.trunc.energy_cap);
    Combo acc;
    int par = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i].tag == 1) {
            const Generator& gen = C23.gens[w[i].gen];
            auto it = h.sub_g.find({gen.src, gen.dst});
            if (it != h.sub_g.end()) {
                auto jt = it->second.find(w[i].gen);
                if (jt != it->second.end()) {
                    for (const auto& [rep, s] : jt->second) {
                        GlueWord nw = w;
                        nw[i] = {1, rep};
                        Scalar c = par ? neg(s) : s;
                        for (auto& [cw, s2] : gl.normalize(nw, c)) {
                            GenId o = gl.word_gen(cw);
                            if (o < 0) continue;
                            acc = combo_add(acc, Combo{{o, s2}});
                        }
                    }
                }
            }
        }
        par ^= letter_deg(gl, w[i]) & 1;
    }
    return combo_scale(acc, scale(Scalar::one(), Rat(1, m)), lam);
}

Report verify_glue_homotopy(const GlueCategory& gl, const GlueHomotopy& h, ObId a, ObId b) {
    Report rep;
    const Category& C23 = *gl.c23;
    const Trunc lam = Trunc::lambda(gl.cat.trunc.energy_cap);
    // per-pair conditions on the sub homotopies
    for (const auto& [pair, gmap] : h.sub_g) {
        for (const auto& [g, img] : gmap) {
            // G = 0 on the middle part
            if (gl.middle_gens.count(C23.gens[g].name))
                rep.require(combo_is_zero(img), "G vanishes on the middle");
            // d G + G d - id lands in the middle
            Combo dg = C23.d1(img);
            Combo gd;
            if (const Combo* d1 = C23.op({g}))
                for (const auto& [hh, s] : *d1) {
                    auto jt = gmap.find(hh);
                    if (jt != gmap.end()) gd = combo_add(gd, combo_scale(jt->second, s, lam));
                }
            Combo defect = combo_sub(combo_add(dg, gd), Combo{{g, Scalar::one()}});
            bool mid = true;
            for (const auto& [hh, s] : combo_trunc(defect, lam))
                if (!gl.middle_gens.count(C23.gens[hh].name)) mid = false;
            rep.require(mid, "dG + Gd - id lands in the middle on " + C23.gens[g].name);
        }
    }
    // N-level statements on the glue words between a and b
    for (GenId g = 0; g < static_cast<GenId>(gl.words.size()); ++g) {
        if (gl.cat.gens[g].src != a || gl.cat.gens[g].dst != b) continue;
        int m = gl.n_level(g);
        if (m == 0) {
            rep.require(combo_is_zero(glue_g_hat(gl, h, g)), "G-hat vanishes on N_0");
            continue;
        }
        // (G-hat d + d G-hat - id)(w) in N_{m-1}
        Combo img = gl.cat.d1(glue_g_hat(gl, h, g));
        if (const Combo* d1 = gl.cat.op(std::vector<GenId>{g}))
            for (const auto& [hh, s] : *d1)
                img = combo_add(img, combo_scale(glue_g_hat(gl, h, hh), s, lam));
        img = combo_sub(img, Combo{{g, Scalar::one()}});
        bool lower = true;
        std::string bad;
        for (const auto& [hh, s] : combo_trunc(img, lam))
            if (gl.n_level(hh) > m - 1 && !s.is_zero()) {
                lower = false;
                bad = gl.cat.gens[hh].name;
            }
        rep.require(lower, "G-hat defect of " + gl.cat.gens[g].name + " lands in N_" +
                               std::to_string(m - 1),
                    bad);
    }
    return rep;
}

TriangleResult gh_triangle_certificate(const GHCertificate& cert12, const GHCertificate& cert23,
                                       const Category& C1, const Category& C2, const Category& C3,
                                       const std::vector<std::string>& middle_gens, int len_cap) {
    Report r12 = verify_gh_certificate(cert12, C1, C2);
    if (!r12.pass()) fail(ErrKind::InputError, "certificate 12 fails: " + r12.first_failure());
    Report r23 = verify_gh_certificate(cert23, C2, C3);
    if (!r23.pass()) fail(ErrKind::InputError, "certificate 23 fails: " + r23.first_failure());

    std::vector<std::string> middle_objects;
    for (ObId c : cert12.side2) middle_objects.push_back(cert12.ambient->objects[c]);

    TriangleResult out;
    out.ambient = build_glue_category(*cert12.ambient, *cert23.ambient, middle_objects,
                                      middle_gens, len_cap);
    GlueCategory& gl = out.ambient;
    GHCertificate& cert = out.cert;
    cert.infinite_mode = cert12.infinite_mode;
    cert.bound = cert12.bound + cert23.bound;
    std::vector<ObId> keep;
    for (ObId c : cert12.side1) keep.push_back(gl.cat.find_object(cert12.ambient->objects[c]));
    for (ObId c : cert23.side2) keep.push_back(gl.cat.find_object(cert23.ambient->objects[c]));

    // compose matchings through the shared middle objects (inside the full
    // glue category, where the middle objects still exist)
    std::vector<Matching> glue_matchings;
    for (const Matching& m12 : cert12.matchings) {
        std::string mid = cert12.ambient->objects[m12.c2];
        const Matching* m23 = nullptr;
        for (const Matching& m : cert23.matchings)
            if (cert23.ambient->objects[m.c1] == mid) m23 = &m;
        if (!m23) fail(ErrKind::InputError, "no continuation through '" + mid + "'");
        Matching m;
        m.c1 = gl.cat.find_object(cert12.ambient->objects[m12.c1]);
        m.c2 = gl.cat.find_object(cert23.ambient->objects[m23->c2]);
        if (cert.infinite_mode) {
            InfWitness a = *m12.infinite, b = *m23->infinite;
            // embed into the glue category
            auto embal = [&](InfWitness& w, int tag, ObId c1n, ObId c2n) {
                InfWitness o = w;
                o.c1 = c1n;
                o.c2 = c2n;
                for (auto* fam : {&o.t12, &o.t21, &o.s1, &o.s2})
                    for (Combo& x : *fam) x = gl.embed(tag, x);
                return o;
            };
            InfWitness ga = embal(a, 0, m.c1, gl.cat.find_object(mid));
            InfWitness gb = embal(b, 1, gl.cat.find_object(mid), m.c2);
            m.infinite = compose_inf_witnesses(gl.cat, ga, gb);
        } else {
            Witness a = *m12.finite, b = *m23->finite;
            Witness ga;
            ga.c1 = m.c1;
            ga.c2 = gl.cat.find_object(mid);
            ga.t12 = gl.embed(0, a.t12);
            ga.t21 = gl.embed(0, a.t21);
            ga.s1 = gl.embed(0, a.s1);
            ga.s2 = gl.embed(0, a.s2);
            ga.eps1 = a.eps1;
            ga.eps2 = a.eps2;
            Witness gb;
            gb.c1 = ga.c2;
            gb.c2 = m.c2;
            gb.t12 = gl.embed(1, b.t12);
            gb.t21 = gl.embed(1, b.t21);
            gb.s1 = gl.embed(1, b.s1);
            gb.s2 = gl.embed(1, b.s2);
            gb.eps1 = b.eps1;
            gb.eps2 = b.eps2;
            m.finite = compose_witnesses(gl.cat, ga, gb);
        }
        glue_matchings.push_back(std::move(m));
    }

    // the certificate ambient is the full subcategory on side1 u side3 (the
    // composed witnesses only involve words between those objects)
    out.restricted = full_subcategory(gl.cat, keep);
    cert.ambient = &out.restricted;
    auto reindex = [&](const Combo& x) {
        Combo o;
        for (const auto& [g, sc] : x) {
            GenId h = out.restricted.find_gen(gl.cat.gens[g].name);
            if (h < 0) fail(ErrKind::InputError, "witness entry outside the restricted ambient");
            o[h] = sc;
        }
        return o;
    };
    for (Matching& m : glue_matchings) {
        Matching r;
        r.c1 = out.restricted.find_object(gl.cat.objects[m.c1]);
        r.c2 = out.restricted.find_object(gl.cat.objects[m.c2]);
        if (m.finite) {
            Witness w = *m.finite;
            w.c1 = r.c1;
            w.c2 = r.c2;
            w.t12 = reindex(w.t12);
            w.t21 = reindex(w.t21);
            w.s1 = reindex(w.s1);
            w.s2 = reindex(w.s2);
            r.finite = std::move(w);
        }
        if (m.infinite) {
            InfWitness w = *m.infinite;
            w.c1 = r.c1;
            w.c2 = r.c2;
            for (auto* fam : {&w.t12, &w.t21, &w.s1, &w.s2})
                for (Combo& x : *fam) x = reindex(x);
            r.infinite = std::move(w);
        }
        cert.matchings.push_back(std::move(r));
    }
    for (ObId c = 0; c < static_cast<ObId>(out.restricted.objects.size()); ++c) {
        bool in1 = false;
        for (ObId k : cert12.side1)
            if (cert12.ambient->objects[k] == out.restricted.objects[c]) in1 = true;
        (in1 ? cert.side1 : cert.side2).push_back(c);
    }
    return out;
}

} // namespace ghcat
