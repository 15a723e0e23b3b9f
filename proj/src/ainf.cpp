#include "ghcat/ainf.hpp"

#include <algorithm>
#include <set>

namespace ghcat {

Combo combo_add(const Combo& a, const Combo& b) {
    Combo r = a;
    for (const auto& [g, s] : b) {
        Scalar sum = add(r.count(g) ? r[g] : Scalar::zero(), s);
        if (sum.is_zero())
            r.erase(g);
        else
            r[g] = sum;
    }
    return r;
}

Combo combo_sub(const Combo& a, const Combo& b) { return combo_add(a, combo_neg(b)); }

Combo combo_neg(const Combo& a) {
    Combo r;
    for (const auto& [g, s] : a) r[g] = neg(s);
    return r;
}

Combo combo_scale(const Combo& a, const Scalar& c, const Trunc& t) {
    Combo r;
    for (const auto& [g, s] : a) {
        Scalar p = mul(s, c, t);
        if (!p.is_zero()) r[g] = p;
    }
    return r;
}

Combo combo_trunc(const Combo& a, const Trunc& t) {
    Combo r;
    for (const auto& [g, s] : a) {
        Scalar p = truncate(s, t);
        if (!p.is_zero()) r[g] = p;
    }
    return r;
}

bool combo_is_zero(const Combo& a) {
    for (const auto& [g, s] : a)
        if (!s.is_zero()) return false;
    return true;
}

std::string combo_str(const Combo& a, const Category& C) {
    if (a.empty()) return "0";
    std::string out;
    for (const auto& [g, s] : a) {
        if (!out.empty()) out += " + ";
        out += "(" + s.str() + ")*" + C.gens[g].name;
    }
    return out;
}

ObId Category::add_object(const std::string& name) {
    objects.push_back(name);
    return static_cast<ObId>(objects.size() - 1);
}

GenId Category::add_gen(const std::string& name, ObId src, ObId dst, int deg, Rat shift) {
    if (find_gen(name) >= 0) fail(ErrKind::InputError, "duplicate generator '" + name + "'");
    gens.push_back({name, src, dst, norm_deg(deg), std::move(shift)});
    return static_cast<GenId>(gens.size() - 1);
}

void Category::set_op(std::vector<GenId> in, Combo out) {
    if (in.empty()) fail(ErrKind::InputError, "m_0 is absent by convention");
    if (!composable(in)) fail(ErrKind::InputError, "non-composable op key");
    for (const auto& [g, s] : out)
        if (gens[g].src != gens[in.front()].src || gens[g].dst != gens[in.back()].dst)
            fail(ErrKind::InputError, "op output endpoints disagree with input chain");
    if (combo_is_zero(out))
        ops.erase(in);
    else
        ops[std::move(in)] = std::move(out);
}

void Category::add_op(const std::vector<GenId>& in, GenId out, const Scalar& coeff) {
    Combo cur = ops.count(in) ? ops[in] : Combo{};
    cur = combo_add(cur, Combo{{out, coeff}});
    set_op(in, cur);
}

GenId Category::find_gen(const std::string& name) const {
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].name == name) return static_cast<GenId>(i);
    return -1;
}

ObId Category::find_object(const std::string& name) const {
    for (std::size_t i = 0; i < objects.size(); ++i)
        if (objects[i] == name) return static_cast<ObId>(i);
    return -1;
}

const Combo* Category::op(const std::vector<GenId>& in) const {
    auto it = ops.find(in);
    return it == ops.end() ? nullptr : &it->second;
}

int Category::max_arity() const {
    std::size_t m = 0;
    for (const auto& [in, out] : ops) m = std::max(m, in.size());
    return static_cast<int>(m);
}

bool Category::composable(const std::vector<GenId>& in) const {
    for (std::size_t i = 0; i + 1 < in.size(); ++i)
        if (gens[in[i]].dst != gens[in[i + 1]].src) return false;
    return !in.empty();
}

GenId Category::unit_of(ObId c) const {
    auto it = units.find(c);
    if (it == units.end()) fail(ErrKind::InputError, "object '" + objects[c] + "' has no unit");
    return it->second;
}

Combo Category::eval_gens(const std::vector<GenId>& args) const {
    const Combo* o = op(args);
    return o ? *o : Combo{};
}

Combo Category::eval(const std::vector<Combo>& args) const {
    // multilinear expansion over the supports
    Combo acc;
    std::vector<GenId> key(args.size());
    Scalar coeff;
    std::function<void(std::size_t, const Scalar&)> rec = [&](std::size_t i, const Scalar& c) {
        if (i == args.size()) {
            const Combo* o = op(key);
            if (o) acc = combo_add(acc, combo_scale(*o, c, Trunc::lambda(trunc.energy_cap)));
            return;
        }
        for (const auto& [g, s] : args[i]) {
            key[i] = g;
            rec(i + 1, mul(c, s, Trunc::lambda(trunc.energy_cap)));
        }
    };
    rec(0, Scalar::one());
    return acc;
}

Combo Category::circ(const Combo& x, const Combo& y) const {
    Combo acc;
    for (const auto& [g, s] : x) {
        int sign = gens[g].deg % 2 == 0 ? 1 : -1;
        Combo m = eval({Combo{{g, s}}, y});
        acc = combo_add(acc, sign > 0 ? m : combo_neg(m));
    }
    return acc;
}

Combo Category::d1(const Combo& x) const { return eval({x}); }

void for_each_tuple(const Category& C, int arity,
                    const std::function<void(const std::vector<GenId>&)>& fn) {
    std::vector<GenId> tup;
    std::function<void(int)> rec = [&](int letters_used) {
        if (static_cast<int>(tup.size()) == arity) {
            fn(tup);
            return;
        }
        for (GenId g = 0; g < static_cast<GenId>(C.gens.size()); ++g) {
            if (!tup.empty() && C.gens[tup.back()].dst != C.gens[g].src) continue;
            int lu = letters_used + C.letters(g);
            if (C.word_cap > 0 && lu > C.word_cap) continue;
            tup.push_back(g);
            rec(lu);
            tup.pop_back();
        }
    };
    rec(0);
}

Report verify_ainf(const Category& C) {
    Report rep;
    if (C.ops.count(std::vector<GenId>{})) rep.require(false, "m_0 present", "curvature must be zero");
    // degree and valuation of the stored ops
    for (const auto& [in, out] : C.ops) {
        int dp = 1; // m_k raises shifted degree by +1
        for (GenId g : in) dp += C.gens[g].deg - 1;
        for (const auto& [g, s] : out) {
            bool deg_ok = C.norm_deg(C.gens[g].deg - 1) == C.norm_deg(dp);
            rep.require(deg_ok, "op degree", deg_ok ? "" : "m on tuple has wrong output degree");
            bool val_ok = valuation_at_least(s, Rat(0));
            rep.require(val_ok, "op valuation", val_ok ? "" : "coefficient with negative valuation");
        }
    }
    // A-infinity relation on every composable tuple:
    //   sum_{i,j} (-1)^{deg' x_1 + .. + deg' x_i} m(x_1,..,x_i, m_j(x_{i+1},..), .., x_k) = 0
    int maxA = C.max_arity();
    int relevant = std::min(C.arity_cap, maxA > 0 ? 2 * maxA - 1 : 0);
    for (int k = 1; k <= relevant; ++k) {
        for_each_tuple(C, k, [&](const std::vector<GenId>& x) {
            Combo residual;
            for (int j = 1; j <= k; ++j) {
                for (int i = 0; i + j <= k; ++i) {
                    std::vector<GenId> inner(x.begin() + i, x.begin() + i + j);
                    const Combo* m_in = C.op(inner);
                    if (!m_in) continue;
                    int par = 0;
                    for (int r = 0; r < i; ++r) par ^= C.dprime_par(x[r]);
                    for (const auto& [g, s] : *m_in) {
                        std::vector<GenId> outer;
                        outer.insert(outer.end(), x.begin(), x.begin() + i);
                        outer.push_back(g);
                        outer.insert(outer.end(), x.begin() + i + j, x.end());
                        const Combo* m_out = C.op(outer);
                        if (!m_out) continue;
                        Combo term = combo_scale(*m_out, s, Trunc::lambda(C.trunc.energy_cap));
                        residual = combo_add(residual, par ? combo_neg(term) : term);
                    }
                }
            }
            residual = combo_trunc(residual, Trunc::lambda(C.trunc.energy_cap));
            if (!combo_is_zero(residual)) {
                std::string names;
                for (GenId g : x) names += (names.empty() ? "" : ",") + C.gens[g].name;
                rep.require(false, "relation(" + names + ")", combo_str(residual, C));
            }
        });
    }
    rep.note("relations", "checked up to arity " + std::to_string(relevant) + " mod T^" +
                              rat_str(C.trunc.energy_cap));
    return rep;
}

Report verify_strict_unit(const Category& C) {
    Report rep;
    if (C.units.empty()) {
        rep.require(false, "units declared", "no units");
        return rep;
    }
    for (const auto& [c, e] : C.units) {
        const Generator& ge = C.gens[e];
        rep.require(ge.src == c && ge.dst == c, "unit endpoints " + ge.name);
        rep.require(C.norm_deg(ge.deg) == C.norm_deg(0), "unit degree " + ge.name);
        rep.require(ge.shift == 0, "unit valuation " + ge.name,
                    ge.shift == 0 ? "" : "v(e) != 0");
        // m_1(e) = 0
        bool d0 = combo_is_zero(C.eval_gens({e}));
        rep.require(d0, "m_1(" + ge.name + ") = 0");
        // m_2(e,y) = y and (-1)^{deg x} m_2(x,e) = x
        for (GenId y = 0; y < static_cast<GenId>(C.gens.size()); ++y) {
            if (C.gens[y].src == c) {
                Combo lhs = C.eval_gens({e, y});
                bool ok = lhs == Combo{{y, Scalar::one()}};
                rep.require(ok, "m_2(" + ge.name + "," + C.gens[y].name + ")",
                            ok ? "" : combo_str(lhs, C));
            }
            if (C.gens[y].dst == c) {
                Combo lhs = C.eval_gens({y, e});
                int sign = C.gens[y].deg % 2 == 0 ? 1 : -1;
                Combo want{{y, sign > 0 ? Scalar::one() : neg(Scalar::one())}};
                bool ok = lhs == want;
                rep.require(ok, "m_2(" + C.gens[y].name + "," + ge.name + ")",
                            ok ? "" : combo_str(lhs, C));
            }
        }
    }
    // m_k(..,e,..) = 0 for k >= 3: stored ops suffice, absent keys are zero
    for (const auto& [in, out] : C.ops) {
        if (in.size() < 3) continue;
        bool has_unit = false;
        for (GenId g : in)
            for (const auto& [c, e] : C.units)
                if (g == e) has_unit = true;
        if (has_unit)
            rep.require(combo_is_zero(out), "m_k with unit, k >= 3", "nonzero higher op on a unit");
    }
    return rep;
}

bool verify_gapped(const Category& C, const std::vector<Rat>& gap) {
    // achievable sums of the generating set below the cap, by saturation
    std::set<Rat> monoid{Rat(0)};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const Rat& g : gap) {
            if (g <= 0) fail(ErrKind::InputError, "gap generators must be positive");
            std::vector<Rat> added;
            for (const Rat& m : monoid) {
                Rat s = m + g;
                if (s < C.trunc.energy_cap && !monoid.count(s)) added.push_back(s);
            }
            for (Rat& a : added) monoid.insert(std::move(a)), grew = true;
        }
    }
    for (const auto& [in, out] : C.ops)
        for (const auto& [g, s] : out)
            for (const auto& [e, c] : s.terms())
                if (!monoid.count(e)) return false;
    return true;
}

WordCombo word_combo_add(const WordCombo& a, const WordCombo& b) {
    WordCombo r = a;
    for (const auto& [w, s] : b) {
        Scalar sum = add(r.count(w) ? r[w] : Scalar::zero(), s);
        if (sum.is_zero())
            r.erase(w);
        else
            r[w] = sum;
    }
    return r;
}

WordCombo word_combo_sub(const WordCombo& a, const WordCombo& b) {
    WordCombo nb;
    for (const auto& [w, s] : b) nb[w] = neg(s);
    return word_combo_add(a, nb);
}

bool word_combo_is_zero(const WordCombo& a) {
    for (const auto& [w, s] : a)
        if (!s.is_zero()) return false;
    return true;
}

std::vector<std::pair<Word, Word>> bar_coproduct(const Word& w) {
    std::vector<std::pair<Word, Word>> out;
    for (std::size_t k = 1; k < w.size(); ++k)
        out.push_back({Word(w.begin(), w.begin() + k), Word(w.begin() + k, w.end())});
    return out;
}

WordCombo bar_coderivation(const Category& C, const Word& w) {
    WordCombo out;
    int k = static_cast<int>(w.size());
    for (int j = 1; j <= k; ++j)
        for (int i = 0; i + j <= k; ++i) {
            std::vector<GenId> inner(w.begin() + i, w.begin() + i + j);
            const Combo* m = C.op(inner);
            if (!m) continue;
            int par = 0;
            for (int r = 0; r < i; ++r) par ^= C.dprime_par(w[r]);
            for (const auto& [g, s] : *m) {
                Word nw;
                nw.insert(nw.end(), w.begin(), w.begin() + i);
                nw.push_back(g);
                nw.insert(nw.end(), w.begin() + i + j, w.end());
                WordCombo term{{nw, par ? neg(s) : s}};
                out = word_combo_add(out, term);
            }
        }
    return out;
}

const Combo* Functor::comp(const std::vector<GenId>& in) const {
    auto it = comps.find(in);
    return it == comps.end() ? nullptr : &it->second;
}

Combo Functor::apply1(const Combo& x) const {
    Combo out;
    for (const auto& [g, s] : x) {
        const Combo* c = comp({g});
        if (!c) continue;
        out = combo_add(out, combo_scale(*c, s, Trunc::lambda(dst->trunc.energy_cap)));
    }
    return out;
}

Combo Functor::eval(const std::vector<Combo>& args) const {
    Combo acc;
    const Trunc lam = Trunc::lambda(dst->trunc.energy_cap);
    std::vector<GenId> key(args.size());
    std::function<void(std::size_t, const Scalar&)> rec = [&](std::size_t i, const Scalar& c) {
        if (i == args.size()) {
            const Combo* o = comp(key);
            if (o) acc = combo_add(acc, combo_scale(*o, c, lam));
            return;
        }
        for (const auto& [g, s] : args[i]) {
            key[i] = g;
            rec(i + 1, mul(c, s, lam));
        }
    };
    rec(0, Scalar::one());
    return acc;
}

WordCombo Functor::hat(const Word& w) const {
    // sum over decompositions into consecutive blocks, Phi on each block;
    // dynamic programming over prefixes
    std::vector<WordCombo> pref(w.size() + 1);
    pref[0] = WordCombo{{Word{}, Scalar::one()}};
    const Trunc lam = Trunc::lambda(dst->trunc.energy_cap);
    for (std::size_t i = 1; i <= w.size(); ++i) {
        WordCombo cur;
        for (std::size_t j = 0; j < i; ++j) {
            std::vector<GenId> block(w.begin() + j, w.begin() + i);
            const Combo* c = comp(block);
            if (!c) continue;
            for (const auto& [pw, ps] : pref[j]) {
                for (const auto& [g, s] : *c) {
                    Word nw = pw;
                    nw.push_back(g);
                    Scalar sc = mul(ps, s, lam);
                    if (sc.is_zero()) continue;
                    WordCombo term{{nw, sc}};
                    cur = word_combo_add(cur, term);
                }
            }
        }
        pref[i] = std::move(cur);
    }
    return pref[w.size()];
}

Category full_subcategory(const Category& C, const std::vector<ObId>& obs) {
    Category S;
    S.trunc = C.trunc;
    S.grading_mod = C.grading_mod;
    S.arity_cap = C.arity_cap;
    S.gap_monoid = C.gap_monoid;
    std::map<ObId, ObId> omap;
    for (ObId c : obs) omap[c] = S.add_object(C.objects[c]);
    std::map<GenId, GenId> gmap;
    for (GenId g = 0; g < static_cast<GenId>(C.gens.size()); ++g) {
        const Generator& gen = C.gens[g];
        if (!omap.count(gen.src) || !omap.count(gen.dst)) continue;
        gmap[g] = S.add_gen(gen.name, omap[gen.src], omap[gen.dst], gen.deg, gen.shift);
    }
    for (const auto& [in, out] : C.ops) {
        std::vector<GenId> nin;
        bool ok = true;
        for (GenId g : in) {
            if (!gmap.count(g)) ok = false;
            else nin.push_back(gmap[g]);
        }
        if (!ok) continue;
        Combo nout;
        for (const auto& [g, sc] : out) {
            if (!gmap.count(g)) fail(ErrKind::InputError, "subcategory not full on op outputs");
            nout[gmap[g]] = sc;
        }
        S.set_op(nin, nout);
    }
    for (const auto& [c, e] : C.units)
        if (omap.count(c)) S.units[omap[c]] = gmap.at(e);
    return S;
}

Functor identity_functor(const Category& C) {
    Functor f;
    f.src = f.dst = &C;
    f.loss = Rat(0);
    for (ObId c = 0; c < static_cast<ObId>(C.objects.size()); ++c) f.ob[c] = c;
    for (GenId g = 0; g < static_cast<GenId>(C.gens.size()); ++g)
        f.comps[{g}] = Combo{{g, Scalar::one()}};
    return f;
}

Functor compose_functors(const Functor& f2, const Functor& f1) {
    if (f1.dst != f2.src) fail(ErrKind::InputError, "functor composition mismatch");
    Functor g;
    g.src = f1.src;
    g.dst = f2.dst;
    g.loss = f1.loss + f2.loss;
    for (const auto& [a, b] : f1.ob) {
        auto it = f2.ob.find(b);
        if (it == f2.ob.end()) fail(ErrKind::InputError, "object map not composable");
        g.ob[a] = it->second;
    }
    const Trunc lam = Trunc::lambda(f2.dst->trunc.energy_cap);
    int cap = f1.src->arity_cap;
    for (int k = 1; k <= cap; ++k) {
        for_each_tuple(*f1.src, k, [&](const std::vector<GenId>& x) {
            // (f2 o f1)_k = sum over block decompositions: f2_r(f1(block_1),..,f1(block_r))
            WordCombo mid = f1.hat(x);
            Combo out;
            for (const auto& [w, s] : mid) {
                const Combo* c = f2.comp(w);
                if (!c) continue;
                out = combo_add(out, combo_scale(*c, s, lam));
            }
            if (!combo_is_zero(out)) g.comps[x] = out;
        });
    }
    return g;
}

Report verify_functor(const Functor& f) {
    Report rep;
    const Category& S = *f.src;
    const Category& T = *f.dst;
    // endpoints and degree of components
    for (const auto& [in, out] : f.comps) {
        if (!S.composable(in)) {
            rep.require(false, "component key composable", "non-composable tuple");
            continue;
        }
        auto a = f.ob.find(S.gens[in.front()].src);
        auto b = f.ob.find(S.gens[in.back()].dst);
        bool obok = a != f.ob.end() && b != f.ob.end();
        rep.require(obok, "object map defined");
        int dp = 0; // Phi_k has shifted degree 0
        for (GenId g : in) dp += S.gens[g].deg - 1;
        for (const auto& [g, s] : out) {
            if (obok)
                rep.require(T.gens[g].src == a->second && T.gens[g].dst == b->second,
                            "component endpoints");
            bool deg_ok = T.norm_deg(T.gens[g].deg - 1) == T.norm_deg(dp);
            rep.require(deg_ok, "component degree", deg_ok ? "" : "Phi_k not of shifted degree 0");
            // loss bound of Definition (4): drops filtration by at most k*loss
            Rat in_shift(0);
            for (GenId x : in) in_shift += S.gens[x].shift;
            Rat bound = in_shift - Rat(static_cast<long>(in.size())) * f.loss - T.gens[g].shift;
            bool loss_ok = valuation_at_least(s, bound);
            rep.require(loss_ok, "loss bound",
                        loss_ok ? "" : "component drops filtration by more than k*rho");
        }
    }
    // intertwining with the coderivations on bar words up to the arity cap
    const Trunc lam = Trunc::lambda(T.trunc.energy_cap);
    for (int k = 1; k <= S.arity_cap; ++k) {
        for_each_tuple(S, k, [&](const std::vector<GenId>& x) {
            // d-hat then Phi-hat
            WordCombo lhs;
            for (const auto& [w, s] : bar_coderivation(S, x)) {
                for (const auto& [w2, s2] : f.hat(w)) {
                    WordCombo term{{w2, mul(s, s2, lam)}};
                    lhs = word_combo_add(lhs, term);
                }
            }
            // Phi-hat then d-hat
            WordCombo rhs;
            for (const auto& [w, s] : f.hat(x)) {
                for (const auto& [w2, s2] : bar_coderivation(T, w)) {
                    WordCombo term{{w2, mul(s, s2, lam)}};
                    rhs = word_combo_add(rhs, term);
                }
            }
            WordCombo diff = word_combo_sub(lhs, rhs);
            WordCombo clean;
            for (const auto& [w, s] : diff) {
                Scalar t = truncate(s, lam);
                if (!t.is_zero()) clean[w] = t;
            }
            if (!clean.empty()) {
                std::string names;
                for (GenId g : x) names += (names.empty() ? "" : ",") + S.gens[g].name;
                std::string d;
                for (const auto& [w, s] : clean) {
                    std::string wn;
                    for (GenId g : w) wn += (wn.empty() ? "" : "|") + T.gens[g].name;
                    d += (d.empty() ? "" : " + ") + ("(" + s.str() + ")*[" + wn + "]");
                }
                rep.require(false, "intertwining(" + names + ")", d);
            }
        });
    }
    rep.note("functor", "checked up to arity " + std::to_string(S.arity_cap) + " mod T^" +
                            rat_str(T.trunc.energy_cap));
    return rep;
}

Report verify_unital_functor(const Functor& f) {
    Report rep;
    const Category& S = *f.src;
    const Category& T = *f.dst;
    rep.require(S.unital() && T.unital(), "both categories unital");
    if (!S.unital() || !T.unital()) return rep;
    for (const auto& [c, e] : S.units) {
        auto it = f.ob.find(c);
        if (it == f.ob.end()) {
            rep.require(false, "object map defined");
            continue;
        }
        GenId e2 = T.unit_of(it->second);
        const Combo* img = f.comp({e});
        bool ok = img && *img == Combo{{e2, Scalar::one()}};
        rep.require(ok, "Phi_1(" + S.gens[e].name + ") = " + T.gens[e2].name,
                    ok ? "" : (img ? combo_str(*img, T) : "0"));
    }
    for (const auto& [in, out] : f.comps) {
        if (in.size() < 2) continue;
        bool has_unit = false;
        for (GenId g : in)
            for (const auto& [c, e] : S.units)
                if (g == e) has_unit = true;
        if (has_unit)
            rep.require(combo_is_zero(out), "Phi_k(..,e,..) = 0, k >= 2",
                        "nonzero component on a unit");
    }
    rep.merge(verify_functor(f));
    return rep;
}

} // namespace ghcat
