#include "ghcat/limits.hpp"

#include <algorithm>
#include <functional>

namespace ghcat {

Scalar ChainMap::entry(int i, int j) const {
    auto it = entries.find({i, j});
    return it == entries.end() ? Scalar::zero() : it->second;
}

Report verify_chain_map(const FilteredComplex& A, const FilteredComplex& B, const ChainMap& f) {
    Report rep;
    const Trunc lam = Trunc::lambda(B.trunc.energy_cap);
    for (const auto& [key, s] : f.entries) {
        const auto& [i, j] = key;
        rep.require(A.gens[i].deg == B.gens[j].deg, "degree " + A.gens[i].name,
                    A.gens[i].deg == B.gens[j].deg ? "" : "chain map must preserve degree");
        Rat bound = B.gens[j].shift - A.gens[i].shift - f.loss;
        rep.require(valuation_at_least(s, bound), "loss bound " + A.gens[i].name,
                    valuation_at_least(s, bound) ? "" : "entry drops filtration beyond the loss");
    }
    // phi o d_A = d_B o phi
    for (std::size_t i = 0; i < A.gens.size(); ++i) {
        std::map<int, Scalar> lhs, rhs;
        for (const auto& [key, s] : A.diff) {
            if (key.first != static_cast<int>(i)) continue;
            for (const auto& [key2, t] : f.entries)
                if (key2.first == key.second) {
                    auto& acc = lhs[key2.second];
                    acc = add(acc, mul(s, t, lam));
                }
        }
        for (const auto& [key, t] : f.entries) {
            if (key.first != static_cast<int>(i)) continue;
            for (const auto& [key2, s] : B.diff)
                if (key2.first == key.second) {
                    auto& acc = rhs[key2.second];
                    acc = add(acc, mul(t, s, lam));
                }
        }
        for (const auto& [j, s] : lhs) {
            Scalar d = truncate(sub(s, rhs.count(j) ? rhs[j] : Scalar::zero()), lam);
            rep.require(d.is_zero(), "chain equation " + A.gens[i].name,
                        d.is_zero() ? "" : d.str());
        }
        for (const auto& [j, s] : rhs)
            if (!lhs.count(j))
                rep.require(truncate(s, lam).is_zero(), "chain equation " + A.gens[i].name);
    }
    return rep;
}

Report verify_complex_system(const ComplexSystem& sys) {
    Report rep;
    rep.require(!sys.stages.empty(), "at least one stage");
    for (std::size_t n = 0; n < sys.stages.size(); ++n)
        rep.merge(verify_complex(sys.stages[n]), "stage " + std::to_string(n));
    rep.require(sys.maps.size() + 1 == sys.stages.size() || sys.stages.size() == 1,
                "one map per transition");
    for (std::size_t n = 0; n < sys.maps.size(); ++n)
        rep.merge(verify_chain_map(sys.stages[n], sys.stages[n + 1], sys.maps[n]),
                  "map " + std::to_string(n));
    return rep;
}

namespace {

// solve sum_j x_j * cols[j] = target over truncated scalars; nullopt when
// inconsistent below the cap
std::optional<std::vector<Scalar>> solve_linear(const std::vector<std::map<int, Scalar>>& cols,
                                                std::map<int, Scalar> target, const Trunc& lam) {
    std::vector<std::map<int, Scalar>> work = cols;
    std::vector<Scalar> sol(cols.size(), Scalar::zero());
    std::vector<char> used(cols.size(), 0);
    std::vector<std::pair<int, std::size_t>> pivots; // (row, col)
    // forward elimination with minimal-valuation pivots
    while (true) {
        std::optional<Rat> best;
        int prow = -1;
        std::size_t pcol = 0;
        for (std::size_t j = 0; j < work.size(); ++j) {
            if (used[j]) continue;
            for (const auto& [r, s] : work[j]) {
                if (s.is_zero()) continue;
                Rat v = *s.valuation();
                if (!best || v < *best) {
                    best = v;
                    prow = r;
                    pcol = j;
                }
            }
        }
        if (!best) break;
        used[pcol] = 1;
        pivots.push_back({prow, pcol});
        Scalar p = work[pcol][prow];
        for (std::size_t j = 0; j < work.size(); ++j) {
            if (used[j] || !work[j].count(prow)) continue;
            Scalar q = div_exact(work[j][prow], p, lam);
            for (const auto& [r, s] : work[pcol]) {
                Scalar upd = truncate(sub(work[j].count(r) ? work[j][r] : Scalar::zero(),
                                          mul(q, s, lam)),
                                      lam);
                if (upd.is_zero())
                    work[j].erase(r);
                else
                    work[j][r] = upd;
            }
        }
    }
    // back-substitution in pivot order
    for (auto it = pivots.begin(); it != pivots.end(); ++it) {
        auto [prow, pcol] = *it;
        Scalar p = work[pcol][prow];
        Scalar rhs = target.count(prow) ? target[prow] : Scalar::zero();
        if (rhs.is_zero()) continue;
        if (p.is_zero()) return std::nullopt;
        if (*rhs.valuation() < *p.valuation()) return std::nullopt; // would underflow
        Scalar q = div_exact(rhs, p, lam);
        sol[pcol] = q;
        for (const auto& [r, s] : work[pcol]) {
            Scalar upd = truncate(sub(target.count(r) ? target[r] : Scalar::zero(),
                                      mul(q, s, lam)),
                                  lam);
            if (upd.is_zero())
                target.erase(r);
            else
                target[r] = upd;
        }
    }
    for (const auto& [r, s] : target)
        if (!truncate(s, lam).is_zero()) return std::nullopt;
    return sol;
}

std::map<int, Scalar> push_class(const ComplexSystem& sys, std::size_t from, std::size_t to,
                                 std::map<int, Scalar> v) {
    const Trunc lam = Trunc::lambda(sys.stages[0].trunc.energy_cap);
    for (std::size_t n = from; n < to; ++n) {
        std::map<int, Scalar> next;
        for (const auto& [i, s] : v)
            for (const auto& [key, t] : sys.maps[n].entries)
                if (key.first == i) {
                    auto& acc = next[key.second];
                    acc = add(acc, mul(s, t, lam));
                }
        v = std::move(next);
    }
    return v;
}

std::optional<Rat> class_valuation(const FilteredComplex& C, const std::map<int, Scalar>& v) {
    std::optional<Rat> val;
    bool zero = true;
    for (const auto& [i, s] : v) {
        if (s.is_zero()) continue;
        zero = false;
        Rat w = *s.valuation() + C.gens[i].shift;
        if (!val || w < *val) val = w;
    }
    if (zero) return std::nullopt; // zero class: valuation +infinity
    return val;
}

} // namespace

LimitComplex limit_complex(const ComplexSystem& sys) {
    Report ok = verify_complex_system(sys);
    if (!ok.pass()) fail(ErrKind::InputError, "system does not verify: " + ok.first_failure());
    std::size_t N = sys.stages.size();
    if (sys.eventually_constant && N >= 2) {
        // declared stabilization: the last transition must be the identity on names
        const ChainMap& last = sys.maps.back();
        const FilteredComplex& A = sys.stages[N - 2];
        const FilteredComplex& B = sys.stages[N - 1];
        bool same = A.gens.size() == B.gens.size();
        for (std::size_t i = 0; same && i < A.gens.size(); ++i) {
            Scalar e = last.entry(static_cast<int>(i), static_cast<int>(i));
            if (A.gens[i].name != B.gens[i].name || !e.is_one()) same = false;
        }
        if (!same || last.entries.size() != A.gens.size())
            fail(ErrKind::NotEventuallyConstant, "maps beyond the declared stabilization differ");
    }
    const Trunc lam = Trunc::lambda(sys.stages[0].trunc.energy_cap);

    LimitComplex out;
    out.space = sys.stages.back();
    out.error = sys.eventually_constant ? Rat(0) : sys.loss_tail;
    out.stage_valuations.resize(N);
    for (std::size_t n = 0; n < N; ++n) {
        const FilteredComplex& Cn = sys.stages[n];
        out.stage_valuations[n].resize(Cn.gens.size());
        for (std::size_t g = 0; g < Cn.gens.size(); ++g) {
            // representative valuations at every stage m: forward images for
            // m >= n, backward solves for m < n
            std::map<int, Scalar> cls{{static_cast<int>(g), Scalar::one()}};
            std::optional<Rat> best;
            for (std::size_t m = 0; m < N; ++m) {
                std::optional<std::map<int, Scalar>> rep_m;
                if (m >= n) {
                    rep_m = push_class(sys, n, m, cls);
                } else {
                    // solve push_{m -> n}(y) = class of g
                    const FilteredComplex& Cm = sys.stages[m];
                    std::vector<std::map<int, Scalar>> cols;
                    for (std::size_t h = 0; h < Cm.gens.size(); ++h)
                        cols.push_back(
                            push_class(sys, m, n, {{static_cast<int>(h), Scalar::one()}}));
                    auto sol = solve_linear(cols, cls, lam);
                    if (sol) {
                        std::map<int, Scalar> y;
                        for (std::size_t h = 0; h < sol->size(); ++h)
                            if (!(*sol)[h].is_zero()) y[static_cast<int>(h)] = (*sol)[h];
                        rep_m = std::move(y);
                    }
                }
                if (!rep_m) continue;
                auto v = class_valuation(sys.stages[m], *rep_m);
                if (v && (!best || *v > *best)) best = *v;
            }
            out.stage_valuations[n][g] = best;
        }
    }
    return out;
}

Report verify_category_system(const CategorySystem& sys) {
    Report rep;
    rep.require(!sys.stages.empty(), "at least one stage");
    rep.require(sys.functors.size() + 1 == sys.stages.size(), "one functor per transition");
    rep.require(sys.losses.size() == sys.functors.size(), "one loss per functor");
    for (std::size_t n = 0; n < sys.stages.size(); ++n) {
        rep.merge(verify_ainf(sys.stages[n]), "stage " + std::to_string(n));
        if (sys.unital)
            rep.merge(verify_strict_unit(sys.stages[n]), "stage " + std::to_string(n));
    }
    for (std::size_t n = 0; n < sys.functors.size(); ++n) {
        Report f = sys.unital ? verify_unital_functor(sys.functors[n])
                              : verify_functor(sys.functors[n]);
        rep.merge(f, "functor " + std::to_string(n));
        rep.require(sys.functors[n].loss == sys.losses[n], "declared loss " + std::to_string(n));
    }
    return rep;
}

namespace {

// the unitalization (Phi)+ : Csrc+ -> Cdst+ of a unital functor: f -> f',
// e+ -> e+', components containing the unit layer otherwise zero
Functor unitalize_functor(const Functor& phi, const Category& Psrc, const Category& Pdst) {
    Functor f;
    f.src = &Psrc;
    f.dst = &Pdst;
    f.loss = phi.loss;
    f.ob = phi.ob;
    f.comps = phi.comps; // generator ids of C are shared with C+
    const Category& S = *phi.src;
    for (ObId c = 0; c < static_cast<ObId>(S.objects.size()); ++c) {
        ObId c2 = phi.ob.at(c);
        f.comps[{Psrc.unit_of(c)}] = Combo{{Pdst.unit_of(c2), Scalar::one()}};
        GenId fs = Psrc.find_gen("f_" + S.objects[c]);
        GenId fd = Pdst.find_gen("f_" + phi.dst->objects[c2]);
        if (fs < 0 || fd < 0) fail(ErrKind::InputError, "missing unitalization generators");
        f.comps[{fs}] = Combo{{fd, Scalar::one()}};
    }
    return f;
}

// Phi-hat of the composite stage functor applied segment-wise to a cobar word:
// a linear map into the limit's word generators
Combo cobar_push_word(const CobarCategory& dst, const Functor& composite, const CobarWord& w) {
    // split into box-separated segments
    std::vector<Word> segments;
    Word cur{w.letters[0]};
    for (std::size_t i = 0; i + 1 < w.letters.size(); ++i) {
        if (w.seps[i] == 1) {
            segments.push_back(cur);
            cur.clear();
        }
        cur.push_back(w.letters[i + 1]);
    }
    segments.push_back(cur);
    // hat on each segment, then reassemble over all combinations
    std::vector<WordCombo> images;
    for (const Word& seg : segments) images.push_back(composite.hat(seg));
    Combo out;
    const Trunc lam = Trunc::lambda(dst.cat.trunc.energy_cap);
    std::function<void(std::size_t, CobarWord, const Scalar&)> rec =
        [&](std::size_t i, CobarWord acc, const Scalar& c) {
            if (i == images.size()) {
                GenId g = dst.word_gen(acc);
                if (g >= 0) out = combo_add(out, Combo{{g, c}});
                return;
            }
            for (const auto& [word, s] : images[i]) {
                CobarWord next = acc;
                if (!next.letters.empty()) next.seps.push_back(1);
                for (std::size_t l = 0; l < word.size(); ++l) {
                    next.letters.push_back(word[l]);
                    if (l + 1 < word.size()) next.seps.push_back(0);
                }
                rec(i + 1, std::move(next), mul(c, s, lam));
            }
        };
    rec(0, CobarWord{}, Scalar::one());
    return out;
}

} // namespace

LimitCategory limit_category(const CategorySystem& sys, int len_cap) {
    Report ok = verify_category_system(sys);
    if (!ok.pass()) fail(ErrKind::InputError, "system does not verify: " + ok.first_failure());
    std::size_t N = sys.stages.size();
    LimitCategory lc;
    const Category& last = sys.stages[N - 1];
    if (sys.unital) {
        lc.limit = cobar_homotopy_unit(reduced_cobar(last, len_cap));
        for (const Category& C : sys.stages) lc.stage_plus.push_back(unitalize(C));
        for (std::size_t n = 0; n + 1 < N; ++n)
            lc.functors_plus.push_back(
                unitalize_functor(sys.functors[n], lc.stage_plus[n], lc.stage_plus[n + 1]));
        // repoint the unitalized functors at the owned stage_plus copies
        for (std::size_t n = 0; n + 1 < N; ++n) {
            lc.functors_plus[n].src = &lc.stage_plus[n];
            lc.functors_plus[n].dst = &lc.stage_plus[n + 1];
        }
    } else {
        lc.limit = cobar(last, len_cap);
        lc.functors_plus = sys.functors; // plain functors drive the intertwining
    }

    // Upsilon^{inf,n}: on plain tuples the all-inner word pushed through the
    // composite stage functor; on the unit layer e+ -> e+, f -> f
    for (std::size_t n = 0; n < N; ++n) {
        // composite Phi^{N-1} o ... o Phi^n
        Functor comp = identity_functor(last);
        for (std::size_t m = N - 1; m > n; --m) comp = compose_functors(comp, sys.functors[m - 1]);
        Functor ups;
        ups.src = sys.unital ? &lc.stage_plus[n] : &sys.stages[n];
        ups.dst = &lc.limit.cat;
        Rat loss = sys.loss_tail;
        for (std::size_t m = n; m + 1 < N; ++m) loss += sys.losses[m];
        ups.loss = loss;
        lc.upsilon_losses.push_back(loss);
        const Category& Sn = sys.stages[n];
        for (ObId c = 0; c < static_cast<ObId>(Sn.objects.size()); ++c)
            ups.ob[c] = comp.ob.at(c);
        int cap = std::min(Sn.arity_cap, len_cap);
        for (int k = 1; k <= cap; ++k) {
            for_each_tuple(Sn, k, [&](const std::vector<GenId>& x) {
                CobarWord w{x, std::vector<std::uint8_t>(x.size() > 0 ? x.size() - 1 : 0, 0)};
                // push through the composite and land in the limit words
                Combo img = cobar_push_word(lc.limit, comp, w);
                if (!combo_is_zero(img)) ups.comps[x] = img;
            });
        }
        if (sys.unital) {
            const Category& Pn = lc.stage_plus[n];
            for (ObId c = 0; c < static_cast<ObId>(Sn.objects.size()); ++c) {
                ObId c2 = comp.ob.at(c);
                ups.comps[{Pn.unit_of(c)}] = Combo{{lc.limit.eplus.at(c2), Scalar::one()}};
                GenId fs = Pn.find_gen("f_" + Sn.objects[c]);
                ups.comps[{fs}] = Combo{{lc.limit.fgen.at(c2), Scalar::one()}};
            }
        }
        lc.upsilon.push_back(std::move(ups));
    }
    return lc;
}

Report verify_upsilon_intertwining(const LimitCategory& lc) {
    Report rep;
    if (lc.upsilon.size() <= 1) {
        rep.note("single stage", "intertwining vacuous");
        return rep;
    }
    if (lc.functors_plus.size() + 1 != lc.upsilon.size()) {
        rep.require(false, "stage functors available");
        return rep;
    }
    for (std::size_t n = 0; n + 1 < lc.upsilon.size(); ++n) {
        Functor composed = compose_functors(lc.upsilon[n + 1], lc.functors_plus[n]);
        bool ob_ok = composed.ob == lc.upsilon[n].ob;
        bool comp_ok = composed.comps == lc.upsilon[n].comps;
        rep.require(ob_ok, "object maps agree at stage " + std::to_string(n));
        rep.require(comp_ok, "components agree bit-exactly at stage " + std::to_string(n));
    }
    return rep;
}

Report verify_shrinker(const ShrinkerWitness& w) {
    Report rep;
    const Trunc lam = Trunc::lambda(w.trunc.energy_cap);
    std::size_t n = w.gen_names.size();
    rep.require(w.w_basis.size() == w.g_of.size(), "G given on the W basis");
    // (3) filtration: val(G w) >= val(w)
    auto combo_val = [&](const Combo& x) -> std::optional<Rat> {
        std::optional<Rat> v;
        for (const auto& [g, s] : x) {
            if (s.is_zero()) continue;
            Rat u = *s.valuation() + w.shifts[g];
            if (!v || u < *v) v = u;
        }
        return v;
    };
    for (std::size_t i = 0; i < w.w_basis.size(); ++i) {
        auto vw = combo_val(w.w_basis[i]);
        auto vg = combo_val(w.g_of[i]);
        bool ok = !vg || (vw && *vg >= *vw);
        rep.require(ok, "filtration preserved on W[" + std::to_string(i) + "]");
    }
    // (2) G = 0 on the marked part
    for (std::size_t i = 0; i < w.w_basis.size(); ++i) {
        bool marked = true;
        for (const auto& [g, s] : w.w_basis[i])
            if (!w.vanish_on[g]) marked = false;
        if (marked && !w.w_basis[i].empty())
            rep.require(combo_is_zero(w.g_of[i]), "G vanishes on the marked part of W");
    }
    // d on combos
    auto dof = [&](const Combo& x) {
        Combo out;
        for (const auto& [g, s] : x)
            for (const auto& [key, t] : w.diff)
                if (key.first == g) {
                    Combo term{{key.second, mul(s, t, lam)}};
                    out = combo_add(out, term);
                }
        return combo_trunc(out, lam);
    };
    // express d(w_i) in the W basis to evaluate G(d w_i)
    std::vector<std::map<int, Scalar>> cols;
    for (const auto& b : w.w_basis) {
        std::map<int, Scalar> col;
        for (const auto& [g, s] : b) col[g] = s;
        cols.push_back(col);
    }
    for (std::size_t i = 0; i < w.w_basis.size(); ++i) {
        Combo dw = dof(w.w_basis[i]);
        std::map<int, Scalar> tgt;
        for (const auto& [g, s] : dw) tgt[g] = s;
        auto sol = solve_linear(cols, tgt, lam);
        if (!sol) {
            rep.require(false, "W closed under d", "d(W[" + std::to_string(i) + "]) not in W");
            continue;
        }
        Combo gdw;
        for (std::size_t j = 0; j < sol->size(); ++j)
            if (!(*sol)[j].is_zero())
                gdw = combo_add(gdw, combo_scale(w.g_of[j], (*sol)[j], lam));
        // (1) image of dG + Gd - T^eps lies in the marked subcomplex
        Combo img = combo_add(dof(w.g_of[i]), gdw);
        img = combo_sub(img, combo_scale(w.w_basis[i], Scalar::tpow(w.eps), lam));
        bool inside = true;
        std::string bad;
        for (const auto& [g, s] : combo_trunc(img, lam))
            if (!w.in_sub[g] && !s.is_zero()) {
                inside = false;
                bad = w.gen_names[g];
            }
        rep.require(inside, "dG + Gd - T^eps lands in the subcomplex on W[" + std::to_string(i) + "]",
                    bad);
    }
    return rep;
}

namespace {

ShrinkerWitness shrinker_impl(const CategorySystem& sys, const LimitCategory& lc, int stage,
                              const std::vector<Combo>& w_basis, const Rat& eps,
                              const std::set<GenId>* inner_letters, int level) {
    const CobarCategory& lim = lc.limit;
    const Category& cat = lim.cat;
    const Trunc lam = Trunc::lambda(cat.trunc.energy_cap);
    std::size_t N = sys.stages.size();
    if (stage < 0 || stage >= static_cast<int>(N)) fail(ErrKind::InputError, "bad stage");

    // stage cobar matching the limit's flags
    CobarCategory abn = sys.unital ? reduced_cobar(sys.stages[stage], lim.len_cap)
                                   : cobar(sys.stages[stage], lim.len_cap);
    // composite stage functor into the last stage
    Functor comp = identity_functor(sys.stages[N - 1]);
    for (std::size_t m2 = N - 1; m2 > static_cast<std::size_t>(stage); --m2)
        comp = compose_functors(comp, sys.functors[m2 - 1]);

    // word-level pushforward columns, ordered by letter count for the solver
    std::vector<std::map<int, Scalar>> cols;
    std::vector<GenId> col_of;
    std::vector<GenId> order;
    for (GenId g = 0; g < static_cast<GenId>(abn.words.size()); ++g) order.push_back(g);
    std::stable_sort(order.begin(), order.end(), [&](GenId a, GenId b) {
        return abn.words[a].letters.size() < abn.words[b].letters.size();
    });
    for (GenId g : order) {
        Combo img = cobar_push_word(lim, comp, abn.words[g]);
        std::map<int, Scalar> col;
        for (const auto& [h, sc] : img) col[h] = sc;
        cols.push_back(std::move(col));
        col_of.push_back(g);
    }

    // W sits inside the stated filtration level; the S identity cancels the
    // top-level part and lower parts land in the subcomplex outright
    int denom = inner_letters ? level : level - 1;
    if (denom < 1) fail(ErrKind::InputError, "shrinking level too small");
    for (const Combo& b : w_basis)
        for (const auto& [g, sc] : b) {
            if (!lim.is_word_gen(g)) fail(ErrKind::InputError, "W must span word generators");
            int lv = inner_letters ? outer_separator_count(lim, g, *inner_letters)
                                   : static_cast<int>(lim.words[g].letters.size());
            if (lv > level) fail(ErrKind::InputError, "W exceeds the stated filtration level");
        }

    ShrinkerWitness w;
    w.trunc = cat.trunc;
    std::size_t nw = lim.words.size();
    for (GenId g = 0; g < static_cast<GenId>(nw); ++g) {
        w.gen_names.push_back(cat.gens[g].name);
        w.degs.push_back(cat.gens[g].deg);
        w.shifts.push_back(cat.gens[g].shift);
        if (inner_letters) {
            int oc = outer_separator_count(lim, g, *inner_letters);
            w.in_sub.push_back(oc <= level - 1);
            w.vanish_on.push_back(oc == 0);
        } else {
            int letters = static_cast<int>(lim.words[g].letters.size());
            w.in_sub.push_back(letters <= level - 1);
            w.vanish_on.push_back(letters == 1);
        }
    }
    for (const auto& [key, out] : cat.ops) {
        if (key.size() != 1 || !lim.is_word_gen(key[0])) continue;
        for (const auto& [h, sc] : out)
            if (lim.is_word_gen(h)) w.diff[{key[0], h}] = sc;
    }
    Rat epsprime = Rat(static_cast<long>(w_basis.size()) + 2) * eps;
    w.eps = epsprime;
    w.w_basis = w_basis;

    // lift each basis element to the stage cobar, apply S (or S^out), push back
    for (const Combo& b : w_basis) {
        std::map<int, Scalar> tgt;
        for (const auto& [g, sc] : b) tgt[g] = sc;
        auto sol = solve_linear(cols, tgt, lam);
        if (!sol) fail(ErrKind::LiftFailed, "no stage lift for a W basis element");
        Combo s_of_lift;
        for (std::size_t j = 0; j < sol->size(); ++j) {
            if ((*sol)[j].is_zero()) continue;
            Combo sg = inner_letters ? operator_s_out(abn, col_of[j], *inner_letters)
                                     : operator_s(abn, col_of[j]);
            s_of_lift = combo_add(s_of_lift, combo_scale(sg, (*sol)[j], lam));
        }
        Combo pushed;
        for (const auto& [g, sc] : s_of_lift)
            pushed = combo_add(pushed,
                               combo_scale(cobar_push_word(lim, comp, abn.words[g]), sc, lam));
        Scalar scalefac = scale(Scalar::tpow(epsprime), Rat(1, denom));
        w.g_of.push_back(combo_scale(pushed, scalefac, lam));
    }
    return w;
}

} // namespace

ShrinkerWitness cobar_shrinker(const CategorySystem& sys, const LimitCategory& lc, int stage,
                               int m, const std::vector<Combo>& w_basis, const Rat& eps) {
    if (m < 2) fail(ErrKind::InputError, "shrinking needs m >= 2");
    return shrinker_impl(sys, lc, stage, w_basis, eps, nullptr, m);
}

ShrinkerWitness relative_cobar_shrinker(const CategorySystem& sys, const LimitCategory& lc,
                                        int stage, const std::set<GenId>& inner_letters, int k,
                                        const std::vector<Combo>& w_basis, const Rat& eps) {
    if (k < 1) fail(ErrKind::InputError, "outer level must be >= 1");
    return shrinker_impl(sys, lc, stage, w_basis, eps, &inner_letters, k);
}

Report spectral_comparison_at_limit(const ComplexSystem& sys) {
    Report rep;
    Report ok = verify_complex_system(sys);
    if (!ok.pass()) {
        rep.require(false, "system verifies", ok.first_failure());
        return rep;
    }
    std::vector<std::map<int, Barcode>> bars;
    for (const auto& C : sys.stages) bars.push_back(barcode_normal_form(C));
    const auto& lim = bars.back();
    for (std::size_t n = 0; n < sys.stages.size(); ++n) {
        Rat eps = sys.loss_tail;
        for (std::size_t r = n; r < sys.maps.size(); ++r) eps += sys.maps[r].loss;
        std::set<int> degs;
        for (const auto& [d, b] : bars[n]) degs.insert(d);
        for (const auto& [d, b] : lim) degs.insert(d);
        for (int d : degs) {
            Barcode bn = bars[n].count(d) ? bars[n].at(d) : Barcode{};
            Barcode bl = lim.count(d) ? lim.at(d) : Barcode{};
            bool okd = spectral_lipschitz_check(bn, bl, eps);
            rep.require(okd, "stage " + std::to_string(n) + " deg " + std::to_string(d) +
                                 " within eps = " + rat_str(eps));
        }
    }
    return rep;
}

} // namespace ghcat
