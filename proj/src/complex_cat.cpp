#include "ghcat/complex_cat.hpp"

#include <map>

namespace ghcat {

namespace {

// elementary-basis map: (src gen, dst gen) -> coefficient
using ElemMap = std::map<std::pair<int, int>, Scalar>;

struct HomSpace {
    int vi, wi;           // object indices
    std::vector<GenId> ids; // generator ids in C
};

} // namespace

Category complex_category(const std::vector<FilteredComplex>& complexes, Rat cap) {
    Category C;
    C.trunc = Trunc::lambda0(cap);
    const Trunc lam = Trunc::lambda(cap);
    int n = static_cast<int>(complexes.size());
    for (int i = 0; i < n; ++i) C.add_object("V" + std::to_string(i));

    // generator layout per hom pair; diag0[i] is the designated diagonal slot
    // absorbed into the identity generator
    auto ename = [&](int vi, int g, int wi, int h) {
        return "V" + std::to_string(vi) + "." + complexes[vi].gens[g].name + ">" +
               "V" + std::to_string(wi) + "." + complexes[wi].gens[h].name;
    };
    std::map<std::pair<int, int>, std::map<std::pair<int, int>, GenId>> elem; // (vi,wi) -> (g,h) -> id
    std::vector<GenId> idgen(n);
    for (int vi = 0; vi < n; ++vi)
        for (int wi = 0; wi < n; ++wi) {
            if (vi == wi) idgen[vi] = C.add_gen("id_V" + std::to_string(vi), vi, vi, 0);
            const auto& V = complexes[vi];
            const auto& W = complexes[wi];
            for (std::size_t g = 0; g < V.gens.size(); ++g)
                for (std::size_t h = 0; h < W.gens.size(); ++h) {
                    if (vi == wi && g == 0 && h == 0) continue; // absorbed into id
                    if (V.gens[g].shift != 0 || W.gens[h].shift != 0)
                        fail(ErrKind::InputError, "complex category needs zero-energy generators");
                    int deg = W.gens[h].deg - V.gens[g].deg;
                    elem[{vi, wi}][{static_cast<int>(g), static_cast<int>(h)}] =
                        C.add_gen(ename(vi, static_cast<int>(g), wi, static_cast<int>(h)), vi, wi, deg);
                }
        }
    for (int i = 0; i < n; ++i) C.units[i] = idgen[i];

    // expansion of a category generator into the elementary basis
    auto expand = [&](GenId x) -> ElemMap {
        ElemMap m;
        const Generator& gx = C.gens[x];
        if (gx.src == gx.dst && x == idgen[gx.src]) {
            for (std::size_t g = 0; g < complexes[gx.src].gens.size(); ++g)
                m[{static_cast<int>(g), static_cast<int>(g)}] = Scalar::one();
            return m;
        }
        for (const auto& [gh, id] : elem[{gx.src, gx.dst}])
            if (id == x) m[gh] = Scalar::one();
        return m;
    };
    // conversion back: elementary map on hom(vi,wi) -> Combo in the chosen basis
    auto to_combo = [&](int vi, int wi, const ElemMap& m) -> Combo {
        Combo out;
        ElemMap rest = m;
        if (vi == wi) {
            auto it = rest.find({0, 0});
            if (it != rest.end()) {
                Scalar c = it->second;
                rest.erase(it);
                // eps_{g0->g0} = id - sum_{g != g0} eps_{g->g}
                out = combo_add(out, Combo{{idgen[vi], c}});
                for (std::size_t g = 1; g < complexes[vi].gens.size(); ++g) {
                    std::pair<int, int> d{static_cast<int>(g), static_cast<int>(g)};
                    Scalar cur = rest.count(d) ? rest[d] : Scalar::zero();
                    Scalar upd = sub(cur, c);
                    if (upd.is_zero())
                        rest.erase(d);
                    else
                        rest[d] = upd;
                }
            }
        }
        for (const auto& [gh, s] : rest) {
            if (s.is_zero()) continue;
            out = combo_add(out, Combo{{elem[{vi, wi}][gh], s}});
        }
        return out;
    };

    // m_1(f) = d_W o f - (-1)^{|f|} f o d_V in the elementary basis
    for (GenId x = 0; x < static_cast<GenId>(C.gens.size()); ++x) {
        const Generator& gx = C.gens[x];
        int vi = gx.src, wi = gx.dst;
        const auto& V = complexes[vi];
        const auto& W = complexes[wi];
        ElemMap dx;
        auto addterm = [&](int g, int h, const Scalar& c) {
            if (c.is_zero()) return;
            auto& cur = dx[{g, h}];
            cur = add(cur, c);
            if (cur.is_zero()) dx.erase({g, h});
        };
        for (const auto& [gh, c] : expand(x)) {
            auto [g, h] = gh;
            for (const auto& [key, s] : W.diff)
                if (key.first == h) addterm(g, key.second, mul(c, s, lam));
            int sign = gx.deg % 2 == 0 ? 1 : -1;
            for (const auto& [key, s] : V.diff)
                if (key.second == g) {
                    Scalar term = mul(c, s, lam);
                    addterm(key.first, h, sign > 0 ? neg(term) : term);
                }
        }
        Combo out = to_combo(vi, wi, dx);
        if (!combo_is_zero(out)) C.set_op({x}, out);
    }

    // m_2(x,y) = (-1)^{|x|} x o y with x o y = (-1)^{|x||y|} (apply x then y)
    for (GenId x = 0; x < static_cast<GenId>(C.gens.size()); ++x)
        for (GenId y = 0; y < static_cast<GenId>(C.gens.size()); ++y) {
            const Generator& gx = C.gens[x];
            const Generator& gy = C.gens[y];
            if (gx.dst != gy.src) continue;
            ElemMap comp;
            for (const auto& [gh1, c1] : expand(x))
                for (const auto& [gh2, c2] : expand(y)) {
                    if (gh1.second != gh2.first) continue;
                    std::pair<int, int> pos{gh1.first, gh2.second};
                    auto& cur = comp[pos];
                    cur = add(cur, mul(c1, c2, lam));
                    if (cur.is_zero()) comp.erase(pos);
                }
            int sign = ((gx.deg * gy.deg + gx.deg) % 2 + 2) % 2;
            Combo out = to_combo(gx.src, gy.dst, comp);
            if (sign) out = combo_neg(out);
            if (!combo_is_zero(out)) C.set_op({x, y}, out);
        }
    return C;
}

GenId elementary_map(const Category& C, int obj_src, int obj_dst, const std::string& from,
                     const std::string& to) {
    std::string nm = "V" + std::to_string(obj_src) + "." + from + ">V" + std::to_string(obj_dst) +
                     "." + to;
    return C.find_gen(nm);
}

} // namespace ghcat
