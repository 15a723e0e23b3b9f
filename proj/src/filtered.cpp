#include "ghcat/filtered.hpp"

#include <algorithm>
#include <set>

namespace ghcat {

Barcode Barcode::make(std::vector<std::optional<Rat>> raw) {
    Barcode b;
    for (auto& e : raw) {
        if (e && *e == 0) continue; // Lambda_0 / T^0 = 0
        if (e && *e < 0) fail(ErrKind::InputError, "negative barcode entry");
        b.entries.push_back(std::move(e));
    }
    std::sort(b.entries.begin(), b.entries.end(),
              [](const std::optional<Rat>& a, const std::optional<Rat>& c) {
                  if (!a) return c.has_value(); // infinity first
                  if (!c) return false;
                  return *a > *c;
              });
    return b;
}

std::size_t Barcode::infinite_count() const {
    std::size_t n = 0;
    while (n < entries.size() && !entries[n]) ++n;
    return n;
}

std::string Barcode::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) s += ",";
        s += entries[i] ? rat_str(*entries[i]) : "inf";
    }
    return s + ")";
}

long spectral_dimension(const Barcode& b, const Rat& lambda) {
    long n = 0;
    for (const auto& e : b.entries)
        if (!e || *e > lambda) ++n;
    return n;
}

bool almost_isomorphic(const Barcode& a, const Barcode& b) { return a.entries == b.entries; }

bool spectral_lipschitz_check(const Barcode& b1, const Barcode& b2, const Rat& eps) {
    if (eps < 0) fail(ErrKind::InputError, "negative epsilon");
    std::set<Rat> breakpoints{eps};
    for (const auto* b : {&b1, &b2})
        for (const auto& e : b->entries)
            if (e) {
                if (*e >= eps) breakpoints.insert(*e);
                breakpoints.insert(*e + eps);
            }
    for (const Rat& l : breakpoints) {
        if (spectral_dimension(b1, l) > spectral_dimension(b2, l - eps)) return false;
        if (spectral_dimension(b2, l) > spectral_dimension(b1, l - eps)) return false;
    }
    return true;
}

LimitBarcode limit_barcode(const std::vector<Barcode>& seq, const std::vector<Rat>& losses,
                           const Rat& loss_tail) {
    if (seq.empty()) fail(ErrKind::InputError, "empty barcode sequence");
    if (losses.size() + 1 < seq.size())
        fail(ErrKind::InputError, "need a loss bound per stage transition");
    for (std::size_t n = 0; n + 1 < seq.size(); ++n) {
        const auto& a = seq[n].entries;
        const auto& b = seq[n + 1].entries;
        std::size_t len = std::max(a.size(), b.size());
        for (std::size_t i = 0; i < len; ++i) {
            // sorted matching, largest to largest; missing entries read as 0
            std::optional<Rat> x = i < a.size() ? a[i] : std::optional<Rat>(Rat(0));
            std::optional<Rat> y = i < b.size() ? b[i] : std::optional<Rat>(Rat(0));
            if (!x != !y)
                fail(ErrKind::MatchingFailed, "stage " + std::to_string(n) +
                                                  ": finite entry matched to an infinite one");
            if (x && y) {
                Rat gap = *x > *y ? *x - *y : *y - *x;
                if (gap > losses[n])
                    fail(ErrKind::MatchingFailed,
                         "stage " + std::to_string(n) + ": |" + rat_str(*x) + " - " + rat_str(*y) +
                             "| exceeds loss " + rat_str(losses[n]));
            }
        }
    }
    return LimitBarcode{seq.back(), loss_tail};
}

int FilteredComplex::find(const std::string& name) const {
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].name == name) return static_cast<int>(i);
    return -1;
}

Scalar FilteredComplex::entry(int src, int dst) const {
    auto it = diff.find({src, dst});
    return it == diff.end() ? Scalar::zero() : it->second;
}

Report verify_complex(const FilteredComplex& c) {
    Report rep;
    for (const auto& [key, s] : c.diff) {
        const auto& [i, j] = key;
        if (s.is_zero()) continue;
        const auto& g = c.gens[i];
        const auto& h = c.gens[j];
        rep.require(h.deg == g.deg + 1, "degree d(" + g.name + ") -> " + h.name,
                    h.deg == g.deg + 1 ? "" : "differential entry not of degree +1");
        Rat bound = h.shift - g.shift;
        rep.require(valuation_at_least(s, bound), "filtration d(" + g.name + ") -> " + h.name,
                    valuation_at_least(s, bound) ? "" : "valuation " + s.str() + " < " + rat_str(bound));
    }
    // d^2 = 0 mod T^E
    for (std::size_t i = 0; i < c.gens.size(); ++i) {
        std::map<int, Scalar> sq;
        for (const auto& [key, s] : c.diff) {
            if (key.first != static_cast<int>(i)) continue;
            for (const auto& [key2, s2] : c.diff) {
                if (key2.first != key.second) continue;
                Scalar prod = mul(s, s2, c.trunc);
                auto& acc = sq[key2.second];
                acc = add(acc, prod);
            }
        }
        for (const auto& [j, s] : sq) {
            Scalar t = truncate(s, Trunc::lambda(c.trunc.energy_cap));
            rep.require(t.is_zero(), "d^2(" + c.gens[i].name + ") -> " + c.gens[j].name,
                        t.is_zero() ? "" : "residual " + t.str());
        }
    }
    if (rep.checks.empty()) rep.note("complex", "no differential entries");
    return rep;
}

namespace {

struct Reduction {
    // diagonal exponent bars recorded per homology degree
    std::map<int, std::vector<Rat>> torsion;
    std::map<int, long> free_rank;
};

} // namespace

std::map<int, Barcode> barcode_normal_form(const FilteredComplex& c) {
    for (const auto& g : c.gens)
        if (g.shift != 0)
            fail(ErrKind::InputError, "barcode normal form needs zero-energy generators; '" +
                                          g.name + "' has shift " + rat_str(g.shift));
    const Rat& cap = c.trunc.energy_cap;
    for (const auto& [key, s] : c.diff)
        if (!s.is_zero() && !valuation_at_least(s, Rat(0)))
            fail(ErrKind::InputError, "negative-valuation differential entry");

    std::set<int> degrees;
    for (const auto& g : c.gens) degrees.insert(g.deg);
    if (degrees.empty()) return {};

    // mutable global matrix, entries kept truncated at the cap
    std::map<std::pair<int, int>, Scalar> D;
    for (const auto& [key, s] : c.diff) {
        Scalar t = truncate(s, Trunc::lambda(cap));
        if (!t.is_zero()) D[key] = t;
    }
    std::vector<char> paired_as_target(c.gens.size(), 0);
    std::vector<char> paired_as_source(c.gens.size(), 0);
    Reduction red;

    auto set_entry = [&](int i, int j, const Scalar& s) {
        if (s.is_zero())
            D.erase({i, j});
        else
            D[{i, j}] = s;
    };
    auto get_entry = [&](int i, int j) -> Scalar {
        auto it = D.find({i, j});
        return it == D.end() ? Scalar::zero() : it->second;
    };

    const Trunc mulctx = Trunc::lambda(cap);
    int lowest = *degrees.begin();
    int highest = *degrees.rbegin();
    for (int k = lowest; k <= highest; ++k) {
        // rows: alive degree-k generators; columns: degree-(k+1) generators
        auto block_entries = [&]() {
            std::vector<std::pair<int, int>> es;
            for (const auto& [key, s] : D) {
                if (c.gens[key.first].deg != k) continue;
                if (paired_as_target[key.first]) {
                    // row of a generator already consumed as a torsion class:
                    // nonzero sub-cap entries mean the truncation cannot separate
                    // the bar from the next differential
                    fail(ErrKind::TruncationInsufficient,
                         "residual differential on paired generator '" + c.gens[key.first].name +
                             "' below T^" + rat_str(cap));
                }
                es.push_back(key);
            }
            return es;
        };

        while (true) {
            auto es = block_entries();
            if (es.empty()) break;
            // pivot: globally minimal valuation, lexicographically smallest (row, col)
            std::pair<int, int> piv = es.front();
            Rat pv = *get_entry(piv.first, piv.second).valuation();
            for (const auto& e : es) {
                Rat v = *get_entry(e.first, e.second).valuation();
                if (v < pv || (v == pv && e < piv)) {
                    piv = e;
                    pv = v;
                }
            }
            Scalar p = get_entry(piv.first, piv.second);

            // clear the pivot column: row ops on alive degree-k sources
            for (const auto& e : es) {
                if (e.second != piv.second || e.first == piv.first) continue;
                Scalar q = div_exact(get_entry(e.first, e.second), p, mulctx);
                // row_i -= q * row_piv (incoming entries of alive sources are zero)
                for (const auto& [key, s] : std::map<std::pair<int, int>, Scalar>(D)) {
                    if (key.first != piv.first) continue;
                    Scalar upd = sub(get_entry(e.first, key.second), mul(q, s, mulctx));
                    set_entry(e.first, key.second, truncate(upd, mulctx));
                }
            }
            // clear the pivot row: column ops, replacing pivot target by
            // pivot_dst + q*y; propagates into the next block's rows
            for (const auto& [key, s] : std::map<std::pair<int, int>, Scalar>(D)) {
                if (key.first != piv.first || key.second == piv.second) continue;
                Scalar q = div_exact(s, p, mulctx);
                // entries into the rewritten target: col_y -= q * col_pivdst
                for (const auto& [key2, s2] : std::map<std::pair<int, int>, Scalar>(D)) {
                    if (key2.second != piv.second || key2.first == piv.first) continue;
                    if (c.gens[key2.first].deg != k) continue;
                    Scalar upd = sub(get_entry(key2.first, key.second), mul(q, s2, mulctx));
                    set_entry(key2.first, key.second, truncate(upd, mulctx));
                }
                // outgoing rows of degree k+1: row_pivdst += q * row_y
                for (const auto& [key2, s2] : std::map<std::pair<int, int>, Scalar>(D)) {
                    if (key2.first != key.second) continue;
                    Scalar upd = add(get_entry(piv.second, key2.second), mul(q, s2, mulctx));
                    set_entry(piv.second, key2.second, truncate(upd, mulctx));
                }
                set_entry(piv.first, key.second, Scalar::zero());
            }
            set_entry(piv.first, piv.second, Scalar::zero());
            paired_as_source[piv.first] = 1;
            paired_as_target[piv.second] = 1;
            if (pv > 0) red.torsion[k + 1].push_back(pv);
        }
    }

    std::map<int, Barcode> out;
    for (int k = lowest; k <= highest; ++k) {
        std::vector<std::optional<Rat>> entries;
        for (std::size_t i = 0; i < c.gens.size(); ++i)
            if (c.gens[i].deg == k && !paired_as_source[i] && !paired_as_target[i])
                entries.push_back(std::nullopt);
        for (const Rat& a : red.torsion[k]) entries.push_back(a);
        out[k] = Barcode::make(std::move(entries));
    }
    return out;
}

} // namespace ghcat
