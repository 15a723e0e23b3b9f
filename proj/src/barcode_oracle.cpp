#include "ghcat/barcode_oracle.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ghcat {

namespace {

using Mat = std::map<std::pair<int, int>, Scalar>;

std::string dump(const Mat& m) {
    std::ostringstream os;
    for (const auto& [k, s] : m) os << k.first << "," << k.second << ":" << s.str() << ";";
    return os.str();
}

// Collects the sorted pivot-exponent lists reachable by every admissible pivot
// order (admissible = an entry of globally minimal valuation).
void reduce_all_orders(const Mat& m, std::vector<Rat>& acc, const Trunc& ctx,
                       std::set<std::vector<Rat>>& results, std::set<std::string>& seen) {
    if (m.empty()) {
        std::vector<Rat> sorted = acc;
        std::sort(sorted.begin(), sorted.end());
        results.insert(sorted);
        return;
    }
    std::string key = dump(m);
    for (const Rat& a : acc) key += "|" + rat_str(a);
    if (!seen.insert(key).second) return;

    Rat minval = *m.begin()->second.valuation();
    for (const auto& [k, s] : m) minval = std::min(minval, *s.valuation());
    for (const auto& [piv, p] : m) {
        if (*p.valuation() != minval) continue;
        Mat next;
        // clear pivot row and column in one sweep: entry(i,j) -= e(i,c)*e(r,j)/p
        for (const auto& [k, s] : m) {
            if (k.first == piv.first || k.second == piv.second) continue;
            Scalar corr = Scalar::zero();
            auto ic = m.find({k.first, piv.second});
            auto rj = m.find({piv.first, k.second});
            if (ic != m.end() && rj != m.end())
                corr = div_exact(mul(ic->second, rj->second, ctx), p, ctx);
            Scalar v = truncate(sub(s, corr), ctx);
            if (!v.is_zero()) next[k] = v;
        }
        // fill-in where the base entry was zero
        for (const auto& [k1, s1] : m) {
            if (k1.second != piv.second || k1.first == piv.first) continue;
            for (const auto& [k2, s2] : m) {
                if (k2.first != piv.first || k2.second == piv.second) continue;
                std::pair<int, int> pos{k1.first, k2.second};
                if (m.count(pos) || next.count(pos)) continue;
                Scalar v = truncate(neg(div_exact(mul(s1, s2, ctx), p, ctx)), ctx);
                if (!v.is_zero()) next[pos] = v;
            }
        }
        acc.push_back(*p.valuation());
        reduce_all_orders(next, acc, ctx, results, seen);
        acc.pop_back();
    }
}

struct MatInvariants {
    std::vector<Rat> pivots; // sorted exponents (rank = size)
    bool invariant = true;
};

MatInvariants smith_all_orders(const Mat& m, const Trunc& ctx) {
    MatInvariants out;
    if (m.empty()) return out;
    std::set<std::vector<Rat>> results;
    std::set<std::string> seen;
    std::vector<Rat> acc;
    reduce_all_orders(m, acc, ctx, results, seen);
    out.invariant = results.size() == 1;
    if (!results.empty()) out.pivots = *results.begin();
    return out;
}

} // namespace

OracleResult barcode_oracle(const FilteredComplex& c) {
    OracleResult out;
    std::set<int> degrees;
    for (const auto& g : c.gens) degrees.insert(g.deg);
    if (degrees.empty()) return out;
    int lo = *degrees.begin(), hi = *degrees.rbegin();

    const Trunc lam = Trunc::lambda(c.trunc.energy_cap);
    std::map<int, MatInvariants> inv;
    for (int k = lo; k < hi; ++k) {
        Mat m;
        for (const auto& [key, s] : c.diff)
            if (c.gens[key.first].deg == k && !s.is_zero()) m[key] = truncate(s, lam);
        inv[k] = smith_all_orders(m, lam);
        if (!inv[k].invariant) out.pivot_order_invariant = false;
    }
    for (int k = lo; k <= hi; ++k) {
        long n = 0;
        for (const auto& g : c.gens)
            if (g.deg == k) ++n;
        long r_out = k < hi ? static_cast<long>(inv[k].pivots.size()) : 0;
        long r_in = k > lo ? static_cast<long>(inv[k - 1].pivots.size()) : 0;
        std::vector<std::optional<Rat>> entries;
        for (long i = 0; i < n - r_out - r_in; ++i) entries.push_back(std::nullopt);
        if (k > lo)
            for (const Rat& a : inv[k - 1].pivots) entries.push_back(a);
        out.barcodes[k] = Barcode::make(std::move(entries));
    }
    return out;
}

} // namespace ghcat
