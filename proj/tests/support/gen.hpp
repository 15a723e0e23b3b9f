#pragma once

// Deterministic random data for property tests.

#include <random>
#include <vector>

#include "ghcat/ainf.hpp"
#include "ghcat/filtered.hpp"
#include "ghcat/novikov.hpp"

namespace ghcat::testgen {

using Rng = std::mt19937_64;

inline Rat random_exponent(Rng& rng, int num_max = 6, int den = 2) {
    std::uniform_int_distribution<int> d(0, num_max);
    return rat(d(rng), den);
}

inline Rat random_coeff(Rng& rng) {
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    int n = num(rng);
    if (n == 0) n = 1;
    return rat(n, den(rng));
}

inline Scalar random_scalar(Rng& rng, int max_terms = 3, bool allow_zero = true) {
    std::uniform_int_distribution<int> nt(allow_zero ? 0 : 1, max_terms);
    int n = nt(rng);
    std::vector<Scalar::Term> terms;
    for (int i = 0; i < n; ++i) terms.push_back({random_exponent(rng), random_coeff(rng)});
    return Scalar::from_terms(std::move(terms));
}

// Random filtered complex with <= max_gens generators spread over up to three
// consecutive degrees, exponents in {0,..,num_max}/2, d^2 = 0 arranged by making
// d strictly lower some auxiliary ordering: generators split into (degree, slot);
// we build d by a random staircase of independent pairs plus random column mixes,
// which keeps d^2 = 0 exactly.
inline FilteredComplex random_complex(Rng& rng, int max_gens = 6, int num_max = 6,
                                      Rat cap = Rat(100)) {
    std::uniform_int_distribution<int> ngen(2, max_gens);
    int n = ngen(rng);
    FilteredComplex c;
    c.trunc = Trunc::lambda0(cap);
    std::uniform_int_distribution<int> degd(0, 2);
    for (int i = 0; i < n; ++i)
        c.gens.push_back({"g" + std::to_string(i), degd(rng), Rat(0)});
    // base staircase: pair some sources with targets one degree up
    std::vector<int> by_deg[4];
    for (int i = 0; i < n; ++i) by_deg[c.gens[i].deg].push_back(i);
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<std::pair<int, int>> pairs;
    std::vector<char> used(n, 0);
    for (int d = 0; d < 3; ++d) {
        std::size_t t = 0;
        for (int s : by_deg[d]) {
            if (t >= by_deg[d + 1].size()) break;
            if (coin(rng)) continue;
            int dst = by_deg[d + 1][t++];
            if (used[s] || used[dst]) continue;
            used[s] = used[dst] = 1;
            pairs.push_back({s, dst});
            c.diff[{s, dst}] = Scalar::monomial(random_coeff(rng), random_exponent(rng, num_max));
        }
    }
    // random filtered column mixes: d(src) += q * d(src') keeps d^2 = 0
    std::uniform_int_distribution<int> nmix(0, 4);
    int mixes = nmix(rng);
    for (int m = 0; m < mixes && pairs.size() >= 2; ++m) {
        std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
        auto [s1, d1] = pairs[pick(rng)];
        auto [s2, d2] = pairs[pick(rng)];
        if (s1 == s2 || c.gens[s1].deg != c.gens[s2].deg) continue;
        Scalar q = Scalar::monomial(random_coeff(rng), random_exponent(rng, num_max));
        Scalar cur = c.entry(s1, d2);
        c.diff[{s1, d2}] = add(cur, mul(q, c.entry(s2, d2), c.trunc));
        if (c.diff[{s1, d2}].is_zero()) c.diff.erase({s1, d2});
    }
    return c;
}

} // namespace ghcat::testgen
