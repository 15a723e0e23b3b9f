#include "ghcat/surface.hpp"

#include <algorithm>
#include <functional>

namespace ghcat {

Category build_ngon_category(const NgonConfig& cfg, bool use_perturbed) {
    if (cfg.n < 3) fail(ErrKind::InputError, "n-gon needs n >= 3");
    if (cfg.area <= 0) fail(ErrKind::InputError, "area must be positive");
    if (use_perturbed && !cfg.perturbed) fail(ErrKind::InputError, "no perturbed area given");
    if (cfg.perturbed && !(*cfg.perturbed < cfg.area))
        fail(ErrKind::InputError, "perturbed area must be smaller");
    Rat lambda = use_perturbed ? *cfg.perturbed : cfg.area;

    Category C;
    C.trunc = Trunc::lambda0(cfg.area + cfg.area + Rat(1));
    C.grading_mod = 2;
    C.arity_cap = cfg.n;
    for (int i = 1; i <= cfg.n; ++i) C.add_object("L" + std::to_string(i));
    std::vector<GenId> side;
    for (int i = 1; i < cfg.n; ++i)
        side.push_back(C.add_gen("p" + std::to_string(i) + "_" + std::to_string(i + 1), i - 1, i,
                                 1));
    // deg' of the output is sum deg' inputs + 1 = 1, so p_{1,n} is even
    GenId out = C.add_gen("p1_" + std::to_string(cfg.n), 0, cfg.n - 1, 0);
    C.add_op(side, out, Scalar::tpow(lambda));
    return C;
}

namespace {

std::vector<Rat> op_spectrum(const Category& C) {
    std::vector<Rat> v;
    for (const auto& [in, outc] : C.ops)
        for (const auto& [g, s] : outc)
            for (const auto& [e, c] : s.terms()) v.push_back(e);
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

PerturbReport distinguish_perturbed(const NgonConfig& cfg) {
    if (!cfg.perturbed) fail(ErrKind::InputError, "no perturbed area given");
    Category A = build_ngon_category(cfg, false);
    Category B = build_ngon_category(cfg, true);
    PerturbReport rep;
    rep.spectrum = op_spectrum(A);
    rep.spectrum_perturbed = op_spectrum(B);
    rep.gap = cfg.area - *cfg.perturbed;
    rep.spectra_equal = rep.spectrum == rep.spectrum_perturbed;

    // brute-force search over diagonal rescalings g -> u_g g with unit scalars
    // drawn from a small valuation-zero set; the structure constant transforms
    // by a unit, so its valuation cannot move from area to area'
    std::vector<Scalar> units;
    for (long num : {1L, -1L, 2L, -2L}) units.push_back(Scalar::monomial(Rat(num), Rat(0)));
    units.push_back(add(Scalar::one(), Scalar::tpow(Rat(1, 2))));
    units.push_back(sub(Scalar::one(), Scalar::tpow(Rat(1, 2))));

    std::size_t gens = A.gens.size();
    const Trunc lam = Trunc::lambda(A.trunc.energy_cap);
    std::vector<std::size_t> choice(gens, 0);
    std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
        if (i == gens) {
            ++rep.units_searched;
            // compare u-rescaled ops of A with B
            for (const auto& [in, outc] : A.ops) {
                Scalar factor = Scalar::one();
                for (GenId g : in) factor = mul(factor, units[choice[g]], lam);
                Combo want;
                for (const auto& [g, s] : outc) {
                    Scalar t = mul(mul(s, factor, lam),
                                   div_exact(Scalar::one(), units[choice[g]], lam), lam);
                    want[g] = t;
                }
                const Combo* bo = B.op(in);
                if (!bo || !(*bo == want)) return false;
            }
            return true;
        }
        for (std::size_t u = 0; u < units.size(); ++u) {
            choice[i] = u;
            if (search(i + 1)) return true;
        }
        return false;
    };
    rep.isomorphism_found = search(0);
    return rep;
}

} // namespace ghcat
