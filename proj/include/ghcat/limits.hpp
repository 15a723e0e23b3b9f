#pragma once

#include <optional>
#include <set>
#include <vector>

#include "ghcat/ainf.hpp"
#include "ghcat/barcobar.hpp"
#include "ghcat/filtered.hpp"

namespace ghcat {

// Chain map between filtered complexes with an energy loss: sparse entries
// phi(src gen of A) = sum entry * (dst gen of B), Lambda-valued.
struct ChainMap {
    std::map<std::pair<int, int>, Scalar> entries;
    Rat loss;

    Scalar entry(int i, int j) const;
};

Report verify_chain_map(const FilteredComplex& A, const FilteredComplex& B, const ChainMap& f);

// Finitely many stages of an inductive system of filtered cochain complexes;
// maps[n] : stages[n] -> stages[n+1] with losses summing below loss_tail
// beyond the provided stages.
struct ComplexSystem {
    std::vector<FilteredComplex> stages;
    std::vector<ChainMap> maps;
    Rat loss_tail;
    bool eventually_constant = false;
};

Report verify_complex_system(const ComplexSystem& sys);

// The truncated inductive limit: the underlying space is the last stage; the
// limit valuation of a class is the supremum over stages of the valuation of a
// stage representative (solving the chain of maps backward over Lambda where
// possible), reported with the declared tail uncertainty.
struct LimitComplex {
    FilteredComplex space;                     // last stage, limit valuations on classes
    std::vector<std::vector<std::optional<Rat>>> stage_valuations;
    // stage_valuations[n][g]: valuation at the limit of the class of generator
    // g of stage n (sup over later stages of its image's valuation)
    Rat error;                                 // declared tail bound
};
LimitComplex limit_complex(const ComplexSystem& sys);

// Inductive system of strictly unital A-infinity categories with unital
// functors between consecutive stages.
struct CategorySystem {
    std::vector<Category> stages;
    std::vector<Functor> functors; // functors[n] : stages[n] -> stages[n+1]
    std::vector<Rat> losses;
    Rat loss_tail;
    bool unital = true;
};

Report verify_category_system(const CategorySystem& sys);

// The limit of the system at finite stage: the (reduced, unitalized when the
// system is unital) cobar of the last stage, together with the functors
// Upsilon^{inf,n} = (unital inclusion) then (bar-level pushforward), with
// losses eps'_n = sum_{m >= n} losses; the intertwining
// Upsilon^{inf,n+1} o Phi^n = Upsilon^{inf,n} holds bit-exactly.
struct LimitCategory {
    CobarCategory limit;                       // (A^red B C^N)+ or AB C^N per flags
    std::vector<Category> stage_plus;          // unitalized stages (when unital)
    std::vector<Functor> upsilon;              // upsilon[n] : stage_plus[n] -> limit.cat
    std::vector<Functor> functors_plus;        // unitalized stage functors
    std::vector<Rat> upsilon_losses;
};
LimitCategory limit_category(const CategorySystem& sys, int len_cap);

// Bit-exact component equality of upsilon[n] and upsilon[n+1] o functors_plus[n].
Report verify_upsilon_intertwining(const LimitCategory& lc);

// eps-W shrinker data on a hom complex presented by generators: the ambient
// generators, the differential, a predicate marking the target subcomplex
// C_1 (the part dG + Gd - T^eps must land in), a predicate marking where G
// must vanish, the W basis and the map G on it.
struct ShrinkerWitness {
    std::vector<std::string> gen_names;
    std::vector<int> degs;
    std::vector<Rat> shifts;
    std::map<std::pair<int, int>, Scalar> diff;
    std::vector<char> in_sub;     // target subcomplex membership per generator
    std::vector<char> vanish_on;  // G = 0 required on these generators
    std::vector<Combo> w_basis;   // W spanning combos (indices into generators)
    std::vector<Combo> g_of;      // G(w_basis[i])
    Rat eps;
    Trunc trunc = Trunc::lambda0(Rat(4));
};

Report verify_shrinker(const ShrinkerWitness& w);

// The S-operator shrinker on S^m of the limit cobar: G = (T^{(k+2)eps}/(m-1))
// APhi^{inf,n} o S o APhi^{n,inf}_W with stage lifts solved from the linear
// systems (LiftFailed when no lift exists within truncation). Shrinks S^m into
// S^{m-1} relative to the single-letter part. w_basis spans a subcomplex of
// the limit's word generators with exactly m letters each.
ShrinkerWitness cobar_shrinker(const CategorySystem& sys, const LimitCategory& lc, int stage,
                               int m, const std::vector<Combo>& w_basis, const Rat& eps);

// Relative version along a marked subsystem (inner letters = generators of the
// embedded subcategory of the stage base): S^out-based shrinker for the outer
// filtration S^out_k.
ShrinkerWitness relative_cobar_shrinker(const CategorySystem& sys, const LimitCategory& lc,
                                        int stage, const std::set<GenId>& inner_letters, int k,
                                        const std::vector<Combo>& w_basis, const Rat& eps);

// f(l; H_inf) <= f(l - eps_n; H_n) and back, at step-function breakpoints,
// with eps_n the accumulated losses from stage n on.
Report spectral_comparison_at_limit(const ComplexSystem& sys);

} // namespace ghcat
