#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "ghcat/ainf.hpp"
#include "ghcat/filtered.hpp"
#include "ghcat/homotopy.hpp"

namespace ghcat {

// Word in the cobar resolution: composable letters joined by separators,
// 0 = inner tensor (deg 0), 1 = box tensor (deg 1).
struct CobarWord {
    std::vector<GenId> letters;
    std::vector<std::uint8_t> seps; // size letters.size()-1

    bool operator<(const CobarWord& o) const {
        return std::tie(letters, seps) < std::tie(o.letters, o.seps);
    }
    bool operator==(const CobarWord& o) const {
        return letters == o.letters && seps == o.seps;
    }
};

// The cobar resolution of the bar resolution, presented as a DG category on
// word generators truncated at a letter-count cap. The shifted degree of a word
// is sum deg' letters + #box; M_1 = Delta-hat + sum_k del_k, M_2 = signed
// concatenation with a box separator.
struct CobarCategory {
    Category cat;            // DG presentation over the word generators
    const Category* base = nullptr;
    std::vector<CobarWord> words; // generator id -> word (unit-layer gens excluded)
    std::map<CobarWord, GenId> index;
    int len_cap = 4;
    bool reduced = false;
    bool unitalized = false;
    std::map<ObId, GenId> eplus, fgen; // set when unitalized

    GenId word_gen(const CobarWord& w) const; // -1 when absent (capped or reduced away)
    bool is_word_gen(GenId g) const {
        return g >= 0 && g < static_cast<GenId>(words.size());
    }
};

// Interior letter equal to a unit of the base (positions 2..m-1).
bool is_ideal_word(const Category& base, const CobarWord& w);

CobarCategory cobar(const Category& base, int len_cap);
// Fails with InputError when base operations on non-unit inputs output a unit
// component; the quotient differential is only a differential without that.
CobarCategory reduced_cobar(const Category& base, int len_cap);
bool unit_creating(const Category& base);

// The structural operators, as linear maps on word generators.
Combo cobar_delta(const CobarCategory& ab, GenId g);        // flip one inner to box
Combo cobar_del(const CobarCategory& ab, GenId g, int j);   // apply base m_j to a block
Combo operator_s(const CobarCategory& ab, GenId g);         // flip one box to inner
// Outer variant: a separator is inner when both adjacent letters lie in the
// marked set; S^out flips outer boxes only.
Combo operator_s_out(const CobarCategory& ab, GenId g, const std::set<GenId>& inner_letters);
int outer_separator_count(const CobarCategory& ab, GenId g, const std::set<GenId>& inner_letters);

// Homology of (S^m / S^{m-1}, M_1) via barcode normal form; expected empty for
// m >= 2.
std::map<int, Barcode> graded_quotient_homology(const CobarCategory& ab, int m);

// I_1 = single-letter inclusion, I_k = the all-inner word; loss 0.
Functor inclusion_functor(const Category& base, const CobarCategory& ab);

// Unitalization C+ of a strictly unital category: adds e+ (strict unit) and
// f with m_1(f) = e+ - e per object; all other new ops zero.
Category unitalize(const Category& C);
// The unital functor C -> C+: id on the complement of e, e -> e+, and
// higher components the e-coefficient of m_k times f.
Functor unitalization_inclusion(const Category& C, const Category& Cplus);

// Homotopy unit on a cobar resolution: M_2(f,x) = -e (x) x, M_2(x,f) =
// -(-1)^{deg' x} x (x) e, M_2(f,f) = 0, M_1(f) = e+ - e.
CobarCategory cobar_homotopy_unit(const CobarCategory& ab);

// Strict-unit axioms of e+ plus the A-infinity relations over every tuple
// containing a unit-layer generator (e+ or f). On the reduced cobar these
// close exactly; the interior-unit words that would obstruct them are zero
// in the quotient.
Report verify_homotopy_unit_layer(const CobarCategory& plus);

// Psi_k(x_1..x_k) = t o x_1 o s_1 o ... o x_k o t' from the per-object
// witnesses (DG ambient); loss = max witness bound. Csub is the full
// subcategory on the unprimed family (matched to the ambient by names).
Functor psi_functor(const Category& C, const Category& Csub,
                    const std::vector<Witness>& per_object);

// Unital extension on C+ words with interleaved f-powers, using depth-indexed
// witness families; Psi#_k(f^k) = s^k. Source is `Cplus` = unitalize(C).
Functor sharp_psi_functor(const Category& C, const Category& Cplus,
                          const std::vector<InfWitness>& per_object);

} // namespace ghcat
