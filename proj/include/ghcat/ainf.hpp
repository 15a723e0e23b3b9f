#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ghcat/filtered.hpp"
#include "ghcat/novikov.hpp"
#include "ghcat/report.hpp"

namespace ghcat {

using GenId = int;
using ObId = int;

// Sparse morphism combination sum_g coeff_g * g; canonical (no zero scalars).
using Combo = std::map<GenId, Scalar>;

Combo combo_add(const Combo& a, const Combo& b);
Combo combo_sub(const Combo& a, const Combo& b);
Combo combo_neg(const Combo& a);
Combo combo_scale(const Combo& a, const Scalar& c, const Trunc& t);
Combo combo_trunc(const Combo& a, const Trunc& t);
bool combo_is_zero(const Combo& a);
std::string combo_str(const Combo& a, const struct Category& C);

struct Generator {
    std::string name;
    ObId src = 0, dst = 0;
    int deg = 0; // residue when grading_mod > 0
    Rat shift;   // valuation shift, >= 0
};

// Finite presentation of a filtered A-infinity category: objects, graded free
// filtered hom modules given by generators, sparse multilinear operations m_k
// keyed by composable generator tuples.
struct Category {
    std::vector<std::string> objects;
    std::vector<Generator> gens;
    std::map<std::vector<GenId>, Combo> ops; // arity = key.size(), never 0 (m_0 absent)
    int grading_mod = 0;                     // 0 = Z graded, else Z/2N with value 2N
    int arity_cap = 4;
    Trunc trunc = Trunc::lambda0(Rat(4));
    std::map<ObId, GenId> units;     // optional strict unit per object
    std::vector<Rat> gap_monoid;     // optional generating set of the gap monoid
    std::vector<int> word_len;       // letters per generator (cobar); empty = all 1
    int word_cap = 0;                // 0 = no word-length cap on relation tuples

    ObId add_object(const std::string& name);
    GenId add_gen(const std::string& name, ObId src, ObId dst, int deg, Rat shift = Rat(0));
    void set_op(std::vector<GenId> in, Combo out);
    void add_op(const std::vector<GenId>& in, GenId out, const Scalar& coeff);

    GenId find_gen(const std::string& name) const; // -1 when absent
    ObId find_object(const std::string& name) const;
    const Combo* op(const std::vector<GenId>& in) const; // nullptr when zero
    int norm_deg(int d) const { return grading_mod ? ((d % grading_mod) + grading_mod) % grading_mod : d; }
    int dprime_par(GenId g) const { return ((gens[g].deg - 1) % 2 + 2) % 2; }
    int letters(GenId g) const {
        return g < static_cast<GenId>(word_len.size()) ? word_len[g] : 1;
    }
    int max_arity() const;
    bool is_dg() const { return max_arity() <= 2; }
    bool composable(const std::vector<GenId>& in) const;
    bool unital() const { return units.size() == objects.size() && !objects.empty(); }
    GenId unit_of(ObId c) const;

    // m_k evaluated multilinearly on combinations
    Combo eval(const std::vector<Combo>& args) const;
    Combo eval_gens(const std::vector<GenId>& args) const;
    // m_2 with the DG sign change: x o y = (-1)^{deg x} m_2(x, y)
    Combo circ(const Combo& x, const Combo& y) const;
    Combo d1(const Combo& x) const; // m_1
};

// Enumerates composable generator tuples of the given arity (respecting the
// word-length cap when set) and calls fn on each.
void for_each_tuple(const Category& C, int arity,
                    const std::function<void(const std::vector<GenId>&)>& fn);

// A-infinity relations with shifted-degree Koszul signs, checked on every
// composable tuple up to the arity cap, mod T^E.
Report verify_ainf(const Category& C);

// m_2(e,y) = y, (-1)^{deg x} m_2(x,e) = x, m_1(e) = 0, m_k(..,e,..) = 0 for k >= 3,
// v(e) = 0, deg e = 0.
Report verify_strict_unit(const Category& C);

// Every op coefficient exponent lies in the monoid generated by gap, decided by
// bounded search below the energy cap.
bool verify_gapped(const Category& C, const std::vector<Rat>& gap);

// Bar words of a category: composable generator tuples with a scalar weight.
using Word = std::vector<GenId>;
using WordCombo = std::map<Word, Scalar>;

WordCombo word_combo_add(const WordCombo& a, const WordCombo& b);
WordCombo word_combo_sub(const WordCombo& a, const WordCombo& b);
bool word_combo_is_zero(const WordCombo& a);

// Coderivation d-hat on bar words induced by the m_k.
WordCombo bar_coderivation(const Category& C, const Word& w);
// All k-1 deconcatenations of a bar word.
std::vector<std::pair<Word, Word>> bar_coproduct(const Word& w);

// Filtered A-infinity functor with energy loss: object map plus components
// Phi_k keyed by composable source tuples, Lambda-valued coefficients.
struct Functor {
    const Category* src = nullptr;
    const Category* dst = nullptr;
    std::map<ObId, ObId> ob;
    std::map<std::vector<GenId>, Combo> comps;
    Rat loss;

    const Combo* comp(const std::vector<GenId>& in) const;
    Combo apply1(const Combo& x) const; // linear part on combinations
    // Phi_k evaluated multilinearly on combinations
    Combo eval(const std::vector<Combo>& args) const;
    // Cohomomorphism lift Phi-hat on a source bar word.
    WordCombo hat(const Word& w) const;
};

Functor identity_functor(const Category& C);
// Strict full subcategory on the listed objects; generator and object names
// are preserved.
Category full_subcategory(const Category& C, const std::vector<ObId>& obs);
// Components extracted from hat(Phi2) o hat(Phi1); declared loss = sum.
Functor compose_functors(const Functor& f2, const Functor& f1);
// Intertwining Phi-hat o d-hat = d-hat o Phi-hat on bar words up to the arity
// cap, plus the per-component filtration-loss bound.
Report verify_functor(const Functor& f);
// Phi_1(e) = e', Phi_k(..,e,..) = 0 for k >= 2.
Report verify_unital_functor(const Functor& f);

} // namespace ghcat
