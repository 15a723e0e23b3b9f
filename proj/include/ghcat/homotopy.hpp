#pragma once

#include <vector>

#include "ghcat/ainf.hpp"

namespace ghcat {

// Homotopy-equivalence 4-tuple between two objects, certifying
// d_Hof(c1,c2) <= eps1 + eps2. t's have degree 0, s's degree -1; all entries
// are Lambda-valued combinations.
struct Witness {
    ObId c1 = 0, c2 = 0;
    Combo t12, t21, s1, s2;
    Rat eps1, eps2;
};

Rat hofer_bound(const Witness& w);

// identity witness at an object of a unital category
Witness identity_witness(const Category& C, ObId c);

// t12 -> T^delta t12, t21 -> T^-delta t21; losses (eps1 + delta, eps2 - delta).
Witness shift_witness(const Category& C, const Witness& w, const Rat& delta);
// the delta making eps1 = eps2 = (eps1 + eps2)/2
Witness balance_witness(const Category& C, const Witness& w);

// (a) m2(t21,t12) + m1(s2) = e_{c2}, (b) m2(t12,t21) + m1(s1) = e_{c1},
// (c) m1(t12) = m1(t21) = 0, plus the valuation bounds
// v(t21) >= -eps1, v(t12) >= -eps2, v(s_i) >= -(eps1+eps2), and degrees.
Report verify_witness(const Category& C, const Witness& w);

// Triangle-inequality composition. t13 = m2(t12,t23), t31 = m2(t32,t21),
// s'_1 = s1 - m2(t12, m2(s'_2, t21)) and symmetrically; the non-composable
// higher terms of the displayed formula are dropped and the candidate is
// checker-gated (CompositionUnverified on failure). Losses add exactly.
Witness compose_witnesses(const Category& C, const Witness& w12, const Witness& w23);

// Along a unital functor with loss rho: t' = Phi_1(t), s'_1 = Phi_1(s_1) +
// Phi_2(t12,t21), s'_2 = Phi_1(s_2) + Phi_2(t21,t12); bound grows by 2 rho.
Witness pushforward_witness(const Functor& phi, const Witness& w);

// Depth-indexed families solving the Maurer-Cartan system; index k-1 holds the
// depth-k entry (deg' t^k = 1-2k, deg' s^k = -2k).
struct InfWitness {
    ObId c1 = 0, c2 = 0;
    std::vector<Combo> t12, t21, s1, s2;
    Rat eps1, eps2;

    int depth() const { return static_cast<int>(t12.size()); }
};

Rat hofer_bound(const InfWitness& w);

// depth-1 infinite witness from a finite one (deeper families zero)
InfWitness extend_witness(const Witness& w, int depth = 1);
InfWitness identity_inf_witness(const Category& C, ObId c, int depth = 1);

// Enumerates the composable symbol sequences of each Maurer-Cartan equation up
// to the witness depth and checks all six families mod T^E; valuation bounds
// v(t^k_12) >= -eps2-(k-1)eps, v(t^k_21) >= -eps1-(k-1)eps, v(s^k) >= -k eps
// with eps = eps1+eps2. In DG mode the recursion form of the equations is
// cross-checked as well.
Report verify_inf_witness(const Category& C, const InfWitness& w);

// DG-mode composition: alternating sums over interior s-factors at the middle
// object with the degree constraint selecting the terms; checker-gated.
InfWitness compose_inf_witnesses(const Category& C, const InfWitness& w12, const InfWitness& w23);

// (t^k_12)' = sum over the MC symbol sequences of Phi applied; bound + 2 rho.
InfWitness pushforward_inf_witness(const Functor& phi, const InfWitness& w);

// T^{k eps} s^k, T^{eps2+(k-1)eps} t^k_12, T^{eps1+(k-1)eps} t^k_21; all
// rescaled entries have valuation >= 0 and satisfy the T^eps-deformed
// equations (DG mode).
struct RescaledWitness {
    std::vector<Combo> t12, t21, s1, s2;
    Rat eps;
};
RescaledWitness rescale_inf_witness(const Category& C, const InfWitness& w, Report* rep = nullptr);

} // namespace ghcat
