#pragma once

#include <optional>
#include <vector>

#include "ghcat/ainf.hpp"

namespace ghcat {

// The n-gon configuration of curves on a surface: n objects L_1..L_n, hom
// generators p_{i,i+1} and p_{1,n}, and the single positive-energy operation
// m_{n-1}(p_{1,2},..,p_{n-1,n}) = T^area p_{1,n}. Areas are inputs.
struct NgonConfig {
    int n = 3;
    Rat area;                       // > 0
    std::optional<Rat> perturbed;   // < area when present
};

// Z/2-graded category of the configuration; differentials vanish and the
// relations hold term by term (the output generator cannot re-enter the
// input chain).
Category build_ngon_category(const NgonConfig& cfg, bool use_perturbed = false);

// Operation-valuation spectra of the two categories, their gap, and a
// brute-force search over diagonal unit rescalings confirming that no strict
// filtered isomorphism fixing objects and scaling generators exists when the
// areas differ.
struct PerturbReport {
    std::vector<Rat> spectrum;           // valuations of all op coefficients
    std::vector<Rat> spectrum_perturbed;
    Rat gap;                             // |area - area'|
    bool spectra_equal = false;
    bool isomorphism_found = false;      // over the searched unit set
    long units_searched = 0;
};
PerturbReport distinguish_perturbed(const NgonConfig& cfg);

} // namespace ghcat
