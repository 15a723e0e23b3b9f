#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ghcat/ainf.hpp"
#include "ghcat/homotopy.hpp"

namespace ghcat {

// One matched object pair with its Hofer certificate.
struct Matching {
    ObId c1 = 0, c2 = 0; // ambient object ids
    std::optional<Witness> finite;
    std::optional<InfWitness> infinite;
};

// Gromov-Hausdorff certificate: an ambient category containing both sides as
// strict full subcategories, with every object of each side matched to the
// other side by a verifying witness of bound < eps.
struct GHCertificate {
    const Category* ambient = nullptr;
    std::vector<ObId> side1, side2;
    std::vector<Matching> matchings;
    Rat bound;
    bool infinite_mode = false;
};

// Checks the partition, the bit-exact full-subcategory embeddings against the
// supplied side presentations, and the two-sided Hausdorff matching condition.
Report verify_gh_certificate(const GHCertificate& cert, const Category& C1, const Category& C2);

// A letter of a glue word: which input category it lives in and its generator.
struct GlueLetter {
    int tag = 0; // 0 = C12, 1 = C23
    GenId gen = 0;

    auto operator<=>(const GlueLetter&) const = default;
};
using GlueWord = std::vector<GlueLetter>;

// The glue category of two DG categories sharing a middle subcategory
// (identified by object and generator names): morphisms are canonical
// alternating words (no middle-subcategory letters survive, adjacent same-tag
// letters are composed), composition is concatenate-then-contract, the
// coboundary is the letterwise Leibniz rule.
struct GlueCategory {
    Category cat;
    const Category* c12 = nullptr;
    const Category* c23 = nullptr;
    std::vector<GlueWord> words; // generator id -> canonical word
    std::map<GlueWord, GenId> index;
    std::set<std::string> middle_objects;
    std::set<std::string> middle_gens;
    int len_cap = 4;

    GenId word_gen(const GlueWord& w) const;
    bool letter_is_middle(const GlueLetter& l) const;
    // number of tag-23 letters (the N filtration level for side-1 pairs)
    int n_level(GenId g) const;
    // combination of canonical words from a raw letter string; the optional
    // pick function chooses which violation to rewrite first (confluence is
    // order-independent and property-tested)
    std::map<GlueWord, Scalar> normalize(const GlueWord& raw, const Scalar& coeff,
                                         const std::function<std::size_t(std::size_t)>& pick =
                                             nullptr) const;
    // embed a combination over C12 or C23 generators as single-letter words
    Combo embed(int tag, const Combo& x) const;
};

GlueCategory build_glue_category(const Category& C12, const Category& C23,
                                 const std::vector<std::string>& middle_objects,
                                 const std::vector<std::string>& middle_gens, int len_cap);

// The averaged homotopy on side-1 pairs: G applied to each tag-23 slot with
// Koszul signs, divided by the N level. sub_g maps each C23 hom pair to the
// per-pair homotopy (as a linear map on generators).
struct GlueHomotopy {
    std::map<std::pair<ObId, ObId>, std::map<GenId, Combo>> sub_g; // on C23 generators
};
Combo glue_g_hat(const GlueCategory& glue, const GlueHomotopy& h, GenId word);
// per-pair conditions: d G + G d - id lands in the middle part, G = 0 on it,
// plus the N-level statements on the glue words up to the cap
Report verify_glue_homotopy(const GlueCategory& glue, const GlueHomotopy& h, ObId a, ObId b);

// Composes two GH certificates sharing the middle category into one over the
// glue ambient; matchings composed witness-wise, bound added exactly.
struct TriangleResult {
    GlueCategory ambient;
    Category restricted; // full subcategory of the glue on side1 u side3
    GHCertificate cert;  // references `restricted`
};
TriangleResult gh_triangle_certificate(const GHCertificate& cert12, const GHCertificate& cert23,
                                       const Category& C1, const Category& C2, const Category& C3,
                                       const std::vector<std::string>& middle_gens, int len_cap);

} // namespace ghcat
