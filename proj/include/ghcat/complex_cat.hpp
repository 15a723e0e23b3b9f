#pragma once

#include <vector>

#include "ghcat/ainf.hpp"
#include "ghcat/filtered.hpp"

namespace ghcat {

// The DG category of filtered cochain complexes: one object per complex,
// hom(V,W) spanned by the elementary maps between generators, m_1 the hom
// differential d o f - (-1)^{|f|} f o d, m_2 the composite with Koszul signs.
// Strictly unital (identity maps assembled from elementary endomorphisms are
// not single generators, so units are added as explicit generators).
Category complex_category(const std::vector<FilteredComplex>& complexes, Rat cap);

// Generator index of the elementary map src_gen -> dst_gen inside hom(V,W),
// by generator names; -1 when absent.
GenId elementary_map(const Category& C, int obj_src, int obj_dst, const std::string& from,
                     const std::string& to);

} // namespace ghcat
