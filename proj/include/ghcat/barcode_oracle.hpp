#pragma once

// Independent reference for barcode computation, used by the acceptance suite:
// exhaustive Smith-style reduction trying every admissible pivot order and
// checking invariance of the resulting exponent multiset. Deliberately shares
// no code path with barcode_normal_form.

#include <map>

#include "ghcat/filtered.hpp"

namespace ghcat {

struct OracleResult {
    std::map<int, Barcode> barcodes;
    bool pivot_order_invariant = true;
};

OracleResult barcode_oracle(const FilteredComplex& c);

} // namespace ghcat
