#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ghcat/novikov.hpp"
#include "ghcat/report.hpp"

namespace ghcat {

// Multiset of exponents in Q_{>0} union {infinity}; nullopt encodes infinity.
// Entries equal to 0 are dropped on construction (Lambda_0 / T^0 Lambda_0 = 0),
// the rest sorted non-increasing with the infinite entries first.
struct Barcode {
    std::vector<std::optional<Rat>> entries;

    static Barcode make(std::vector<std::optional<Rat>> raw);
    std::size_t infinite_count() const;
    bool operator==(const Barcode& o) const { return entries == o.entries; }
    std::string str() const;
};

// f(lambda; barcode) = #{ i | a_i > lambda }, infinite entries always counted.
long spectral_dimension(const Barcode& b, const Rat& lambda);

// Spectral-dimension step functions agree off the joint discontinuity set;
// on barcodes this is multiset equality of the positive entries.
bool almost_isomorphic(const Barcode& a, const Barcode& b);

// f(l; b1) <= f(l - eps; b2) and f(l; b2) <= f(l - eps; b1) for all l >= eps.
// Step functions, so only the breakpoints entries(b1) u entries(b2) +- eps matter.
bool spectral_lipschitz_check(const Barcode& b1, const Barcode& b2, const Rat& eps);

// Entrywise limit of a barcode sequence under the Lipschitz bound
// |a^n_i - a^{n+1}_i| <= losses[n] (sorted matching, missing entries read as 0,
// infinite entries must match). Value = last stage, error = declared tail bound.
struct LimitBarcode {
    Barcode value;
    Rat error;
};
LimitBarcode limit_barcode(const std::vector<Barcode>& seq, const std::vector<Rat>& losses,
                           const Rat& loss_tail = Rat(0));

// A cochain complex of filtered graded free modules over Lambda_0: generators with
// integer degree and valuation shift, differential of degree +1 given by sparse
// scalar entries d(src) = sum entry * dst.
struct ComplexGen {
    std::string name;
    int deg = 0;
    Rat shift; // valuation shift, >= 0; 0 for zero-energy-generated modules
};

struct FilteredComplex {
    std::vector<ComplexGen> gens;
    std::map<std::pair<int, int>, Scalar> diff; // (src index, dst index) -> entry
    Trunc trunc = Trunc::lambda0(Rat(4));

    int find(const std::string& name) const; // -1 when absent
    Scalar entry(int src, int dst) const;
};

// Lists every violated d^2 = 0 entry (mod T^E), every filtration violation
// val(entry) + shift(src) < shift(dst), and degree mismatches.
Report verify_complex(const FilteredComplex& c);

// Pivot elimination over the valuation ring: repeatedly select the entry of
// globally minimal valuation (ties broken by smallest (src,dst) index), clear its
// row and column, record the diagonal exponents. Homology in degree k is reported
// as the torsion exponents of the degree-(k-1) differential plus one infinite
// entry per never-paired generator. Requires every generator shift to be 0.
std::map<int, Barcode> barcode_normal_form(const FilteredComplex& c);

} // namespace ghcat
