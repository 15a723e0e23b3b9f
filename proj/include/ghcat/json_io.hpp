#pragma once

#include <json.hpp>

#include <string>

#include "ghcat/ainf.hpp"
#include "ghcat/filtered.hpp"
#include "ghcat/glue.hpp"
#include "ghcat/homotopy.hpp"
#include "ghcat/limits.hpp"
#include "ghcat/surface.hpp"

namespace ghcat {

using Json = nlohmann::ordered_json;

// scalars serialize as arrays of ["p/q", "r/s"] (exponent, coefficient) pairs
Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);

// combinations as arrays of [generator name, scalar]
Json combo_to_json(const Combo& x, const Category& C);
Combo combo_from_json(const Json& j, const Category& C);

Json barcode_to_json(const Barcode& b);
Barcode barcode_from_json(const Json& j);
// horizontal bars of length a_i; infinite entries rendered as arrows
std::string barcode_svg(const std::map<int, Barcode>& per_degree);

Json complex_to_json(const FilteredComplex& c);
FilteredComplex complex_from_json(const Json& j);

Json category_to_json(const Category& C);
Category category_from_json(const Json& j);

// functor files name generators; source and target categories are supplied
// separately by the caller
Json functor_to_json(const Functor& f);
Functor functor_from_json(const Json& j, const Category& src, const Category& dst);

Json witness_to_json(const Witness& w, const Category& C);
Witness witness_from_json(const Json& j, const Category& C);
Json inf_witness_to_json(const InfWitness& w, const Category& C);
InfWitness inf_witness_from_json(const Json& j, const Category& C);

Json report_to_json(const Report& r);

// reads a file, failing with InputError (with the path) on problems
Json load_json(const std::string& path);

// 64-bit FNV-1a of the file bytes, as fixed-width hex
std::string file_hash(const std::string& path);

} // namespace ghcat
