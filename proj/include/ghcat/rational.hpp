#pragma once

#include <gmpxx.h>
#include <string>

#include "ghcat/errors.hpp"

namespace ghcat {

// Exact rational numbers. mpq_class is always kept canonical (reduced, den > 0).
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses decimal-free "p/q" or "p". Throws InputError on anything else.
Rat rat_parse(const std::string& s);

// Canonical form: "p/q", or "p" when q == 1.
std::string rat_str(const Rat& r);

} // namespace ghcat
