#pragma once

#include <iosfwd>

#include "ghcat/report.hpp"

namespace ghcat {

// Runs the acceptance suite: one check per criterion, a pass/fail line each
// when `out` is given. Deterministic (fixed seeds).
Report run_acceptance(std::ostream* out);

} // namespace ghcat
