#pragma once

#include <iosfwd>

namespace gmms {

// Runs the full acceptance suite, printing one PASS/FAIL line per criterion.
// Returns true iff every criterion passed.
bool run_acceptance(std::ostream& out);

} // namespace gmms
