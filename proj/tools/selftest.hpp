#pragma once

#include <cstdint>
#include <iosfwd>

// Seeded randomized invariant suite behind `selftest`. Prints one ok/FAIL
// line per check to `err`, a JSON report to `out`; returns 0 iff all passed.
int run_selftest(std::uint64_t seed, std::ostream& out, std::ostream& err);
