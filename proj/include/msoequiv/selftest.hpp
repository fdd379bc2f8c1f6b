#pragma once

// Randomized consistency checks against the brute-force oracles.

#include <cstdint>
#include <ostream>

namespace msoeq {

struct SelftestReport {
  std::size_t checks = 0;
  std::size_t failures = 0;
};

/// Compiler against model checking, Parikh images against word
/// enumeration, and decider verdicts against differential evaluation.
/// One line per failure goes to `log`.
SelftestReport selftest(std::uint64_t seed, std::ostream& log);

}  // namespace msoeq
