#pragma once

// Seeded self-test suites run by `peckit selftest`: closed forms against
// brute force, cone minimality both ways, duality and the l1 bound.

#include <cstdint>
#include <string>
#include <vector>

namespace peckit {

struct SelftestOptions {
  std::uint64_t seed = 20240611;
  /// Oracle cases; the other suites use a fifth of this, at least 10.
  std::uint64_t cases = 1000;
};

struct SuiteResult {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  /// FNV-1a hash of the generated cases; equal seeds give equal digests.
  std::string digest;
  std::vector<std::string> messages;  // first few failures

  bool passed() const { return failures == 0; }
};

std::vector<SuiteResult> run_selftest(const SelftestOptions& options);

}  // namespace peckit
