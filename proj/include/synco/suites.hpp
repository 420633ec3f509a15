#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "synco/util.hpp"

namespace synco {

struct SuiteReport {
  std::string name;
  long long instances = 0;
  long long refutations = 0;
  std::vector<std::string> failures;  // first few, rendered
};

// Each suite sweeps the seeded corpus and counts property instances and
// refutations; descriptions of the first failures ride along.

// Exhaustive and principal sweeps return the same verdict per (algebra,
// term family).
SuiteReport run_agreement_suite(std::uint32_t seed, int threads, const Limits& limits = {});
// At monoid stabilization, the chain closure of every pair is its principal
// congruence, and every emitted connecting chain re-verifies step by step.
SuiteReport run_malcev_suite(std::uint32_t seed, int threads, const Limits& limits = {});
// The kernel of a composed family equals the composition of the kernels.
SuiteReport run_comp_suite(std::uint32_t seed, int threads, const Limits& limits = {});
// Pairs inside a kernel have chain closures inside the defining equivalence.
SuiteReport run_chainbound_suite(std::uint32_t seed, int threads, const Limits& limits = {});
// Kernels transfer to the quotient by the largest congruence below theta.
SuiteReport run_quotient_suite(std::uint32_t seed, int threads, const Limits& limits = {});
// Subcongruence determination on the algebra and its quotients forces
// syntactic determination by the composed family.
SuiteReport run_subcong_suite(std::uint32_t seed, int threads, const Limits& limits = {});

// which: one suite name or "all".
std::vector<SuiteReport> run_suites(const std::string& which, std::uint32_t seed, int threads,
                                    const Limits& limits = {});

}  // namespace synco
