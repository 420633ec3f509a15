#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "synco/algebra.hpp"
#include "synco/errors.hpp"
#include "synco/partition.hpp"

namespace synco {

// Two argument tuples differing in one slot whose images land in different
// blocks; evidence that a partition is not compatible with the operation.
struct CompatibilityCounterexample {
  int op = 0;
  std::vector<std::int32_t> lhs_args;
  std::vector<std::int32_t> rhs_args;
  std::int32_t lhs_value = 0;
  std::int32_t rhs_value = 0;
};

struct CongruenceCertificate {
  bool compatible = false;
  std::optional<CompatibilityCounterexample> counterexample;
};

struct NonCongruenceError : PreconditionError {
  CompatibilityCounterexample counterexample;
  NonCongruenceError(const std::string& msg, CompatibilityCounterexample ce)
      : PreconditionError(msg), counterexample(std::move(ce)) {}
};

// Compatibility check. Scanning argument tuples that differ in a single slot
// suffices: tuples differing in several slots are bridged one slot at a time.
CongruenceCertificate is_congruence(const FiniteAlgebra& a, const Partition& p);

// Smallest congruence containing the given pairs: union-find seeded with the
// pairs, then a FIFO worklist closing each merged pair under every elementary
// translation.
Partition generate_congruence(const FiniteAlgebra& a,
                              std::span<const std::pair<std::int32_t, std::int32_t>> pairs);
// Same, reusing precomputed elementary maps (for batch callers).
Partition generate_congruence(const FiniteAlgebra& a, const std::vector<ElementaryMap>& maps,
                              std::span<const std::pair<std::int32_t, std::int32_t>> pairs);

// Every congruence of a. Computed twice, by exhaustive partition enumeration
// and by join-closure of the principal congruences, and cross-checked; the
// result is sorted lexicographically by representative vector. Carriers
// larger than `exhaustive_cap` are refused (use principal-only mode).
std::vector<Partition> all_congruences(const FiniteAlgebra& a, int exhaustive_cap = 6);

// Principal-only mode: join-closure of the principal congruences plus the
// identity. Works at any size; same sort order.
std::vector<Partition> principal_join_congruences(const FiniteAlgebra& a);

struct QuotientResult {
  FiniteAlgebra algebra;
  std::vector<std::int32_t> element_map;  // old element -> new element
};

// Quotient by a congruence; blocks are renumbered by ascending minimum
// representative. Throws NonCongruenceError when c is not compatible.
QuotientResult quotient(const FiniteAlgebra& a, const Partition& c);

// Intersection of all principal congruences over distinct pairs, when it is
// not the identity; nullopt otherwise (one-element algebras included).
std::optional<Partition> monolith(const FiniteAlgebra& a);

}  // namespace synco
