#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "synco/algebra.hpp"
#include "synco/analysis.hpp"
#include "synco/partition.hpp"
#include "synco/util.hpp"

namespace synco {

// The n-th member of the Q family: carrier {0, a_0, b_0, ..., a_{n-1},
// b_{n-1}} encoded as 0, a_i = 2i+1, b_i = 2i+2. meet is equality-meet with
// bottom 0, prod sends (a_i, b_{i+1}) to b_i and everything else to 0, zero
// is the constant 0.
struct QTruncation {
  int n = 0;
  FiniteAlgebra algebra;
  std::vector<std::string> labels;
};

QTruncation make_qn(int n);

// Value of the first nullary operation; InputError when there is none.
std::int32_t zero_element(const FiniteAlgebra& a);

struct SentenceCounterexample {
  std::vector<std::int32_t> values;  // violating instantiation, in variable order
};

struct SentenceResult {
  bool holds = false;
  std::optional<SentenceCounterexample> counterexample;
};

// x*y != zero implies x != zero and y != zero. Counterexample (x, y) is
// lexicographically least.
SentenceResult check_nonzero_factors(const FiniteAlgebra& a, int op, std::int32_t zero,
                                     int threads = 1);

// x*y = x'*y' != zero implies x = x', y = y', x != zero, y != zero.
// Counterexample (x, y, x', y') is lexicographically least.
SentenceResult check_cancellation(const FiniteAlgebra& a, int op, std::int32_t zero,
                                  int threads = 1);

// Consecutive truncations agree on common indices, and the only product in
// `hi` touching an element missing from `lo` that is nonzero is
// a_{n-1} * b_n = b_{n-1} for n = lo.n.
struct CoherenceResult {
  bool ok = false;
  std::string detail;
};

CoherenceResult check_truncation_coherence(const QTruncation& lo, const QTruncation& hi);

// For each i, the least depth whose chain closure of (0, a_i) in the
// smallest truncation containing the full descent, Q_{i+2}, already merges
// (0, b_0); the witness chain is re-verified. Depths grow strictly with i.
struct DepthGrowthRow {
  int index = 0;       // i of the generator a_i
  int truncation = 0;  // the Q_n used
  int depth = 0;       // least sufficient depth
  MalcevWitness witness;
};

std::vector<DepthGrowthRow> depth_growth_experiment(int max_index, const Limits& limits = {});

// Principal congruences grouped by value, their meet, and whether that meet
// is a monolith (nontrivial least congruence among principals).
struct PrincipalClass {
  Partition congruence;
  std::vector<std::pair<std::int32_t, std::int32_t>> generators;
};

struct CongruenceReport {
  std::vector<PrincipalClass> classes;  // sorted by representative vector
  Partition intersection;
  bool has_monolith = false;
};

CongruenceReport qn_congruence_report(const QTruncation& q);

std::string render_report(const CongruenceReport& r, const QTruncation& q, bool tsv);

}  // namespace synco
