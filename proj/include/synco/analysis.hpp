#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "synco/algebra.hpp"
#include "synco/partition.hpp"
#include "synco/relation.hpp"
#include "synco/terms.hpp"
#include "synco/util.hpp"

namespace synco {

// One link of a connecting chain: a witnessing translation applied to the
// generating pair, traversed forward or backward.
struct WitnessStep {
  Term term;
  std::vector<std::int32_t> assignment;
  bool swapped = false;
};

// A chain from = e_0, ..., e_k = to in which step i carries e_i to e_{i+1}:
// forward steps evaluate to (e_i, e_{i+1}) at (gen_a, gen_b), swapped steps
// to (e_{i+1}, e_i).
struct MalcevWitness {
  std::int32_t gen_a = 0, gen_b = 0;  // generating pair
  std::int32_t from = 0, to = 0;      // endpoints the chain connects
  std::vector<WitnessStep> steps;
};

struct WitnessCheck {
  bool ok = false;
  int failing_step = -1;
  std::string detail;
};

// Re-evaluates every step from scratch; independent of how the chain was
// found.
WitnessCheck verify_witness(const FiniteAlgebra& a, const MalcevWitness& w);

// The equivalence generated by {(t(a0), t(b0)) : t in sys}, with minimal
// connecting chains. Chains are minimal in step count; ties go to the
// lexicographically least label sequence, where a step's label is (item
// index, swapped) and item order is the system's canonical order.
class ChainClosure {
 public:
  ChainClosure(const TranslationSystem& sys, int n, std::int32_t a0, std::int32_t b0);

  const Partition& partition() const { return part_; }
  bool same(int u, int v) const { return part_.same(u, v); }

  // Minimal chain from c to d; PreconditionError when they are not related.
  MalcevWitness witness(std::int32_t c, std::int32_t d) const;

 private:
  struct Edge {
    std::int32_t to;
    std::int32_t item;
    bool swapped;
  };
  const TranslationSystem* sys_;
  int n_;
  std::int32_t a0_, b0_;
  Partition part_;
  std::vector<std::vector<Edge>> adj_;
};

// Just the relation, no chain bookkeeping.
Partition chain_closure(const TranslationSystem& sys, int n, std::int32_t a0, std::int32_t b0);

// Pairs reachable within max_len chain steps, plus the diagonal; not
// transitive in general.
Relation bounded_chain_closure(const TranslationSystem& sys, int n, std::int32_t a0,
                               std::int32_t b0, int max_len);

// {(u, v) : every translation in sys keeps (u, v) inside theta}.
Relation translation_kernel(const TranslationSystem& sys, const Relation& theta);
// Same; the kernel of an equivalence is an equivalence.
Partition translation_kernel(const TranslationSystem& sys, const Partition& theta);

// Largest congruence below a given equivalence. The engine fixes the algebra
// and prebuilds, over ordered pairs, the reverse edges of the elementary-map
// action; each query is then one backward sweep from the pairs outside
// theta.
class SynEngine {
 public:
  explicit SynEngine(const FiniteAlgebra& a);

  Partition syn(const Partition& theta) const;

 private:
  const FiniteAlgebra* a_;
  int n_;
  std::vector<std::int64_t> rev_off_;  // CSR offsets over pair indices
  std::vector<std::int32_t> rev_src_;  // concatenated predecessor lists
};

Partition syntactic_congruence(const FiniteAlgebra& a, const Partition& theta);

// Independent route to the same congruence: enumerate all congruences and
// join the ones below theta. Carriers above exhaustive_cap are refused.
Partition syn_oracle(const FiniteAlgebra& a, const Partition& theta, int exhaustive_cap = 6);

// Does the chain closure of every pair equal its principal congruence?
// Reports the first failing generator pair and the first pair its closure
// misses.
struct PrincipalDeterminationResult {
  bool holds = false;
  std::optional<std::pair<std::int32_t, std::int32_t>> pair;
  std::optional<std::pair<std::int32_t, std::int32_t>> missing;
  std::optional<Partition> closure;    // closure at the failing pair
  std::optional<Partition> principal;  // principal congruence there
};

PrincipalDeterminationResult determines_principal(const FiniteAlgebra& a,
                                                  const TranslationSystem& sys);

enum class SweepMode { exhaustive, principal };

// Does the sys-kernel of every equivalence theta equal the largest
// congruence below theta? The exhaustive mode sweeps all partitions (carrier
// capped); the principal mode reduces to determines_principal and turns a
// failing pair into an explicit counterexample theta, namely that pair's
// chain closure. The two modes agree on every algebra.
struct SyntacticDeterminationResult {
  bool holds = false;
  std::optional<Partition> theta;
  std::optional<Partition> kernel;  // sys-kernel of theta
  std::optional<Partition> syn;     // largest congruence below theta
  std::optional<std::pair<std::int32_t, std::int32_t>> pair;  // principal-mode origin
};

SyntacticDeterminationResult determines_syntactic(const FiniteAlgebra& a,
                                                  const TranslationSystem& sys, SweepMode mode,
                                                  int exhaustive_cap = 6);

// Does the f-closure of every pair (a, b) contain some (c, d), c != d, whose
// g-closure is already the full principal congruence of (c, d)?
struct SubcongruenceDeterminationResult {
  bool holds = false;
  std::optional<std::pair<std::int32_t, std::int32_t>> pair;  // first pair with no such (c, d)
};

SubcongruenceDeterminationResult determines_principal_subcongruences(
    const FiniteAlgebra& a, const TranslationSystem& f, const TranslationSystem& g);

// Term family with a cap on chain length.
struct BoundedFamily {
  TermSet terms;
  int max_len = 1;
};

// Length-bounded variant: every (a, b) must reach some (c, d), c != d,
// within f.max_len steps of its f-chains, such that g-chains of length
// <= g.max_len already cover every pair of the principal congruence of
// (c, d).
struct DefinableSubcongruencesResult {
  bool holds = false;
  std::optional<std::pair<std::int32_t, std::int32_t>> pair;
};

DefinableSubcongruencesResult check_definable_subcongruences(const FiniteAlgebra& a,
                                                             const BoundedFamily& f,
                                                             const BoundedFamily& g,
                                                             const Limits& limits = {});

// Kernels compose contravariantly: the kernel under {s(t) : s in f, t in g}
// equals the g-kernel of the f-kernel. Checked literally on one theta.
struct CompositionCheck {
  bool ok = false;
  std::optional<std::pair<std::int32_t, std::int32_t>> diff;
};

CompositionCheck check_kernel_composition(const FiniteAlgebra& a, const TermSet& f,
                                          const TermSet& g, const Relation& theta,
                                          const Limits& limits = {});

// Collapsing the largest congruence sigma below theta preserves kernels:
// (u, v) lies in the kernel over the algebra iff its image pair lies in the
// kernel over the quotient by sigma, and the image of theta has a trivial
// largest congruence below it.
struct QuotientTransferCheck {
  bool kernel_ok = false;
  bool syn_trivial_ok = false;
  bool ok() const { return kernel_ok && syn_trivial_ok; }
};

QuotientTransferCheck check_quotient_kernel_transfer(const FiniteAlgebra& a,
                                                     const Partition& theta, const TermSet& f,
                                                     const Limits& limits = {});

// If (f, g) determines principal subcongruences on the algebra and on every
// quotient, then the composed family {s(t) : s in g, t in f} determines
// syntactic congruences. conclusion is checked exhaustively; ok is the
// implication, so a failed hypothesis passes vacuously.
struct SubcongSyntacticCheck {
  bool hypothesis = false;
  bool conclusion = false;
  bool ok = false;
};

SubcongSyntacticCheck check_subcong_implies_syntactic(const FiniteAlgebra& a, const TermSet& f,
                                                      const TermSet& g, const Limits& limits = {});

}  // namespace synco
