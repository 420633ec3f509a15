#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "synco/algebra.hpp"
#include "synco/util.hpp"

namespace synco {

// A term with one distinguished variable x and pairwise-distinct parameter
// slots. Every operation node lies on the root-to-x path (each node has
// exactly one non-parameter child), so a term is the list of (operation,
// x-slot position) frames from the root down to x. The empty list is the bare
// variable x. depth() counts operation nodes on that path.
//
// Parameter slots are numbered left to right in the printed form: the left
// slots of each frame from root to leaf, then the right slots from leaf back
// to root.
struct Frame {
  std::int32_t op = 0;
  std::int32_t pos = 0;
  auto operator<=>(const Frame&) const = default;
};

class Term {
 public:
  Term() = default;  // bare x
  static Term variable() { return Term(); }
  static Term elementary(int op, int pos) {
    Term t;
    t.frames_.push_back({static_cast<std::int32_t>(op), static_cast<std::int32_t>(pos)});
    return t;
  }

  const std::vector<Frame>& frames() const { return frames_; }
  int depth() const { return static_cast<int>(frames_.size()); }
  bool is_variable() const { return frames_.empty(); }
  int param_count(const Signature& sig) const;

  // Substitution of `inner` for this term's x.
  Term compose(const Term& inner) const;

  // Value of the term at x = x_val under the given parameter assignment
  // (slot order as described above).
  std::int32_t eval(const FiniteAlgebra& a, std::int32_t x_val,
                    std::span<const std::int32_t> assignment) const;

  // Canonical order: depth first, then frames lexicographically from the root.
  std::strong_ordering operator<=>(const Term& other) const {
    if (auto c = depth() <=> other.depth(); c != 0) return c;
    return frames_ <=> other.frames_;
  }
  bool operator==(const Term&) const = default;

  // Literal syntax: "x", "_" for a parameter slot, prefix application, e.g.
  // "meet(x,_)" or "prod(meet(_,x),_)". Exactly one child per application is
  // a term; the rest are slots.
  static Term parse(const Signature& sig, std::string_view text);
  std::string format(const Signature& sig) const;

  // Throws InputError unless every frame names an operation of the signature
  // with positive arity and a valid x position.
  void validate(const Signature& sig) const;

 private:
  std::vector<Frame> frames_;
};

// Term sets are kept sorted in canonical term order with duplicates removed
// (deduplication is by tree equality only).
using TermSet = std::vector<Term>;

void canonicalize(TermSet& terms);

// x plus one term per (positive-arity operation, slot).
TermSet elementary_terms(const Signature& sig);

// All terms of depth <= max_depth, canonically ordered. The term count is
// capped by `budget`.
TermSet enumerate_terms(const Signature& sig, int max_depth, long long budget = 1'000'000);

// {s(t) : s in outer, t in inner}; parameter slots stay disjoint by
// construction.
TermSet compose_sets(const TermSet& outer, const TermSet& inner);

// A unary self-map together with one witnessing (term, assignment) pair.
struct Translation {
  std::vector<std::int32_t> map;
  Term term;
  std::vector<std::int32_t> assignment;
};

// The translations a term set induces on a fixed algebra, deduplicated by map
// vector. Items are in a deterministic canonical order (the generation order
// documented for each factory), which downstream witness search uses to break
// ties.
struct TranslationSystem {
  std::vector<Translation> items;
  // Set when built by from_depth: depth at which the map set stopped growing,
  // or -1 when the cutoff hit first.
  int stabilization_depth = -1;

  bool stabilized() const { return stabilization_depth >= 0; }

  // Literal enumeration: terms in canonical order, assignments lexicographic;
  // sum over terms of n^params is bounded by limits.translation_budget.
  static TranslationSystem from_term_set(const FiniteAlgebra& a, const TermSet& terms,
                                         const Limits& limits = {});

  // Level-by-level closure of the elementary maps under composition,
  // equivalent to from_term_set over all terms of depth <= max_depth but
  // without enumerating assignments. Each distinct map keeps the canonically
  // least witnessing term. Stops early when a level adds nothing; map count
  // is bounded by limits.monoid_cap. max_depth < 0 means: run to
  // stabilization.
  static TranslationSystem from_depth(const FiniteAlgebra& a, int max_depth,
                                      const Limits& limits = {});
};

// All translations of the algebra: from_depth run to stabilization. The
// identity is item 0 (witnessed by the bare x).
TranslationSystem translation_monoid(const FiniteAlgebra& a, const Limits& limits = {});

// Least depth d such that terms of depth <= d already induce every
// translation in the monoid.
int monoid_stabilization_depth(const FiniteAlgebra& a, const Limits& limits = {});

}  // namespace synco
