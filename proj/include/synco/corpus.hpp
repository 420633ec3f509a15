#pragma once

#include <cstdint>
#include <vector>

#include "synco/algfile.hpp"
#include "synco/terms.hpp"

namespace synco {

// Fixed evaluation fleet: a seeded sample of 500 of the 19700 algebras with
// one binary operation on at most three elements, a two-element semilattice,
// a two-element algebra whose constant and unary both land on 0, and Q2..Q5.
std::vector<NamedAlgebra> build_corpus(std::uint32_t seed);

// Nonempty subsets of at most three terms of depth <= 2 over the signature,
// ordered by size then index tuple, sampled down to `cap` subsets (original
// order kept) when there are more. Small signatures have fewer than `cap`
// subsets in total; then the whole universe is returned.
std::vector<TermSet> sampled_term_families(const Signature& sig, std::uint32_t seed,
                                           int cap = 200);

}  // namespace synco
