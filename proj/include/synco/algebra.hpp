#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "synco/signature.hpp"

namespace synco {

// A finite algebra on carrier {0, ..., n-1}. Each operation of arity k is a
// flat table of n^k entries in lexicographic argument order with the first
// argument most significant.
class FiniteAlgebra {
 public:
  FiniteAlgebra() = default;  // empty; real instances come from make
  static FiniteAlgebra make(Signature sig, int size,
                            std::vector<std::vector<std::int32_t>> tables);

  int size() const { return size_; }
  const Signature& signature() const { return sig_; }
  const std::vector<std::int32_t>& table(int op) const {
    return tables_[static_cast<std::size_t>(op)];
  }

  std::int32_t apply(int op, std::span<const std::int32_t> args) const {
    const auto& t = tables_[static_cast<std::size_t>(op)];
    std::size_t idx = 0;
    for (std::int32_t v : args) idx = idx * static_cast<std::size_t>(size_) + static_cast<std::size_t>(v);
    return t[idx];
  }

  std::uint64_t table_checksum(int op) const;

 private:
  Signature sig_;
  int size_ = 0;
  std::vector<std::vector<std::int32_t>> tables_;
};

// The unary self-maps x -> op(c_1,...,x,...,c_k-1): one per (operation of
// positive arity, argument slot, values of the remaining slots), then
// deduplicated by map vector. Provenance keeps the first witness in
// (operation, slot, lexicographic values) order. Nullary operations
// contribute none.
struct ElementaryMap {
  std::vector<std::int32_t> map;
  int op = 0;
  int pos = 0;
  std::vector<std::int32_t> args;  // fixed values of the other slots, in slot order
};

std::vector<ElementaryMap> elementary_maps(const FiniteAlgebra& a,
                                           long long budget = 4'000'000);

}  // namespace synco
