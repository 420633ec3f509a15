#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "synco/partition.hpp"

namespace synco {

// A binary relation on {0, ..., n-1} as a packed n*n bitset.
class Relation {
 public:
  Relation() = default;
  explicit Relation(int n)
      : n_(n), bits_((static_cast<std::size_t>(n) * static_cast<std::size_t>(n) + 63) / 64, 0) {}

  static Relation diagonal(int n);
  static Relation from_partition(const Partition& p);

  int size() const { return n_; }

  bool test(int u, int v) const {
    std::size_t i = idx(u, v);
    return (bits_[i >> 6] >> (i & 63)) & 1;
  }
  void set(int u, int v) {
    std::size_t i = idx(u, v);
    bits_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  void set_sym(int u, int v) {
    set(u, v);
    set(v, u);
  }

  std::size_t count() const;
  bool subset_of(const Relation& other) const;
  Relation operator&(const Relation& other) const;
  Relation operator|(const Relation& other) const;
  bool operator==(const Relation&) const = default;

  bool is_equivalence() const;
  // Requires an equivalence relation; throws PreconditionError otherwise.
  Partition to_partition() const;

  // First (u, v) in lexicographic order on which the two relations differ.
  std::optional<std::pair<std::int32_t, std::int32_t>> first_difference(const Relation& other) const;

 private:
  std::size_t idx(int u, int v) const {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
  }
  int n_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace synco
