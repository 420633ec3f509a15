#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace synco {

// A partition of {0, ..., n-1} in canonical form: each element stores the
// minimum element of its block as representative.
class Partition {
 public:
  Partition() = default;

  static Partition identity(int n);  // all singletons
  static Partition full(int n);      // one block
  // Equivalence closure of the given pairs (no algebra involved).
  static Partition from_pairs(int n, std::span<const std::pair<std::int32_t, std::int32_t>> pairs);
  static Partition from_blocks(int n, const std::vector<std::vector<std::int32_t>>& blocks);
  // Restricted-growth string: rgs[i] is the block number of element i.
  static Partition from_rgs(std::span<const std::int32_t> rgs);

  int size() const { return static_cast<int>(rep_.size()); }
  std::int32_t rep(int i) const { return rep_[static_cast<std::size_t>(i)]; }
  bool same(int u, int v) const {
    return rep_[static_cast<std::size_t>(u)] == rep_[static_cast<std::size_t>(v)];
  }
  int block_count() const;
  std::vector<std::vector<std::int32_t>> blocks() const;  // sorted by minimum element
  bool is_identity() const;

  // True when every block of *this is contained in a block of coarser.
  bool refines(const Partition& coarser) const;
  Partition meet(const Partition& other) const;
  Partition join(const Partition& other) const;

  bool operator==(const Partition&) const = default;
  std::strong_ordering operator<=>(const Partition& other) const {
    return rep_ <=> other.rep_;
  }

  // Literal syntax: blocks separated by '|', elements by whitespace, e.g.
  // "0 2 | 1 | 3 4". Unmentioned elements become singletons.
  static Partition parse(int n, std::string_view literal);
  std::string format(const std::vector<std::string>* labels = nullptr,
                     bool omit_singletons = false) const;

 private:
  std::vector<std::int32_t> rep_;
};

// Calls fn for every partition of {0, ..., n-1}, in ascending
// restricted-growth-string order. fn may return false to stop early.
void for_each_partition(int n, const std::function<bool(const Partition&)>& fn);

std::uint64_t bell_number(int n);  // n <= 25

}  // namespace synco
