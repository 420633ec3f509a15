#include "synco/relation.hpp"

#include <bit>

#include "synco/errors.hpp"
#include "synco/util.hpp"

namespace synco {

Relation Relation::diagonal(int n) {
  Relation r(n);
  for (int i = 0; i < n; ++i) r.set(i, i);
  return r;
}

Relation Relation::from_partition(const Partition& p) {
  Relation r(p.size());
  for (const auto& b : p.blocks()) {
    for (std::int32_t u : b) {
      for (std::int32_t v : b) r.set(u, v);
    }
  }
  return r;
}

std::size_t Relation::count() const {
  std::size_t c = 0;
  for (std::uint64_t w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Relation::subset_of(const Relation& other) const {
  if (other.n_ != n_) throw PreconditionError("relation size mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] & ~other.bits_[i]) return false;
  }
  return true;
}

Relation Relation::operator&(const Relation& other) const {
  if (other.n_ != n_) throw PreconditionError("relation size mismatch");
  Relation r(n_);
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] & other.bits_[i];
  return r;
}

Relation Relation::operator|(const Relation& other) const {
  if (other.n_ != n_) throw PreconditionError("relation size mismatch");
  Relation r(n_);
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] | other.bits_[i];
  return r;
}

bool Relation::is_equivalence() const {
  for (int u = 0; u < n_; ++u) {
    if (!test(u, u)) return false;
  }
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      if (test(u, v) != test(v, u)) return false;
    }
  }
  // transitivity via class representatives: u ~ v and v ~ w must give u ~ w
  for (int u = 0; u < n_; ++u) {
    for (int v = 0; v < n_; ++v) {
      if (!test(u, v)) continue;
      for (int w = 0; w < n_; ++w) {
        if (test(v, w) && !test(u, w)) return false;
      }
    }
  }
  return true;
}

Partition Relation::to_partition() const {
  if (!is_equivalence()) throw PreconditionError("relation is not an equivalence");
  std::vector<std::int32_t> rep(static_cast<std::size_t>(n_), -1);
  for (int u = 0; u < n_; ++u) {
    if (rep[static_cast<std::size_t>(u)] != -1) continue;
    for (int v = u; v < n_; ++v) {
      if (test(u, v)) rep[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(u);
    }
  }
  return Partition::from_rgs(rep);
}

std::optional<std::pair<std::int32_t, std::int32_t>> Relation::first_difference(
    const Relation& other) const {
  if (other.n_ != n_) throw PreconditionError("relation size mismatch");
  for (int u = 0; u < n_; ++u) {
    for (int v = 0; v < n_; ++v) {
      if (test(u, v) != other.test(u, v)) return std::make_pair(u, v);
    }
  }
  return std::nullopt;
}

}  // namespace synco
