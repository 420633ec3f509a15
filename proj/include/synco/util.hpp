#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace synco {

// Knobs shared by the enumeration-heavy operations. All are hard limits:
// exceeding one raises ResourceError (or InputError for the partition cap),
// never a silent truncation.
struct Limits {
  long long translation_budget = 1'000'000;  // sum over terms of n^params
  long long monoid_cap = 100'000;            // distinct translation maps
  int exhaustive_cap = 6;                    // max carrier size for full partition sweeps
};

inline constexpr std::uint32_t kDefaultSeed = 0xC0FFEE;

// FNV-1a over int32 entries widened to 8 little-endian bytes; platform stable.
inline std::uint64_t fnv1a64(std::span<const std::int32_t> data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::int32_t raw : data) {
    auto v = static_cast<std::uint64_t>(static_cast<std::int64_t>(raw));
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (v >> (8 * byte)) & 0xFF;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

// n^k, guarded; throws ResourceError when the value would exceed `cap`.
long long checked_pow(int n, int k, long long cap);

// Union-find with path halving. Roots are always the minimum element of the
// class, so find() doubles as the canonical representative.
struct UnionFind {
  std::vector<std::int32_t> parent;

  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }

  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  // True when two distinct classes were merged.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

// Deterministic RNG. The mt19937 stream is identical on every platform; we
// deliberately avoid std::uniform_int_distribution and std::shuffle, whose
// results are implementation-defined. Modulo bias is irrelevant for the
// sampling duties this serves.
struct DetRng {
  std::mt19937 gen;
  explicit DetRng(std::uint32_t seed) : gen(seed) {}
  std::uint32_t next() { return gen(); }
  std::uint32_t pick(std::uint32_t bound) { return bound ? next() % bound : 0; }
};

// First min(take, count) entries of a deterministic Fisher-Yates shuffle of
// [0, count), in draw order.
std::vector<std::int64_t> sample_indices(std::int64_t count, std::int64_t take, DetRng& rng);

// Runs body(i) for i in [begin, end), splitting work across `threads`.
// Callers must write results to disjoint slots so the outcome does not
// depend on the schedule.
void parallel_for(std::int64_t begin, std::int64_t end, int threads,
                  const std::function<void(std::int64_t)>& body);

}  // namespace synco
