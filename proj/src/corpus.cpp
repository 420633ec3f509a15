#include "synco/corpus.hpp"

#include <algorithm>
#include <string>

#include "synco/qomega.hpp"
#include "synco/util.hpp"

namespace synco {

namespace {

// One binary operation on s elements; tables indexed 0 .. s^(s*s)-1 with the
// first table entry as the most significant digit.
NamedAlgebra one_binop(int s, std::int64_t code) {
  const int cells = s * s;
  std::vector<std::int32_t> table(static_cast<std::size_t>(cells));
  std::int64_t rest = code;
  for (int j = cells - 1; j >= 0; --j) {
    table[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(rest % s);
    rest /= s;
  }
  std::string name = "binop" + std::to_string(s) + "-" + std::to_string(code);
  return {std::move(name), FiniteAlgebra::make(Signature({{"f", 2}}), s, {std::move(table)})};
}

}  // namespace

std::vector<NamedAlgebra> build_corpus(std::uint32_t seed) {
  std::vector<NamedAlgebra> out;
  out.reserve(506);
  // sizes 1, 2, 3 give 1 + 16 + 19683 = 19700 one-binary-op tables
  DetRng rng(seed);
  for (std::int64_t id : sample_indices(19700, 500, rng)) {
    if (id < 1) {
      out.push_back(one_binop(1, id));
    } else if (id < 17) {
      out.push_back(one_binop(2, id - 1));
    } else {
      out.push_back(one_binop(3, id - 17));
    }
  }
  out.push_back({"semilattice2",
                 FiniteAlgebra::make(Signature({{"meet", 2}}), 2, {{0, 0, 0, 1}})});
  out.push_back({"sink2", FiniteAlgebra::make(Signature({{"c", 0}, {"u", 1}}), 2, {{0}, {0, 0}})});
  for (int n = 2; n <= 5; ++n) {
    QTruncation q = make_qn(n);
    out.push_back({"Q" + std::to_string(n), std::move(q.algebra)});
  }
  return out;
}

std::vector<TermSet> sampled_term_families(const Signature& sig, std::uint32_t seed, int cap) {
  const TermSet pool = enumerate_terms(sig, 2);
  const int m = static_cast<int>(pool.size());
  std::vector<std::vector<int>> combos;
  for (int i = 0; i < m; ++i) combos.push_back({i});
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) combos.push_back({i, j});
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      for (int k = j + 1; k < m; ++k) combos.push_back({i, j, k});
    }
  }
  if (static_cast<int>(combos.size()) > cap) {
    DetRng rng(seed);
    auto picked = sample_indices(static_cast<std::int64_t>(combos.size()), cap, rng);
    std::sort(picked.begin(), picked.end());
    std::vector<std::vector<int>> kept;
    kept.reserve(picked.size());
    for (std::int64_t p : picked) kept.push_back(std::move(combos[static_cast<std::size_t>(p)]));
    combos = std::move(kept);
  }
  std::vector<TermSet> families;
  families.reserve(combos.size());
  for (const auto& c : combos) {
    TermSet f;
    f.reserve(c.size());
    for (int i : c) f.push_back(pool[static_cast<std::size_t>(i)]);
    families.push_back(std::move(f));
  }
  return families;
}

}  // namespace synco
