#include "synco/congruence.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>
#include <sstream>

#include "synco/util.hpp"

namespace synco {

CongruenceCertificate is_congruence(const FiniteAlgebra& a, const Partition& p) {
  if (p.size() != a.size()) throw PreconditionError("partition size does not match carrier");
  const int n = a.size();
  std::vector<std::int32_t> args;
  for (int op = 0; op < a.signature().op_count(); ++op) {
    const int k = a.signature().op(op).arity;
    if (k == 0) continue;
    args.assign(static_cast<std::size_t>(k), 0);
    for (int pos = 0; pos < k; ++pos) {
      std::vector<std::int32_t> fixed(static_cast<std::size_t>(k - 1), 0);
      while (true) {
        for (int s = 0, f = 0; s < k; ++s) {
          if (s != pos) args[static_cast<std::size_t>(s)] = fixed[static_cast<std::size_t>(f++)];
        }
        for (int u = 0; u < n; ++u) {
          if (p.rep(u) != u) continue;  // enumerate pairs once per block via representative
          for (int v = u + 1; v < n; ++v) {
            if (p.rep(v) != u) continue;
            args[static_cast<std::size_t>(pos)] = u;
            std::int32_t lhs = a.apply(op, args);
            args[static_cast<std::size_t>(pos)] = v;
            std::int32_t rhs = a.apply(op, args);
            if (!p.same(lhs, rhs)) {
              CompatibilityCounterexample ce;
              ce.op = op;
              args[static_cast<std::size_t>(pos)] = u;
              ce.lhs_args = args;
              args[static_cast<std::size_t>(pos)] = v;
              ce.rhs_args = args;
              ce.lhs_value = lhs;
              ce.rhs_value = rhs;
              return {false, std::move(ce)};
            }
          }
        }
        int carry = k - 2;
        while (carry >= 0 && fixed[static_cast<std::size_t>(carry)] == n - 1) {
          fixed[static_cast<std::size_t>(carry)] = 0;
          --carry;
        }
        if (carry < 0) break;
        ++fixed[static_cast<std::size_t>(carry)];
      }
    }
  }
  return {true, std::nullopt};
}

Partition generate_congruence(const FiniteAlgebra& a,
                              std::span<const std::pair<std::int32_t, std::int32_t>> pairs) {
  auto maps = elementary_maps(a);
  return generate_congruence(a, maps, pairs);
}

Partition generate_congruence(const FiniteAlgebra& a, const std::vector<ElementaryMap>& maps,
                              std::span<const std::pair<std::int32_t, std::int32_t>> pairs) {
  const int n = a.size();
  UnionFind uf(n);
  std::deque<std::pair<std::int32_t, std::int32_t>> work;
  for (auto [u, v] : pairs) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      std::ostringstream os;
      os << "pair (" << u << "," << v << ") outside carrier {0.." << n - 1 << "}";
      throw InputError(os.str());
    }
    if (uf.unite(u, v)) work.emplace_back(u, v);
  }
  while (!work.empty()) {
    auto [u, v] = work.front();
    work.pop_front();
    for (const auto& em : maps) {
      std::int32_t mu = em.map[static_cast<std::size_t>(u)];
      std::int32_t mv = em.map[static_cast<std::size_t>(v)];
      if (uf.unite(mu, mv)) work.emplace_back(mu, mv);
    }
  }
  std::vector<std::int32_t> rep(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rep[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(uf.find(i));
  return Partition::from_rgs(rep);
}

namespace {

std::vector<Partition> congruences_by_enumeration(const FiniteAlgebra& a) {
  std::vector<Partition> out;
  for_each_partition(a.size(), [&](const Partition& p) {
    if (is_congruence(a, p).compatible) out.push_back(p);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Partition> principal_join_congruences(const FiniteAlgebra& a) {
  const int n = a.size();
  auto maps = elementary_maps(a);
  std::vector<Partition> members;
  std::set<Partition> seen;
  auto add = [&](Partition p) {
    if (seen.insert(p).second) members.push_back(std::move(p));
  };
  add(Partition::identity(n));
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      std::pair<std::int32_t, std::int32_t> seed{u, v};
      add(generate_congruence(a, maps, std::span(&seed, 1)));
    }
  }
  // close under binary join; members grows while the outer index advances
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      add(members[i].join(members[j]));
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<Partition> all_congruences(const FiniteAlgebra& a, int exhaustive_cap) {
  if (a.size() > exhaustive_cap) {
    std::ostringstream os;
    os << "carrier size " << a.size() << " exceeds the exhaustive cap " << exhaustive_cap
       << "; use principal-only mode";
    throw InputError(os.str());
  }
  auto by_enum = congruences_by_enumeration(a);
  auto by_join = principal_join_congruences(a);
  if (by_enum != by_join) {
    // both routes are required to agree; a mismatch is an internal defect
    throw std::logic_error("congruence enumeration routes disagree");
  }
  return by_enum;
}

QuotientResult quotient(const FiniteAlgebra& a, const Partition& c) {
  auto cert = is_congruence(a, c);
  if (!cert.compatible) {
    const auto& ce = *cert.counterexample;
    std::ostringstream os;
    os << "partition is not a congruence: operation '" << a.signature().op(ce.op).name
       << "' maps related tuples to unrelated values " << ce.lhs_value << " and " << ce.rhs_value;
    throw NonCongruenceError(os.str(), ce);
  }
  const int n = a.size();
  auto blocks = c.blocks();  // sorted by minimum element: the new numbering
  const int m = static_cast<int>(blocks.size());
  std::vector<std::int32_t> to_new(static_cast<std::size_t>(n));
  std::vector<std::int32_t> to_rep(static_cast<std::size_t>(m));
  for (int b = 0; b < m; ++b) {
    to_rep[static_cast<std::size_t>(b)] = blocks[static_cast<std::size_t>(b)].front();
    for (std::int32_t e : blocks[static_cast<std::size_t>(b)]) to_new[static_cast<std::size_t>(e)] = static_cast<std::int32_t>(b);
  }

  std::vector<std::vector<std::int32_t>> tables;
  std::vector<std::int32_t> args;
  for (int op = 0; op < a.signature().op_count(); ++op) {
    const int k = a.signature().op(op).arity;
    long long entries = checked_pow(m, k, 100'000'000LL);
    std::vector<std::int32_t> t(static_cast<std::size_t>(entries));
    args.assign(static_cast<std::size_t>(k), 0);
    std::vector<std::int32_t> digits(static_cast<std::size_t>(k), 0);
    for (long long idx = 0; idx < entries; ++idx) {
      for (int s = 0; s < k; ++s) args[static_cast<std::size_t>(s)] = to_rep[static_cast<std::size_t>(digits[static_cast<std::size_t>(s)])];
      std::int32_t val = to_new[static_cast<std::size_t>(a.apply(op, args))];
#ifndef NDEBUG
      // well-definedness spot check with an alternative choice of representatives
      for (int s = 0; s < k; ++s) {
        std::int32_t block = digits[static_cast<std::size_t>(s)];
        args[static_cast<std::size_t>(s)] = blocks[static_cast<std::size_t>(block)].back();
      }
      assert(to_new[static_cast<std::size_t>(a.apply(op, args))] == val);
#endif
      t[static_cast<std::size_t>(idx)] = val;
      int carry = k - 1;
      while (carry >= 0 && digits[static_cast<std::size_t>(carry)] == m - 1) {
        digits[static_cast<std::size_t>(carry)] = 0;
        --carry;
      }
      if (carry >= 0) ++digits[static_cast<std::size_t>(carry)];
    }
    tables.push_back(std::move(t));
  }
  return {FiniteAlgebra::make(a.signature(), m, std::move(tables)), std::move(to_new)};
}

std::optional<Partition> monolith(const FiniteAlgebra& a) {
  const int n = a.size();
  auto maps = elementary_maps(a);
  Partition mu = Partition::full(n);
  for (int u = 0; u < n && !mu.is_identity(); ++u) {
    for (int v = u + 1; v < n && !mu.is_identity(); ++v) {
      std::pair<std::int32_t, std::int32_t> seed{u, v};
      mu = mu.meet(generate_congruence(a, maps, std::span(&seed, 1)));
    }
  }
  if (n == 1 || mu.is_identity()) return std::nullopt;
  return mu;
}

}  // namespace synco
