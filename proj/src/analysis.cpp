#include "synco/analysis.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <sstream>

#include "synco/congruence.hpp"
#include "synco/errors.hpp"

namespace synco {

namespace {

void check_element(int n, std::int32_t e, const char* what) {
  if (e < 0 || e >= n) {
    std::ostringstream os;
    os << what << " " << e << " outside carrier of size " << n;
    throw InputError(os.str());
  }
}

Partition principal_congruence(const FiniteAlgebra& a, const std::vector<ElementaryMap>& elems,
                               std::int32_t c, std::int32_t d) {
  std::pair<std::int32_t, std::int32_t> p{c, d};
  return generate_congruence(a, elems, std::span<const std::pair<std::int32_t, std::int32_t>>(&p, 1));
}

}  // namespace

WitnessCheck verify_witness(const FiniteAlgebra& a, const MalcevWitness& w) {
  std::int32_t cur = w.from;
  for (std::size_t i = 0; i < w.steps.size(); ++i) {
    const WitnessStep& s = w.steps[i];
    std::int32_t u, v;
    try {
      u = s.term.eval(a, w.gen_a, s.assignment);
      v = s.term.eval(a, w.gen_b, s.assignment);
    } catch (const std::exception& e) {
      return {false, static_cast<int>(i), e.what()};
    }
    const std::int32_t src = s.swapped ? v : u;
    const std::int32_t dst = s.swapped ? u : v;
    if (src != cur) {
      std::ostringstream os;
      os << "step " << i << " starts at " << src << ", chain is at " << cur;
      return {false, static_cast<int>(i), os.str()};
    }
    cur = dst;
  }
  if (cur != w.to) {
    std::ostringstream os;
    os << "chain ends at " << cur << ", not " << w.to;
    return {false, -1, os.str()};
  }
  return {true, -1, ""};
}

ChainClosure::ChainClosure(const TranslationSystem& sys, int n, std::int32_t a0, std::int32_t b0)
    : sys_(&sys), n_(n), a0_(a0), b0_(b0), adj_(static_cast<std::size_t>(n)) {
  check_element(n, a0, "element");
  check_element(n, b0, "element");
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  for (std::size_t i = 0; i < sys.items.size(); ++i) {
    const auto& m = sys.items[i].map;
    const std::int32_t u = m[static_cast<std::size_t>(a0)];
    const std::int32_t v = m[static_cast<std::size_t>(b0)];
    if (u == v) continue;
    adj_[static_cast<std::size_t>(u)].push_back({v, static_cast<std::int32_t>(i), false});
    adj_[static_cast<std::size_t>(v)].push_back({u, static_cast<std::int32_t>(i), true});
    pairs.emplace_back(u, v);
  }
  part_ = Partition::from_pairs(n, pairs);
}

MalcevWitness ChainClosure::witness(std::int32_t c, std::int32_t d) const {
  check_element(n_, c, "element");
  check_element(n_, d, "element");
  MalcevWitness w;
  w.gen_a = a0_;
  w.gen_b = b0_;
  w.from = c;
  w.to = d;
  if (c == d) return w;
  if (!part_.same(c, d)) {
    std::ostringstream os;
    os << "(" << c << ", " << d << ") is not in the closure of (" << a0_ << ", " << b0_ << ")";
    throw PreconditionError(os.str());
  }
  // distances to d, then a greedy least-label walk along shortest chains
  std::vector<std::int32_t> dist(static_cast<std::size_t>(n_), -1);
  std::deque<std::int32_t> queue{d};
  dist[static_cast<std::size_t>(d)] = 0;
  while (!queue.empty()) {
    const std::int32_t x = queue.front();
    queue.pop_front();
    for (const Edge& e : adj_[static_cast<std::size_t>(x)]) {
      if (dist[static_cast<std::size_t>(e.to)] == -1) {
        dist[static_cast<std::size_t>(e.to)] = dist[static_cast<std::size_t>(x)] + 1;
        queue.push_back(e.to);
      }
    }
  }
  std::int32_t cur = c;
  while (cur != d) {
    const Edge* best = nullptr;
    for (const Edge& e : adj_[static_cast<std::size_t>(cur)]) {
      if (dist[static_cast<std::size_t>(e.to)] != dist[static_cast<std::size_t>(cur)] - 1) continue;
      if (!best || std::pair(e.item, e.swapped) < std::pair(best->item, best->swapped)) best = &e;
    }
    assert(best != nullptr);
    const Translation& t = sys_->items[static_cast<std::size_t>(best->item)];
    w.steps.push_back({t.term, t.assignment, best->swapped});
    cur = best->to;
  }
  return w;
}

Partition chain_closure(const TranslationSystem& sys, int n, std::int32_t a0, std::int32_t b0) {
  check_element(n, a0, "element");
  check_element(n, b0, "element");
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  pairs.reserve(sys.items.size());
  for (const Translation& t : sys.items) {
    pairs.emplace_back(t.map[static_cast<std::size_t>(a0)], t.map[static_cast<std::size_t>(b0)]);
  }
  return Partition::from_pairs(n, pairs);
}

Relation bounded_chain_closure(const TranslationSystem& sys, int n, std::int32_t a0,
                               std::int32_t b0, int max_len) {
  check_element(n, a0, "element");
  check_element(n, b0, "element");
  Relation out = Relation::diagonal(n);
  if (max_len <= 0) return out;
  std::vector<std::vector<std::int32_t>> adj(static_cast<std::size_t>(n));
  std::vector<std::int32_t> touched;
  for (const Translation& t : sys.items) {
    const std::int32_t u = t.map[static_cast<std::size_t>(a0)];
    const std::int32_t v = t.map[static_cast<std::size_t>(b0)];
    if (u == v) continue;
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
    touched.push_back(u);
    touched.push_back(v);
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  std::vector<std::int32_t> dist(static_cast<std::size_t>(n));
  for (std::int32_t s : touched) {
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<std::int32_t> queue{s};
    dist[static_cast<std::size_t>(s)] = 0;
    while (!queue.empty()) {
      const std::int32_t x = queue.front();
      queue.pop_front();
      if (x != s) out.set(s, x);
      if (dist[static_cast<std::size_t>(x)] == max_len) continue;
      for (std::int32_t y : adj[static_cast<std::size_t>(x)]) {
        if (dist[static_cast<std::size_t>(y)] == -1) {
          dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
          queue.push_back(y);
        }
      }
    }
  }
  return out;
}

Relation translation_kernel(const TranslationSystem& sys, const Relation& theta) {
  const int n = theta.size();
  Relation out(n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      bool keep = true;
      for (const Translation& t : sys.items) {
        if (!theta.test(t.map[static_cast<std::size_t>(u)], t.map[static_cast<std::size_t>(v)])) {
          keep = false;
          break;
        }
      }
      if (keep) out.set(u, v);
    }
  }
  return out;
}

Partition translation_kernel(const TranslationSystem& sys, const Partition& theta) {
  const int n = theta.size();
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      bool keep = true;
      for (const Translation& t : sys.items) {
        if (!theta.same(t.map[static_cast<std::size_t>(u)], t.map[static_cast<std::size_t>(v)])) {
          keep = false;
          break;
        }
      }
      if (keep) pairs.emplace_back(u, v);
    }
  }
  return Partition::from_pairs(n, pairs);
}

namespace {
constexpr long long kSynEdgeBudget = 20'000'000;
}

SynEngine::SynEngine(const FiniteAlgebra& a) : a_(&a), n_(a.size()) {
  const auto elems = elementary_maps(a);
  const std::size_t np = static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
  // Edges go from each ordered pair to its image under an elementary map.
  // Images on the diagonal never leave theta and are dropped, as are
  // self-loops; what remains is stored reversed, in CSR form.
  std::vector<std::int32_t> incoming(np, 0);
  long long edges = 0;
  auto for_each_edge = [&](auto&& fn) {
    for (int u = 0; u < n_; ++u) {
      for (int v = 0; v < n_; ++v) {
        if (u == v) continue;
        const std::int32_t p = static_cast<std::int32_t>(u * n_ + v);
        for (const ElementaryMap& e : elems) {
          const std::int32_t iu = e.map[static_cast<std::size_t>(u)];
          const std::int32_t iv = e.map[static_cast<std::size_t>(v)];
          if (iu == iv) continue;
          const std::int32_t q = iu * n_ + iv;
          if (q == p) continue;
          fn(p, q);
        }
      }
    }
  };
  for_each_edge([&](std::int32_t, std::int32_t q) {
    ++incoming[static_cast<std::size_t>(q)];
    ++edges;
  });
  if (edges > kSynEdgeBudget) {
    std::ostringstream os;
    os << "pair graph needs " << edges << " edges, over the budget " << kSynEdgeBudget;
    throw ResourceError(os.str());
  }
  rev_off_.assign(np + 1, 0);
  for (std::size_t q = 0; q < np; ++q) rev_off_[q + 1] = rev_off_[q] + incoming[q];
  rev_src_.resize(static_cast<std::size_t>(edges));
  std::vector<std::int64_t> cursor(rev_off_.begin(), rev_off_.end() - 1);
  for_each_edge([&](std::int32_t p, std::int32_t q) {
    rev_src_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(q)]++)] = p;
  });
}

Partition SynEngine::syn(const Partition& theta) const {
  if (theta.size() != n_) {
    throw PreconditionError("partition size does not match the algebra");
  }
  const std::size_t np = static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
  // A pair is bad when some translation moves it outside theta: start from
  // the pairs already outside and walk edges backwards.
  std::vector<char> bad(np, 0);
  std::vector<std::int32_t> stack;
  for (int u = 0; u < n_; ++u) {
    for (int v = 0; v < n_; ++v) {
      if (u != v && !theta.same(u, v)) {
        bad[static_cast<std::size_t>(u * n_ + v)] = 1;
        stack.push_back(static_cast<std::int32_t>(u * n_ + v));
      }
    }
  }
  while (!stack.empty()) {
    const std::int32_t q = stack.back();
    stack.pop_back();
    for (std::int64_t i = rev_off_[static_cast<std::size_t>(q)];
         i < rev_off_[static_cast<std::size_t>(q) + 1]; ++i) {
      const std::int32_t p = rev_src_[static_cast<std::size_t>(i)];
      if (!bad[static_cast<std::size_t>(p)]) {
        bad[static_cast<std::size_t>(p)] = 1;
        stack.push_back(p);
      }
    }
  }
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      if (!bad[static_cast<std::size_t>(u * n_ + v)]) pairs.emplace_back(u, v);
    }
  }
  Partition out = Partition::from_pairs(n_, pairs);
  assert([&] {
    // the survivors form an equivalence and the largest congruence below
    for (int u = 0; u < n_; ++u) {
      for (int v = 0; v < n_; ++v) {
        if (u != v && out.same(u, v) != !bad[static_cast<std::size_t>(u * n_ + v)]) return false;
      }
    }
    return out.refines(theta) && is_congruence(*a_, out).compatible;
  }());
  return out;
}

Partition syntactic_congruence(const FiniteAlgebra& a, const Partition& theta) {
  return SynEngine(a).syn(theta);
}

Partition syn_oracle(const FiniteAlgebra& a, const Partition& theta, int exhaustive_cap) {
  Partition best = Partition::identity(a.size());
  for (const Partition& c : all_congruences(a, exhaustive_cap)) {
    if (c.refines(theta)) best = best.join(c);
  }
  assert(best.refines(theta));
  return best;
}

PrincipalDeterminationResult determines_principal(const FiniteAlgebra& a,
                                                  const TranslationSystem& sys) {
  const int n = a.size();
  const auto elems = elementary_maps(a);
  for (std::int32_t x = 0; x < n; ++x) {
    for (std::int32_t y = x + 1; y < n; ++y) {
      Partition pr = principal_congruence(a, elems, x, y);
      Partition cl = chain_closure(sys, n, x, y);
      assert(cl.refines(pr));
      if (cl == pr) continue;
      PrincipalDeterminationResult res;
      res.holds = false;
      res.pair = {x, y};
      for (int u = 0; u < n && !res.missing; ++u) {
        for (int v = u + 1; v < n; ++v) {
          if (pr.same(u, v) && !cl.same(u, v)) {
            res.missing = {u, v};
            break;
          }
        }
      }
      res.closure = std::move(cl);
      res.principal = std::move(pr);
      return res;
    }
  }
  PrincipalDeterminationResult res;
  res.holds = true;
  return res;
}

SyntacticDeterminationResult determines_syntactic(const FiniteAlgebra& a,
                                                  const TranslationSystem& sys, SweepMode mode,
                                                  int exhaustive_cap) {
  const int n = a.size();
  if (mode == SweepMode::exhaustive) {
    if (n > exhaustive_cap) {
      std::ostringstream os;
      os << "carrier size " << n << " exceeds the exhaustive sweep cap " << exhaustive_cap
         << "; use the principal mode";
      throw InputError(os.str());
    }
    SynEngine engine(a);
    SyntacticDeterminationResult res;
    res.holds = true;
    for_each_partition(n, [&](const Partition& theta) {
      Partition kernel = translation_kernel(sys, theta);
      Partition s = engine.syn(theta);
      if (kernel == s) return true;
      res.holds = false;
      res.theta = theta;
      res.kernel = std::move(kernel);
      res.syn = std::move(s);
      return false;
    });
    return res;
  }
  auto dp = determines_principal(a, sys);
  SyntacticDeterminationResult res;
  if (dp.holds) {
    res.holds = true;
    return res;
  }
  Partition theta = *dp.closure;
  Partition kernel = translation_kernel(sys, theta);
  Partition s = syntactic_congruence(a, theta);
  assert(kernel != s);
  res.holds = false;
  res.theta = std::move(theta);
  res.kernel = std::move(kernel);
  res.syn = std::move(s);
  res.pair = dp.pair;
  return res;
}

SubcongruenceDeterminationResult determines_principal_subcongruences(const FiniteAlgebra& a,
                                                                     const TranslationSystem& f,
                                                                     const TranslationSystem& g) {
  const int n = a.size();
  const auto elems = elementary_maps(a);
  // -1 unknown, else whether the g-closure of (c, d) is its full principal
  // congruence
  std::vector<signed char> memo(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
  auto determined = [&](std::int32_t c, std::int32_t d) {
    const std::size_t i = static_cast<std::size_t>(c) * static_cast<std::size_t>(n) +
                          static_cast<std::size_t>(d);
    if (memo[i] < 0) {
      memo[i] = chain_closure(g, n, c, d) == principal_congruence(a, elems, c, d) ? 1 : 0;
    }
    return memo[i] == 1;
  };
  for (std::int32_t x = 0; x < n; ++x) {
    for (std::int32_t y = x + 1; y < n; ++y) {
      Partition cl = chain_closure(f, n, x, y);
      bool found = false;
      for (std::int32_t c = 0; c < n && !found; ++c) {
        for (std::int32_t d = c + 1; d < n; ++d) {
          if (cl.same(c, d) && determined(c, d)) {
            found = true;
            break;
          }
        }
      }
      if (!found) {
        SubcongruenceDeterminationResult res;
        res.holds = false;
        res.pair = {x, y};
        return res;
      }
    }
  }
  SubcongruenceDeterminationResult res;
  res.holds = true;
  return res;
}

DefinableSubcongruencesResult check_definable_subcongruences(const FiniteAlgebra& a,
                                                             const BoundedFamily& f,
                                                             const BoundedFamily& g,
                                                             const Limits& limits) {
  const int n = a.size();
  const auto fsys = TranslationSystem::from_term_set(a, f.terms, limits);
  const auto gsys = TranslationSystem::from_term_set(a, g.terms, limits);
  const auto elems = elementary_maps(a);
  std::vector<signed char> memo(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
  auto determined = [&](std::int32_t c, std::int32_t d) {
    const std::size_t i = static_cast<std::size_t>(c) * static_cast<std::size_t>(n) +
                          static_cast<std::size_t>(d);
    if (memo[i] < 0) {
      Relation bounded = bounded_chain_closure(gsys, n, c, d, g.max_len);
      Relation full = Relation::from_partition(principal_congruence(a, elems, c, d));
      memo[i] = bounded == full ? 1 : 0;
    }
    return memo[i] == 1;
  };
  for (std::int32_t x = 0; x < n; ++x) {
    for (std::int32_t y = x + 1; y < n; ++y) {
      Relation reach = bounded_chain_closure(fsys, n, x, y, f.max_len);
      bool found = false;
      for (std::int32_t c = 0; c < n && !found; ++c) {
        for (std::int32_t d = c + 1; d < n; ++d) {
          if (reach.test(c, d) && determined(c, d)) {
            found = true;
            break;
          }
        }
      }
      if (!found) {
        DefinableSubcongruencesResult res;
        res.holds = false;
        res.pair = {x, y};
        return res;
      }
    }
  }
  DefinableSubcongruencesResult res;
  res.holds = true;
  return res;
}

CompositionCheck check_kernel_composition(const FiniteAlgebra& a, const TermSet& f,
                                          const TermSet& g, const Relation& theta,
                                          const Limits& limits) {
  const auto composed = TranslationSystem::from_term_set(a, compose_sets(f, g), limits);
  const auto fsys = TranslationSystem::from_term_set(a, f, limits);
  const auto gsys = TranslationSystem::from_term_set(a, g, limits);
  Relation lhs = translation_kernel(composed, theta);
  Relation rhs = translation_kernel(gsys, translation_kernel(fsys, theta));
  CompositionCheck res;
  res.ok = lhs == rhs;
  if (!res.ok) res.diff = lhs.first_difference(rhs);
  return res;
}

QuotientTransferCheck check_quotient_kernel_transfer(const FiniteAlgebra& a,
                                                     const Partition& theta, const TermSet& f,
                                                     const Limits& limits) {
  const int n = a.size();
  Partition sigma = syntactic_congruence(a, theta);
  QuotientResult q = quotient(a, sigma);
  const auto& pi = q.element_map;
  const int m = q.algebra.size();
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (theta.same(u, v)) {
        pairs.emplace_back(pi[static_cast<std::size_t>(u)], pi[static_cast<std::size_t>(v)]);
      }
    }
  }
  Partition eta = Partition::from_pairs(m, pairs);
  assert([&] {
    // theta is recoverable from its image because sigma refines it
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        if (theta.same(u, v) !=
            eta.same(pi[static_cast<std::size_t>(u)], pi[static_cast<std::size_t>(v)])) {
          return false;
        }
      }
    }
    return true;
  }());
  Partition kernel_a = translation_kernel(TranslationSystem::from_term_set(a, f, limits), theta);
  Partition kernel_q =
      translation_kernel(TranslationSystem::from_term_set(q.algebra, f, limits), eta);
  QuotientTransferCheck res;
  res.kernel_ok = true;
  for (int u = 0; u < n && res.kernel_ok; ++u) {
    for (int v = 0; v < n; ++v) {
      if (kernel_a.same(u, v) !=
          kernel_q.same(pi[static_cast<std::size_t>(u)], pi[static_cast<std::size_t>(v)])) {
        res.kernel_ok = false;
        break;
      }
    }
  }
  res.syn_trivial_ok = syntactic_congruence(q.algebra, eta).is_identity();
  return res;
}

SubcongSyntacticCheck check_subcong_implies_syntactic(const FiniteAlgebra& a, const TermSet& f,
                                                      const TermSet& g, const Limits& limits) {
  SubcongSyntacticCheck res;
  res.hypothesis = true;
  for (const Partition& rho : all_congruences(a, limits.exhaustive_cap)) {
    QuotientResult q = quotient(a, rho);
    const auto fq = TranslationSystem::from_term_set(q.algebra, f, limits);
    const auto gq = TranslationSystem::from_term_set(q.algebra, g, limits);
    if (!determines_principal_subcongruences(q.algebra, fq, gq).holds) {
      res.hypothesis = false;
      break;
    }
  }
  const auto composed = TranslationSystem::from_term_set(a, compose_sets(g, f), limits);
  res.conclusion =
      determines_syntactic(a, composed, SweepMode::exhaustive, limits.exhaustive_cap).holds;
  res.ok = !res.hypothesis || res.conclusion;
  return res;
}

}  // namespace synco
