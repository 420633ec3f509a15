#include "synco/qomega.hpp"

#include <cassert>
#include <map>
#include <sstream>

#include "synco/congruence.hpp"
#include "synco/errors.hpp"
#include "synco/terms.hpp"

namespace synco {

QTruncation make_qn(int n) {
  if (n < 1 || n > 2000) {
    std::ostringstream os;
    os << "truncation index " << n << " outside [1, 2000]";
    throw InputError(os.str());
  }
  const int size = 2 * n + 1;
  const auto sz = static_cast<std::size_t>(size);
  std::vector<std::int32_t> meet(sz * sz, 0);
  std::vector<std::int32_t> prod(sz * sz, 0);
  for (int x = 0; x < size; ++x) {
    meet[static_cast<std::size_t>(x) * sz + static_cast<std::size_t>(x)] =
        static_cast<std::int32_t>(x);
    // a_i = 2i+1, b_{i+1} = 2i+4 = a_i + 3, b_i = a_i + 1
    if (x % 2 == 1 && x + 3 < size) {
      prod[static_cast<std::size_t>(x) * sz + static_cast<std::size_t>(x + 3)] =
          static_cast<std::int32_t>(x + 1);
    }
  }
  Signature sig({{"meet", 2}, {"prod", 2}, {"zero", 0}});
  QTruncation q;
  q.n = n;
  q.algebra = FiniteAlgebra::make(std::move(sig), size,
                                  {std::move(meet), std::move(prod), {0}});
  q.labels.reserve(sz);
  q.labels.emplace_back("0");
  for (int i = 0; i < n; ++i) {
    q.labels.push_back("a" + std::to_string(i));
    q.labels.push_back("b" + std::to_string(i));
  }
  return q;
}

std::int32_t zero_element(const FiniteAlgebra& a) {
  for (int op = 0; op < a.signature().op_count(); ++op) {
    if (a.signature().op(op).arity == 0) return a.table(op)[0];
  }
  throw InputError("no nullary operation to serve as zero");
}

SentenceResult check_nonzero_factors(const FiniteAlgebra& a, int op, std::int32_t zero,
                                     int threads) {
  const int n = a.size();
  std::vector<std::int32_t> hit(static_cast<std::size_t>(n), -1);  // per x: least bad y
  parallel_for(0, n, threads, [&](std::int64_t xi) {
    const auto x = static_cast<std::int32_t>(xi);
    for (std::int32_t y = 0; y < n; ++y) {
      const std::int32_t args[2] = {x, y};
      if (a.apply(op, args) != zero && (x == zero || y == zero)) {
        hit[static_cast<std::size_t>(x)] = y;
        return;
      }
    }
  });
  for (std::int32_t x = 0; x < n; ++x) {
    if (hit[static_cast<std::size_t>(x)] >= 0) {
      return {false, SentenceCounterexample{{x, hit[static_cast<std::size_t>(x)]}}};
    }
  }
  return {true, std::nullopt};
}

SentenceResult check_cancellation(const FiniteAlgebra& a, int op, std::int32_t zero,
                                  int threads) {
  const int n = a.size();
  const auto sz = static_cast<std::size_t>(n);
  std::vector<std::int32_t> prod(sz * sz);
  for (std::int32_t x = 0; x < n; ++x) {
    for (std::int32_t y = 0; y < n; ++y) {
      const std::int32_t args[2] = {x, y};
      prod[static_cast<std::size_t>(x) * sz + static_cast<std::size_t>(y)] = a.apply(op, args);
    }
  }
  // first two preimage pairs of each value, as x*n+y codes, in scan order
  std::vector<std::array<std::int32_t, 2>> pre(sz, {-1, -1});
  for (std::int32_t code = 0; code < n * n; ++code) {
    const std::int32_t v = prod[static_cast<std::size_t>(code)];
    if (v == zero) continue;
    auto& slots = pre[static_cast<std::size_t>(v)];
    if (slots[0] < 0) {
      slots[0] = code;
    } else if (slots[1] < 0) {
      slots[1] = code;
    }
  }
  // per x: least (y, x', y') completing a violation
  std::vector<std::array<std::int32_t, 3>> hit(sz, {-1, -1, -1});
  parallel_for(0, n, threads, [&](std::int64_t xi) {
    const auto x = static_cast<std::int32_t>(xi);
    for (std::int32_t y = 0; y < n; ++y) {
      const std::int32_t v = prod[static_cast<std::size_t>(x) * sz + static_cast<std::size_t>(y)];
      if (v == zero) continue;
      const auto& slots = pre[static_cast<std::size_t>(v)];
      std::int32_t other;
      if (x == zero || y == zero) {
        other = slots[0];  // any preimage completes the violation
      } else {
        const std::int32_t self = x * n + y;
        other = slots[0] != self ? slots[0] : slots[1];
      }
      if (other >= 0) {
        hit[static_cast<std::size_t>(x)] = {y, other / n, other % n};
        return;
      }
    }
  });
  for (std::int32_t x = 0; x < n; ++x) {
    const auto& h = hit[static_cast<std::size_t>(x)];
    if (h[0] >= 0) return {false, SentenceCounterexample{{x, h[0], h[1], h[2]}}};
  }
  return {true, std::nullopt};
}

CoherenceResult check_truncation_coherence(const QTruncation& lo, const QTruncation& hi) {
  if (hi.n != lo.n + 1) throw PreconditionError("coherence check wants consecutive truncations");
  const int ls = lo.algebra.size();
  for (int op = 0; op < lo.algebra.signature().op_count(); ++op) {
    const int k = lo.algebra.signature().op(op).arity;
    if (k == 0) {
      if (lo.algebra.table(op)[0] != hi.algebra.table(op)[0]) {
        return {false, "constants differ"};
      }
      continue;
    }
    for (std::int32_t x = 0; x < ls; ++x) {
      for (std::int32_t y = 0; y < ls; ++y) {
        const std::int32_t args[2] = {x, y};
        const std::int32_t vl = lo.algebra.apply(op, args);
        const std::int32_t vh = hi.algebra.apply(op, args);
        if (vl != vh) {
          std::ostringstream os;
          os << lo.algebra.signature().op(op).name << "(" << lo.labels[static_cast<std::size_t>(x)]
             << ", " << lo.labels[static_cast<std::size_t>(y)] << ") is "
             << lo.labels[static_cast<std::size_t>(vl)] << " in Q" << lo.n << " but "
             << hi.labels[static_cast<std::size_t>(vh)] << " in Q" << hi.n;
          return {false, os.str()};
        }
      }
    }
  }
  // boundary: the one nonzero product involving a new element
  const std::int32_t an1 = static_cast<std::int32_t>(2 * lo.n - 1);  // a_{n-1}
  const std::int32_t bn = static_cast<std::int32_t>(2 * lo.n + 2);   // b_n, new
  const int hs = hi.algebra.size();
  const int prod_op = hi.algebra.signature().index_of("prod");
  const int meet_op = hi.algebra.signature().index_of("meet");
  for (std::int32_t x = 0; x < hs; ++x) {
    for (std::int32_t y = 0; y < hs; ++y) {
      if (x < ls && y < ls) continue;
      const std::int32_t args[2] = {x, y};
      const std::int32_t expect_prod = (x == an1 && y == bn) ? an1 + 1 : 0;
      if (hi.algebra.apply(prod_op, args) != expect_prod) {
        std::ostringstream os;
        os << "unexpected boundary product at (" << hi.labels[static_cast<std::size_t>(x)] << ", "
           << hi.labels[static_cast<std::size_t>(y)] << ")";
        return {false, os.str()};
      }
      if (hi.algebra.apply(meet_op, args) != (x == y ? x : 0)) {
        std::ostringstream os;
        os << "unexpected boundary meet at (" << hi.labels[static_cast<std::size_t>(x)] << ", "
           << hi.labels[static_cast<std::size_t>(y)] << ")";
        return {false, os.str()};
      }
    }
  }
  return {true, ""};
}

std::vector<DepthGrowthRow> depth_growth_experiment(int max_index, const Limits& limits) {
  if (max_index < 1) throw InputError("depth growth wants max index >= 1");
  std::vector<DepthGrowthRow> rows;
  for (int i = 1; i <= max_index; ++i) {
    QTruncation q = make_qn(i + 2);
    const int n = q.algebra.size();
    const std::int32_t ai = static_cast<std::int32_t>(2 * i + 1);
    const std::int32_t b0 = 2;
    DepthGrowthRow row;
    row.index = i;
    row.truncation = i + 2;
    row.depth = -1;
    for (int d = 0; d <= 64; ++d) {
      auto sys = TranslationSystem::from_depth(q.algebra, d, limits);
      ChainClosure closure(sys, n, 0, ai);
      if (closure.same(0, b0)) {
        row.depth = d;
        row.witness = closure.witness(0, b0);
        break;
      }
      if (sys.stabilized()) break;  // deeper terms add no translations
    }
    if (row.depth < 0) {
      std::ostringstream os;
      os << "(0, b0) never entered the closure of (0, a" << i << ") in Q" << q.n;
      throw PreconditionError(os.str());
    }
    assert(verify_witness(q.algebra, row.witness).ok);
    assert(rows.empty() || row.depth > rows.back().depth);
    rows.push_back(std::move(row));
  }
  return rows;
}

CongruenceReport qn_congruence_report(const QTruncation& q) {
  const FiniteAlgebra& a = q.algebra;
  const int n = a.size();
  const auto elems = elementary_maps(a);
  std::map<Partition, std::vector<std::pair<std::int32_t, std::int32_t>>> classes;
  Partition inter = Partition::full(n);
  for (std::int32_t x = 0; x < n; ++x) {
    for (std::int32_t y = x + 1; y < n; ++y) {
      std::pair<std::int32_t, std::int32_t> p{x, y};
      Partition c = generate_congruence(
          a, elems, std::span<const std::pair<std::int32_t, std::int32_t>>(&p, 1));
      inter = inter.meet(c);
      classes[std::move(c)].emplace_back(x, y);
    }
  }
  CongruenceReport r;
  for (auto& [c, gens] : classes) r.classes.push_back({c, std::move(gens)});
  r.intersection = inter;
  r.has_monolith = n > 1 && !inter.is_identity();
  assert([&] {
    // independent route to the same verdict
    auto m = monolith(a);
    return m.has_value() == r.has_monolith && (!m.has_value() || *m == r.intersection);
  }());
  return r;
}

namespace {

std::string pair_list(const std::vector<std::pair<std::int32_t, std::int32_t>>& pairs,
                      const std::vector<std::string>& labels) {
  std::ostringstream os;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i) os << ' ';
    os << '(' << labels[static_cast<std::size_t>(pairs[i].first)] << ','
       << labels[static_cast<std::size_t>(pairs[i].second)] << ')';
  }
  return os.str();
}

}  // namespace

std::string render_report(const CongruenceReport& r, const QTruncation& q, bool tsv) {
  std::ostringstream os;
  const char* monolith_word = r.has_monolith ? "present" : "absent";
  if (tsv) {
    os << "truncation\tQ" << q.n << "\n";
    os << "carrier\t" << q.algebra.size() << "\n";
    os << "classes\t" << r.classes.size() << "\n";
    for (std::size_t i = 0; i < r.classes.size(); ++i) {
      os << "class\t" << i + 1 << "\t" << r.classes[i].congruence.format(&q.labels) << "\t"
         << pair_list(r.classes[i].generators, q.labels) << "\n";
    }
    os << "intersection\t" << r.intersection.format(&q.labels) << "\n";
    os << "monolith\t" << monolith_word << "\n";
    return os.str();
  }
  os << "truncation Q" << q.n << ", carrier " << q.algebra.size() << "\n";
  os << "distinct principal congruences: " << r.classes.size() << "\n";
  for (std::size_t i = 0; i < r.classes.size(); ++i) {
    os << "  class " << i + 1 << ": " << r.classes[i].congruence.format(&q.labels) << "\n";
    os << "    generators: " << pair_list(r.classes[i].generators, q.labels) << "\n";
  }
  os << "intersection: " << r.intersection.format(&q.labels) << "\n";
  os << "monolith: " << monolith_word << "\n";
  return os.str();
}

}  // namespace synco
